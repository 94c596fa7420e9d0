#include "doctest.h"
#include "hsolve/linalg.hpp"
#include "oracles.hpp"

using namespace hsolve;
using namespace hsolve::testing;

TEST_CASE("rational parse and canonical format") {
    CHECK(rat_parse("3/6") == rat(1, 2));
    CHECK(rat_parse("-4/2") == rat(-2));
    CHECK(rat_str(rat_parse("-4/6")) == "-2/3");
    CHECK(rat_str(rat(5)) == "5");
    CHECK_THROWS_AS(rat_parse("1/0"), InputError);
    CHECK_THROWS_AS(rat_parse("1/-2"), InputError);
    CHECK_THROWS_AS(rat_parse("a"), InputError);
    CHECK_THROWS_AS(rat_parse("1.5"), InputError);
}

TEST_CASE("rref canonical form and rank") {
    QMatrix m{{rat(2), rat(4), rat(2)}, {rat(1), rat(2), rat(3)}, {rat(3), rat(6), rat(5)}};
    QMatrix copy = m;
    auto pivots = copy.rref_in_place();
    CHECK(pivots == std::vector<int>{0, 2});
    // RREF of an RREF matrix is itself
    QMatrix again = copy;
    again.rref_in_place();
    CHECK(again == copy);
    CHECK(m.rank() == 2);
}

TEST_CASE("kernel is exact and complementary to rank") {
    std::mt19937 gen(7);
    for (int trial = 0; trial < 40; ++trial) {
        int rows = 1 + trial % 5, cols = 1 + (trial * 3) % 6;
        QMatrix a = rand_matrix(gen, rows, cols);
        QMatrix k = a.kernel();
        CHECK(k.rows() + a.rank() == cols);
        for (int r = 0; r < k.rows(); ++r) CHECK(vec_is_zero(a.apply(k.row(r))));
        CHECK(a.rank() == fraction_free_rank(a));
    }
}

TEST_CASE("solve finds exact solutions and detects inconsistency") {
    QMatrix a{{rat(1), rat(2)}, {rat(2), rat(4)}};
    auto sol = a.solve({rat(3), rat(6)});
    REQUIRE(sol.has_value());
    CHECK(a.apply(*sol) == Vec{rat(3), rat(6)});
    CHECK_FALSE(a.solve({rat(3), rat(7)}).has_value());
}

TEST_CASE("charpoly on known matrices") {
    QMatrix a{{rat(2), rat(1)}, {rat(1), rat(2)}};
    CHECK(charpoly(a) == std::vector<Rat>{rat(3), rat(-4), rat(1)});
    // companion matrix of t^3 - 2t^2 + 5t - 7
    QMatrix c{{rat(0), rat(0), rat(7)}, {rat(1), rat(0), rat(-5)}, {rat(0), rat(1), rat(2)}};
    CHECK(charpoly(c) == std::vector<Rat>{rat(-7), rat(5), rat(-2), rat(1)});
}

TEST_CASE("charpoly agrees with determinant interpolation oracle") {
    std::mt19937 gen(11);
    for (int trial = 0; trial < 25; ++trial) {
        int n = 1 + trial % 6;
        QMatrix a = rand_matrix(gen, n, n);
        CHECK(charpoly(a) == charpoly_by_interpolation(a));
    }
}

TEST_CASE("nonneg-root criterion on diagonal matrices") {
    QMatrix psd{{rat(0), rat(0)}, {rat(0), rat(3)}};
    CHECK(charpoly_nonneg_roots(charpoly(psd)));
    QMatrix indef{{rat(-1), rat(0)}, {rat(0), rat(2)}};
    CHECK_FALSE(charpoly_nonneg_roots(charpoly(indef)));
}

TEST_CASE("symmetric inertia with exact witnesses") {
    QMatrix s{{rat(0), rat(1)}, {rat(1), rat(0)}};  // eigenvalues 1, -1
    SymmetricInertia inertia = symmetric_inertia(s);
    CHECK(inertia.positive == 1);
    CHECK(inertia.negative == 1);
    CHECK(inertia.zero == 0);
    REQUIRE_FALSE(inertia.negative_witness.empty());
    // q(w) = w^T S w must equal the reported negative value
    const Vec& w = inertia.negative_witness;
    Rat q(0);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) q += w[i] * s.at(i, j) * w[j];
    CHECK(q == inertia.negative_value);
    CHECK(q < 0);
}

TEST_CASE("inertia is a congruence invariant (Sylvester)") {
    std::mt19937 gen(13);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 2 + trial % 4;
        // random symmetric via B^T D B with invertible shear B
        QMatrix d(n, n);
        int pos = 0, neg = 0, zero = 0;
        for (int i = 0; i < n; ++i) {
            int pick = static_cast<int>(gen() % 3);
            d.at(i, i) = rat(pick - 1);
            (pick == 2 ? pos : pick == 1 ? zero : neg)++;
        }
        QMatrix b = QMatrix::identity(n);
        for (int k = 0; k < 2 * n; ++k) {
            int i = static_cast<int>(gen() % n), j = static_cast<int>(gen() % n);
            if (i == j) continue;
            Rat f = rand_rat(gen, 2, 2);
            for (int c = 0; c < n; ++c) b.at(i, c) += f * b.at(j, c);
        }
        QMatrix s = b.transpose() * (d * b);
        SymmetricInertia inertia = symmetric_inertia(s);
        CHECK(inertia.positive == pos);
        CHECK(inertia.negative == neg);
        CHECK(inertia.zero == zero);
        if (neg > 0) {
            const Vec& w = inertia.negative_witness;
            Rat q(0);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) q += w[i] * s.at(i, j) * w[j];
            CHECK(q == inertia.negative_value);
            CHECK(q < 0);
        }
        CHECK(charpoly_nonneg_roots(charpoly(s)) == (neg == 0));
    }
}

TEST_CASE("subspace canonical form and membership") {
    Subspace s = Subspace::span(3, {{rat(1), rat(1), rat(0)}, {rat(2), rat(2), rat(0)}, {rat(0), rat(0), rat(1)}});
    CHECK(s.dim() == 2);
    CHECK(s.contains(Vec{rat(3), rat(3), rat(-7)}));
    CHECK_FALSE(s.contains(Vec{rat(1), rat(0), rat(0)}));
    // canonical equality: same span, different generators
    Subspace t = Subspace::span(3, {{rat(1), rat(1), rat(5)}, {rat(0), rat(0), rat(-2)}});
    CHECK(s == t);
}

TEST_CASE("quotient projection kills exactly the subspace") {
    std::mt19937 gen(17);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 2 + trial % 5;
        QMatrix gens = rand_matrix(gen, 1 + static_cast<int>(gen() % n), n);
        Subspace s(n, gens);
        if (s.dim() == n) continue;
        QMatrix p = s.quotient_projection();
        CHECK(p.rows() == n - s.dim());
        CHECK(p.rank() == p.rows());
        for (int r = 0; r < s.dim(); ++r) CHECK(vec_is_zero(p.apply(s.basis_row(r))));
        // section is a right inverse
        QMatrix ps = p * s.quotient_section();
        CHECK(ps == QMatrix::identity(p.rows()));
    }
}

TEST_CASE("coordinates invert the basis combination") {
    Subspace s = Subspace::span(4, {{rat(1), rat(0), rat(2), rat(0)}, {rat(0), rat(1), rat(-1), rat(0)}});
    Vec v = vec_add(vec_scale(rat(3), s.basis_row(0)), vec_scale(rat(-2), s.basis_row(1)));
    CHECK(s.coordinates(v) == Vec{rat(3), rat(-2)});
    CHECK_THROWS_AS(s.coordinates(Vec{rat(0), rat(0), rat(0), rat(1)}), InputError);
}
