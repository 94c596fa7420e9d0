#include <atomic>
#include <thread>

#include "algebras.hpp"
#include "doctest.h"
#include "hsolve/exterior.hpp"
#include "oracles.hpp"

using namespace hsolve;
using namespace hsolve::testing;

namespace {

Multivector mono(int n, std::vector<int> idx, long c = 1, bool form = false) {
    return Multivector::monomial(n, idx, Rat(c), form);
}

Multivector rand_multivector(std::mt19937& gen, int n, int k, bool form) {
    Multivector m(n, k, form);
    for (int i = 0; i < static_cast<int>(binom(n, k)); ++i) m.coord(i) = rand_rat(gen, 3, 2);
    return m;
}

}  // namespace

TEST_CASE("wedge basis enumeration and ranking") {
    auto subs = k_subsets(4, 2);
    REQUIRE(subs.size() == 6);
    CHECK(subs[0] == std::vector<int>{0, 1});
    CHECK(subs[5] == std::vector<int>{2, 3});
    for (int n = 1; n <= 6; ++n)
        for (int k = 0; k <= n; ++k) {
            auto all = k_subsets(n, k);
            CHECK(static_cast<long>(all.size()) == binom(n, k));
            for (size_t i = 0; i < all.size(); ++i) CHECK(subset_index(all[i], n) == static_cast<int>(i));
        }
}

TEST_CASE("monomial sign normalization") {
    CHECK(mono(4, {1, 0}) == Rat(-1) * mono(4, {0, 1}));
    CHECK(mono(4, {2, 0, 1}) == mono(4, {0, 1, 2}));  // even permutation
    CHECK(mono(4, {1, 1}).is_zero());
}

TEST_CASE("wedge product is associative and graded-commutative") {
    std::mt19937 gen(31);
    for (int trial = 0; trial < 15; ++trial) {
        Multivector a = rand_multivector(gen, 5, 1, true);
        Multivector b = rand_multivector(gen, 5, 2, true);
        Multivector c = rand_multivector(gen, 5, 1, true);
        CHECK(a.wedge(b).wedge(c) == a.wedge(b.wedge(c)));
        // a^b = (-1)^{1*2} b^a and a^c = -c^a
        CHECK(a.wedge(b) == b.wedge(a));
        CHECK(a.wedge(c) == Rat(-1) * c.wedge(a));
    }
}

TEST_CASE("wedge evaluation matches the determinant definition") {
    std::mt19937 gen(37);
    for (int trial = 0; trial < 10; ++trial) {
        Multivector a = rand_multivector(gen, 4, 1, true);
        Multivector b = rand_multivector(gen, 4, 1, true);
        Vec u = rand_vec(gen, 4), v = rand_vec(gen, 4);
        // (a^b)(u,v) = a(u)b(v) - a(v)b(u)
        Rat au(0), av(0), bu(0), bv(0);
        for (int i = 0; i < 4; ++i) {
            au += a.coords()[i] * u[i];
            av += a.coords()[i] * v[i];
            bu += b.coords()[i] * u[i];
            bv += b.coords()[i] * v[i];
        }
        CHECK(evaluate_form(a.wedge(b), {u, v}) == au * bv - av * bu);
    }
}

TEST_CASE("delta on the Kodaira algebra") {
    CEComplex ce(kodaira());
    // delta(x^y) = [x,y] = z
    CHECK(ce.delta(mono(4, {0, 1})).coords() == Vec{Rat(0), Rat(0), Rat(1), Rat(0)});
    // degree 1 boundary vanishes
    CHECK(ce.delta(mono(4, {3})).is_zero());
    // delta(x^y^t) = z^t, sign (+1) from Eq. (LR)
    CHECK(ce.delta(mono(4, {0, 1, 3})) == mono(4, {2, 3}));
    // delta(x^y^z) = z^z = 0
    CHECK(ce.delta(mono(4, {0, 1, 2})).is_zero());
}

TEST_CASE("d on the Kodaira algebra matches the definition") {
    CEComplex ce(kodaira());
    Multivector dz = ce.d(mono(4, {2}, 1, true));
    CHECK(dz == mono(4, {0, 1}, -1, true));  // d z* = -x*^y*
    CHECK(ce.d(mono(4, {0}, 1, true)).is_zero());
    CHECK(ce.d(mono(4, {1}, 1, true)).is_zero());
    CHECK(ce.d(mono(4, {3}, 1, true)).is_zero());
    // d(z*^t*) = -x*^y*^t* via the Leibniz rule
    CHECK(ce.d(mono(4, {2, 3}, 1, true)) == mono(4, {0, 1, 3}, -1, true));
    // d matrix on 1-forms equals the entrywise definition d a(x,y) = -a([x,y])
    CHECK(ce.d_matrix(1) == d1_from_definition(kodaira()));
}

TEST_CASE("d of any 1-form evaluates to -a([u,v]) on random vectors") {
    std::mt19937 gen(41);
    for (const LieAlgebra& g : {kodaira(), iwasawa()}) {
        CEComplex ce(g);
        for (int trial = 0; trial < 10; ++trial) {
            Multivector a = rand_multivector(gen, g.dim(), 1, true);
            Vec u = rand_vec(gen, g.dim()), v = rand_vec(gen, g.dim());
            Rat a_of_bracket(0);
            Vec br = g.bracket(u, v);
            for (int i = 0; i < g.dim(); ++i) a_of_bracket += a.coords()[i] * br[i];
            CHECK(evaluate_form(ce.d(a), {u, v}) == -a_of_bracket);
        }
    }
}

TEST_CASE("abelian differentials vanish identically") {
    CEComplex ce(LieAlgebra::abelian(4));
    for (int k = 0; k <= 4; ++k) {
        CHECK(ce.d_matrix(k).is_zero());
        CHECK(ce.delta_matrix(k).is_zero());
    }
}

TEST_CASE("Leibniz rule for d in all mixed degrees") {
    std::mt19937 gen(43);
    for (const LieAlgebra& g : {kodaira(), iwasawa()}) {
        CEComplex ce(g);
        int n = g.dim();
        for (int p = 1; p <= 2; ++p)
            for (int q = 1; q + p <= n; ++q)
                for (int trial = 0; trial < 5; ++trial) {
                    Multivector a = rand_multivector(gen, n, p, true);
                    Multivector b = rand_multivector(gen, n, q, true);
                    Multivector lhs = ce.d(a.wedge(b));
                    Multivector rhs = ce.d(a).wedge(b) +
                                      (p % 2 == 0 ? Rat(1) : Rat(-1)) * a.wedge(ce.d(b));
                    CHECK(lhs == rhs);
                }
    }
}

TEST_CASE("d compose d and delta compose delta vanish; duality sign is -1") {
    for (const LieAlgebra& g : {kodaira(), heisenberg3(), iwasawa()}) {
        CEComplex ce(g);
        int n = g.dim();
        for (int k = 0; k <= n; ++k) {
            CHECK((ce.d_matrix(k + 1) * ce.d_matrix(k)).is_zero());
            CHECK((ce.delta_matrix(k) * ce.delta_matrix(k + 1)).is_zero());
            // <d a, xi> = -<a, delta xi> on all basis pairs, every degree
            const QMatrix& d = ce.d_matrix(k);
            const QMatrix& del = ce.delta_matrix(k + 1);
            CHECK(d == Rat(-1) * del.transpose());
            for (int s = 0; s < static_cast<int>(binom(n, k)); ++s)
                for (int t = 0; t < static_cast<int>(binom(n, k + 1)); ++t) {
                    Multivector alpha(n, k, true);
                    alpha.coord(s) = 1;
                    Multivector xi(n, k + 1, false);
                    xi.coord(t) = 1;
                    CHECK(pairing(ce.d(alpha), xi) == -pairing(alpha, ce.delta(xi)));
                }
        }
    }
}

TEST_CASE("differential cache is safe under concurrent first access") {
    CEComplex ce(iwasawa());
    CEComplex reference(iwasawa());
    std::vector<std::thread> workers;
    std::atomic<bool> mismatch{false};
    for (int t = 0; t < 4; ++t)
        workers.emplace_back([&ce, &reference, &mismatch, t]() {
            for (int k = 0; k <= 6; ++k) {
                int degree = (k + t) % 7;
                if (!(ce.d_matrix(degree) == reference.d_matrix(degree))) mismatch = true;
                if (!(ce.delta_matrix(degree) == reference.delta_matrix(degree))) mismatch = true;
            }
        });
    for (auto& w : workers) w.join();
    CHECK_FALSE(mismatch.load());
}

TEST_CASE("Betti numbers of catalog-sized algebras") {
    CHECK(CEComplex(kodaira()).betti_numbers() == std::vector<int>{1, 3, 4, 3, 1});
    // Heisenberg-3, derived by hand: d(z*) = -x*^y* is the only relation.
    CHECK(CEComplex(heisenberg3()).betti_numbers() == std::vector<int>{1, 2, 2, 1});
    // Abelian: binomial coefficients.
    CHECK(CEComplex(LieAlgebra::abelian(5)).betti_numbers() ==
          std::vector<int>{1, 5, 10, 10, 5, 1});
    // Iwasawa: b1 = 6 - dim[g,g] = 4, Euler characteristic 0, Poincare dual.
    std::vector<int> iw = CEComplex(iwasawa()).betti_numbers();
    CHECK(iw[1] == 4);
    int euler = 0;
    for (size_t k = 0; k < iw.size(); ++k) euler += (k % 2 ? -iw[k] : iw[k]);
    CHECK(euler == 0);
    for (size_t k = 0; k < iw.size(); ++k) CHECK(iw[k] == iw[iw.size() - 1 - k]);
}

TEST_CASE("Betti ranks agree with the fraction-free rank oracle") {
    for (const LieAlgebra& g : {kodaira(), heisenberg3(), iwasawa()}) {
        CEComplex ce(g);
        int n = g.dim();
        std::vector<int> betti = ce.betti_numbers();
        for (int k = 0; k <= n; ++k) {
            int rank_k = fraction_free_rank(ce.d_matrix(k));
            int rank_prev = k > 0 ? fraction_free_rank(ce.d_matrix(k - 1)) : 0;
            CHECK(betti[k] == static_cast<int>(binom(n, k)) - rank_k - rank_prev);
        }
    }
}

TEST_CASE("pq projections in the quaternionic model") {
    // xi = e0^e1 + e2^e3 is (1,1) for I and purely mixed for J.
    Multivector xi = mono(4, {0, 1}) + mono(4, {2, 3});
    PqParts for_i = pq_projections(xi, quat4_I().matrix, Rat(1));
    CHECK(for_i.part_11 == xi);
    CHECK(for_i.part_20_02.is_zero());
    PqParts for_j = pq_projections(xi, quat4_J().matrix, Rat(1));
    CHECK(for_j.part_11.is_zero());
    CHECK(for_j.part_20_02 == xi);

    std::mt19937 gen(47);
    for (int trial = 0; trial < 10; ++trial) {
        Multivector r = rand_multivector(gen, 4, 2, false);
        PqParts parts = pq_projections(r, quat4_J().matrix, Rat(1));
        CHECK(parts.part_11 + parts.part_20_02 == r);
        // projectors: re-projecting each part is the identity on it
        CHECK(pq_projections(parts.part_11, quat4_J().matrix, Rat(1)).part_11 == parts.part_11);
        CHECK(pq_projections(parts.part_20_02, quat4_J().matrix, Rat(1)).part_20_02 ==
              parts.part_20_02);
    }
    // unnormalized direction: L' = 3J + 4K with s = 25
    QMatrix l = Rat(3) * quat4_J().matrix + Rat(4) * quat4_K().matrix;
    CHECK(squares_to_minus_s(l, Rat(25)));
    Multivector r = rand_multivector(gen, 4, 2, false);
    PqParts parts = pq_projections(r, l, Rat(25));
    CHECK(parts.part_11 + parts.part_20_02 == r);
    CHECK_THROWS_AS(pq_projections(r, l, Rat(1)), InputError);
}

TEST_CASE("Weil operator on the quaternionic model") {
    QMatrix wi = weil_matrix(quat4_I().matrix);
    QMatrix wj = weil_matrix(quat4_J().matrix);
    QMatrix wk = weil_matrix(quat4_K().matrix);

    Multivector e01 = mono(4, {0, 1});
    CHECK(vec_is_zero(wi.apply(e01.coords())));  // W_I(e0^e1) = 0

    Multivector xi = mono(4, {0, 1}) + mono(4, {2, 3});
    Vec wj_xi = wj.apply(xi.coords());
    Multivector expected = Rat(-2) * (mono(4, {1, 2}) + mono(4, {0, 3}));
    CHECK(wj_xi == expected.coords());

    // su(2)-invariant bivector is killed by all three Weil operators
    Multivector inv = mono(4, {0, 1}) - mono(4, {2, 3});
    CHECK(vec_is_zero(wi.apply(inv.coords())));
    CHECK(vec_is_zero(wj.apply(inv.coords())));
    CHECK(vec_is_zero(wk.apply(inv.coords())));
}

TEST_CASE("Weil operator is linear in the direction") {
    std::mt19937 gen(53);
    QMatrix i = quat4_I().matrix, j = quat4_J().matrix;
    for (int trial = 0; trial < 10; ++trial) {
        Rat a = rand_rat(gen, 3, 2), b = rand_rat(gen, 3, 2);
        QMatrix combined = a * i + b * j;
        QMatrix lhs = weil_matrix(combined);
        QMatrix rhs = a * weil_matrix(i) + b * weil_matrix(j);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("Weil kernel has dimension m^2 and square -4 on the complement") {
    QMatrix w = weil_matrix(quat4_I().matrix);
    QMatrix kernel = w.kernel();
    CHECK(kernel.rows() == 4);  // m = 2, so m^2 = 4 out of dim 6
    // anti-invariant part: W^2 = -4 Id on it
    std::mt19937 gen(59);
    for (int trial = 0; trial < 10; ++trial) {
        Multivector r = rand_multivector(gen, 4, 2, false);
        PqParts parts = pq_projections(r, quat4_I().matrix, Rat(1));
        Vec w2 = w.apply(w.apply(parts.part_20_02.coords()));
        CHECK(w2 == vec_scale(Rat(-4), parts.part_20_02.coords()));
        // and the kernel is exactly the sigma-invariant part
        CHECK(vec_is_zero(w.apply(parts.part_11.coords())));
    }
    // W_{L'}^2 = -4s on the anti-invariant part for unnormalized directions
    QMatrix l = Rat(1) * quat4_I().matrix + Rat(2) * quat4_J().matrix + Rat(2) * quat4_K().matrix;
    Rat s(9);
    QMatrix wl = weil_matrix(l);
    for (int trial = 0; trial < 5; ++trial) {
        Multivector r = rand_multivector(gen, 4, 2, false);
        PqParts parts = pq_projections(r, l, s);
        Vec lhs = wl.apply(wl.apply(r.coords()));
        CHECK(lhs == vec_scale(Rat(-4) * s, parts.part_20_02.coords()));
        CHECK(vec_is_zero(wl.apply(parts.part_11.coords())));
    }
}
