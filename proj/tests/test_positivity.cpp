#include <set>

#include "algebras.hpp"
#include "doctest.h"
#include "hsolve/positivity.hpp"
#include "hsolve/quaternionic_double.hpp"
#include "oracles.hpp"

using namespace hsolve;
using namespace hsolve::testing;

namespace {

Multivector mono(int n, std::vector<int> idx, long c = 1) {
    return Multivector::monomial(n, idx, Rat(c), false);
}

Vec basis_vec(int n, int i) {
    Vec v = vec_zero(n);
    v[i] = 1;
    return v;
}

/// Sum of v_m ^ L v_m over random rational vectors: a positive bivector.
Multivector random_positive(std::mt19937& gen, const QMatrix& l, int terms) {
    int n = l.rows();
    Multivector xi(n, 2, false);
    for (int m = 0; m < terms; ++m) {
        Vec v = rand_vec(gen, n, 2, 2);
        Vec lv = l.apply(v);
        auto pairs = k_subsets(n, 2);
        for (size_t p = 0; p < pairs.size(); ++p) {
            int a = pairs[p][0], b = pairs[p][1];
            xi.coord(static_cast<int>(p)) += v[a] * lv[b] - v[b] * lv[a];
        }
    }
    return xi;
}

Multivector su2_symmetrize(const HypercomplexStructure& h, const Multivector& xi) {
    Rat quarter(1, 4);
    Vec acc = xi.coords();
    for (const LinearOperator* op : {&h.I, &h.J, &h.K})
        acc = vec_add(acc, exterior_square(op->matrix).apply(xi.coords()));
    return Multivector(xi.ambient_dim(), 2, false, vec_scale(quarter, acc));
}

}  // namespace

TEST_CASE("positivity form matches hand evaluation in the quaternionic model") {
    // q for xi = e0^e1 + e2^e3 with L = I is the standard definite form
    Multivector xi = mono(4, {0, 1}) + mono(4, {2, 3});
    QMatrix s = positivity_form(xi, quat4_I().matrix);
    CHECK(s == QMatrix::identity(4));
}

TEST_CASE("positivity verdicts on the quaternionic model") {
    Multivector xi = mono(4, {0, 1}) + mono(4, {2, 3});
    PositivityVerdict pd = positivity_test(xi, quat4_I(), Rat(1));
    CHECK(pd.verdict == Positivity::positive_definite);

    PositivityVerdict zero = positivity_test(Multivector(4, 2, false), quat4_I(), Rat(1));
    CHECK(zero.verdict == Positivity::zero);

    // e0^e1 - e2^e3 is (1,1) for I but indefinite; witness lives in e2*,e3*
    Multivector mixed = mono(4, {0, 1}) - mono(4, {2, 3});
    PositivityVerdict indef = positivity_test(mixed, quat4_I(), Rat(1));
    CHECK(indef.verdict == Positivity::indefinite);
    REQUIRE_FALSE(indef.witness.empty());
    CHECK(indef.witness_value < 0);
    // verify the witness value exactly against the form matrix
    QMatrix s = positivity_form(mixed, quat4_I().matrix);
    Rat q(0);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) q += indef.witness[i] * s.at(i, j) * indef.witness[j];
    CHECK(q == indef.witness_value);
    CHECK((indef.witness[2] != 0 || indef.witness[3] != 0));

    PositivityVerdict neg = positivity_test(Rat(-1) * xi, quat4_I(), Rat(1));
    CHECK(neg.verdict == Positivity::negative);
    CHECK(neg.witness_value < 0);

    // semidefinite with kernel: a single complex line
    PositivityVerdict semi = positivity_test(mono(4, {0, 1}), quat4_I(), Rat(1));
    CHECK(semi.verdict == Positivity::positive);
}

TEST_CASE("type errors are distinct from indefiniteness") {
    Multivector xi = mono(4, {0, 1}) + mono(4, {2, 3});
    CHECK_THROWS_AS(positivity_test(xi, quat4_J(), Rat(1)), InputError);  // not (1,1) for J
    CHECK_THROWS_AS(positivity_test(xi, quat4_I(), Rat(0)), InputError);
}

TEST_CASE("positivity verdict is scale invariant") {
    std::mt19937 gen(79);
    HypercomplexStructure h = quat4();
    for (int trial = 0; trial < 10; ++trial) {
        Multivector xi = random_positive(gen, h.I.matrix, 2);
        PositivityVerdict base = positivity_test(xi, h.I, Rat(1));
        Rat c = rat(1 + static_cast<int>(gen() % 5), 1 + static_cast<int>(gen() % 3));
        PositivityVerdict scaled = positivity_test(c * xi, h.I, Rat(1));
        CHECK(scaled.verdict == base.verdict);
        // rescaling the direction rescales s by c^2 and keeps verdicts
        QMatrix l2 = Rat(3) * h.I.matrix;
        PositivityVerdict dir_scaled = positivity_test(xi, LinearOperator(l2), Rat(9));
        CHECK(dir_scaled.verdict == base.verdict);
    }
}

TEST_CASE("bivector kernel computations") {
    CHECK(bivector_kernel(mono(4, {0, 1})) ==
          Subspace::span(4, {basis_vec(4, 2), basis_vec(4, 3)}));
    CHECK(bivector_kernel(Multivector(4, 2, false)) == Subspace::full(4));
    CHECK(bivector_kernel(mono(4, {0, 1}) + mono(4, {2, 3})).is_zero());
}

TEST_CASE("degenerate directions agree with the bivector kernel (Lemma Ker)") {
    CHECK(degenerate_directions(mono(4, {0, 1}), quat4_I(), Rat(1)) ==
          Subspace::span(4, {basis_vec(4, 2), basis_vec(4, 3)}));
    CHECK(degenerate_directions(mono(4, {0, 1}) + mono(4, {2, 3}), quat4_I(), Rat(1)).is_zero());
    CHECK(degenerate_directions(Multivector(4, 2, false), quat4_I(), Rat(1)) == Subspace::full(4));
    // precondition: positivity required
    CHECK_THROWS_AS(degenerate_directions(mono(4, {0, 1}) - mono(4, {2, 3}), quat4_I(), Rat(1)),
                    InputError);
}

TEST_CASE("Lemma Ker on randomized positive bivectors") {
    std::mt19937 gen(83);
    HypercomplexStructure h4 = quat4();
    HypercomplexStructure h8 = quat8();
    for (int trial = 0; trial < 50; ++trial) {
        const HypercomplexStructure& h = (trial % 2 == 0) ? h4 : h8;
        Multivector xi = random_positive(gen, h.I.matrix, 1 + trial % 3);
        Subspace dd = degenerate_directions(xi, h.I, Rat(1));
        CHECK(dd == bivector_kernel(xi));  // also asserted internally
    }
}

TEST_CASE("confinement to a subspace (Lemma p_1)") {
    Multivector e01 = mono(4, {0, 1});
    Subspace w1 = Subspace::span(4, {basis_vec(4, 0), basis_vec(4, 1)});
    ConfineResult confined = confine_to_subspace(e01, w1, quat4_I(), Rat(1));
    CHECK(confined.confined);
    CHECK(confined.value.ambient_dim() == 2);
    CHECK(confined.value.coords() == Vec{Rat(1)});

    Multivector both = mono(4, {0, 1}) + mono(4, {2, 3});
    ConfineResult outside = confine_to_subspace(both, w1, quat4_I(), Rat(1));
    CHECK_FALSE(outside.confined);
    CHECK_FALSE(outside.value.is_zero());  // e2^e3 survives in the quotient

    // non-positive input is rejected
    CHECK_THROWS_AS(confine_to_subspace(mono(4, {0, 1}) - mono(4, {2, 3}), w1, quat4_I(), Rat(1)),
                    InputError);
}

TEST_CASE("compatible structures: unique, invariant, none") {
    HypercomplexStructure h = quat4();

    Multivector xi = mono(4, {0, 1}) + mono(4, {2, 3});
    CompatibleStructures unique = compatible_structures(h, xi);
    CHECK(unique.kind == CompatibleKind::unique);
    REQUIRE(unique.direction.has_value());
    CHECK(unique.direction->canonical() == SphereDirection{Rat(1), Rat(0), Rat(0)});
    CHECK(unique.positivity->verdict == Positivity::positive_definite);

    // antipodal certificate: -xi is positive for -I
    CompatibleStructures anti = compatible_structures(h, Rat(-1) * xi);
    CHECK(anti.kind == CompatibleKind::unique);
    CHECK(anti.direction->canonical() == SphereDirection{Rat(-1), Rat(0), Rat(0)});

    Multivector inv = mono(4, {0, 1}) - mono(4, {2, 3});
    CompatibleStructures invariant = compatible_structures(h, inv);
    CHECK(invariant.kind == CompatibleKind::invariant_all);

    CompatibleStructures zero = compatible_structures(h, Multivector(4, 2, false));
    CHECK(zero.kind == CompatibleKind::invariant_all);

    // e0^e1 - 2 e2^e3 is (1,1) for +-I only, and indefinite for both, so no
    // direction certifies it
    Multivector lopsided = mono(4, {0, 1}) - Rat(2) * mono(4, {2, 3});
    CompatibleStructures none = compatible_structures(h, lopsided);
    CHECK(none.kind == CompatibleKind::none);

    // (e0 - e1)^e2 is decomposable with (J - K)(e0 - e1) = 2 e2, hence
    // positive for the off-axis direction (0, 1, -1)
    Multivector decomposable = mono(4, {0, 2}) + mono(4, {2, 1});
    CompatibleStructures off_axis = compatible_structures(h, decomposable);
    CHECK(off_axis.kind == CompatibleKind::unique);
    CHECK(off_axis.direction->canonical() == SphereDirection{Rat(0), Rat(1), Rat(-1)});
}

TEST_CASE("Lemma IJ on randomized positive bivectors") {
    std::mt19937 gen(89);
    HypercomplexStructure h = quat4();
    int done = 0;
    while (done < 40) {
        Rat a = rand_rat(gen, 2, 2), b = rand_rat(gen, 2, 2), c = rand_rat(gen, 2, 2);
        if (a == 0 && b == 0 && c == 0) continue;
        QMatrix l = a * h.I.matrix + b * h.J.matrix + c * h.K.matrix;
        Multivector xi = random_positive(gen, l, 1 + done % 2);
        if (xi.is_zero()) continue;
        CompatibleStructures cs = compatible_structures(h, xi);
        // note: v ^ L'v sums are positive for the unnormalized direction
        CHECK(cs.kind == CompatibleKind::unique);
        SphereDirection expect = SphereDirection{a, b, c}.canonical();
        CHECK(cs.direction->canonical() == expect);
        ++done;
    }
}

TEST_CASE("Corollary PandI on symmetrized invariants") {
    std::mt19937 gen(97);
    HypercomplexStructure h = quat4();
    int done = 0;
    while (done < 25) {
        Multivector raw(4, 2, false);
        for (int i = 0; i < 6; ++i) raw.coord(i) = rand_rat(gen, 3, 2);
        Multivector inv = su2_symmetrize(h, raw);
        if (inv.is_zero()) continue;
        CompatibleStructures cs = compatible_structures(h, inv);
        CHECK(cs.kind == CompatibleKind::invariant_all);
        // no sampled direction certifies positivity
        for (const SphereDirection& dir :
             {SphereDirection{Rat(1), Rat(0), Rat(0)}, SphereDirection{Rat(0), Rat(1), Rat(0)},
              SphereDirection{Rat(2), Rat(-3), Rat(6)}}) {
            InducedOperator ind = induced_structure(h, dir);
            PositivityVerdict v = positivity_test(inv, ind.op, ind.scale);
            CHECK(v.verdict != Positivity::positive);
            CHECK(v.verdict != Positivity::positive_definite);
        }
        ++done;
    }
}

TEST_CASE("quotient bivector push-forward") {
    LieAlgebra g = kodaira();
    Subspace center = Subspace::span(4, {basis_vec(4, 2), basis_vec(4, 3)});
    auto [quot, qmap] = quotient(g, center);

    QuotientMap identity{4, 4, QMatrix::identity(4), Subspace::zero(4)};
    Multivector xi = mono(4, {0, 1}) + Rat(2) * mono(4, {1, 3});
    CHECK(quotient_bivector(identity, xi) == xi);

    Multivector xy = mono(4, {0, 1});
    Multivector image = quotient_bivector(qmap, xy);
    CHECK_FALSE(image.is_zero());
    CHECK(image.coords() == Vec{Rat(1)});  // xbar ^ ybar

    Multivector xz = mono(4, {0, 2});
    CHECK(quotient_bivector(qmap, xz).is_zero());
}

TEST_CASE("exceptional directions: trivial cases") {
    LieAlgebra a4 = LieAlgebra::abelian(4);
    CHECK(exceptional_directions(a4, quat4(), 2).empty());

    LieAlgebra g = kodaira();
    DoubleResult d = quaternionic_double(g, kodaira_I(), nabla_plus(g, kodaira_I()));
    CHECK(exceptional_directions(d.algebra, d.structure, 0).empty());
}

TEST_CASE("exceptional directions on the Kodaira double are self-certifying") {
    LieAlgebra g = kodaira();
    DoubleResult d = quaternionic_double(g, kodaira_I(), nabla_plus(g, kodaira_I()));
    std::vector<ExceptionalEntry> entries = exceptional_directions(d.algebra, d.structure, 1);
    CHECK_FALSE(entries.empty());
    for (const ExceptionalEntry& e : entries) {
        CHECK(e.level == 1);
        CHECK((e.verdict.verdict == Positivity::positive ||
               e.verdict.verdict == Positivity::positive_definite));
        CHECK_FALSE(e.image.is_zero());
    }
    // deterministic output: sorted by level, then cycle coordinates
    for (size_t i = 1; i < entries.size(); ++i) {
        CHECK(entries[i - 1].level <= entries[i].level);
        if (entries[i - 1].level == entries[i].level)
            CHECK(vec_less(entries[i - 1].cycle.coords(), entries[i].cycle.coords()));
    }
    // repeat run gives identical results
    std::vector<ExceptionalEntry> again = exceptional_directions(d.algebra, d.structure, 1);
    REQUIRE(again.size() == entries.size());
    for (size_t i = 0; i < entries.size(); ++i) {
        CHECK(again[i].cycle == entries[i].cycle);
        CHECK(again[i].direction == entries[i].direction);
    }
    // the image space at level 1 splits as two su(2)-invariant directions
    // plus the line through x'^y'; only the latter carries positive classes,
    // so exactly the two antipodal I-directions appear
    REQUIRE(entries.size() == 2);
    std::set<Vec, bool (*)(const Vec&, const Vec&)> dirs(vec_less);
    for (const ExceptionalEntry& e : entries) dirs.insert(Vec{e.direction.a, e.direction.b, e.direction.c});
    CHECK(dirs.count(Vec{Rat(1), Rat(0), Rat(0)}) == 1);
    CHECK(dirs.count(Vec{Rat(-1), Rat(0), Rat(0)}) == 1);
}

TEST_CASE("weil_operator through a sphere direction") {
    HypercomplexStructure h = quat4();
    Multivector xi = mono(4, {0, 1}) + mono(4, {2, 3});
    CHECK(weil_operator(h, SphereDirection{Rat(1), Rat(0), Rat(0)}, xi).is_zero());
    Multivector wj = weil_operator(h, SphereDirection{Rat(0), Rat(1), Rat(0)}, xi);
    CHECK(wj == Rat(-2) * (mono(4, {1, 2}) + mono(4, {0, 3})));
    // linear in the direction
    Multivector sum = weil_operator(h, SphereDirection{Rat(2), Rat(1), Rat(-3)}, xi);
    Multivector parts =
        Rat(2) * weil_operator(h, SphereDirection{Rat(1), Rat(0), Rat(0)}, xi) +
        weil_operator(h, SphereDirection{Rat(0), Rat(1), Rat(0)}, xi) +
        Rat(-3) * weil_operator(h, SphereDirection{Rat(0), Rat(0), Rat(1)}, xi);
    CHECK(sum == parts);
}

TEST_CASE("height ladder contents") {
    CHECK(height_ladder(0) == std::vector<Rat>{Rat(0)});
    std::vector<Rat> h1 = height_ladder(1);
    CHECK(h1 == std::vector<Rat>{Rat(-1), Rat(0), Rat(1)});
    std::vector<Rat> h2 = height_ladder(2);
    CHECK(h2 == std::vector<Rat>{Rat(-2), Rat(-1), rat(-1, 2), Rat(0), rat(1, 2), Rat(1), Rat(2)});
}

TEST_CASE("transversal Kahler certification on the Kodaira algebra") {
    LieAlgebra g = kodaira();
    CEComplex ce(g);
    Subspace f = Subspace::span(4, {basis_vec(4, 2), basis_vec(4, 3)});
    Multivector omega = Multivector::monomial(4, {0, 1}, Rat(1), true);  // x*^y*
    TransversalKahlerReport good = is_transversal_kahler(ce, omega, f, kodaira_I(), Rat(1));
    CHECK(good.closed);
    CHECK(good.type_11);
    CHECK(good.kernel_matches);
    CHECK(good.quotient_positive_definite);
    CHECK(good.ok());

    // omega = z*^t* is not closed: d(z*^t*) = -x*^y*^t*
    Multivector zt = Multivector::monomial(4, {2, 3}, Rat(1), true);
    TransversalKahlerReport bad = is_transversal_kahler(ce, zt, f, kodaira_I(), Rat(1));
    CHECK_FALSE(bad.closed);
    CHECK_FALSE(bad.ok());

    // f not a subalgebra is an input error
    Subspace not_sub = Subspace::span(4, {basis_vec(4, 0), basis_vec(4, 1)});
    CHECK_THROWS_AS(is_transversal_kahler(ce, omega, not_sub, kodaira_I(), Rat(1)), InputError);

    // zero form: true only when f is the whole algebra
    Multivector zero_form(4, 2, true);
    TransversalKahlerReport whole =
        is_transversal_kahler(ce, zero_form, Subspace::full(4), kodaira_I(), Rat(1));
    CHECK(whole.ok());
    TransversalKahlerReport partial = is_transversal_kahler(ce, zero_form, f, kodaira_I(), Rat(1));
    CHECK_FALSE(partial.ok());
}
