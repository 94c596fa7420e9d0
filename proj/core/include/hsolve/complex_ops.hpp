#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hsolve/lie_algebra.hpp"

namespace hsolve {

/// Square exact-rational operator on algebra coordinates.
struct LinearOperator {
    QMatrix matrix;

    explicit LinearOperator(QMatrix m) : matrix(std::move(m)) {
        if (matrix.rows() != matrix.cols()) throw InputError("operator matrix must be square");
    }

    int dim() const { return matrix.rows(); }
    Vec apply(const Vec& v) const { return matrix.apply(v); }

    /// matrix^2 == -Id exactly.
    bool is_almost_complex() const;
};

/// Triple of operators expected to satisfy I^2=J^2=K^2=-Id, IJ=-JI=K.
/// The relations are checked where operations require them, not assumed.
struct HypercomplexStructure {
    LinearOperator I;
    LinearOperator J;
    LinearOperator K;

    int dim() const { return I.dim(); }

    /// nullopt when the quaternion relations hold exactly; otherwise a
    /// description of the first violated identity.
    std::optional<std::string> quaternion_violation() const;
};

/// Unnormalized point (a:b:c) on the twistor sphere, considered up to
/// positive rational scaling; (a,b,c) and (-a,-b,-c) are distinct.
struct SphereDirection {
    Rat a;
    Rat b;
    Rat c;

    bool is_zero() const { return a == 0 && b == 0 && c == 0; }

    /// Scales by a positive rational so entries are coprime integers.
    SphereDirection canonical() const;

    std::string str() const;

    friend bool operator==(const SphereDirection& x, const SphereDirection& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c;
    }
};

/// N_I(u,v) = [u,v] + I[Iu,v] + I[u,Iv] - [Iu,Iv].
Vec nijenhuis(const LieAlgebra& g, const LinearOperator& op, const Vec& u, const Vec& v);

struct IntegrabilityResult {
    bool integrable;
    std::optional<std::pair<int, int>> witness;  // basis pair with nonzero Nijenhuis tensor
};

/// Decides integrability two ways: vanishing of the Nijenhuis tensor on all
/// basis pairs, and bracket-closure of the +i eigenspace in the Gaussian-
/// rational complexification. The criteria must agree; disagreement is an
/// internal error.
IntegrabilityResult is_integrable(const LieAlgebra& g, const LinearOperator& op);

/// [g^{1,0}, g^{1,0}] = 0 exactly. Requires an integrable operator.
bool is_abelian_structure(const LieAlgebra& g, const LinearOperator& op);

struct IFiltration {
    std::vector<Subspace> terms;        // g_1^I, g_2^I, ... down to zero
    std::vector<std::string> failures;  // violated assertions, if any

    bool ok() const { return failures.empty(); }
};

/// Terms g_i^I = g_i + I g_i built from the lower central series, with the
/// Millionschikov/Salamon properties checked per input: every term
/// I-invariant, [g_k^I, g_k^I] inside g_{k+1}^I, and g_1^I proper.
IFiltration i_filtration(const LieAlgebra& g, const LinearOperator& op);

/// S + IS + JS + KS in canonical form; the result is invariant under all
/// three operators (checked).
Subspace quaternionic_span(const HypercomplexStructure& h, const Subspace& s);

struct HFiltration {
    std::vector<Subspace> terms;  // g_1^H, g_2^H, ... until zero or repeat
    std::vector<std::string> diagnostics;

    bool ok() const { return diagnostics.empty(); }
};

/// g_1^H = H[g,g], g_i^H = H[g_{i-1}^H, g_{i-1}^H], until zero or
/// stabilization. Each term is checked to be a bracket-closed, H-invariant
/// subspace; failures are reported, not assumed away.
HFiltration h_filtration(const LieAlgebra& g, const HypercomplexStructure& h);

struct HSolvability {
    bool solvable;
    int steps;                         // minimal k with g_k^H = 0, when solvable
    std::optional<Subspace> stabilized;  // nonzero stabilized subalgebra otherwise
};

HSolvability is_h_solvable(const LieAlgebra& g, const HypercomplexStructure& h);

struct InducedOperator {
    LinearOperator op;  // aI + bJ + cK, unnormalized
    Rat scale;          // s = a^2+b^2+c^2; op^2 = -s Id (asserted)
};

InducedOperator induced_structure(const HypercomplexStructure& h, const SphereDirection& dir);

/// Restriction of an operator to an invariant subspace, in subspace basis
/// coordinates. Throws PropertyError when the subspace is not invariant.
QMatrix restrict_operator(const QMatrix& op, const Subspace& s);

/// Operator induced on the quotient by an invariant kernel.
QMatrix induce_operator_on_quotient(const QMatrix& op, const QuotientMap& q);

HypercomplexStructure restrict_structure(const HypercomplexStructure& h, const Subspace& s);
HypercomplexStructure induce_structure_on_quotient(const HypercomplexStructure& h, const QuotientMap& q);

}  // namespace hsolve
