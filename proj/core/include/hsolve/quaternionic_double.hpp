#pragma once

#include <optional>
#include <tuple>

#include "hsolve/complex_ops.hpp"
#include "hsolve/lie_algebra.hpp"

namespace hsolve {

/// Left-invariant connection given by its coefficient tensor:
/// nabla_{e_i} e_j = sum_k Gamma[i][j][k] e_k, extended bilinearly over
/// constants in both slots.
class Connection {
public:
    explicit Connection(int dim);
    Connection(int dim, std::vector<std::vector<Vec>> gamma);

    static Connection zero(int dim) { return Connection(dim); }

    int dim() const { return dim_; }

    const Vec& covariant_basis(int i, int j) const { return gamma_[i][j]; }
    Vec& covariant_basis(int i, int j) { return gamma_[i][j]; }

    Vec covariant(const Vec& u, const Vec& v) const;

private:
    int dim_;
    std::vector<std::vector<Vec>> gamma_;
};

/// nabla^+_a b = (1/2)([a,b] + I[Ia,b]). Requires an integrable operator.
Connection nabla_plus(const LieAlgebra& g, const LinearOperator& op);

struct ConnectionCertificate {
    bool torsion_free;
    std::optional<std::pair<int, int>> torsion_witness;
    bool flat;
    std::optional<std::tuple<int, int, int>> curvature_witness;
    bool complex_linear;
    std::optional<std::pair<int, int>> linearity_witness;

    bool all() const { return torsion_free && flat && complex_linear; }
};

/// Exact checks on all basis tuples:
///   T(a,b) = nabla_a b - nabla_b a - [a,b],
///   R(a,b)c = nabla_a nabla_b c - nabla_b nabla_a c - nabla_[a,b] c,
///   nabla_a(I b) = I nabla_a b.
/// Each failing check reports its first violating tuple.
ConnectionCertificate certify_connection(const LieAlgebra& g, const LinearOperator& op,
                                         const Connection& conn);

struct DoubleResult {
    LieAlgebra algebra;
    HypercomplexStructure structure;
};

/// The doubled algebra g+ = g (+) g with bracket
///   [(a,b),(c,d)] = ([a,c], nabla_a d - nabla_c b)
/// and operators I(a,b)=(Ia,-Ib), J(a,b)=(-b,a), K(a,b)=(-Ib,-Ia).
///
/// The first bracket component is [a,c]. The constructed algebra is
/// validated (Jacobi, quaternion relations, integrability of all three
/// operators); violations surface as PropertyError.
DoubleResult quaternionic_double(const LieAlgebra& g, const LinearOperator& op, const Connection& conn);

struct StrictDoubleReport {
    LieAlgebra algebra;  // built with the literal first component
    std::optional<JacobiViolation> jacobi;
    /// Base pair whose bracket the literal formula loses: the projection to
    /// the first summand stops being a morphism there.
    std::optional<std::pair<int, int>> morphism_witness;
};

/// Evaluates the source text's literal bracket formula, whose first slot
/// reads [a,b] -- the bracket of the two components of the first argument.
/// On the basis of the double that component vanishes identically, so the
/// first-summand brackets are lost; this report exposes what breaks instead
/// of silently correcting it.
StrictDoubleReport strict_paper_double(const LieAlgebra& g, const LinearOperator& op,
                                       const Connection& conn);

}  // namespace hsolve
