#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hsolve/linalg.hpp"

namespace hsolve {

/// One sparse structure constant: [e_i, e_j] has coefficient c on e_k,
/// stored for i < j only (antisymmetry is implied). Indices are 0-based.
struct StructureEntry {
    int i;
    int j;
    int k;
    Rat c;
};

struct JacobiViolation {
    int i;  // first violating triple i < j < k, 0-based
    int j;
    int k;
    Vec residual;  // [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j], nonzero
};

/// Finite-dimensional Lie algebra over Q given by structure constants.
/// Immutable after construction; construction checks index ranges, validate()
/// checks the Jacobi identity.
class LieAlgebra {
public:
    LieAlgebra(int dim, std::vector<std::string> basis_names, std::vector<StructureEntry> constants);

    static LieAlgebra abelian(int dim);

    int dim() const { return dim_; }
    const std::vector<std::string>& basis_names() const { return names_; }
    const std::vector<StructureEntry>& constants() const { return constants_; }

    /// [e_i, e_j] for any i, j (sign handled).
    Vec bracket_basis(int i, int j) const;

    /// Bilinear extension sum_{i<j} (u_i v_j - u_j v_i) c_ij.
    Vec bracket(const Vec& u, const Vec& v) const;

    /// nullopt when the Jacobi identity holds exactly on all basis triples,
    /// otherwise the first violating triple in lexicographic order.
    std::optional<JacobiViolation> validate() const;

    std::string basis_name(int i) const { return names_[i]; }

private:
    int dim_;
    std::vector<std::string> names_;
    std::vector<StructureEntry> constants_;
    std::vector<Vec> table_;  // dense [i*dim+j] -> [e_i,e_j], filled for all i,j
};

/// Linear projection g -> g/ideal with its kernel. matrix has full row rank
/// target_dim and annihilates the kernel.
struct QuotientMap {
    int source_dim;
    int target_dim;
    QMatrix matrix;  // target_dim x source_dim
    Subspace kernel;
};

/// Span of {[a,b] : a in basis(A), b in basis(B)}.
Subspace bracket_subspaces(const LieAlgebra& g, const Subspace& a, const Subspace& b);

/// Lower central series g_0 = g, g_{k+1} = [g_k, g], reported until the first
/// repeat. Nilpotent iff the last term is zero; a nonzero last term means the
/// series stabilized without reaching zero.
std::vector<Subspace> lower_central_series(const LieAlgebra& g);

bool is_nilpotent(const LieAlgebra& g);

/// Quotient algebra by an ideal together with the projection. Throws
/// InputError naming a violating pair when the subspace is not an ideal.
std::pair<LieAlgebra, QuotientMap> quotient(const LieAlgebra& g, const Subspace& ideal);

/// True iff the subspace is closed under the bracket. Rationality is
/// automatic here: every subspace handled by this library has an exact
/// rational basis, so closure is the only content of the check.
bool is_rational_subalgebra(const LieAlgebra& g, const Subspace& s);

/// The algebra structure induced on a bracket-closed subspace, with the
/// inclusion matrix (dim x sub_dim, columns = subspace basis vectors).
/// Throws InputError when the subspace is not closed.
std::pair<LieAlgebra, QMatrix> subalgebra(const LieAlgebra& g, const Subspace& s);

}  // namespace hsolve
