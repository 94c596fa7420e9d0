#pragma once

#include <optional>
#include <vector>

#include "hsolve/complex_ops.hpp"
#include "hsolve/exterior.hpp"

namespace hsolve {

enum class Positivity { zero, positive, positive_definite, indefinite, negative };

std::string positivity_name(Positivity p);

/// W_{L'} xi for L' = aI + bJ + cK: the derivation extension of the induced
/// operator acting on bivectors. Kills exactly the (1,1) part when the
/// direction has unit norm; linear in the direction.
Multivector weil_operator(const HypercomplexStructure& h, const SphereDirection& dir,
                          const Multivector& xi);

struct PositivityVerdict {
    Positivity verdict;
    Vec witness;        // dual vector with q(witness) < 0, for indefinite/negative
    Rat witness_value;  // exact value of q on the witness
};

/// The quadratic form q(beta) = xi(beta, L'beta) on real dual vectors, as a
/// symmetric matrix. The dual action is (L'beta)(w) = -beta(L'w), which makes
/// sums of v ^ L'v positive; q is symmetric whenever xi has type (1,1).
QMatrix positivity_form(const Multivector& xi, const QMatrix& l);

/// Exact semidefiniteness decision for a (1,1)-bivector. The matrix of q is
/// symmetrized and its characteristic polynomial decides:
/// all eigenvalues >= 0 iff the coefficients weakly alternate in sign.
/// A verdict of positive means semidefinite with kernel; positive_definite
/// means no kernel. Throws InputError when W_{L'} xi != 0 (wrong type), which
/// is distinct from indefiniteness.
PositivityVerdict positivity_test(const Multivector& xi, const LinearOperator& l, const Rat& s);

/// ker xi = {x in V* : xi(x, .) = 0}: the null space of the antisymmetric
/// coordinate matrix of xi, as a subspace of the dual.
Subspace bivector_kernel(const Multivector& xi);

/// Null space of the positivity form q; requires xi positive (semidefinite
/// or zero), and asserts the null space equals bivector_kernel(xi) exactly.
Subspace degenerate_directions(const Multivector& xi, const LinearOperator& l, const Rat& s);

struct ConfineResult {
    bool confined;
    Multivector value;  // coordinates in Lambda^2 W1 when confined, else the
                        // nonzero image in Lambda^2 of the quotient
};

/// Tests whether xi dies in Lambda^2(W/W1); if so, re-expresses xi as an
/// element of Lambda^2 W1 (guaranteed to succeed for positive xi), otherwise
/// returns the nonzero quotient image. Positivity of xi with respect to the
/// supplied operator is verified first.
ConfineResult confine_to_subspace(const Multivector& xi, const Subspace& w1, const LinearOperator& l,
                                  const Rat& s);

enum class CompatibleKind { unique, none, invariant_all };

struct CompatibleStructures {
    CompatibleKind kind;
    std::optional<SphereDirection> direction;    // unique case
    std::optional<PositivityVerdict> positivity; // unique case
};

/// Solves a W_I xi + b W_J xi + c W_K xi = 0 exactly. A one-dimensional
/// solution space gives two antipodal directions, of which at most one can
/// certify positivity; a three-dimensional space means xi is su(2)-invariant
/// and positivity necessarily fails (checked). Zero xi returns invariant_all
/// by convention. A two-dimensional solution space cannot occur for the
/// su(2) action and raises InternalError.
CompatibleStructures compatible_structures(const HypercomplexStructure& h, const Multivector& xi);

/// Functorial push-forward Lambda^2(matrix) applied to a degree-2
/// multivector.
Multivector quotient_bivector(const QuotientMap& q, const Multivector& xi);

struct ExceptionalEntry {
    int level;
    Multivector cycle;        // 2-cycle in the level subalgebra coordinates
    Multivector image;        // its push-forward in Lambda^2 of the abelian quotient
    SphereDirection direction;
    PositivityVerdict verdict;
};

/// Height-bounded under-approximation of the exceptional set R = union R_i.
/// For each proper level i (those with g_i^H != 0), the 2-cycles of the CE
/// complex of g_{i-1}^H are pushed through r_i onto the abelian quotient a_i
/// and scanned for directions certifying positivity. Levels with g_i^H = 0
/// are skipped: there the projection is an isomorphism and every rational
/// direction admits positive classes, so the enumeration would carry no
/// information. Entries are sorted by level, then by cycle coordinates.
std::vector<ExceptionalEntry> exceptional_directions(const LieAlgebra& g, const HypercomplexStructure& h,
                                                     int height_bound);

struct TransversalKahlerReport {
    bool closed;
    bool type_11;
    bool kernel_matches;
    Subspace kernel;  // actual kernel of omega as a map g -> g*
    bool quotient_positive_definite;

    bool ok() const { return closed && type_11 && kernel_matches && quotient_positive_definite; }
};

/// omega is transversal Kahler for the subalgebra f iff d omega = 0, omega
/// has type (1,1) for L, ker omega = f exactly, and the induced form on g/f
/// is positive definite. f must be a subalgebra.
TransversalKahlerReport is_transversal_kahler(const CEComplex& complex, const Multivector& omega,
                                              const Subspace& f, const LinearOperator& l, const Rat& s);

/// Rationals p/q with |p| <= height and 1 <= q <= height, ascending; the
/// coefficient alphabet for exceptional_directions.
std::vector<Rat> height_ladder(int height);

}  // namespace hsolve
