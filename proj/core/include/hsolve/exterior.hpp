#pragma once

#include <map>
#include <mutex>
#include <vector>

#include "hsolve/lie_algebra.hpp"

namespace hsolve {

long binom(int n, int k);

/// Strictly increasing k-subsets of {0..n-1} in lexicographic order; this is
/// the wedge basis order used everywhere.
std::vector<std::vector<int>> k_subsets(int n, int k);

/// Lexicographic rank of a sorted subset.
int subset_index(const std::vector<int>& subset, int n);

/// Element of Lambda^k g (vectors) or Lambda^k g* (forms) in the canonical
/// lexicographic wedge basis. Coordinates fully determine the value; degree
/// may exceed the ambient dimension, in which case the space is zero.
class Multivector {
public:
    Multivector(int ambient_dim, int degree, bool form = false)
        : ambient_(ambient_dim), degree_(degree), form_(form), coords_(binom(ambient_dim, degree), Rat(0)) {}
    Multivector(int ambient_dim, int degree, bool form, Vec coords)
        : ambient_(ambient_dim), degree_(degree), form_(form), coords_(std::move(coords)) {
        if (static_cast<long>(coords_.size()) != binom(ambient_, degree_))
            throw InputError("multivector coordinate length mismatch");
    }

    /// Monomial c * e_{idx[0]} ^ ... ^ e_{idx[k-1]} with unsorted indices;
    /// sorting sign applied, repeated index gives zero.
    static Multivector monomial(int ambient_dim, const std::vector<int>& indices, const Rat& c, bool form = false);

    int ambient_dim() const { return ambient_; }
    int degree() const { return degree_; }
    bool is_form() const { return form_; }
    const Vec& coords() const { return coords_; }

    bool is_zero() const { return vec_is_zero(coords_); }

    const Rat& coord(int index) const { return coords_[index]; }
    Rat& coord(int index) { return coords_[index]; }

    Multivector wedge(const Multivector& other) const;

    friend Multivector operator+(const Multivector& a, const Multivector& b) {
        a.check_compatible(b);
        return Multivector(a.ambient_, a.degree_, a.form_, vec_add(a.coords_, b.coords_));
    }
    friend Multivector operator-(const Multivector& a, const Multivector& b) {
        a.check_compatible(b);
        return Multivector(a.ambient_, a.degree_, a.form_, vec_sub(a.coords_, b.coords_));
    }
    friend Multivector operator*(const Rat& c, const Multivector& a) {
        return Multivector(a.ambient_, a.degree_, a.form_, vec_scale(c, a.coords_));
    }
    friend bool operator==(const Multivector& a, const Multivector& b) {
        return a.ambient_ == b.ambient_ && a.degree_ == b.degree_ && a.form_ == b.form_ && a.coords_ == b.coords_;
    }

private:
    void check_compatible(const Multivector& o) const {
        if (ambient_ != o.ambient_ || degree_ != o.degree_ || form_ != o.form_)
            throw InputError("multivector shape mismatch");
    }

    int ambient_;
    int degree_;
    bool form_;
    Vec coords_;
};

/// Determinant pairing of Lambda^k g* with Lambda^k g; the lexicographic
/// bases are dual to each other, so this is the coordinate dot product.
Rat pairing(const Multivector& form, const Multivector& vec);

/// The Chevalley-Eilenberg complex of a Lie algebra. The boundary delta on
/// multivectors is
///   delta(x_1^...^x_k) = sum_{r<s} (-1)^(r+s+1) [x_r,x_s]^x_1^...(no r,s)...^x_k
/// and the differential on forms is d_k = -(delta_{k+1})^T, which restricts
/// to d(a)(x,y) = -a([x,y]) on 1-forms and satisfies the Leibniz rule. With
/// these conventions the determinant pairing satisfies
///   <d a, xi> = - <a, delta xi>
/// in every degree: the duality constant is the single global sign -1.
///
/// Matrices are cached per degree; population is guarded by a mutex, so
/// concurrent first access computes once.
class CEComplex {
public:
    explicit CEComplex(LieAlgebra algebra) : g_(std::move(algebra)) {}

    const LieAlgebra& algebra() const { return g_; }
    int dim() const { return g_.dim(); }

    /// delta on source degree k: binom(n,k-1) x binom(n,k).
    const QMatrix& delta_matrix(int k) const;

    /// d on source degree k: binom(n,k+1) x binom(n,k).
    const QMatrix& d_matrix(int k) const;

    Multivector d(const Multivector& form) const;
    Multivector delta(const Multivector& vec) const;

    /// b_k = dim ker d_k - rank d_{k-1}, cross-checked against the homology
    /// ranks of the delta complex.
    std::vector<int> betti_numbers() const;

private:
    QMatrix build_delta(int k) const;

    LieAlgebra g_;
    mutable std::mutex mu_;
    mutable std::map<int, QMatrix> delta_cache_;
    mutable std::map<int, QMatrix> d_cache_;
};

/// Lambda^2 of a linear map: columns indexed by source pairs (i<j), sending
/// e_i^e_j to (M e_i)^(M e_j).
QMatrix exterior_square(const QMatrix& m);

/// Derivation extension of an operator to Lambda^2:
/// W(u^v) = Lu^v + u^Lv. For a complex structure L this is the Weil operator
/// on bivectors: zero exactly on the (1,1) part, square -4 on the rest.
QMatrix weil_matrix(const QMatrix& l);

struct PqParts {
    Multivector part_20_02;  // sigma-anti-invariant component
    Multivector part_11;     // sigma-invariant component
};

/// Splits a real bivector via the involution sigma = Lambda^2(L')/s, where
/// L'^2 = -s Id with s > 0. The invariant part is the (1,1) component, the
/// anti-invariant part is (2,0)+(0,2).
PqParts pq_projections(const Multivector& xi, const QMatrix& l, const Rat& s);

/// Checks l^2 = -s Id exactly.
bool squares_to_minus_s(const QMatrix& l, const Rat& s);

}  // namespace hsolve
