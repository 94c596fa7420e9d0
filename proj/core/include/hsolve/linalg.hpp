#pragma once

#include <initializer_list>
#include <optional>
#include <vector>

#include "hsolve/rational.hpp"

namespace hsolve {

/// Dense matrix over an exact field (Rat or GaussRat). Row-major; dimensions
/// fixed at construction. All elimination is exact, pivots normalized to 1.
template <typename F>
class MatrixT {
public:
    MatrixT() : rows_(0), cols_(0) {}
    MatrixT(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}
    MatrixT(std::initializer_list<std::initializer_list<F>> rows) {
        rows_ = static_cast<int>(rows.size());
        cols_ = rows_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
        a_.reserve(static_cast<size_t>(rows_) * cols_);
        for (const auto& r : rows) {
            if (static_cast<int>(r.size()) != cols_) throw InputError("ragged matrix initializer");
            for (const auto& x : r) a_.push_back(x);
        }
    }

    static MatrixT identity(int n) {
        MatrixT m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = F(1);
        return m;
    }

    static MatrixT from_rows(const std::vector<std::vector<F>>& rows) {
        MatrixT m(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()));
        for (int i = 0; i < m.rows_; ++i) {
            if (static_cast<int>(rows[i].size()) != m.cols_) throw InputError("ragged row list");
            for (int j = 0; j < m.cols_; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    F& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const F& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    std::vector<F> row(int i) const {
        return std::vector<F>(a_.begin() + static_cast<size_t>(i) * cols_,
                              a_.begin() + static_cast<size_t>(i + 1) * cols_);
    }

    bool is_zero() const {
        for (const auto& x : a_)
            if (!scalar_is_zero(x)) return false;
        return true;
    }

    friend bool operator==(const MatrixT& a, const MatrixT& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

    MatrixT transpose() const {
        MatrixT t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    friend MatrixT operator+(const MatrixT& a, const MatrixT& b) {
        a.check_same_shape(b);
        MatrixT r(a.rows_, a.cols_);
        for (size_t k = 0; k < a.a_.size(); ++k) r.a_[k] = a.a_[k] + b.a_[k];
        return r;
    }
    friend MatrixT operator-(const MatrixT& a, const MatrixT& b) {
        a.check_same_shape(b);
        MatrixT r(a.rows_, a.cols_);
        for (size_t k = 0; k < a.a_.size(); ++k) r.a_[k] = a.a_[k] - b.a_[k];
        return r;
    }
    friend MatrixT operator-(const MatrixT& a) {
        MatrixT r(a.rows_, a.cols_);
        for (size_t k = 0; k < a.a_.size(); ++k) r.a_[k] = -a.a_[k];
        return r;
    }
    friend MatrixT operator*(const MatrixT& a, const MatrixT& b) {
        if (a.cols_ != b.rows_) throw InputError("matrix product shape mismatch");
        MatrixT r(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                const F& aik = a.at(i, k);
                if (scalar_is_zero(aik)) continue;
                for (int j = 0; j < b.cols_; ++j) r.at(i, j) += aik * b.at(k, j);
            }
        return r;
    }
    friend MatrixT operator*(const F& c, const MatrixT& a) {
        MatrixT r(a.rows_, a.cols_);
        for (size_t k = 0; k < a.a_.size(); ++k) r.a_[k] = c * a.a_[k];
        return r;
    }

    std::vector<F> apply(const std::vector<F>& v) const {
        if (static_cast<int>(v.size()) != cols_) throw InputError("matrix-vector shape mismatch");
        std::vector<F> r(rows_, F(0));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) {
                if (scalar_is_zero(at(i, j))) continue;
                r[i] += at(i, j) * v[j];
            }
        return r;
    }

    F trace() const {
        F t(0);
        for (int i = 0; i < rows_ && i < cols_; ++i) t += at(i, i);
        return t;
    }

    /// In-place reduced row echelon form. Returns the pivot columns (one per
    /// nonzero row; rank = pivots.size()).
    std::vector<int> rref_in_place() {
        std::vector<int> pivots;
        int r = 0;
        for (int c = 0; c < cols_ && r < rows_; ++c) {
            int p = -1;
            for (int i = r; i < rows_; ++i)
                if (!scalar_is_zero(at(i, c))) {
                    p = i;
                    break;
                }
            if (p < 0) continue;
            swap_rows(p, r);
            F inv = F(1) / at(r, c);
            for (int j = c; j < cols_; ++j) at(r, j) = at(r, j) * inv;
            for (int i = 0; i < rows_; ++i) {
                if (i == r || scalar_is_zero(at(i, c))) continue;
                F f = at(i, c);
                for (int j = c; j < cols_; ++j) at(i, j) -= f * at(r, j);
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    int rank() const {
        MatrixT m = *this;
        return static_cast<int>(m.rref_in_place().size());
    }

    /// Basis of the right null space {x : Ax = 0}, rows = basis vectors,
    /// already in reduced row echelon form.
    MatrixT kernel() const {
        MatrixT m = *this;
        std::vector<int> pivots = m.rref_in_place();
        std::vector<bool> is_pivot(cols_, false);
        for (int c : pivots) is_pivot[c] = true;
        int nullity = cols_ - static_cast<int>(pivots.size());
        MatrixT k(nullity, cols_);
        int out = 0;
        for (int free_c = 0; free_c < cols_; ++free_c) {
            if (is_pivot[free_c]) continue;
            k.at(out, free_c) = F(1);
            for (size_t pr = 0; pr < pivots.size(); ++pr)
                k.at(out, pivots[pr]) = -m.at(static_cast<int>(pr), free_c);
            ++out;
        }
        std::vector<int> kp = k.rref_in_place();
        (void)kp;
        return k;
    }

    /// One solution of Ax = b (free variables set to 0), or nullopt when
    /// inconsistent.
    std::optional<std::vector<F>> solve(const std::vector<F>& b) const {
        if (static_cast<int>(b.size()) != rows_) throw InputError("solve: rhs length mismatch");
        MatrixT aug(rows_, cols_ + 1);
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
            aug.at(i, cols_) = b[i];
        }
        std::vector<int> pivots = aug.rref_in_place();
        if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
        std::vector<F> x(cols_, F(0));
        for (size_t pr = 0; pr < pivots.size(); ++pr) x[pivots[pr]] = aug.at(static_cast<int>(pr), cols_);
        return x;
    }

private:
    void check_same_shape(const MatrixT& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("matrix shape mismatch");
    }
    void swap_rows(int i, int j) {
        if (i == j) return;
        for (int c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
    }

    int rows_;
    int cols_;
    std::vector<F> a_;
};

using QMatrix = MatrixT<Rat>;
using CMatrix = MatrixT<GaussRat>;

CMatrix complexify(const QMatrix& m);

/// Coefficients c[0..n] of the monic characteristic polynomial
/// p(t) = sum c[k] t^k of a square matrix, computed by the
/// Faddeev-LeVerrier recurrence. Exact.
std::vector<Rat> charpoly(const QMatrix& a);

/// All eigenvalues of a symmetric matrix are >= 0 iff the characteristic
/// polynomial coefficients weakly alternate in sign: (-1)^(n-k) c[k] >= 0.
bool charpoly_nonneg_roots(const std::vector<Rat>& cp);

/// Inertia of a symmetric matrix by exact congruence diagonalization,
/// with a rational witness vector for a negative direction when one exists.
struct SymmetricInertia {
    int positive = 0;
    int negative = 0;
    int zero = 0;
    Vec negative_witness;  // empty when negative == 0; q(witness) = negative_value < 0
    Rat negative_value;
};

SymmetricInertia symmetric_inertia(const QMatrix& s);

/// Subspace of Q^n in canonical form: basis rows in reduced row echelon form,
/// pivots 1. Two subspaces are equal iff their matrices are equal.
class Subspace {
public:
    explicit Subspace(int ambient_dim) : ambient_(ambient_dim), basis_(0, ambient_dim) {}
    Subspace(int ambient_dim, QMatrix generators) : ambient_(ambient_dim), basis_(std::move(generators)) {
        if (basis_.cols() != ambient_) throw InputError("subspace generator width mismatch");
        canonicalize();
    }

    static Subspace zero(int ambient_dim) { return Subspace(ambient_dim); }
    static Subspace full(int ambient_dim) { return Subspace(ambient_dim, QMatrix::identity(ambient_dim)); }
    static Subspace span(int ambient_dim, const std::vector<Vec>& generators) {
        return Subspace(ambient_dim, QMatrix::from_rows(generators));
    }

    int ambient_dim() const { return ambient_; }
    int dim() const { return basis_.rows(); }
    const QMatrix& basis() const { return basis_; }
    Vec basis_row(int i) const { return basis_.row(i); }
    const std::vector<int>& pivots() const { return pivots_; }

    bool is_zero() const { return dim() == 0; }

    /// Residual of v after reduction against the basis; zero iff v lies in
    /// the subspace.
    Vec reduce(Vec v) const;

    bool contains(const Vec& v) const { return vec_is_zero(reduce(v)); }
    bool contains(const Subspace& other) const;

    /// Coordinates of v in the subspace basis; requires contains(v).
    Vec coordinates(const Vec& v) const;

    Subspace sum(const Subspace& other) const;

    /// Image {Mv : v in this} under a linear map out of the ambient space.
    Subspace image_under(const QMatrix& m) const;

    /// Projection onto the coordinate complement of the pivot columns:
    /// a (ambient - dim) x ambient matrix of full row rank whose kernel is
    /// exactly this subspace. Rows select the non-pivot coordinates of the
    /// reduction of v against the basis.
    QMatrix quotient_projection() const;

    /// Columns = non-pivot standard basis vectors; a right inverse of
    /// quotient_projection() and a section of the quotient.
    QMatrix quotient_section() const;

    std::vector<int> nonpivots() const;

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }

private:
    void canonicalize() {
        pivots_ = basis_.rref_in_place();
        QMatrix trimmed(static_cast<int>(pivots_.size()), ambient_);
        for (int i = 0; i < trimmed.rows(); ++i)
            for (int j = 0; j < ambient_; ++j) trimmed.at(i, j) = basis_.at(i, j);
        basis_ = std::move(trimmed);
    }

    int ambient_;
    QMatrix basis_;
    std::vector<int> pivots_;
};

Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scale(const Rat& c, const Vec& v);
Vec vec_zero(int n);

}  // namespace hsolve
