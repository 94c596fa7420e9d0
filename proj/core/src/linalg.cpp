#include "hsolve/linalg.hpp"

#include <cctype>
#include <sstream>

namespace hsolve {

Rat rat_parse(const std::string& text) {
    if (text.empty()) throw InputError("empty rational literal");
    size_t pos = 0;
    if (text[pos] == '-') ++pos;
    size_t num_start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == num_start) throw InputError("malformed rational literal '" + text + "'");
    std::string num = text.substr(0, pos);
    std::string den = "1";
    if (pos < text.size()) {
        if (text[pos] != '/') throw InputError("malformed rational literal '" + text + "'");
        ++pos;
        size_t den_start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == den_start || pos != text.size())
            throw InputError("malformed rational literal '" + text + "'");
        den = text.substr(den_start);
    }
    mpz_class numerator(num);
    mpz_class denominator(den);
    if (denominator == 0) throw InputError("zero denominator in '" + text + "'");
    Rat r(numerator, denominator);
    r.canonicalize();
    return r;
}

std::string rat_str(const Rat& value) { return value.get_str(); }

bool vec_less(const Vec& a, const Vec& b) {
    size_t n = std::min(a.size(), b.size());
    for (size_t i = 0; i < n; ++i) {
        int c = cmp(a[i], b[i]);
        if (c != 0) return c < 0;
    }
    return a.size() < b.size();
}

bool vec_is_zero(const Vec& v) {
    for (const Rat& x : v)
        if (x != 0) return false;
    return true;
}

std::string vec_str(const Vec& v) {
    std::ostringstream os;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ' ';
        os << rat_str(v[i]);
    }
    return os.str();
}

Vec vec_add(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw InputError("vector length mismatch");
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vec vec_sub(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw InputError("vector length mismatch");
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vec vec_scale(const Rat& c, const Vec& v) {
    Vec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
    return r;
}

Vec vec_zero(int n) { return Vec(static_cast<size_t>(n), Rat(0)); }

CMatrix complexify(const QMatrix& m) {
    CMatrix c(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) c.at(i, j) = GaussRat(m.at(i, j));
    return c;
}

std::vector<Rat> charpoly(const QMatrix& a) {
    if (a.rows() != a.cols()) throw InputError("charpoly of non-square matrix");
    int n = a.rows();
    std::vector<Rat> c(static_cast<size_t>(n) + 1, Rat(0));
    c[n] = 1;
    QMatrix m = QMatrix::identity(n);
    for (int k = 1; k <= n; ++k) {
        QMatrix am = a * m;
        Rat ck(-am.trace() / Rat(k));
        c[n - k] = ck;
        m = am;
        for (int i = 0; i < n; ++i) m.at(i, i) += ck;
    }
    return c;
}

bool charpoly_nonneg_roots(const std::vector<Rat>& cp) {
    int n = static_cast<int>(cp.size()) - 1;
    for (int k = 0; k <= n; ++k) {
        int s = ((n - k) % 2 == 0) ? 1 : -1;
        if (sgn(cp[k]) * s < 0) return false;
    }
    return true;
}

SymmetricInertia symmetric_inertia(const QMatrix& s) {
    if (s.rows() != s.cols()) throw InputError("inertia of non-square matrix");
    int n = s.rows();
    // Lagrange congruence diagonalization A -> E A E^T with the same row
    // operations applied to U, so A = U S U^T throughout and q(u_k) = A[k][k]
    // at the moment row k becomes a pivot. Witnesses are exact.
    QMatrix a = s;
    QMatrix u = QMatrix::identity(n);
    SymmetricInertia result;
    result.negative_value = 0;

    auto row_op_add = [&](int dst, int src, const Rat& f) {
        // A <- E A E^T with E = I + f e_dst e_src^T: row op, then column op
        // on the already-updated matrix.
        for (int c = 0; c < n; ++c) a.at(dst, c) += f * a.at(src, c);
        for (int r = 0; r < n; ++r) a.at(r, dst) += f * a.at(r, src);
        for (int c = 0; c < n; ++c) u.at(dst, c) += f * u.at(src, c);
    };
    auto swap_sym = [&](int i, int j) {
        if (i == j) return;
        for (int c = 0; c < n; ++c) std::swap(a.at(i, c), a.at(j, c));
        for (int r = 0; r < n; ++r) std::swap(a.at(r, i), a.at(r, j));
        for (int c = 0; c < n; ++c) std::swap(u.at(i, c), u.at(j, c));
    };

    for (int k = 0; k < n; ++k) {
        if (a.at(k, k) == 0) {
            int dj = -1;
            for (int j = k + 1; j < n; ++j)
                if (a.at(j, j) != 0) {
                    dj = j;
                    break;
                }
            if (dj >= 0) {
                swap_sym(k, dj);
            } else {
                int oj = -1;
                for (int j = k + 1; j < n; ++j)
                    if (a.at(k, j) != 0) {
                        oj = j;
                        break;
                    }
                if (oj < 0) {
                    ++result.zero;  // u_k is in the radical of the form
                    continue;
                }
                row_op_add(k, oj, Rat(1));  // diagonal becomes 2*a[k][oj] != 0
            }
        }
        Rat pivot(a.at(k, k));
        if (pivot > 0) {
            ++result.positive;
        } else {
            ++result.negative;
            if (result.negative_witness.empty()) {
                result.negative_witness = u.row(k);
                result.negative_value = pivot;
            }
        }
        for (int i = k + 1; i < n; ++i) {
            if (a.at(i, k) == 0) continue;
            Rat f(-a.at(i, k) / pivot);
            row_op_add(i, k, f);
        }
    }
    return result;
}

Vec Subspace::reduce(Vec v) const {
    if (static_cast<int>(v.size()) != ambient_) throw InputError("reduce: ambient dimension mismatch");
    for (int r = 0; r < basis_.rows(); ++r) {
        const Rat& coef = v[pivots_[r]];
        if (coef == 0) continue;
        Rat c = coef;
        for (int j = 0; j < ambient_; ++j) v[j] -= c * basis_.at(r, j);
    }
    return v;
}

bool Subspace::contains(const Subspace& other) const {
    if (other.ambient_ != ambient_) return false;
    for (int r = 0; r < other.basis_.rows(); ++r)
        if (!contains(other.basis_.row(r))) return false;
    return true;
}

Vec Subspace::coordinates(const Vec& v) const {
    if (!contains(v)) throw InputError("coordinates: vector not in subspace");
    Vec c(static_cast<size_t>(dim()), Rat(0));
    for (int r = 0; r < basis_.rows(); ++r) c[r] = v[pivots_[r]];
    return c;
}

Subspace Subspace::sum(const Subspace& other) const {
    if (other.ambient_ != ambient_) throw InputError("sum: ambient dimension mismatch");
    QMatrix stacked(dim() + other.dim(), ambient_);
    for (int i = 0; i < dim(); ++i)
        for (int j = 0; j < ambient_; ++j) stacked.at(i, j) = basis_.at(i, j);
    for (int i = 0; i < other.dim(); ++i)
        for (int j = 0; j < ambient_; ++j) stacked.at(dim() + i, j) = other.basis_.at(i, j);
    return Subspace(ambient_, std::move(stacked));
}

Subspace Subspace::image_under(const QMatrix& m) const {
    if (m.cols() != ambient_) throw InputError("image_under: shape mismatch");
    QMatrix rows(dim(), m.rows());
    for (int i = 0; i < dim(); ++i) {
        Vec img = m.apply(basis_.row(i));
        for (int j = 0; j < m.rows(); ++j) rows.at(i, j) = img[j];
    }
    return Subspace(m.rows(), std::move(rows));
}

std::vector<int> Subspace::nonpivots() const {
    std::vector<bool> is_pivot(ambient_, false);
    for (int c : pivots_) is_pivot[c] = true;
    std::vector<int> np;
    for (int c = 0; c < ambient_; ++c)
        if (!is_pivot[c]) np.push_back(c);
    return np;
}

QMatrix Subspace::quotient_projection() const {
    std::vector<int> np = nonpivots();
    QMatrix proj(static_cast<int>(np.size()), ambient_);
    // Row a reads off coordinate np[a] of (v reduced mod basis); reduction is
    // linear, so column j is reduce(e_j) restricted to the non-pivot slots.
    for (int j = 0; j < ambient_; ++j) {
        Vec ej = vec_zero(ambient_);
        ej[j] = 1;
        Vec red = reduce(ej);
        for (int a = 0; a < proj.rows(); ++a) proj.at(a, j) = red[np[a]];
    }
    return proj;
}

QMatrix Subspace::quotient_section() const {
    std::vector<int> np = nonpivots();
    QMatrix sec(ambient_, static_cast<int>(np.size()));
    for (int a = 0; a < sec.cols(); ++a) sec.at(np[a], a) = 1;
    return sec;
}

}  // namespace hsolve
