#include "hsolve/exterior.hpp"

#include <algorithm>

namespace hsolve {

long binom(int n, int k) {
    if (k < 0 || k > n || n < 0) return 0;
    long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

std::vector<std::vector<int>> k_subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) return out;
    std::vector<int> cur(k);
    for (int i = 0; i < k; ++i) cur[i] = i;
    for (;;) {
        out.push_back(cur);
        int p = k - 1;
        while (p >= 0 && cur[p] == n - k + p) --p;
        if (p < 0) break;
        ++cur[p];
        for (int q = p + 1; q < k; ++q) cur[q] = cur[q - 1] + 1;
    }
    return out;
}

int subset_index(const std::vector<int>& subset, int n) {
    int k = static_cast<int>(subset.size());
    long rank = 0;
    int prev = -1;
    for (int p = 0; p < k; ++p) {
        for (int v = prev + 1; v < subset[p]; ++v) rank += binom(n - 1 - v, k - 1 - p);
        prev = subset[p];
    }
    return static_cast<int>(rank);
}

namespace {

/// Sorts indices ascending, returning the permutation sign; 0 on repeats.
int sort_sign(std::vector<int>& idx) {
    int sign = 1;
    for (size_t i = 1; i < idx.size(); ++i)
        for (size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
            if (idx[j - 1] == idx[j]) return 0;
            std::swap(idx[j - 1], idx[j]);
            sign = -sign;
        }
    return sign;
}

}  // namespace

Multivector Multivector::monomial(int ambient_dim, const std::vector<int>& indices, const Rat& c, bool form) {
    int k = static_cast<int>(indices.size());
    Multivector m(ambient_dim, k, form);
    for (int i : indices)
        if (i < 0 || i >= ambient_dim) throw InputError("monomial index out of range");
    std::vector<int> idx = indices;
    int sign = sort_sign(idx);
    if (sign == 0 || c == 0 || k > ambient_dim) return m;
    m.coord(subset_index(idx, ambient_dim)) = Rat(sign) * c;
    return m;
}

Multivector Multivector::wedge(const Multivector& other) const {
    if (ambient_ != other.ambient_ || form_ != other.form_)
        throw InputError("wedge: incompatible multivectors");
    int k = degree_ + other.degree_;
    Multivector out(ambient_, k, form_);
    if (k > ambient_) return out;
    auto lhs = k_subsets(ambient_, degree_);
    auto rhs = k_subsets(ambient_, other.degree_);
    for (size_t a = 0; a < lhs.size(); ++a) {
        if (coords_[a] == 0) continue;
        for (size_t b = 0; b < rhs.size(); ++b) {
            if (other.coords_[b] == 0) continue;
            std::vector<int> merged = lhs[a];
            merged.insert(merged.end(), rhs[b].begin(), rhs[b].end());
            int sign = sort_sign(merged);
            if (sign == 0) continue;
            out.coord(subset_index(merged, ambient_)) += Rat(sign) * coords_[a] * other.coords_[b];
        }
    }
    return out;
}

Rat pairing(const Multivector& form, const Multivector& vec) {
    if (!form.is_form() || vec.is_form()) throw InputError("pairing expects (form, vector)");
    if (form.ambient_dim() != vec.ambient_dim() || form.degree() != vec.degree())
        throw InputError("pairing shape mismatch");
    Rat r(0);
    for (size_t i = 0; i < form.coords().size(); ++i) r += form.coords()[i] * vec.coords()[i];
    return r;
}

QMatrix CEComplex::build_delta(int k) const {
    int n = g_.dim();
    QMatrix m(static_cast<int>(binom(n, k - 1)), static_cast<int>(binom(n, k)));
    if (k < 2) return m;  // delta vanishes on degrees 0 and 1
    auto sources = k_subsets(n, k);
    for (size_t col = 0; col < sources.size(); ++col) {
        const std::vector<int>& s = sources[col];
        for (int r = 0; r < k; ++r)
            for (int t = r + 1; t < k; ++t) {
                // Eq. signs are for 1-based positions: (-1)^(r+s+1).
                int sign0 = ((r + 1 + t + 1 + 1) % 2 == 0) ? 1 : -1;
                Vec br = g_.bracket_basis(s[r], s[t]);
                std::vector<int> rest;
                for (int p = 0; p < k; ++p)
                    if (p != r && p != t) rest.push_back(s[p]);
                for (int l = 0; l < n; ++l) {
                    if (br[l] == 0) continue;
                    bool repeat = false;
                    int pos = 0;
                    for (int e : rest) {
                        if (e == l) repeat = true;
                        if (e < l) ++pos;
                    }
                    if (repeat) continue;
                    std::vector<int> target = rest;
                    target.insert(target.begin() + pos, l);
                    int sign = (pos % 2 == 0) ? 1 : -1;
                    m.at(subset_index(target, n), static_cast<int>(col)) += Rat(sign0 * sign) * br[l];
                }
            }
    }
    return m;
}

const QMatrix& CEComplex::delta_matrix(int k) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = delta_cache_.find(k);
    if (it == delta_cache_.end()) it = delta_cache_.emplace(k, build_delta(k)).first;
    return it->second;
}

const QMatrix& CEComplex::d_matrix(int k) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = d_cache_.find(k);
    if (it == d_cache_.end()) {
        auto dit = delta_cache_.find(k + 1);
        if (dit == delta_cache_.end()) dit = delta_cache_.emplace(k + 1, build_delta(k + 1)).first;
        it = d_cache_.emplace(k, -dit->second.transpose()).first;
    }
    return it->second;
}

Multivector CEComplex::d(const Multivector& form) const {
    if (!form.is_form()) throw InputError("d expects a form");
    if (form.ambient_dim() != g_.dim()) throw InputError("d: ambient dimension mismatch");
    if (form.degree() > g_.dim()) throw InputError("d: degree exceeds dimension");
    const QMatrix& m = d_matrix(form.degree());
    return Multivector(g_.dim(), form.degree() + 1, true, m.apply(form.coords()));
}

Multivector CEComplex::delta(const Multivector& vec) const {
    if (vec.is_form()) throw InputError("delta expects a multivector, not a form");
    if (vec.ambient_dim() != g_.dim()) throw InputError("delta: ambient dimension mismatch");
    if (vec.degree() < 1) throw InputError("delta: degree must be at least 1");
    const QMatrix& m = delta_matrix(vec.degree());
    return Multivector(g_.dim(), vec.degree() - 1, false, m.apply(vec.coords()));
}

std::vector<int> CEComplex::betti_numbers() const {
    int n = g_.dim();
    std::vector<int> ranks(n + 2, 0);  // ranks[k] = rank of d_k
    for (int k = 0; k <= n; ++k) ranks[k] = d_matrix(k).rank();
    std::vector<int> betti(n + 1, 0);
    for (int k = 0; k <= n; ++k) {
        int ker = static_cast<int>(binom(n, k)) - ranks[k];
        betti[k] = ker - (k > 0 ? ranks[k - 1] : 0);
    }
    // Cross-check against homology ranks of the delta complex.
    for (int k = 0; k <= n; ++k) {
        int rank_dk = delta_matrix(k).rank();          // delta: k -> k-1
        int rank_dk1 = delta_matrix(k + 1).rank();     // delta: k+1 -> k
        int hk = static_cast<int>(binom(n, k)) - rank_dk - rank_dk1;
        if (hk != betti[k])
            throw InternalError("Betti numbers disagree between cochain and chain complexes");
    }
    return betti;
}

QMatrix exterior_square(const QMatrix& m) {
    int rows = m.rows(), cols = m.cols();
    auto src = k_subsets(cols, 2);
    auto dst = k_subsets(rows, 2);
    QMatrix out(static_cast<int>(dst.size()), static_cast<int>(src.size()));
    for (size_t c = 0; c < src.size(); ++c) {
        int i = src[c][0], j = src[c][1];
        for (size_t r = 0; r < dst.size(); ++r) {
            int a = dst[r][0], b = dst[r][1];
            out.at(static_cast<int>(r), static_cast<int>(c)) =
                m.at(a, i) * m.at(b, j) - m.at(a, j) * m.at(b, i);
        }
    }
    return out;
}

QMatrix weil_matrix(const QMatrix& l) {
    if (l.rows() != l.cols()) throw InputError("weil_matrix expects a square operator");
    int n = l.rows();
    auto pairs = k_subsets(n, 2);
    QMatrix w(static_cast<int>(pairs.size()), static_cast<int>(pairs.size()));
    for (size_t c = 0; c < pairs.size(); ++c) {
        int i = pairs[c][0], j = pairs[c][1];
        // L e_i ^ e_j + e_i ^ L e_j
        for (int a = 0; a < n; ++a) {
            if (l.at(a, i) != 0 && a != j) {
                std::vector<int> t = {a, j};
                int sign = 1;
                if (a > j) {
                    std::swap(t[0], t[1]);
                    sign = -1;
                }
                w.at(subset_index(t, n), static_cast<int>(c)) += Rat(sign) * l.at(a, i);
            }
            if (l.at(a, j) != 0 && a != i) {
                std::vector<int> t = {i, a};
                int sign = 1;
                if (i > a) {
                    std::swap(t[0], t[1]);
                    sign = -1;
                }
                w.at(subset_index(t, n), static_cast<int>(c)) += Rat(sign) * l.at(a, j);
            }
        }
    }
    return w;
}

bool squares_to_minus_s(const QMatrix& l, const Rat& s) {
    if (l.rows() != l.cols()) return false;
    QMatrix sq = l * l;
    for (int i = 0; i < sq.rows(); ++i)
        for (int j = 0; j < sq.cols(); ++j) {
            if (i == j) {
                if (sq.at(i, j) != -s) return false;
            } else if (sq.at(i, j) != 0) {
                return false;
            }
        }
    return true;
}

PqParts pq_projections(const Multivector& xi, const QMatrix& l, const Rat& s) {
    if (xi.is_form() || xi.degree() != 2) throw InputError("pq_projections expects a bivector");
    if (s == 0) throw InputError("pq_projections: zero scale");
    if (s < 0) throw InputError("pq_projections: negative scale");
    if (l.rows() != xi.ambient_dim()) throw InputError("pq_projections: operator dimension mismatch");
    if (!squares_to_minus_s(l, s)) throw InputError("pq_projections: operator does not square to -s Id");
    QMatrix sq = exterior_square(l);
    Vec sigma = sq.apply(xi.coords());
    Rat inv_s(Rat(1) / s);
    Multivector sxi(xi.ambient_dim(), 2, false, vec_scale(inv_s, sigma));
    Rat half(1, 2);
    Multivector inv = half * (xi + sxi);
    Multivector anti = half * (xi - sxi);
    return PqParts{anti, inv};
}

}  // namespace hsolve
