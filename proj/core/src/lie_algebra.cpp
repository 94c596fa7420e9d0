#include "hsolve/lie_algebra.hpp"

#include <algorithm>
#include <sstream>

namespace hsolve {

LieAlgebra::LieAlgebra(int dim, std::vector<std::string> basis_names, std::vector<StructureEntry> constants)
    : dim_(dim), names_(std::move(basis_names)), constants_(std::move(constants)) {
    if (dim_ <= 0) throw InputError("algebra dimension must be positive");
    if (names_.empty()) {
        for (int i = 0; i < dim_; ++i) names_.push_back("e" + std::to_string(i + 1));
    }
    if (static_cast<int>(names_.size()) != dim_) throw InputError("basis name count does not match dimension");
    for (const StructureEntry& e : constants_) {
        if (e.i < 0 || e.j < 0 || e.k < 0 || e.i >= dim_ || e.j >= dim_ || e.k >= dim_)
            throw InputError("structure constant index out of range");
        if (e.i >= e.j) throw InputError("structure constants must be stored with i < j");
    }
    std::sort(constants_.begin(), constants_.end(), [](const StructureEntry& a, const StructureEntry& b) {
        return std::tie(a.i, a.j, a.k) < std::tie(b.i, b.j, b.k);
    });
    for (size_t m = 1; m < constants_.size(); ++m) {
        const StructureEntry& p = constants_[m - 1];
        const StructureEntry& q = constants_[m];
        if (p.i == q.i && p.j == q.j && p.k == q.k)
            throw InputError("duplicate structure constant entry");
    }
    table_.assign(static_cast<size_t>(dim_) * dim_, Vec());
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) table_[static_cast<size_t>(i) * dim_ + j] = vec_zero(dim_);
    for (const StructureEntry& e : constants_) {
        table_[static_cast<size_t>(e.i) * dim_ + e.j][e.k] = e.c;
        table_[static_cast<size_t>(e.j) * dim_ + e.i][e.k] = -e.c;
    }
}

LieAlgebra LieAlgebra::abelian(int dim) { return LieAlgebra(dim, {}, {}); }

Vec LieAlgebra::bracket_basis(int i, int j) const {
    if (i < 0 || j < 0 || i >= dim_ || j >= dim_) throw InputError("bracket_basis index out of range");
    return table_[static_cast<size_t>(i) * dim_ + j];
}

Vec LieAlgebra::bracket(const Vec& u, const Vec& v) const {
    if (static_cast<int>(u.size()) != dim_ || static_cast<int>(v.size()) != dim_)
        throw InputError("bracket: vector dimension mismatch");
    Vec r = vec_zero(dim_);
    for (const StructureEntry& e : constants_) {
        Rat coef(u[e.i] * v[e.j] - u[e.j] * v[e.i]);
        if (coef == 0) continue;
        r[e.k] += coef * e.c;
    }
    return r;
}

std::optional<JacobiViolation> LieAlgebra::validate() const {
    for (int i = 0; i < dim_; ++i)
        for (int j = i + 1; j < dim_; ++j)
            for (int k = j + 1; k < dim_; ++k) {
                Vec ei = vec_zero(dim_), ej = vec_zero(dim_), ek = vec_zero(dim_);
                ei[i] = 1;
                ej[j] = 1;
                ek[k] = 1;
                Vec r = vec_add(vec_add(bracket(bracket_basis(i, j), ek), bracket(bracket_basis(j, k), ei)),
                                bracket(bracket_basis(k, i), ej));
                if (!vec_is_zero(r)) return JacobiViolation{i, j, k, r};
            }
    return std::nullopt;
}

Subspace bracket_subspaces(const LieAlgebra& g, const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != g.dim() || b.ambient_dim() != g.dim())
        throw InputError("bracket_subspaces: ambient dimension mismatch");
    std::vector<Vec> gens;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < b.dim(); ++j) gens.push_back(g.bracket(a.basis_row(i), b.basis_row(j)));
    if (gens.empty()) return Subspace::zero(g.dim());
    return Subspace::span(g.dim(), gens);
}

std::vector<Subspace> lower_central_series(const LieAlgebra& g) {
    std::vector<Subspace> series;
    series.push_back(Subspace::full(g.dim()));
    for (;;) {
        Subspace next = bracket_subspaces(g, series.back(), series.front());
        if (next == series.back()) break;
        series.push_back(next);
        if (next.is_zero()) break;
    }
    return series;
}

bool is_nilpotent(const LieAlgebra& g) { return lower_central_series(g).back().is_zero(); }

std::pair<LieAlgebra, QuotientMap> quotient(const LieAlgebra& g, const Subspace& ideal) {
    if (ideal.ambient_dim() != g.dim()) throw InputError("quotient: ambient dimension mismatch");
    if (ideal.dim() == g.dim())
        throw InputError("quotient by the whole algebra is zero-dimensional");
    // Ideal check with a named violating pair.
    for (int i = 0; i < g.dim(); ++i) {
        Vec ei = vec_zero(g.dim());
        ei[i] = 1;
        for (int r = 0; r < ideal.dim(); ++r) {
            Vec br = g.bracket(ei, ideal.basis_row(r));
            if (!ideal.contains(br)) {
                std::ostringstream os;
                os << "not an ideal: [" << g.basis_name(i) << ", (" << vec_str(ideal.basis_row(r))
                   << ")] is outside the subspace";
                throw InputError(os.str());
            }
        }
    }
    QMatrix proj = ideal.quotient_projection();
    int m = proj.rows();
    std::vector<int> np = ideal.nonpivots();
    std::vector<std::string> names;
    for (int a = 0; a < m; ++a) names.push_back(g.basis_name(np[a]) + "~");
    std::vector<StructureEntry> entries;
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) {
            Vec ea = vec_zero(g.dim()), eb = vec_zero(g.dim());
            ea[np[a]] = 1;
            eb[np[b]] = 1;
            Vec img = proj.apply(g.bracket(ea, eb));
            for (int k = 0; k < m; ++k)
                if (img[k] != 0) entries.push_back(StructureEntry{a, b, k, img[k]});
        }
    LieAlgebra q(m, names, entries);
    QuotientMap map{g.dim(), m, proj, ideal};
    return {std::move(q), std::move(map)};
}

bool is_rational_subalgebra(const LieAlgebra& g, const Subspace& s) {
    if (s.ambient_dim() != g.dim()) throw InputError("subalgebra check: ambient dimension mismatch");
    for (int i = 0; i < s.dim(); ++i)
        for (int j = i + 1; j < s.dim(); ++j)
            if (!s.contains(g.bracket(s.basis_row(i), s.basis_row(j)))) return false;
    return true;
}

std::pair<LieAlgebra, QMatrix> subalgebra(const LieAlgebra& g, const Subspace& s) {
    if (!is_rational_subalgebra(g, s)) throw InputError("subspace is not bracket-closed");
    int m = s.dim();
    if (m == 0) throw InputError("subalgebra of the zero subspace is zero-dimensional");
    QMatrix inclusion(g.dim(), m);
    for (int a = 0; a < m; ++a) {
        Vec col = s.basis_row(a);
        for (int r = 0; r < g.dim(); ++r) inclusion.at(r, a) = col[r];
    }
    std::vector<StructureEntry> entries;
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) {
            Vec br = g.bracket(s.basis_row(a), s.basis_row(b));
            Vec coords = s.coordinates(br);
            for (int k = 0; k < m; ++k)
                if (coords[k] != 0) entries.push_back(StructureEntry{a, b, k, coords[k]});
        }
    std::vector<std::string> names;
    for (int a = 0; a < m; ++a) names.push_back("s" + std::to_string(a + 1));
    return {LieAlgebra(m, names, entries), inclusion};
}

}  // namespace hsolve
