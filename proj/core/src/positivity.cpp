#include "hsolve/positivity.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace hsolve {

std::string positivity_name(Positivity p) {
    switch (p) {
        case Positivity::zero: return "zero";
        case Positivity::positive: return "positive";
        case Positivity::positive_definite: return "positive_definite";
        case Positivity::indefinite: return "indefinite";
        case Positivity::negative: return "negative";
    }
    return "?";
}

namespace {

/// Antisymmetric coordinate matrix: X[i][j] = coefficient of e_i ^ e_j.
QMatrix antisym_matrix(const Multivector& xi) {
    int n = xi.ambient_dim();
    QMatrix x(n, n);
    auto pairs = k_subsets(n, 2);
    for (size_t p = 0; p < pairs.size(); ++p) {
        const Rat& c = xi.coords()[p];
        if (c == 0) continue;
        x.at(pairs[p][0], pairs[p][1]) = c;
        x.at(pairs[p][1], pairs[p][0]) = -c;
    }
    return x;
}

bool weil_annihilates(const Multivector& xi, const QMatrix& l) {
    return vec_is_zero(weil_matrix(l).apply(xi.coords()));
}

}  // namespace

Multivector weil_operator(const HypercomplexStructure& h, const SphereDirection& dir,
                          const Multivector& xi) {
    if (xi.is_form() || xi.degree() != 2) throw InputError("weil_operator expects a bivector");
    InducedOperator ind = induced_structure(h, dir);
    return Multivector(xi.ambient_dim(), 2, false, weil_matrix(ind.op.matrix).apply(xi.coords()));
}

QMatrix positivity_form(const Multivector& xi, const QMatrix& l) {
    if (xi.is_form() || xi.degree() != 2) throw InputError("positivity_form expects a bivector");
    if (l.rows() != xi.ambient_dim()) throw InputError("positivity_form: operator dimension mismatch");
    // q(beta) = xi(beta, L'beta) with (L'beta)(w) = -beta(L'w):
    // q(beta) = -beta^T X L^T beta, symmetrized.
    QMatrix x = antisym_matrix(xi);
    QMatrix m = x * l.transpose();
    QMatrix s(m.rows(), m.cols());
    Rat half(1, 2);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) s.at(i, j) = -half * (m.at(i, j) + m.at(j, i));
    return s;
}

PositivityVerdict positivity_test(const Multivector& xi, const LinearOperator& l, const Rat& s) {
    if (xi.is_form() || xi.degree() != 2) throw InputError("positivity_test expects a bivector");
    if (l.dim() != xi.ambient_dim()) throw InputError("positivity_test: operator dimension mismatch");
    if (s <= 0) throw InputError("positivity_test: scale must be positive");
    if (!squares_to_minus_s(l.matrix, s))
        throw InputError("positivity_test: operator does not square to -s Id");
    if (!weil_annihilates(xi, l.matrix))
        throw InputError("positivity_test: bivector is not of type (1,1) for this operator");

    if (xi.is_zero()) return PositivityVerdict{Positivity::zero, {}, Rat(0)};

    QMatrix form = positivity_form(xi, l.matrix);
    std::vector<Rat> cp = charpoly(form);
    bool psd = charpoly_nonneg_roots(cp);
    SymmetricInertia inertia = symmetric_inertia(form);
    if (psd != (inertia.negative == 0))
        throw InternalError("positivity criteria disagree (charpoly vs inertia)");

    if (psd) {
        bool definite = cp[0] != 0;  // det != 0 up to sign
        return PositivityVerdict{definite ? Positivity::positive_definite : Positivity::positive, {}, Rat(0)};
    }
    if (inertia.positive == 0) {
        return PositivityVerdict{Positivity::negative, inertia.negative_witness, inertia.negative_value};
    }
    return PositivityVerdict{Positivity::indefinite, inertia.negative_witness, inertia.negative_value};
}

Subspace bivector_kernel(const Multivector& xi) {
    if (xi.is_form() || xi.degree() != 2) throw InputError("bivector_kernel expects a bivector");
    QMatrix x = antisym_matrix(xi);
    QMatrix k = x.kernel();
    return Subspace(xi.ambient_dim(), std::move(k));
}

Subspace degenerate_directions(const Multivector& xi, const LinearOperator& l, const Rat& s) {
    PositivityVerdict v = positivity_test(xi, l, s);
    if (v.verdict != Positivity::zero && v.verdict != Positivity::positive &&
        v.verdict != Positivity::positive_definite)
        throw InputError("degenerate_directions requires a positive bivector, got " +
                         positivity_name(v.verdict));
    QMatrix form = positivity_form(xi, l.matrix);
    Subspace null_space(xi.ambient_dim(), form.kernel());
    Subspace ker = bivector_kernel(xi);
    if (!(null_space == ker))
        throw InternalError("null space of the positivity form differs from the bivector kernel");
    return null_space;
}

ConfineResult confine_to_subspace(const Multivector& xi, const Subspace& w1, const LinearOperator& l,
                                  const Rat& s) {
    if (xi.is_form() || xi.degree() != 2) throw InputError("confine_to_subspace expects a bivector");
    if (w1.ambient_dim() != xi.ambient_dim()) throw InputError("confine_to_subspace: dimension mismatch");
    PositivityVerdict v = positivity_test(xi, l, s);
    if (v.verdict == Positivity::indefinite || v.verdict == Positivity::negative)
        throw InputError("confine_to_subspace requires a positive bivector, got " +
                         positivity_name(v.verdict));

    QMatrix proj = w1.quotient_projection();
    Vec image = exterior_square(proj).apply(xi.coords());
    if (!vec_is_zero(image))
        return ConfineResult{false, Multivector(proj.rows(), 2, false, std::move(image))};

    // xi dies in the quotient; for positive xi it must lie in Lambda^2 W1.
    int m = w1.dim();
    QMatrix incl(xi.ambient_dim(), m);
    for (int a = 0; a < m; ++a) {
        Vec col = w1.basis_row(a);
        for (int r = 0; r < xi.ambient_dim(); ++r) incl.at(r, a) = col[r];
    }
    auto sol = exterior_square(incl).solve(xi.coords());
    if (!sol)
        throw InternalError("bivector vanishes in the quotient but is not in Lambda^2 of the subspace");
    return ConfineResult{true, Multivector(m, 2, false, std::move(*sol))};
}

CompatibleStructures compatible_structures(const HypercomplexStructure& h, const Multivector& xi) {
    if (xi.is_form() || xi.degree() != 2) throw InputError("compatible_structures expects a bivector");
    if (h.dim() != xi.ambient_dim()) throw InputError("compatible_structures: dimension mismatch");
    if (auto violation = h.quaternion_violation())
        throw InputError("compatible_structures: " + *violation);

    if (xi.is_zero()) return CompatibleStructures{CompatibleKind::invariant_all, std::nullopt, std::nullopt};

    Vec wi = weil_matrix(h.I.matrix).apply(xi.coords());
    Vec wj = weil_matrix(h.J.matrix).apply(xi.coords());
    Vec wk = weil_matrix(h.K.matrix).apply(xi.coords());
    QMatrix sys(static_cast<int>(wi.size()), 3);
    for (size_t r = 0; r < wi.size(); ++r) {
        sys.at(static_cast<int>(r), 0) = wi[r];
        sys.at(static_cast<int>(r), 1) = wj[r];
        sys.at(static_cast<int>(r), 2) = wk[r];
    }
    QMatrix kern = sys.kernel();

    switch (kern.rows()) {
        case 0:
            return CompatibleStructures{CompatibleKind::none, std::nullopt, std::nullopt};
        case 1: {
            SphereDirection dir{kern.at(0, 0), kern.at(0, 1), kern.at(0, 2)};
            dir = dir.canonical();
            for (const SphereDirection& cand :
                 {dir, SphereDirection{Rat(-dir.a), Rat(-dir.b), Rat(-dir.c)}}) {
                InducedOperator ind = induced_structure(h, cand);
                PositivityVerdict v = positivity_test(xi, ind.op, ind.scale);
                if (v.verdict == Positivity::positive || v.verdict == Positivity::positive_definite)
                    return CompatibleStructures{CompatibleKind::unique, cand, v};
            }
            return CompatibleStructures{CompatibleKind::none, std::nullopt, std::nullopt};
        }
        case 3: {
            // su(2)-invariant: no direction may certify positivity.
            const SphereDirection samples[] = {{Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0)},
                                               {Rat(0), Rat(0), Rat(1)}, {Rat(1), Rat(1), Rat(1)},
                                               {Rat(2), Rat(-1), Rat(3)}};
            for (const SphereDirection& dir : samples) {
                InducedOperator ind = induced_structure(h, dir);
                PositivityVerdict v = positivity_test(xi, ind.op, ind.scale);
                if (v.verdict == Positivity::positive || v.verdict == Positivity::positive_definite)
                    throw InternalError("su(2)-invariant bivector certified positive; impossible");
            }
            return CompatibleStructures{CompatibleKind::invariant_all, std::nullopt, std::nullopt};
        }
        default:
            throw InternalError("Weil annihilator has dimension 2; impossible for the su(2) action");
    }
}

Multivector quotient_bivector(const QuotientMap& q, const Multivector& xi) {
    if (xi.is_form() || xi.degree() != 2) throw InputError("quotient_bivector expects a bivector");
    if (xi.ambient_dim() != q.source_dim) throw InputError("quotient_bivector: dimension mismatch");
    return Multivector(q.target_dim, 2, false, exterior_square(q.matrix).apply(xi.coords()));
}

std::vector<Rat> height_ladder(int height) {
    std::set<Rat> values;
    values.insert(Rat(0));
    for (int p = 1; p <= height; ++p)
        for (int q = 1; q <= height; ++q) {
            Rat v(p, q);
            v.canonicalize();
            values.insert(v);
            values.insert(Rat(-v));
        }
    return std::vector<Rat>(values.begin(), values.end());
}

std::vector<ExceptionalEntry> exceptional_directions(const LieAlgebra& g, const HypercomplexStructure& h,
                                                     int height_bound) {
    if (height_bound < 0) throw InputError("height bound must be nonnegative");
    HSolvability solv = is_h_solvable(g, h);
    if (!solv.solvable) throw InputError("exceptional_directions requires an H-solvable input");
    HFiltration filt = h_filtration(g, h);

    std::vector<ExceptionalEntry> entries;
    std::vector<Rat> ladder = height_ladder(height_bound);

    for (size_t level = 1; level <= filt.terms.size(); ++level) {
        const Subspace& target_kernel = filt.terms[level - 1];
        if (target_kernel.is_zero()) continue;  // improper level; see header

        // Source algebra N = g_{level-1}^H with its restricted structure.
        LieAlgebra source = g;
        HypercomplexStructure source_h = h;
        Subspace kernel_in_source = target_kernel;
        if (level > 1) {
            const Subspace& prev = filt.terms[level - 2];
            auto [sub, incl] = subalgebra(g, prev);
            source = std::move(sub);
            source_h = restrict_structure(h, prev);
            std::vector<Vec> rows;
            for (int r = 0; r < target_kernel.dim(); ++r)
                rows.push_back(prev.coordinates(target_kernel.basis_row(r)));
            kernel_in_source = rows.empty() ? Subspace::zero(source.dim())
                                            : Subspace::span(source.dim(), rows);
        }

        auto [quot, qmap] = quotient(source, kernel_in_source);
        for (const StructureEntry& e : quot.constants())
            if (e.c != 0) throw InternalError("quotient by H[N,N] is not abelian");
        HypercomplexStructure quot_h = induce_structure_on_quotient(source_h, qmap);

        CEComplex complex(source);
        QMatrix cycles = complex.delta_matrix(2).kernel();  // rows = 2-cycle basis
        QMatrix push = exterior_square(qmap.matrix);

        // Basis of cycles adapted to the push-forward: keep cycles whose
        // images increase the rank; combinations of these reach every image
        // bivector, so the scan covers the push-forward of all bounded
        // combinations without walking the huge kernel of r_i.
        std::vector<Vec> sel_cycles, sel_images;
        {
            QMatrix probe(0, push.rows());
            int rank = 0;
            for (int r = 0; r < cycles.rows(); ++r) {
                Vec img = push.apply(cycles.row(r));
                if (vec_is_zero(img)) continue;
                QMatrix trial(rank + 1, push.rows());
                for (int i = 0; i < rank; ++i)
                    for (int j = 0; j < push.rows(); ++j) trial.at(i, j) = probe.at(i, j);
                for (int j = 0; j < push.rows(); ++j) trial.at(rank, j) = img[j];
                if (trial.rank() == rank + 1) {
                    sel_cycles.push_back(cycles.row(r));
                    sel_images.push_back(img);
                    probe = trial;
                    ++rank;
                }
            }
        }

        int e_count = static_cast<int>(sel_cycles.size());
        if (e_count == 0 || ladder.size() <= 1) continue;

        auto positive_scale_key = [](const Vec& v) {
            for (const Rat& x : v)
                if (x != 0) {
                    Rat inv(1 / abs(x));
                    return vec_scale(inv, v);
                }
            return v;
        };

        std::set<Vec, bool (*)(const Vec&, const Vec&)> seen(vec_less);
        std::set<Vec, bool (*)(const Vec&, const Vec&)> directions_found(vec_less);

        std::vector<size_t> odo(e_count, 0);
        for (;;) {
            bool all_zero = true;
            for (int i = 0; i < e_count; ++i)
                if (ladder[odo[i]] != 0) {
                    all_zero = false;
                    break;
                }
            if (!all_zero) {
                Vec img = vec_zero(push.rows());
                for (int i = 0; i < e_count; ++i)
                    if (ladder[odo[i]] != 0) img = vec_add(img, vec_scale(ladder[odo[i]], sel_images[i]));
                if (!vec_is_zero(img) && seen.insert(positive_scale_key(img)).second) {
                    Multivector xi(quot.dim(), 2, false, img);
                    CompatibleStructures cs = compatible_structures(quot_h, xi);
                    if (cs.kind == CompatibleKind::unique) {
                        SphereDirection dir = cs.direction->canonical();
                        Vec dir_key{dir.a, dir.b, dir.c};
                        if (directions_found.insert(dir_key).second) {
                            Vec cyc = vec_zero(static_cast<int>(binom(source.dim(), 2)));
                            for (int i = 0; i < e_count; ++i)
                                if (ladder[odo[i]] != 0)
                                    cyc = vec_add(cyc, vec_scale(ladder[odo[i]], sel_cycles[i]));
                            entries.push_back(ExceptionalEntry{static_cast<int>(level),
                                                               Multivector(source.dim(), 2, false, cyc),
                                                               std::move(xi), dir, *cs.positivity});
                        }
                    }
                }
            }
            int p = e_count - 1;
            while (p >= 0 && odo[p] + 1 == ladder.size()) odo[p--] = 0;
            if (p < 0) break;
            ++odo[p];
        }
    }

    std::sort(entries.begin(), entries.end(), [](const ExceptionalEntry& a, const ExceptionalEntry& b) {
        if (a.level != b.level) return a.level < b.level;
        return vec_less(a.cycle.coords(), b.cycle.coords());
    });
    return entries;
}

TransversalKahlerReport is_transversal_kahler(const CEComplex& complex, const Multivector& omega,
                                              const Subspace& f, const LinearOperator& l, const Rat& s) {
    if (!omega.is_form() || omega.degree() != 2)
        throw InputError("is_transversal_kahler expects a 2-form");
    const LieAlgebra& g = complex.algebra();
    if (omega.ambient_dim() != g.dim() || f.ambient_dim() != g.dim() || l.dim() != g.dim())
        throw InputError("is_transversal_kahler: dimension mismatch");
    if (s <= 0 || !squares_to_minus_s(l.matrix, s))
        throw InputError("is_transversal_kahler: operator does not square to -s Id");
    if (!is_rational_subalgebra(g, f)) throw InputError("is_transversal_kahler: f is not a subalgebra");

    TransversalKahlerReport report{false, false, false, Subspace::zero(g.dim()), false};

    report.closed = complex.d(omega).is_zero();

    // Type (1,1) for forms: omega(Lu, Lv) = s * omega(u, v).
    Vec sigma = exterior_square(l.matrix.transpose()).apply(omega.coords());
    report.type_11 = vec_scale(Rat(1) / s, sigma) == omega.coords();

    QMatrix omega_matrix = QMatrix(g.dim(), g.dim());
    {
        auto pairs = k_subsets(g.dim(), 2);
        for (size_t p = 0; p < pairs.size(); ++p) {
            const Rat& c = omega.coords()[p];
            if (c == 0) continue;
            omega_matrix.at(pairs[p][0], pairs[p][1]) = c;
            omega_matrix.at(pairs[p][1], pairs[p][0]) = -c;
        }
    }
    report.kernel = Subspace(g.dim(), omega_matrix.kernel());
    report.kernel_matches = report.kernel == f;

    // Induced form on g/f: q(v) = omega(v, Lv) must be PSD with null space
    // exactly f.
    QMatrix m = omega_matrix * l.matrix;
    QMatrix t(g.dim(), g.dim());
    Rat half(1, 2);
    for (int i = 0; i < g.dim(); ++i)
        for (int j = 0; j < g.dim(); ++j) t.at(i, j) = half * (m.at(i, j) + m.at(j, i));
    bool psd = charpoly_nonneg_roots(charpoly(t));
    Subspace t_null(g.dim(), t.kernel());
    report.quotient_positive_definite = psd && t_null == f;

    return report;
}

}  // namespace hsolve
