#include "hsolve/complex_ops.hpp"

#include <sstream>

namespace hsolve {

bool LinearOperator::is_almost_complex() const {
    QMatrix sq = matrix * matrix;
    int n = dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j && sq.at(i, j) != -1) return false;
            if (i != j && sq.at(i, j) != 0) return false;
        }
    return true;
}

std::optional<std::string> HypercomplexStructure::quaternion_violation() const {
    if (J.dim() != I.dim() || K.dim() != I.dim()) return "operator dimensions differ";
    if (!I.is_almost_complex()) return "I^2 != -Id";
    if (!J.is_almost_complex()) return "J^2 != -Id";
    if (!K.is_almost_complex()) return "K^2 != -Id";
    if (!(I.matrix * J.matrix == K.matrix)) return "IJ != K";
    if (!(J.matrix * I.matrix == -K.matrix)) return "JI != -K";
    return std::nullopt;
}

SphereDirection SphereDirection::canonical() const {
    if (is_zero()) return *this;
    mpz_class num_gcd(0), den_lcm(1);
    for (const Rat* x : {&a, &b, &c}) {
        if (*x == 0) continue;
        mpz_class n = x->get_num();
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
        mpz_class d = x->get_den();
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
    }
    Rat f(den_lcm, num_gcd < 0 ? mpz_class(-num_gcd) : num_gcd);
    f.canonicalize();
    if (f < 0) f = -f;
    return SphereDirection{Rat(a * f), Rat(b * f), Rat(c * f)};
}

std::string SphereDirection::str() const {
    return rat_str(a) + "," + rat_str(b) + "," + rat_str(c);
}

Vec nijenhuis(const LieAlgebra& g, const LinearOperator& op, const Vec& u, const Vec& v) {
    if (op.dim() != g.dim()) throw InputError("nijenhuis: operator dimension mismatch");
    if (!op.is_almost_complex()) throw InputError("nijenhuis: operator does not square to -Id");
    Vec iu = op.apply(u);
    Vec iv = op.apply(v);
    Vec r = g.bracket(u, v);
    r = vec_add(r, op.apply(g.bracket(iu, v)));
    r = vec_add(r, op.apply(g.bracket(u, iv)));
    r = vec_sub(r, g.bracket(iu, iv));
    return r;
}

namespace {

/// Complexified bracket with Gaussian-rational coordinates.
std::vector<GaussRat> cbracket(const LieAlgebra& g, const std::vector<GaussRat>& u,
                               const std::vector<GaussRat>& v) {
    std::vector<GaussRat> r(g.dim());
    for (const StructureEntry& e : g.constants()) {
        GaussRat coef = u[e.i] * v[e.j] - u[e.j] * v[e.i];
        if (coef.is_zero()) continue;
        GaussRat c(e.c);
        r[e.k] += coef * c;
    }
    return r;
}

std::vector<int> row_pivots(const CMatrix& m) {
    std::vector<int> p;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (!m.at(i, j).is_zero()) {
                p.push_back(j);
                break;
            }
    return p;
}

std::vector<GaussRat> creduce(const CMatrix& basis, const std::vector<int>& pivots,
                              std::vector<GaussRat> v) {
    for (int r = 0; r < basis.rows(); ++r) {
        GaussRat c = v[pivots[r]];
        if (c.is_zero()) continue;
        for (int j = 0; j < basis.cols(); ++j) v[j] -= c * basis.at(r, j);
    }
    return v;
}

bool call_is_zero(const std::vector<GaussRat>& v) {
    for (const GaussRat& x : v)
        if (!x.is_zero()) return false;
    return true;
}

/// RREF basis of g^{1,0} = ker(I - sqrt(-1) Id) in the complexification.
CMatrix holomorphic_space(const LieAlgebra& g, const LinearOperator& op) {
    CMatrix a = complexify(op.matrix);
    for (int i = 0; i < g.dim(); ++i) a.at(i, i) -= GaussRat::sqrt_minus_one();
    CMatrix k = a.kernel();
    if (2 * k.rows() != g.dim())
        throw InternalError("holomorphic eigenspace has unexpected dimension");
    return k;
}

}  // namespace

IntegrabilityResult is_integrable(const LieAlgebra& g, const LinearOperator& op) {
    if (op.dim() != g.dim()) throw InputError("is_integrable: operator dimension mismatch");
    if (!op.is_almost_complex()) throw InputError("is_integrable: operator does not square to -Id");

    IntegrabilityResult result{true, std::nullopt};
    for (int i = 0; i < g.dim() && result.integrable; ++i)
        for (int j = i + 1; j < g.dim(); ++j) {
            Vec ei = vec_zero(g.dim()), ej = vec_zero(g.dim());
            ei[i] = 1;
            ej[j] = 1;
            if (!vec_is_zero(nijenhuis(g, op, ei, ej))) {
                result.integrable = false;
                result.witness = std::make_pair(i, j);
                break;
            }
        }

    // Independent criterion: [g^{1,0}, g^{1,0}] inside g^{1,0}.
    CMatrix hol = holomorphic_space(g, op);
    std::vector<int> pivots = row_pivots(hol);
    bool closed = true;
    for (int a = 0; a < hol.rows() && closed; ++a)
        for (int b = a + 1; b < hol.rows(); ++b) {
            std::vector<GaussRat> br = cbracket(g, hol.row(a), hol.row(b));
            if (!call_is_zero(creduce(hol, pivots, br))) {
                closed = false;
                break;
            }
        }
    if (closed != result.integrable)
        throw InternalError("integrability criteria disagree (Nijenhuis vs holomorphic closure)");
    return result;
}

bool is_abelian_structure(const LieAlgebra& g, const LinearOperator& op) {
    IntegrabilityResult integ = is_integrable(g, op);
    if (!integ.integrable) throw InputError("is_abelian_structure requires an integrable operator");
    CMatrix hol = holomorphic_space(g, op);
    for (int a = 0; a < hol.rows(); ++a)
        for (int b = a + 1; b < hol.rows(); ++b)
            if (!call_is_zero(cbracket(g, hol.row(a), hol.row(b)))) return false;
    return true;
}

IFiltration i_filtration(const LieAlgebra& g, const LinearOperator& op) {
    if (op.dim() != g.dim()) throw InputError("i_filtration: operator dimension mismatch");
    std::vector<Subspace> series = lower_central_series(g);
    if (!series.back().is_zero()) throw InputError("i_filtration requires a nilpotent algebra");
    IntegrabilityResult integ = is_integrable(g, op);
    if (!integ.integrable) throw InputError("i_filtration requires an integrable operator");

    IFiltration out;
    for (size_t i = 1; i < series.size(); ++i)
        out.terms.push_back(series[i].sum(series[i].image_under(op.matrix)));
    if (out.terms.empty() || !out.terms.back().is_zero())
        out.terms.push_back(Subspace::zero(g.dim()));

    for (size_t i = 0; i < out.terms.size(); ++i) {
        const Subspace& t = out.terms[i];
        if (!t.contains(t.image_under(op.matrix))) {
            std::ostringstream os;
            os << "term g_" << (i + 1) << "^I is not I-invariant";
            out.failures.push_back(os.str());
        }
        if (i + 1 < out.terms.size()) {
            Subspace br = bracket_subspaces(g, t, t);
            if (!out.terms[i + 1].contains(br)) {
                std::ostringstream os;
                os << "[g_" << (i + 1) << "^I, g_" << (i + 1) << "^I] is not inside g_" << (i + 2) << "^I";
                out.failures.push_back(os.str());
            }
        }
    }
    if (static_cast<int>(out.terms.front().dim()) == g.dim())
        out.failures.push_back("g_1^I equals the whole algebra");
    return out;
}

Subspace quaternionic_span(const HypercomplexStructure& h, const Subspace& s) {
    if (h.dim() != s.ambient_dim()) throw InputError("quaternionic_span: dimension mismatch");
    Subspace t = s.sum(s.image_under(h.I.matrix))
                     .sum(s.image_under(h.J.matrix))
                     .sum(s.image_under(h.K.matrix));
    for (const LinearOperator* op : {&h.I, &h.J, &h.K})
        if (!t.contains(t.image_under(op->matrix)))
            throw InternalError("quaternionic span is not H-invariant");
    return t;
}

HFiltration h_filtration(const LieAlgebra& g, const HypercomplexStructure& h) {
    if (h.dim() != g.dim()) throw InputError("h_filtration: operator dimension mismatch");
    if (auto violation = h.quaternion_violation())
        throw InputError("h_filtration: " + *violation);

    HFiltration out;
    Subspace current = Subspace::full(g.dim());
    for (;;) {
        Subspace next = quaternionic_span(h, bracket_subspaces(g, current, current));
        if (!out.terms.empty() && next == out.terms.back()) break;  // stabilized
        out.terms.push_back(next);
        size_t i = out.terms.size();
        if (!is_rational_subalgebra(g, next)) {
            std::ostringstream os;
            os << "term g_" << i << "^H is not bracket-closed";
            out.diagnostics.push_back(os.str());
        }
        for (const LinearOperator* op : {&h.I, &h.J, &h.K})
            if (!next.contains(next.image_under(op->matrix))) {
                std::ostringstream os;
                os << "term g_" << i << "^H is not H-invariant";
                out.diagnostics.push_back(os.str());
                break;
            }
        if (next.is_zero()) break;
        if (!current.contains(next)) {
            std::ostringstream os;
            os << "term g_" << i << "^H is not contained in the previous term";
            out.diagnostics.push_back(os.str());
            break;
        }
        current = next;
    }
    return out;
}

HSolvability is_h_solvable(const LieAlgebra& g, const HypercomplexStructure& h) {
    HFiltration f = h_filtration(g, h);
    if (f.terms.back().is_zero())
        return HSolvability{true, static_cast<int>(f.terms.size()), std::nullopt};
    return HSolvability{false, 0, f.terms.back()};
}

InducedOperator induced_structure(const HypercomplexStructure& h, const SphereDirection& dir) {
    if (dir.is_zero()) throw InputError("induced_structure: zero direction");
    if (auto violation = h.quaternion_violation())
        throw InputError("induced_structure: " + *violation);
    QMatrix m = dir.a * h.I.matrix + dir.b * h.J.matrix + dir.c * h.K.matrix;
    Rat s(dir.a * dir.a + dir.b * dir.b + dir.c * dir.c);
    QMatrix sq = m * m;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            Rat expect = (i == j) ? Rat(-s) : Rat(0);
            if (sq.at(i, j) != expect) throw InternalError("induced operator does not square to -s Id");
        }
    return InducedOperator{LinearOperator(std::move(m)), s};
}

QMatrix restrict_operator(const QMatrix& op, const Subspace& s) {
    if (op.cols() != s.ambient_dim()) throw InputError("restrict_operator: dimension mismatch");
    QMatrix out(s.dim(), s.dim());
    for (int a = 0; a < s.dim(); ++a) {
        Vec img = op.apply(s.basis_row(a));
        if (!s.contains(img)) throw PropertyError("operator does not preserve the subspace");
        Vec coords = s.coordinates(img);
        for (int r = 0; r < s.dim(); ++r) out.at(r, a) = coords[r];
    }
    return out;
}

QMatrix induce_operator_on_quotient(const QMatrix& op, const QuotientMap& q) {
    if (op.cols() != q.source_dim) throw InputError("induce_operator_on_quotient: dimension mismatch");
    if (!q.kernel.contains(q.kernel.image_under(op)))
        throw PropertyError("operator does not preserve the quotient kernel");
    // p o op o section; well defined because the kernel is invariant.
    QMatrix sec(q.source_dim, q.target_dim);
    std::vector<int> np = q.kernel.nonpivots();
    for (int a = 0; a < q.target_dim; ++a) sec.at(np[a], a) = 1;
    return q.matrix * (op * sec);
}

HypercomplexStructure restrict_structure(const HypercomplexStructure& h, const Subspace& s) {
    HypercomplexStructure out{LinearOperator(restrict_operator(h.I.matrix, s)),
                              LinearOperator(restrict_operator(h.J.matrix, s)),
                              LinearOperator(restrict_operator(h.K.matrix, s))};
    if (auto violation = out.quaternion_violation())
        throw InternalError("restricted structure violates quaternion relations: " + *violation);
    return out;
}

HypercomplexStructure induce_structure_on_quotient(const HypercomplexStructure& h, const QuotientMap& q) {
    HypercomplexStructure out{LinearOperator(induce_operator_on_quotient(h.I.matrix, q)),
                              LinearOperator(induce_operator_on_quotient(h.J.matrix, q)),
                              LinearOperator(induce_operator_on_quotient(h.K.matrix, q))};
    if (auto violation = out.quaternion_violation())
        throw InternalError("induced structure violates quaternion relations: " + *violation);
    return out;
}

}  // namespace hsolve
