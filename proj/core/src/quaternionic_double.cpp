#include "hsolve/quaternionic_double.hpp"

#include <sstream>

namespace hsolve {

Connection::Connection(int dim) : dim_(dim) {
    if (dim_ <= 0) throw InputError("connection dimension must be positive");
    gamma_.assign(dim_, std::vector<Vec>(dim_, vec_zero(dim_)));
}

Connection::Connection(int dim, std::vector<std::vector<Vec>> gamma) : dim_(dim), gamma_(std::move(gamma)) {
    if (dim_ <= 0) throw InputError("connection dimension must be positive");
    if (static_cast<int>(gamma_.size()) != dim_) throw InputError("connection tensor shape mismatch");
    for (const auto& row : gamma_) {
        if (static_cast<int>(row.size()) != dim_) throw InputError("connection tensor shape mismatch");
        for (const Vec& v : row)
            if (static_cast<int>(v.size()) != dim_) throw InputError("connection tensor shape mismatch");
    }
}

Vec Connection::covariant(const Vec& u, const Vec& v) const {
    if (static_cast<int>(u.size()) != dim_ || static_cast<int>(v.size()) != dim_)
        throw InputError("covariant: vector dimension mismatch");
    Vec r = vec_zero(dim_);
    for (int i = 0; i < dim_; ++i) {
        if (u[i] == 0) continue;
        for (int j = 0; j < dim_; ++j) {
            if (v[j] == 0) continue;
            Rat c(u[i] * v[j]);
            const Vec& g = gamma_[i][j];
            for (int k = 0; k < dim_; ++k) r[k] += c * g[k];
        }
    }
    return r;
}

Connection nabla_plus(const LieAlgebra& g, const LinearOperator& op) {
    if (op.dim() != g.dim()) throw InputError("nabla_plus: operator dimension mismatch");
    IntegrabilityResult integ = is_integrable(g, op);
    if (!integ.integrable) throw InputError("nabla_plus requires an integrable operator");
    Connection conn(g.dim());
    Rat half(1, 2);
    for (int i = 0; i < g.dim(); ++i) {
        Vec ei = vec_zero(g.dim());
        ei[i] = 1;
        Vec iei = op.apply(ei);
        for (int j = 0; j < g.dim(); ++j) {
            Vec ej = vec_zero(g.dim());
            ej[j] = 1;
            Vec v = vec_add(g.bracket(ei, ej), op.apply(g.bracket(iei, ej)));
            conn.covariant_basis(i, j) = vec_scale(half, v);
        }
    }
    return conn;
}

ConnectionCertificate certify_connection(const LieAlgebra& g, const LinearOperator& op,
                                         const Connection& conn) {
    if (conn.dim() != g.dim() || op.dim() != g.dim())
        throw InputError("certify_connection: dimension mismatch");
    ConnectionCertificate cert{true, std::nullopt, true, std::nullopt, true, std::nullopt};
    int n = g.dim();

    for (int a = 0; a < n && cert.torsion_free; ++a)
        for (int b = a + 1; b < n; ++b) {
            Vec t = vec_sub(vec_sub(conn.covariant_basis(a, b), conn.covariant_basis(b, a)),
                            g.bracket_basis(a, b));
            if (!vec_is_zero(t)) {
                cert.torsion_free = false;
                cert.torsion_witness = std::make_pair(a, b);
                break;
            }
        }

    for (int a = 0; a < n && cert.flat; ++a)
        for (int b = a + 1; b < n && cert.flat; ++b) {
            Vec ea = vec_zero(n), eb = vec_zero(n);
            ea[a] = 1;
            eb[b] = 1;
            for (int c = 0; c < n; ++c) {
                Vec ec = vec_zero(n);
                ec[c] = 1;
                Vec r = vec_sub(conn.covariant(ea, conn.covariant_basis(b, c)),
                                conn.covariant(eb, conn.covariant_basis(a, c)));
                r = vec_sub(r, conn.covariant(g.bracket_basis(a, b), ec));
                if (!vec_is_zero(r)) {
                    cert.flat = false;
                    cert.curvature_witness = std::make_tuple(a, b, c);
                    break;
                }
            }
        }

    for (int a = 0; a < n && cert.complex_linear; ++a)
        for (int b = 0; b < n; ++b) {
            Vec ea = vec_zero(n), eb = vec_zero(n);
            ea[a] = 1;
            eb[b] = 1;
            Vec lhs = conn.covariant(ea, op.apply(eb));
            Vec rhs = op.apply(conn.covariant_basis(a, b));
            if (lhs != rhs) {
                cert.complex_linear = false;
                cert.linearity_witness = std::make_pair(a, b);
                break;
            }
        }

    return cert;
}

namespace {

/// Structure constants of g (+) g. The corrected bracket puts [a,c] in the
/// first slot. The literal source formula reads [a,b] -- the bracket of the
/// two components of the *first* argument -- which vanishes on every basis
/// pair of the double and so degenerates to a zero first component.
std::vector<StructureEntry> doubled_constants(const LieAlgebra& g, const Connection& conn,
                                              bool literal_first_component) {
    int n = g.dim();
    int m = 2 * n;
    std::vector<StructureEntry> entries;
    auto doubled_bracket = [&](int p, int q) {
        int a = p < n ? p : -1, b = p < n ? -1 : p - n;
        int c = q < n ? q : -1, d = q < n ? -1 : q - n;
        Vec first = vec_zero(n);
        if (!literal_first_component && a >= 0 && c >= 0) first = g.bracket_basis(a, c);
        Vec second = vec_zero(n);
        if (a >= 0 && d >= 0) second = vec_add(second, conn.covariant_basis(a, d));
        if (c >= 0 && b >= 0) second = vec_sub(second, conn.covariant_basis(c, b));
        Vec out = vec_zero(m);
        for (int k = 0; k < n; ++k) {
            out[k] = first[k];
            out[n + k] = second[k];
        }
        return out;
    };
    for (int p = 0; p < m; ++p)
        for (int q = p + 1; q < m; ++q) {
            Vec br = doubled_bracket(p, q);
            for (int k = 0; k < m; ++k)
                if (br[k] != 0) entries.push_back(StructureEntry{p, q, k, br[k]});
        }
    return entries;
}

std::vector<std::string> doubled_names(const LieAlgebra& g) {
    std::vector<std::string> names;
    for (int i = 0; i < g.dim(); ++i) names.push_back(g.basis_name(i));
    for (int i = 0; i < g.dim(); ++i) names.push_back(g.basis_name(i) + "'");
    return names;
}

}  // namespace

DoubleResult quaternionic_double(const LieAlgebra& g, const LinearOperator& op, const Connection& conn) {
    ConnectionCertificate cert = certify_connection(g, op, conn);
    if (!cert.all())
        throw InputError("quaternionic_double requires a torsion-free, flat, complex-linear connection");
    int n = g.dim();
    int m = 2 * n;

    LieAlgebra doubled(m, doubled_names(g), doubled_constants(g, conn, false));

    if (auto violation = doubled.validate()) {
        std::ostringstream os;
        os << "doubled bracket fails Jacobi at triple (" << doubled.basis_name(violation->i) << ", "
           << doubled.basis_name(violation->j) << ", " << doubled.basis_name(violation->k) << ")";
        throw PropertyError(os.str());
    }

    // I(a,b) = (Ia, -Ib), J(a,b) = (-b, a), K(a,b) = (-Ib, -Ia).
    QMatrix im(m, m), jm(m, m), km(m, m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Rat& v = op.matrix.at(i, j);
            if (v == 0) continue;
            im.at(i, j) = v;
            im.at(n + i, n + j) = -v;
            km.at(i, n + j) = -v;
            km.at(n + i, j) = -v;
        }
    for (int i = 0; i < n; ++i) {
        jm.at(i, n + i) = -1;
        jm.at(n + i, i) = 1;
    }
    HypercomplexStructure h{LinearOperator(std::move(im)), LinearOperator(std::move(jm)),
                            LinearOperator(std::move(km))};
    if (auto violation = h.quaternion_violation())
        throw PropertyError("doubled structure violates quaternion relations: " + *violation);
    const char* op_names[3] = {"I", "J", "K"};
    const LinearOperator* ops[3] = {&h.I, &h.J, &h.K};
    for (int t = 0; t < 3; ++t) {
        IntegrabilityResult integ = is_integrable(doubled, *ops[t]);
        if (!integ.integrable)
            throw PropertyError(std::string("doubled operator ") + op_names[t] + " is not integrable");
    }
    return DoubleResult{std::move(doubled), std::move(h)};
}

StrictDoubleReport strict_paper_double(const LieAlgebra& g, const LinearOperator& op,
                                       const Connection& conn) {
    ConnectionCertificate cert = certify_connection(g, op, conn);
    if (!cert.all())
        throw InputError("strict_paper_double requires a torsion-free, flat, complex-linear connection");
    int n = g.dim();
    LieAlgebra doubled(2 * n, doubled_names(g), doubled_constants(g, conn, true));
    StrictDoubleReport report{doubled, doubled.validate(), std::nullopt};
    for (int i = 0; i < n && !report.morphism_witness; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!vec_is_zero(g.bracket_basis(i, j))) {
                report.morphism_witness = std::make_pair(i, j);
                break;
            }
    return report;
}

}  // namespace hsolve
