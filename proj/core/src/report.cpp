#include "hsolve/report.hpp"

#include <cstdint>
#include <sstream>

#include "hsolve/positivity.hpp"
#include "hsolve/quaternionic_double.hpp"

namespace hsolve {

std::string input_digest(const AlgebraFile& file) {
    std::string text = serialize(file);
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex;
    for (int shift = 60; shift >= 0; shift -= 4) os << ((h >> shift) & 0xF);
    return os.str();
}

namespace {

struct Out {
    bool structured;
    std::ostringstream os;

    void kv(const std::string& key, const std::string& value) {
        if (structured)
            os << key << ' ' << value << '\n';
        else
            os << "  " << key << ": " << value << '\n';
    }
    void line(const std::string& text) { os << text << '\n'; }
};

std::string bool_str(bool b) { return b ? "true" : "false"; }

std::string dims_str(const std::vector<Subspace>& spaces) {
    std::ostringstream os;
    for (size_t i = 0; i < spaces.size(); ++i) {
        if (i) os << ' ';
        os << spaces[i].dim();
    }
    return os.str();
}

HypercomplexStructure require_hypercomplex(const AlgebraFile& file) {
    if (!file.operators.count("I") || !file.operators.count("J") || !file.operators.count("K"))
        throw InputError("command requires operators I, J and K (hypercomplex input)");
    HypercomplexStructure h{file.operators.at("I"), file.operators.at("J"), file.operators.at("K")};
    if (auto violation = h.quaternion_violation()) throw InputError(*violation);
    return h;
}

const LinearOperator& require_operator(const AlgebraFile& file, const std::string& name) {
    auto it = file.operators.find(name);
    if (it == file.operators.end()) throw InputError("input declares no operator named " + name);
    return it->second;
}

int cmd_validate(const AlgebraFile& file, Out& out) {
    auto violation = file.algebra.validate();
    out.kv("validate.result", violation ? "violation" : "ok");
    if (violation) {
        const auto& names = file.algebra.basis_names();
        out.kv("validate.triple",
               names[violation->i] + " " + names[violation->j] + " " + names[violation->k]);
        out.kv("validate.residual", vec_str(violation->residual));
        return 1;
    }
    return 0;
}

int cmd_series(const AlgebraFile& file, Out& out) {
    std::vector<Subspace> series = lower_central_series(file.algebra);
    out.kv("series.length", std::to_string(series.size()));
    out.kv("series.dims", dims_str(series));
    out.kv("series.nilpotent", bool_str(series.back().is_zero()));
    return 0;
}

int cmd_betti(const AlgebraFile& file, Out& out) {
    CEComplex complex(file.algebra);
    std::vector<int> betti = complex.betti_numbers();
    std::ostringstream bs;
    int euler = 0;
    for (size_t k = 0; k < betti.size(); ++k) {
        if (k) bs << ' ';
        bs << betti[k];
        euler += (k % 2 == 0 ? betti[k] : -betti[k]);
    }
    out.kv("betti", bs.str());
    out.kv("betti.euler", std::to_string(euler));
    return 0;
}

int cmd_integrability(const AlgebraFile& file, Out& out) {
    int rc = 0;
    for (const auto& [name, op] : file.operators) {
        IntegrabilityResult r = is_integrable(file.algebra, op);
        out.kv("integrability." + name + ".integrable", bool_str(r.integrable));
        if (!r.integrable) {
            const auto& names = file.algebra.basis_names();
            out.kv("integrability." + name + ".witness",
                   names[r.witness->first] + " " + names[r.witness->second]);
            continue;
        }
        bool abelian = is_abelian_structure(file.algebra, op);
        out.kv("integrability." + name + ".abelian", bool_str(abelian));
        if (file.flags.count("abelian_structure_expected")) {
            out.kv("integrability." + name + ".expected_abelian", "true");
            if (!abelian) rc = 2;
        }
    }
    return rc;
}

int cmd_filtration(const AlgebraFile& file, Out& out) {
    int rc = 0;
    for (const auto& [name, op] : file.operators) {
        if (!is_integrable(file.algebra, op).integrable) {
            out.kv("filtration." + name + ".skipped", "operator is not integrable");
            continue;
        }
        IFiltration f = i_filtration(file.algebra, op);
        out.kv("filtration." + name + ".dims", dims_str(f.terms));
        out.kv("filtration." + name + ".ok", bool_str(f.ok()));
        for (const std::string& msg : f.failures) out.kv("filtration." + name + ".failure", msg);
        if (!f.ok()) rc = 2;
    }
    if (file.flags.count("hypercomplex")) {
        HypercomplexStructure h = require_hypercomplex(file);
        HFiltration f = h_filtration(file.algebra, h);
        out.kv("filtration.H.dims", dims_str(f.terms));
        out.kv("filtration.H.ok", bool_str(f.ok()));
        for (const std::string& msg : f.diagnostics) out.kv("filtration.H.failure", msg);
        if (!f.ok()) rc = 2;
    }
    return rc;
}

int cmd_hsolvable(const AlgebraFile& file, Out& out) {
    HypercomplexStructure h = require_hypercomplex(file);
    HFiltration f = h_filtration(file.algebra, h);
    out.kv("hsolvable.filtration.dims", dims_str(f.terms));
    for (const std::string& msg : f.diagnostics) out.kv("hsolvable.diagnostic", msg);
    HSolvability s = is_h_solvable(file.algebra, h);
    if (s.solvable) {
        out.kv("hsolvable.verdict", "solvable");
        out.kv("hsolvable.steps", std::to_string(s.steps));
    } else {
        out.kv("hsolvable.verdict", "stabilized_nonzero");
        out.kv("hsolvable.stabilized.dim", std::to_string(s.stabilized->dim()));
        for (int r = 0; r < s.stabilized->dim(); ++r)
            out.kv("hsolvable.stabilized.basis", vec_str(s.stabilized->basis_row(r)));
    }
    return f.ok() ? 0 : 2;
}

AlgebraFile double_to_file(const std::string& base_name, const DoubleResult& d) {
    AlgebraFile out{base_name + "-double", d.algebra, {}, {}, {}, {"hypercomplex"}};
    out.operators.emplace("I", d.structure.I);
    out.operators.emplace("J", d.structure.J);
    out.operators.emplace("K", d.structure.K);
    return out;
}

int cmd_double(const AlgebraFile& file, const RunOptions& options, Out& out) {
    const LinearOperator& op = require_operator(file, "I");
    Connection conn = nabla_plus(file.algebra, op);

    if (options.strict_paper_bracket) {
        StrictDoubleReport strict = strict_paper_double(file.algebra, op, conn);
        out.kv("double.mode", "strict-paper-bracket");
        out.kv("double.jacobi", strict.jacobi ? "violation" : "ok");
        if (strict.jacobi) {
            const auto& names = strict.algebra.basis_names();
            out.kv("double.jacobi.triple", names[strict.jacobi->i] + " " + names[strict.jacobi->j] +
                                               " " + names[strict.jacobi->k]);
        }
        if (strict.morphism_witness) {
            const auto& names = file.algebra.basis_names();
            out.kv("double.first_projection_morphism", "violation");
            out.kv("double.first_projection_witness", names[strict.morphism_witness->first] + " " +
                                                          names[strict.morphism_witness->second]);
        } else {
            out.kv("double.first_projection_morphism", "ok");
        }
        bool broken = strict.jacobi.has_value() || strict.morphism_witness.has_value();
        out.kv("double.literal_formula", broken ? "rejected" : "accepted");
        return broken ? 2 : 0;
    }

    DoubleResult d = quaternionic_double(file.algebra, op, conn);
    out.kv("double.dim", std::to_string(d.algebra.dim()));
    out.kv("double.jacobi", "ok");
    out.kv("double.quaternion_relations", "ok");
    out.kv("double.integrable", "I J K");
    HSolvability s = is_h_solvable(d.algebra, d.structure);
    out.kv("double.hsolvable", s.solvable ? "solvable" : "stabilized_nonzero");
    if (s.solvable) out.kv("double.hsolvable.steps", std::to_string(s.steps));
    out.kv("double.abelian_I", bool_str(is_abelian_structure(d.algebra, d.structure.I)));
    AlgebraFile doubled_file = double_to_file(file.name, d);
    out.line("double.file.begin");
    out.os << serialize(doubled_file);
    out.line("double.file.end");
    return 0;
}

int cmd_certify_connection(const AlgebraFile& file, Out& out) {
    const LinearOperator& op = require_operator(file, "I");
    Connection conn = nabla_plus(file.algebra, op);
    ConnectionCertificate cert = certify_connection(file.algebra, op, conn);
    const auto& names = file.algebra.basis_names();
    out.kv("connection.torsion_free", bool_str(cert.torsion_free));
    if (cert.torsion_witness)
        out.kv("connection.torsion_witness",
               names[cert.torsion_witness->first] + " " + names[cert.torsion_witness->second]);
    out.kv("connection.flat", bool_str(cert.flat));
    if (cert.curvature_witness)
        out.kv("connection.curvature_witness", names[std::get<0>(*cert.curvature_witness)] + " " +
                                                   names[std::get<1>(*cert.curvature_witness)] + " " +
                                                   names[std::get<2>(*cert.curvature_witness)]);
    out.kv("connection.complex_linear", bool_str(cert.complex_linear));
    if (cert.linearity_witness)
        out.kv("connection.linearity_witness",
               names[cert.linearity_witness->first] + " " + names[cert.linearity_witness->second]);
    return cert.all() ? 0 : 2;
}

int cmd_exceptional(const AlgebraFile& file, const RunOptions& options, Out& out) {
    HypercomplexStructure h = require_hypercomplex(file);
    std::vector<ExceptionalEntry> entries = exceptional_directions(file.algebra, h, options.height);
    out.kv("exceptional.height", std::to_string(options.height));
    out.kv("exceptional.count", std::to_string(entries.size()));
    for (const ExceptionalEntry& e : entries) {
        std::ostringstream os;
        os << "level " << e.level << " | cycle " << vec_str(e.cycle.coords()) << " | image "
           << vec_str(e.image.coords()) << " | direction " << e.direction.str() << " | "
           << positivity_name(e.verdict.verdict);
        out.kv("exceptional.entry", os.str());
    }
    return 0;
}

int cmd_transversal_kahler(const AlgebraFile& file, const RunOptions& options, Out& out) {
    auto fit = file.forms.find(options.form_name);
    if (fit == file.forms.end())
        throw InputError("input declares no form named " + options.form_name);
    auto sit = file.subspaces.find(options.subspace_name);
    if (sit == file.subspaces.end())
        throw InputError("input declares no subspace named " + options.subspace_name);

    LinearOperator l = require_operator(file, "I");
    Rat s(1);
    if (options.direction) {
        HypercomplexStructure h = require_hypercomplex(file);
        InducedOperator ind = induced_structure(h, *options.direction);
        l = ind.op;
        s = ind.scale;
        out.kv("tk.direction", options.direction->str());
    }
    CEComplex complex(file.algebra);
    TransversalKahlerReport r = is_transversal_kahler(complex, fit->second, sit->second, l, s);
    out.kv("tk.form", options.form_name);
    out.kv("tk.subspace", options.subspace_name);
    out.kv("tk.closed", bool_str(r.closed));
    out.kv("tk.type_11", bool_str(r.type_11));
    out.kv("tk.kernel_matches", bool_str(r.kernel_matches));
    out.kv("tk.kernel.dim", std::to_string(r.kernel.dim()));
    out.kv("tk.quotient_positive_definite", bool_str(r.quotient_positive_definite));
    out.kv("tk.result", bool_str(r.ok()));
    return 0;
}

}  // namespace

RunResult run_command(const std::string& command, const std::string& input, const RunOptions& options) {
    Out out{options.format == ReportFormat::structured, {}};

    if (command == "catalog") {
        if (input.empty()) {
            std::ostringstream names;
            bool first = true;
            for (const std::string& n : catalog_names()) {
                if (!first) names << ' ';
                names << n;
                first = false;
            }
            out.kv("catalog.names", names.str());
            return RunResult{0, out.os.str()};
        }
        return RunResult{0, catalog_text(input)};
    }

    ParseOptions popts;
    popts.enforce_semantics = (command != "validate");
    AlgebraFile file = load_algebra(input, popts);

    if (options.format == ReportFormat::human) {
        out.line("hsolve " + command + ": " + file.name + " (dim " +
                 std::to_string(file.algebra.dim()) + ")");
        out.kv("input.digest", input_digest(file));
    } else {
        out.kv("hsolve.command", command);
        out.kv("input.name", file.name);
        out.kv("input.dim", std::to_string(file.algebra.dim()));
        out.kv("input.digest", input_digest(file));
    }

    int rc;
    if (command == "validate")
        rc = cmd_validate(file, out);
    else if (command == "series")
        rc = cmd_series(file, out);
    else if (command == "betti")
        rc = cmd_betti(file, out);
    else if (command == "integrability")
        rc = cmd_integrability(file, out);
    else if (command == "filtration")
        rc = cmd_filtration(file, out);
    else if (command == "hsolvable")
        rc = cmd_hsolvable(file, out);
    else if (command == "double")
        rc = cmd_double(file, options, out);
    else if (command == "certify-connection")
        rc = cmd_certify_connection(file, out);
    else if (command == "exceptional")
        rc = cmd_exceptional(file, options, out);
    else if (command == "transversal-kahler")
        rc = cmd_transversal_kahler(file, options, out);
    else
        throw InputError("unknown command '" + command + "'");

    return RunResult{rc, out.os.str()};
}

}  // namespace hsolve
