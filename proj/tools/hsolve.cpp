#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "hsolve/report.hpp"

namespace {

hsolve::SphereDirection parse_direction(const std::string& text) {
    size_t first = text.find(',');
    size_t second = text.find(',', first == std::string::npos ? first : first + 1);
    if (first == std::string::npos || second == std::string::npos)
        throw hsolve::InputError("--direction expects three comma-separated rationals a,b,c");
    hsolve::SphereDirection d{hsolve::rat_parse(text.substr(0, first)),
                              hsolve::rat_parse(text.substr(first + 1, second - first - 1)),
                              hsolve::rat_parse(text.substr(second + 1))};
    if (d.is_zero()) throw hsolve::InputError("--direction must be nonzero");
    return d;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations on nilpotent Lie algebras with complex and "
                 "hypercomplex structures"};
    app.name("hsolve");

    std::string command;
    std::string input;
    std::string direction_text;
    std::string format_text = "human";
    hsolve::RunOptions options;

    app.add_option("command", command,
                   "validate | series | betti | integrability | filtration | hsolvable | double | "
                   "exceptional | certify-connection | transversal-kahler | catalog")
        ->required();
    app.add_option("input", input, "catalog entry name or path to an algebra file");
    app.add_option("--height", options.height, "coefficient height bound for exceptional")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--direction", direction_text, "twistor direction a,b,c (rationals)");
    app.add_flag("--strict-paper-bracket", options.strict_paper_bracket,
                 "double: evaluate the literal bracket formula and report what breaks");
    app.add_option("--format", format_text, "human | structured")
        ->check(CLI::IsMember({"human", "structured"}));
    app.add_option("--form", options.form_name, "form name for transversal-kahler (default omega)");
    app.add_option("--subspace", options.subspace_name,
                   "subspace name for transversal-kahler (default f)");

    CLI11_PARSE(app, argc, argv);

    try {
        options.format =
            format_text == "structured" ? hsolve::ReportFormat::structured : hsolve::ReportFormat::human;
        if (!direction_text.empty()) options.direction = parse_direction(direction_text);
        if (command != "catalog" && input.empty())
            throw hsolve::InputError("command '" + command + "' requires an input");

        hsolve::RunResult result = hsolve::run_command(command, input, options);
        std::cout << result.output;
        return result.exit_code;
    } catch (const hsolve::InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const hsolve::PropertyError& e) {
        std::cerr << "property violation: " << e.what() << "\n";
        return 2;
    } catch (const hsolve::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
