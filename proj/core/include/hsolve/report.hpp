#pragma once

#include <optional>
#include <string>

#include "hsolve/catalog.hpp"

namespace hsolve {

enum class ReportFormat { human, structured };

struct RunOptions {
    int height = 1;
    std::optional<SphereDirection> direction;
    bool strict_paper_bracket = false;
    ReportFormat format = ReportFormat::human;
    std::string form_name = "omega";
    std::string subspace_name = "f";
};

struct RunResult {
    int exit_code;  // 0 ok, 1 input/validation, 2 property assertion, 3 internal
    std::string output;
};

/// Known commands: validate, series, betti, integrability, filtration,
/// hsolvable, double, exceptional, certify-connection, transversal-kahler,
/// catalog. Loads `input` as a catalog name or file path, executes, and
/// renders a deterministic report.
RunResult run_command(const std::string& command, const std::string& input, const RunOptions& options);

/// FNV-1a 64-bit digest of the canonical serialization; the input digest
/// reported by every command.
std::string input_digest(const AlgebraFile& file);

}  // namespace hsolve
