#pragma once

#include <map>
#include <set>
#include <string>

#include "hsolve/complex_ops.hpp"
#include "hsolve/exterior.hpp"
#include "hsolve/lie_algebra.hpp"

namespace hsolve {

/// Parsed algebra file: the algebra, named operators, optional named 2-forms
/// and subspaces (inputs for the transversal-kahler command), and flags.
struct AlgebraFile {
    std::string name;
    LieAlgebra algebra;
    std::map<std::string, LinearOperator> operators;
    std::map<std::string, Multivector> forms;
    std::map<std::string, Subspace> subspaces;
    std::set<std::string> flags;
};

struct ParseOptions {
    /// When set, loading fails on a Jacobi violation or an operator identity
    /// violation. The validate command parses with this off so it can report
    /// the violation itself.
    bool enforce_semantics = true;
};

/// Parses the line-oriented algebra format:
///
///   name kodaira
///   dim 4
///   basis x y z t
///   bracket [x, y] = z
///   operator I
///   0 -1 0 0
///   1 0 0 0
///   0 0 0 -1
///   0 0 1 0
///   form omega = x^y
///   subspace f = z; t
///   flags abelian_structure_expected
///
/// Rationals are "p" or "p/q" in lowest terms; '#' starts a comment.
/// Identifiers are [A-Za-z_][A-Za-z0-9_']*. Errors carry line and column.
AlgebraFile parse_algebra_file(const std::string& text, const ParseOptions& options = {});

/// Canonical serialization; parse(serialize(f)) == f and serialization of a
/// parsed file is idempotent. Brackets in ascending (i,j), operators, forms,
/// subspaces and flags in sorted order, rationals in lowest terms.
std::string serialize(const AlgebraFile& file);

std::vector<std::string> catalog_names();

/// Raw text of a built-in entry; throws InputError for unknown names.
const std::string& catalog_text(const std::string& name);

AlgebraFile catalog_entry(const std::string& name);

/// Loads either a built-in catalog entry or a file path.
AlgebraFile load_algebra(const std::string& path_or_name, const ParseOptions& options = {});

}  // namespace hsolve
