#pragma once

#include <stdexcept>
#include <string>

namespace hsolve {

/// Malformed or inconsistent user input (bad file, bad dimensions, failed
/// preconditions on caller-supplied data). CLI exit code 1.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A property the theory asserts for valid inputs failed on this input
/// (e.g. a filtration term is not a subalgebra). CLI exit code 2.
class PropertyError : public std::runtime_error {
public:
    explicit PropertyError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Internal invariant violation: two routes that must agree disagreed.
/// CLI exit code 3.
class InternalError : public std::runtime_error {
public:
    explicit InternalError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Input error with a source location, thrown by the file parser.
class ParseError : public InputError {
public:
    ParseError(const std::string& msg, int line, int col)
        : InputError(msg + " (line " + std::to_string(line) + ", column " + std::to_string(col) + ")"),
          line_(line),
          col_(col) {}

    int line() const { return line_; }
    int col() const { return col_; }

private:
    int line_;
    int col_;
};

}  // namespace hsolve
