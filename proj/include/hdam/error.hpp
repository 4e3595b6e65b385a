#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace hdam {

/// Error classes surfaced by the library. The CLI maps each kind to a
/// distinct exit status (see README).
enum class ErrorKind {
    argument,          // malformed call: bad range, mismatched path ends, ...
    parse,             // syntactically malformed input text
    invalid_input,     // well-formed input violating a structural invariant
    domain_violation,  // an action left a variable's declared domain
    termination_guard, // unbounded cube filling requested without max_dim
    hypothesis,        // a theorem's hypothesis does not hold for the input
    contradiction,     // a structure claimed to be a model is not one
    io,
};

inline const char* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::argument: return "argument error";
    case ErrorKind::parse: return "parse error";
    case ErrorKind::invalid_input: return "invalid input";
    case ErrorKind::domain_violation: return "domain violation";
    case ErrorKind::termination_guard: return "termination guard";
    case ErrorKind::hypothesis: return "hypothesis error";
    case ErrorKind::contradiction: return "model contradiction";
    case ErrorKind::io: return "i/o error";
    }
    return "error";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind)
    {
    }

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : Error(ErrorKind::parse,
                std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line), column_(column)
    {
    }

    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Raised when a transition system is built from a non-extensional HDA.
/// Carries the two offending edges.
class ExtensionalityError : public Error {
public:
    ExtensionalityError(const std::string& message, std::pair<std::size_t, std::size_t> witness)
        : Error(ErrorKind::invalid_input, message), witness_(witness)
    {
    }

    [[nodiscard]] std::pair<std::size_t, std::size_t> witness() const noexcept { return witness_; }

private:
    std::pair<std::size_t, std::size_t> witness_;
};

} // namespace hdam
