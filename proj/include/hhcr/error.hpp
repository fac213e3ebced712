#ifndef HHCR_ERROR_HPP
#define HHCR_ERROR_HPP

#include <stdexcept>
#include <string>

namespace hhcr {

enum class ErrorKind {
    Parse,
    Cardinality,
    Domain,
    Structural,
    Capacity,
    DegenerateModel,
    DegenerateBank,
    Division,
    Infeasible,
};

inline const char *to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Parse: return "parse error";
        case ErrorKind::Cardinality: return "cardinality error";
        case ErrorKind::Domain: return "domain error";
        case ErrorKind::Structural: return "structural error";
        case ErrorKind::Capacity: return "capacity error";
        case ErrorKind::DegenerateModel: return "degenerate model";
        case ErrorKind::DegenerateBank: return "degenerate operator bank";
        case ErrorKind::Division: return "division error";
        case ErrorKind::Infeasible: return "infeasible instance";
    }
    return "error";
}

/// Single exception type for the library; `kind()` tells callers which contract was broken.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string &what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) { }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string &what)
        : Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + what), line_(line) { }

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace hhcr

#endif  // HHCR_ERROR_HPP
