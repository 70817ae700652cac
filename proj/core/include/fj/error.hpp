#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fj {

enum class ErrorKind {
    InvalidModulus,
    InvalidInput,
    IncompleteFactorization,
    NotAUnit,
    InternalContradiction,
    NotFound,
    NotTransitive,
    Format,
    Truncation,
    Range,
    CorruptProgram,
    Capacity,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every domain failure in the library is reported through this type; callers
// switch on kind() rather than on the message text.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace fj
