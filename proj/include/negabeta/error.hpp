#pragma once

#include <stdexcept>
#include <string>

namespace negabeta {

enum class ErrorKind {
    Domain,              // malformed input, invalid sequence, out-of-range argument
    PrecisionExhausted,  // decimal path cannot decide a floor or comparison
    Unresolved,          // orbit or certificate not found within budget
    Internal,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Domain: return "domain";
        case ErrorKind::PrecisionExhausted: return "precision-exhausted";
        case ErrorKind::Unresolved: return "unresolved";
        case ErrorKind::Internal: return "internal";
    }
    return "unknown";
}

}  // namespace negabeta
