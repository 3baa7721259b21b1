#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace f2alg {

// Error taxonomy shared by the whole library. The CLI maps kinds to exit
// codes: Argument/Validation -> 2, Size -> 3, everything else -> 1.
enum class ErrKind { Argument, Validation, Size, Internal };

class Error : public std::runtime_error {
public:
    Error(ErrKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    ErrKind kind() const { return kind_; }

private:
    ErrKind kind_;
};

[[noreturn]] inline void throw_argument(const std::string& msg) { throw Error(ErrKind::Argument, msg); }
[[noreturn]] inline void throw_validation(const std::string& msg) { throw Error(ErrKind::Validation, msg); }
[[noreturn]] inline void throw_size(const std::string& msg) { throw Error(ErrKind::Size, msg); }
[[noreturn]] inline void throw_internal(const std::string& msg) { throw Error(ErrKind::Internal, msg); }

}  // namespace f2alg
