#pragma once

#include <stdexcept>
#include <string>

namespace regdepth {

/// Failure categories surfaced by the library. The CLI maps them onto exit codes.
enum class ErrorKind {
    parse,          // malformed numbers, CSV rows, flat strings
    unsupported,    // dimension / flat combination outside the supported set
    verification,   // a construction failed its exact post-check
    invalid,        // violated precondition (bad argument)
    budget          // a bounded search ran out of candidates
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
    if (!cond) fail(kind, what);
}

} // namespace regdepth
