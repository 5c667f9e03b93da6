#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace wlp {

// Exit codes shared by the CLI and tests.
enum ExitCode : int {
    kExitOk = 0,
    kExitConfigError = 2,
    kExitIoError = 3,
    kExitNumericalError = 4,
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CacheError : std::runtime_error {
    enum class Kind { io, bad_magic, bad_version, truncated, bad_checksum };
    CacheError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
    Kind kind;
};

// Numerical failure attributable to one hull; carries the stream index so
// the offending sample can be regenerated.
struct NumericalError : std::runtime_error {
    NumericalError(std::uint64_t stream, const std::string& msg)
        : std::runtime_error(msg), stream_index(stream) {}
    std::uint64_t stream_index;
};

}  // namespace wlp
