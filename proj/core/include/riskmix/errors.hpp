#pragma once

#include <stdexcept>
#include <string>

namespace riskmix {

/// Error categories surfaced by the library. The CLI maps all of these to
/// exit code 2 (usage / input error); invariant violations found by the
/// verification suite are report content, never exceptions.
enum class Errc {
    EmptyInput,
    NegativeMass,
    MassSumOutOfTolerance,
    LevelOutOfDomain,
    LengthMismatch,
    IndexOutOfRange,
    SizeCapExceeded,
    ParseError,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace riskmix
