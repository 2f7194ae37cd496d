#include "riskmix/errors.hpp"

namespace riskmix {

const char* errc_name(Errc code) noexcept {
    switch (code) {
        case Errc::EmptyInput: return "EmptyInput";
        case Errc::NegativeMass: return "NegativeMass";
        case Errc::MassSumOutOfTolerance: return "MassSumOutOfTolerance";
        case Errc::LevelOutOfDomain: return "LevelOutOfDomain";
        case Errc::LengthMismatch: return "LengthMismatch";
        case Errc::IndexOutOfRange: return "IndexOutOfRange";
        case Errc::SizeCapExceeded: return "SizeCapExceeded";
        case Errc::ParseError: return "ParseError";
    }
    return "UnknownError";
}

}  // namespace riskmix
