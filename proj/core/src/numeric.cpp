#include "riskmix/numeric.hpp"

#include <cstdio>

namespace riskmix {

std::string format_real(double v) {
    if (v == 0.0) {
        return "0";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace riskmix
