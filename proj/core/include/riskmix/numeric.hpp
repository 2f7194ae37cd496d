#pragma once

#include <cmath>
#include <string>

namespace riskmix {

/// Neumaier-compensated running sum. Deterministic for a fixed order of
/// add() calls; used for every value-weighted summation over atoms.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Relative tolerance of identity and inequality checks.
inline constexpr double kRelTol = 1e-9;
/// Tolerance of probability-level bookkeeping (weighted level sums).
inline constexpr double kProbTol = 1e-12;
/// Accepted drift of input mass sums before normalization.
inline constexpr double kMassSumTol = 1e-9;

/// 1e-9 * (1 + |anchor|), the scale-aware tolerance used throughout.
inline double rel_tol(double anchor) noexcept {
    return kRelTol * (1.0 + std::abs(anchor));
}

/// Fixed 17-significant-digit decimal rendering; round-trips any finite
/// double and canonicalizes -0 to "0". All report output goes through this.
std::string format_real(double v);

}  // namespace riskmix
