#pragma once

#include <optional>
#include <vector>

namespace riskmix {

/// Result of decomposing the ES of a mixture into component ES terms.
/// alphas[j] is null for components carrying zero mixture weight (they are
/// dropped before the mixture is formed but keep their input index).
struct DecompositionReport {
    double alpha;
    double q_alpha;  // lower alpha-quantile of the mixture
    std::vector<std::optional<double>> alphas;
    double weighted_level_sum;  // sum of beta_j * alphas[j] over active j
    double lhs;                 // ES of the mixture
    double rhs;                 // sum of (alphas[j] * beta_j / alpha) * ES_{alphas[j]}
    double decomposition_residual;  // lhs - rhs
};

/// Two sides of an inequality check. gap = lhs - rhs exactly as computed;
/// equality_expected marks cases where theory forces gap == 0.
struct GapReport {
    double alpha;
    double lhs;
    double rhs;
    double gap;
    bool equality_expected;
};

}  // namespace riskmix
