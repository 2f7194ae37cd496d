#pragma once

#include <span>
#include <vector>

#include "riskmix/distribution.hpp"
#include "riskmix/reports.hpp"

namespace riskmix {

/// Component levels alpha_j for the ES decomposition of a mixture at level
/// alpha in (0, 1): with q the lower alpha-quantile of the mixture,
///
///   alpha_j = P(X_j < q) + P(X_j = q) * (alpha - P(mix < q)) / P(mix = q),
///
/// the second term taken as zero when P(mix = q) = 0 (tested against exact
/// zero, never a tolerance). Every alpha_j lies in [P(X_j < q), P(X_j <= q)]
/// and the beta-weighted levels sum back to alpha. Levels are produced for
/// all components, including those with beta_j == 0.
std::vector<double> decomposition_levels(
    std::span<const DiscreteDistribution> components, const Weights& beta,
    double alpha);

/// Overload taking a precomputed mixture (must equal mix(components, beta)).
std::vector<double> decomposition_levels(
    const DiscreteDistribution& mixture,
    std::span<const DiscreteDistribution> components, const Weights& beta,
    double alpha);

/// Evaluates both sides of the decomposition identity
///   ES_alpha(mixture) = sum_j (alpha_j beta_j / alpha) ES_{alpha_j}(X_j)
/// at alpha in (0, 1). Terms with alpha_j == 0 contribute exactly zero.
DecompositionReport es_mixture_decomposition(
    std::span<const DiscreteDistribution> components, const Weights& beta,
    double alpha);

DecompositionReport es_mixture_decomposition(
    const DiscreteDistribution& mixture,
    std::span<const DiscreteDistribution> components, const Weights& beta,
    double alpha);

/// Concavity of ES with respect to mixing, alpha in [0, 1]:
///   gap = ES_alpha(mixture) - sum_j beta_j ES_alpha(X_j)  >=  0.
/// equality_expected is set when every decomposition level equals alpha
/// (within 1e-12) and always at alpha == 1.
GapReport concavity_gap(std::span<const DiscreteDistribution> components,
                        const Weights& beta, double alpha);

GapReport concavity_gap(const DiscreteDistribution& mixture,
                        std::span<const DiscreteDistribution> components,
                        const Weights& beta, double alpha);

}  // namespace riskmix
