#include "riskmix/mixture_concavity.hpp"

#include <algorithm>
#include <cmath>

#include "riskmix/expected_shortfall.hpp"
#include "riskmix/numeric.hpp"

namespace riskmix {

namespace {

void require_matching_lengths(std::size_t components, std::size_t weights) {
    if (components != weights) {
        throw Error(Errc::LengthMismatch,
                    "mixture: " + std::to_string(components) + " components vs " +
                        std::to_string(weights) + " weights");
    }
}

}  // namespace

std::vector<double> decomposition_levels(
    const DiscreteDistribution& mixture,
    std::span<const DiscreteDistribution> components, const Weights& beta,
    double alpha) {
    require_level_open(alpha);
    require_matching_lengths(components.size(), beta.size());

    const double q = mixture.lower_quantile(alpha);
    const double mix_eq = mixture.prob_eq(q);

    double ratio = 0.0;
    if (mix_eq != 0.0) {
        ratio = (alpha - mixture.prob_lt(q)) / mix_eq;
        // The quantile definition pins the ratio to [0, 1]; clamping removes
        // ulp-level drift so the bracketing below holds exactly.
        ratio = std::clamp(ratio, 0.0, 1.0);
    }

    std::vector<double> levels(components.size());
    for (std::size_t j = 0; j < components.size(); ++j) {
        const double lo = components[j].prob_lt(q);
        const double hi = components[j].cdf(q);
        levels[j] = std::clamp(lo + components[j].prob_eq(q) * ratio, lo, hi);
    }
    return levels;
}

std::vector<double> decomposition_levels(
    std::span<const DiscreteDistribution> components, const Weights& beta,
    double alpha) {
    require_matching_lengths(components.size(), beta.size());
    return decomposition_levels(mix(components, beta), components, beta, alpha);
}

DecompositionReport es_mixture_decomposition(
    const DiscreteDistribution& mixture,
    std::span<const DiscreteDistribution> components, const Weights& beta,
    double alpha) {
    const std::vector<double> levels =
        decomposition_levels(mixture, components, beta, alpha);

    DecompositionReport report;
    report.alpha = alpha;
    report.q_alpha = mixture.lower_quantile(alpha);
    report.lhs = es(mixture, alpha).value;

    CompensatedSum level_sum;
    CompensatedSum rhs;
    report.alphas.resize(components.size());
    for (std::size_t j = 0; j < components.size(); ++j) {
        if (beta[j] == 0.0) continue;  // dropped component; null in the report
        report.alphas[j] = levels[j];
        level_sum.add(beta[j] * levels[j]);
        if (levels[j] == 0.0) continue;  // contributes exactly zero
        rhs.add(levels[j] * beta[j] / alpha * es(components[j], levels[j]).value);
    }
    report.weighted_level_sum = level_sum.value();
    report.rhs = rhs.value();
    report.decomposition_residual = report.lhs - report.rhs;
    return report;
}

DecompositionReport es_mixture_decomposition(
    std::span<const DiscreteDistribution> components, const Weights& beta,
    double alpha) {
    require_matching_lengths(components.size(), beta.size());
    return es_mixture_decomposition(mix(components, beta), components, beta,
                                    alpha);
}

GapReport concavity_gap(const DiscreteDistribution& mixture,
                        std::span<const DiscreteDistribution> components,
                        const Weights& beta, double alpha) {
    require_level_closed(alpha);
    require_matching_lengths(components.size(), beta.size());

    const double lhs = es(mixture, alpha).value;
    CompensatedSum rhs;
    for (std::size_t j = 0; j < components.size(); ++j) {
        if (beta[j] == 0.0) continue;
        rhs.add(beta[j] * es(components[j], alpha).value);
    }

    bool equality = (alpha == 1.0);
    if (!equality && alpha > 0.0 && alpha < 1.0) {
        const std::vector<double> levels =
            decomposition_levels(mixture, components, beta, alpha);
        equality = true;
        for (std::size_t j = 0; j < components.size(); ++j) {
            if (beta[j] == 0.0) continue;
            if (std::abs(levels[j] - alpha) > kProbTol) {
                equality = false;
                break;
            }
        }
    }
    return {alpha, lhs, rhs.value(), lhs - rhs.value(), equality};
}

GapReport concavity_gap(std::span<const DiscreteDistribution> components,
                        const Weights& beta, double alpha) {
    require_matching_lengths(components.size(), beta.size());
    return concavity_gap(mix(components, beta), components, beta, alpha);
}

}  // namespace riskmix
