#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "riskmix/distribution.hpp"
#include "riskmix/reports.hpp"

namespace riskmix {

/// Finite joint probability space carrying several risk positions at once:
/// one row of values per scenario, one column per position. Scenario
/// probabilities are strictly positive and sum to one (inputs within 1e-9
/// are renormalized). Duplicate rows are kept as distinct scenarios so that
/// scenario indices stay stable; only derived marginal and portfolio
/// distributions merge values.
class JointScenarios {
public:
    enum class Provenance { UserSupplied, Comonotone, Product };

    JointScenarios(std::vector<double> probs,
                   std::vector<std::vector<double>> values,
                   Provenance provenance = Provenance::UserSupplied);

    const std::vector<double>& probs() const noexcept { return probs_; }
    const std::vector<std::vector<double>>& values() const noexcept {
        return values_;
    }
    std::size_t scenario_count() const noexcept { return probs_.size(); }
    std::size_t position_count() const noexcept { return values_.front().size(); }
    Provenance provenance() const noexcept { return provenance_; }

private:
    std::vector<double> probs_;
    std::vector<std::vector<double>> values_;
    Provenance provenance_;
};

/// Distribution of column j.
DiscreteDistribution marginal(const JointScenarios& joint, std::size_t j);

/// Distribution of the convex combination sum_j beta_j X_j evaluated
/// scenario by scenario.
DiscreteDistribution portfolio(const JointScenarios& joint, const Weights& beta);

/// Comonotone coupling: refine [0, 1] by the union of all components'
/// cumulative-mass breakpoints; each segment becomes one scenario whose value
/// vector reads every component's lower quantile at the segment's upper end.
/// Marginals are preserved and ES is additive over the coupled positions.
JointScenarios comonotone_coupling(std::span<const DiscreteDistribution> components);

inline constexpr std::size_t kDefaultScenarioCap = 1'000'000;

/// Independence coupling: Cartesian product of atoms with product
/// probabilities. Throws SizeCapExceeded when the scenario count reaches the
/// cap rather than sampling.
JointScenarios product_coupling(std::span<const DiscreteDistribution> components,
                                std::size_t scenario_cap = kDefaultScenarioCap);

/// Scenario cap honoring the RISKMIX_SIZE_CAP environment variable
/// (positive integer); falls back to kDefaultScenarioCap.
std::size_t effective_scenario_cap();

/// Convexity of ES, alpha in [0, 1]:
///   gap = sum_j beta_j ES_alpha(X_j) - ES_alpha(portfolio)  >=  0.
/// equality_expected for comonotone couplings, unit weights, or a single
/// position.
GapReport convexity_gap(const JointScenarios& joint, const Weights& beta,
                        double alpha);

/// Diversification, alpha in [0, 1]:
///   gap = ES_alpha(mixture of marginals) - ES_alpha(portfolio)  >=  0.
GapReport diversification_gap(const JointScenarios& joint, const Weights& beta,
                              double alpha);

}  // namespace riskmix
