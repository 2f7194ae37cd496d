#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "riskmix/distribution.hpp"
#include "riskmix/spectral.hpp"

namespace riskmix {

struct IntRange {
    int lo;
    int hi;
};

/// Configuration of the randomized verification suite. Masses and mixture
/// weights are drawn as integer multiples of 1/mass_grid so probability
/// bookkeeping stays exact; atom values are drawn from the integer lattice
/// inside value_range so that atoms collide across components (the hard case
/// for quantile handling). An empty alpha_grid selects all-breakpoints mode:
/// levels 0 and 1, every cumulative-mass breakpoint of the mixture, and the
/// midpoints between them.
struct GenConfig {
    std::uint64_t seed = 42;
    IntRange n_components{1, 4};
    IntRange atoms_per_component{1, 12};
    std::pair<double, double> value_range{-8.0, 8.0};
    int mass_grid = 16;
    std::vector<double> alpha_grid;  // empty => all-breakpoints mode
    int instance_count = 10000;

    void validate() const;
};

struct Instance {
    std::vector<DiscreteDistribution> components;
    Weights beta;
    std::vector<double> alphas;  // sorted, deduplicated
};

/// Deterministic function of (config.seed, index).
Instance gen_instance(const GenConfig& config, std::uint64_t index);

/// Deterministic spectral measure for an instance: up to five distinct
/// levels from its alpha list with grid-rational weights.
SpectralMeasure gen_spectral_measure(const GenConfig& config, std::uint64_t index,
                                     const std::vector<double>& alphas);

/// Every distribution with values in {-2,...,2} and masses in multiples of
/// 1/4: the universe of the exhaustive small-instance mode (70 entries).
std::vector<DiscreteDistribution> exhaustive_grid_distributions();

struct CheckStats {
    std::string name;
    std::uint64_t pass = 0;
    std::uint64_t fail = 0;
    bool worst_is_min = false;  // gap checks track minima, residuals maxima
    bool has_worst = false;
    double worst = 0.0;
    std::uint64_t worst_index = 0;
    std::string worst_detail;
    std::string worst_instance_json;
};

struct PhaseReport {
    std::string name;
    std::uint64_t instances = 0;
    std::vector<CheckStats> checks;

    std::uint64_t total_pass() const;
    std::uint64_t total_fail() const;
};

struct SuiteFailure {
    std::string phase;
    std::string check;
    std::uint64_t instance_index = 0;
    std::optional<double> alpha;
    std::string detail;
    std::string instance_json;
};

struct SuiteReport {
    std::uint64_t seed = 0;
    GenConfig config;
    PhaseReport randomized;
    PhaseReport exhaustive;
    std::vector<SuiteFailure> failures;
    double wall_ms = 0.0;

    bool all_passed() const { return failures.empty(); }
    std::uint64_t total_pass() const;
    std::uint64_t total_fail() const;

    /// Deterministic JSON body; wall time is opt-in so that reports from
    /// identical seeds are byte-identical.
    std::string to_json(bool include_wall_time = false) const;
};

/// Runs the randomized phase (instance_count instances) followed by the
/// exhaustive small-instance phase. Each instance is checked for: both ES
/// representation equivalences and minimization-oracle agreement, quantile
/// ordering and monotonicity, the decomposition level sum / bracketing /
/// identity and the tail-location property, concavity gaps over the level
/// list with the equality condition, marginal preservation, comonotone
/// additivity, convexity and diversification gaps under both couplings with
/// the gap-chain identity, and spectral concavity. Failures become report
/// content, never exceptions. instance_count == 0 yields an empty report.
SuiteReport run_suite(const GenConfig& config);

}  // namespace riskmix
