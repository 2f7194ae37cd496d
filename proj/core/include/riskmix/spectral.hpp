#pragma once

#include <span>
#include <vector>

#include "riskmix/distribution.hpp"
#include "riskmix/reports.hpp"

namespace riskmix {

struct SpectralPoint {
    double alpha;
    double weight;
};

/// Finitely supported probability measure on [0, 1] defining a spectral risk
/// measure as a weighted combination of ES levels. Points are sorted by
/// level; duplicate levels are merged; weights are strictly positive and sum
/// to one (validated within 1e-12, then renormalized). Mass at level 0 is
/// permitted: ES at level 0 is finite on finite support.
class SpectralMeasure {
public:
    explicit SpectralMeasure(std::vector<SpectralPoint> points);

    static SpectralMeasure point_mass_at(double alpha);

    const std::vector<SpectralPoint>& points() const noexcept { return points_; }

private:
    std::vector<SpectralPoint> points_;
};

/// sum_k weight_k * ES_{alpha_k}(X).
double spectral_value(const DiscreteDistribution& d, const SpectralMeasure& nu);

/// Concavity of the spectral measure with respect to mixing:
///   gap = rho_nu(mixture) - sum_j beta_j rho_nu(X_j)  >=  0.
GapReport spectral_concavity_gap(std::span<const DiscreteDistribution> components,
                                 const Weights& beta, const SpectralMeasure& nu);

}  // namespace riskmix
