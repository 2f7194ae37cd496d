#include "riskmix/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "riskmix/expected_shortfall.hpp"
#include "riskmix/numeric.hpp"

namespace riskmix {

SpectralMeasure::SpectralMeasure(std::vector<SpectralPoint> points)
    : points_(std::move(points)) {
    if (points_.empty()) {
        throw Error(Errc::EmptyInput, "spectral measure: no points");
    }
    for (const SpectralPoint& p : points_) {
        require_level_closed(p.alpha);
        if (!(p.weight > 0.0) || !std::isfinite(p.weight)) {
            throw Error(Errc::NegativeMass,
                        "spectral measure: weights must be strictly positive, got " +
                            format_real(p.weight));
        }
    }
    std::ranges::stable_sort(points_, {}, &SpectralPoint::alpha);

    std::vector<SpectralPoint> merged;
    merged.reserve(points_.size());
    for (const SpectralPoint& p : points_) {
        if (!merged.empty() && merged.back().alpha == p.alpha) {
            merged.back().weight += p.weight;
        } else {
            merged.push_back(p);
        }
    }
    points_ = std::move(merged);

    CompensatedSum total;
    for (const SpectralPoint& p : points_) total.add(p.weight);
    const double sum = total.value();
    if (std::abs(sum - 1.0) > kProbTol) {
        throw Error(Errc::MassSumOutOfTolerance,
                    "spectral measure: weights sum to " + format_real(sum) +
                        ", outside 1e-12 of 1");
    }
    for (SpectralPoint& p : points_) p.weight /= sum;
}

SpectralMeasure SpectralMeasure::point_mass_at(double alpha) {
    return SpectralMeasure({{alpha, 1.0}});
}

double spectral_value(const DiscreteDistribution& d, const SpectralMeasure& nu) {
    CompensatedSum s;
    for (const SpectralPoint& p : nu.points()) {
        s.add(p.weight * es(d, p.alpha).value);
    }
    return s.value();
}

GapReport spectral_concavity_gap(std::span<const DiscreteDistribution> components,
                                 const Weights& beta, const SpectralMeasure& nu) {
    if (components.size() != beta.size()) {
        throw Error(Errc::LengthMismatch,
                    "spectral gap: " + std::to_string(components.size()) +
                        " components vs " + std::to_string(beta.size()) + " weights");
    }
    const double lhs = spectral_value(mix(components, beta), nu);
    CompensatedSum rhs;
    for (std::size_t j = 0; j < components.size(); ++j) {
        if (beta[j] == 0.0) continue;
        rhs.add(beta[j] * spectral_value(components[j], nu));
    }
    const bool linear_nu =
        nu.points().size() == 1 && nu.points().front().alpha == 1.0;
    const bool equality =
        linear_nu || beta.is_unit_vector() || components.size() == 1;
    // GapReport.alpha is a single level; for a spectral gap there is none, so
    // report the measure's smallest level (purely informational).
    return {nu.points().front().alpha, lhs, rhs.value(), lhs - rhs.value(),
            equality};
}

}  // namespace riskmix
