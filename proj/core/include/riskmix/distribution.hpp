#pragma once

#include <span>
#include <vector>

#include "riskmix/errors.hpp"

namespace riskmix {

/// One support point of a finitely supported distribution.
struct Atom {
    double value;
    double mass;
};

// Probability-level domain guards. Each returns alpha unchanged or throws
// Error(Errc::LevelOutOfDomain) when alpha lies outside the stated interval.
double require_level_closed(double alpha);      // [0, 1]
double require_level_left_open(double alpha);   // (0, 1]
double require_level_right_open(double alpha);  // [0, 1)
double require_level_open(double alpha);        // (0, 1)

/// Finitely supported probability distribution over the reals.
///
/// Atoms are strictly increasing by value with strictly positive masses that
/// sum to one (inputs within 1e-9 of unit mass are renormalized exactly once
/// at construction). Values are immutable after construction and every query
/// is a pure function, so instances are safe to share across threads.
class DiscreteDistribution {
public:
    const std::vector<Atom>& atoms() const noexcept { return atoms_; }
    std::size_t size() const noexcept { return atoms_.size(); }

    /// Cumulative mass after each atom (nondecreasing; back() == 1 exactly).
    /// These are the jump points of both quantile functions.
    std::span<const double> cumulative() const noexcept { return cum_; }

    double cdf(double x) const;      // P(X <= x)
    double prob_lt(double x) const;  // P(X < x)
    double prob_eq(double x) const;  // atom mass at x (bitwise value match)

    /// inf{x : F(x) >= alpha}; left-continuous in alpha; alpha in (0, 1].
    double lower_quantile(double alpha) const;
    /// inf{x : F(x) > alpha}; right-continuous in alpha; alpha in [0, 1).
    double upper_quantile(double alpha) const;

    double expectation() const;
    double essinf() const noexcept { return atoms_.front().value; }

    friend DiscreteDistribution make_discrete(std::vector<Atom> pairs);

private:
    DiscreteDistribution() = default;

    std::vector<Atom> atoms_;
    std::vector<double> cum_;
};

/// Builds a distribution from (value, mass) pairs: duplicate values are
/// merged by summing masses, values sorted ascending, and masses normalized
/// when their sum lies within 1e-9 of one (error otherwise).
DiscreteDistribution make_discrete(std::vector<Atom> pairs);

/// Degenerate distribution concentrated at a single value.
DiscreteDistribution point_mass(double value);

/// Empirical distribution: each distinct sample value gets mass
/// multiplicity / n.
DiscreteDistribution from_samples(std::span<const double> values);

/// Distribution of factor * X. Any real factor: zero collapses the support,
/// a negative factor reverses it.
DiscreteDistribution scaled(const DiscreteDistribution& d, double factor);

/// Distribution of X + offset.
DiscreteDistribution shifted(const DiscreteDistribution& d, double offset);

/// Point of the standard simplex: nonnegative entries summing to one
/// (validated within 1e-12, then renormalized).
class Weights {
public:
    explicit Weights(std::vector<double> entries);

    const std::vector<double>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    double operator[](std::size_t j) const { return entries_[j]; }

    /// True when one entry equals 1 and the rest are exactly 0.
    bool is_unit_vector() const noexcept;

private:
    std::vector<double> entries_;
};

/// Mixture with cdf sum_j beta_j * F_j. Components with beta_j == 0 are
/// dropped before the atom merge.
DiscreteDistribution mix(std::span<const DiscreteDistribution> components,
                         const Weights& beta);

}  // namespace riskmix
