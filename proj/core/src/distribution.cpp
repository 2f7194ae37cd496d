#include "riskmix/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <ranges>

#include "riskmix/numeric.hpp"

namespace riskmix {

namespace {

[[noreturn]] void throw_level(double alpha, const char* domain) {
    throw Error(Errc::LevelOutOfDomain,
                "level out of " + std::string(domain) + ": " + format_real(alpha));
}

}  // namespace

double require_level_closed(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw_level(alpha, "[0,1]");
    return alpha;
}

double require_level_left_open(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw_level(alpha, "(0,1]");
    return alpha;
}

double require_level_right_open(double alpha) {
    if (!(alpha >= 0.0 && alpha < 1.0)) throw_level(alpha, "[0,1)");
    return alpha;
}

double require_level_open(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw_level(alpha, "(0,1)");
    return alpha;
}

DiscreteDistribution make_discrete(std::vector<Atom> pairs) {
    if (pairs.empty()) {
        throw Error(Errc::EmptyInput, "make_discrete: no atoms given");
    }
    for (const Atom& a : pairs) {
        if (!std::isfinite(a.value)) {
            throw Error(Errc::ParseError,
                        "make_discrete: atom value must be finite");
        }
        if (!(a.mass > 0.0) || !std::isfinite(a.mass)) {
            throw Error(Errc::NegativeMass,
                        "make_discrete: atom mass must be strictly positive, got " +
                            format_real(a.mass) + " at value " + format_real(a.value));
        }
    }

    // Stable sort keeps the merge order of equal values deterministic.
    std::ranges::stable_sort(pairs, {}, &Atom::value);

    std::vector<Atom> merged;
    merged.reserve(pairs.size());
    for (const Atom& a : pairs) {
        if (!merged.empty() && merged.back().value == a.value) {
            merged.back().mass += a.mass;
        } else {
            merged.push_back(a);
        }
    }

    CompensatedSum total;
    for (const Atom& a : merged) total.add(a.mass);
    const double sum = total.value();
    if (std::abs(sum - 1.0) > kMassSumTol) {
        throw Error(Errc::MassSumOutOfTolerance,
                    "make_discrete: masses sum to " + format_real(sum) +
                        ", outside 1e-9 of 1");
    }

    DiscreteDistribution d;
    d.atoms_ = std::move(merged);
    for (Atom& a : d.atoms_) a.mass /= sum;

    d.cum_.resize(d.atoms_.size());
    double run = 0.0;
    for (std::size_t i = 0; i < d.atoms_.size(); ++i) {
        run += d.atoms_[i].mass;
        d.cum_[i] = std::min(run, 1.0);
    }
    d.cum_.back() = 1.0;
    return d;
}

DiscreteDistribution point_mass(double value) {
    return make_discrete({{value, 1.0}});
}

DiscreteDistribution from_samples(std::span<const double> values) {
    if (values.empty()) {
        throw Error(Errc::EmptyInput, "from_samples: no samples given");
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::ranges::sort(sorted);

    const double n = static_cast<double>(sorted.size());
    std::vector<Atom> atoms;
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        atoms.push_back({sorted[i], static_cast<double>(j - i) / n});
        i = j;
    }
    return make_discrete(std::move(atoms));
}

DiscreteDistribution scaled(const DiscreteDistribution& d, double factor) {
    std::vector<Atom> atoms = d.atoms();
    for (Atom& a : atoms) a.value *= factor;
    return make_discrete(std::move(atoms));
}

DiscreteDistribution shifted(const DiscreteDistribution& d, double offset) {
    std::vector<Atom> atoms = d.atoms();
    for (Atom& a : atoms) a.value += offset;
    return make_discrete(std::move(atoms));
}

double DiscreteDistribution::cdf(double x) const {
    auto it = std::ranges::upper_bound(atoms_, x, {}, &Atom::value);
    if (it == atoms_.begin()) return 0.0;
    return cum_[static_cast<std::size_t>(it - atoms_.begin()) - 1];
}

double DiscreteDistribution::prob_lt(double x) const {
    auto it = std::ranges::lower_bound(atoms_, x, {}, &Atom::value);
    if (it == atoms_.begin()) return 0.0;
    return cum_[static_cast<std::size_t>(it - atoms_.begin()) - 1];
}

double DiscreteDistribution::prob_eq(double x) const {
    auto it = std::ranges::lower_bound(atoms_, x, {}, &Atom::value);
    if (it != atoms_.end() && it->value == x) return it->mass;
    return 0.0;
}

double DiscreteDistribution::lower_quantile(double alpha) const {
    require_level_left_open(alpha);
    auto it = std::ranges::lower_bound(cum_, alpha);  // first cum >= alpha
    if (it == cum_.end()) return atoms_.back().value;
    return atoms_[static_cast<std::size_t>(it - cum_.begin())].value;
}

double DiscreteDistribution::upper_quantile(double alpha) const {
    require_level_right_open(alpha);
    auto it = std::ranges::upper_bound(cum_, alpha);  // first cum > alpha
    if (it == cum_.end()) return atoms_.back().value;
    return atoms_[static_cast<std::size_t>(it - cum_.begin())].value;
}

double DiscreteDistribution::expectation() const {
    CompensatedSum s;
    for (const Atom& a : atoms_) s.add(a.value * a.mass);
    return s.value();
}

Weights::Weights(std::vector<double> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) {
        throw Error(Errc::EmptyInput, "weights: empty");
    }
    CompensatedSum total;
    for (double w : entries_) {
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw Error(Errc::NegativeMass,
                        "weights: entries must be nonnegative, got " + format_real(w));
        }
        total.add(w);
    }
    const double sum = total.value();
    if (std::abs(sum - 1.0) > kProbTol) {
        throw Error(Errc::MassSumOutOfTolerance,
                    "weights: sum to " + format_real(sum) + ", outside 1e-12 of 1");
    }
    for (double& w : entries_) w /= sum;
}

bool Weights::is_unit_vector() const noexcept {
    bool seen_one = false;
    for (double w : entries_) {
        if (w == 1.0) {
            if (seen_one) return false;
            seen_one = true;
        } else if (w != 0.0) {
            return false;
        }
    }
    return seen_one;
}

DiscreteDistribution mix(std::span<const DiscreteDistribution> components,
                         const Weights& beta) {
    if (components.size() != beta.size()) {
        throw Error(Errc::LengthMismatch,
                    "mix: " + std::to_string(components.size()) + " components vs " +
                        std::to_string(beta.size()) + " weights");
    }
    std::vector<Atom> pooled;
    for (std::size_t j = 0; j < components.size(); ++j) {
        if (beta[j] == 0.0) continue;
        for (const Atom& a : components[j].atoms()) {
            pooled.push_back({a.value, beta[j] * a.mass});
        }
    }
    return make_discrete(std::move(pooled));
}

}  // namespace riskmix
