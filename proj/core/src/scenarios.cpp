#include "riskmix/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "riskmix/expected_shortfall.hpp"
#include "riskmix/numeric.hpp"

namespace riskmix {

JointScenarios::JointScenarios(std::vector<double> probs,
                               std::vector<std::vector<double>> values,
                               Provenance provenance)
    : probs_(std::move(probs)), values_(std::move(values)), provenance_(provenance) {
    if (probs_.empty()) {
        throw Error(Errc::EmptyInput, "joint scenarios: no scenarios");
    }
    if (values_.size() != probs_.size()) {
        throw Error(Errc::LengthMismatch,
                    "joint scenarios: " + std::to_string(probs_.size()) +
                        " probabilities vs " + std::to_string(values_.size()) +
                        " value rows");
    }
    const std::size_t width = values_.front().size();
    if (width == 0) {
        throw Error(Errc::EmptyInput, "joint scenarios: rows have no positions");
    }
    for (const auto& row : values_) {
        if (row.size() != width) {
            throw Error(Errc::LengthMismatch, "joint scenarios: ragged value rows");
        }
        for (double v : row) {
            if (!std::isfinite(v)) {
                throw Error(Errc::ParseError,
                            "joint scenarios: values must be finite");
            }
        }
    }
    CompensatedSum total;
    for (double p : probs_) {
        if (!(p > 0.0) || !std::isfinite(p)) {
            throw Error(Errc::NegativeMass,
                        "joint scenarios: probabilities must be strictly positive, got " +
                            format_real(p));
        }
        total.add(p);
    }
    const double sum = total.value();
    if (std::abs(sum - 1.0) > kMassSumTol) {
        throw Error(Errc::MassSumOutOfTolerance,
                    "joint scenarios: probabilities sum to " + format_real(sum) +
                        ", outside 1e-9 of 1");
    }
    for (double& p : probs_) p /= sum;
}

DiscreteDistribution marginal(const JointScenarios& joint, std::size_t j) {
    if (j >= joint.position_count()) {
        throw Error(Errc::IndexOutOfRange,
                    "marginal: position " + std::to_string(j) + " of " +
                        std::to_string(joint.position_count()));
    }
    std::vector<Atom> atoms;
    atoms.reserve(joint.scenario_count());
    for (std::size_t i = 0; i < joint.scenario_count(); ++i) {
        atoms.push_back({joint.values()[i][j], joint.probs()[i]});
    }
    return make_discrete(std::move(atoms));
}

DiscreteDistribution portfolio(const JointScenarios& joint, const Weights& beta) {
    if (beta.size() != joint.position_count()) {
        throw Error(Errc::LengthMismatch,
                    "portfolio: " + std::to_string(beta.size()) + " weights vs " +
                        std::to_string(joint.position_count()) + " positions");
    }
    std::vector<Atom> atoms;
    atoms.reserve(joint.scenario_count());
    for (std::size_t i = 0; i < joint.scenario_count(); ++i) {
        CompensatedSum combined;
        for (std::size_t j = 0; j < beta.size(); ++j) {
            combined.add(beta[j] * joint.values()[i][j]);
        }
        atoms.push_back({combined.value(), joint.probs()[i]});
    }
    return make_discrete(std::move(atoms));
}

JointScenarios comonotone_coupling(std::span<const DiscreteDistribution> components) {
    if (components.empty()) {
        throw Error(Errc::EmptyInput, "comonotone coupling: no components");
    }
    std::vector<double> cuts;
    for (const auto& c : components) {
        cuts.insert(cuts.end(), c.cumulative().begin(), c.cumulative().end());
    }
    std::ranges::sort(cuts);
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<double> probs;
    std::vector<std::vector<double>> rows;
    double prev = 0.0;
    for (double cut : cuts) {
        const double prob = cut - prev;
        if (prob <= 0.0) continue;
        std::vector<double> row;
        row.reserve(components.size());
        for (const auto& c : components) row.push_back(c.lower_quantile(cut));
        probs.push_back(prob);
        rows.push_back(std::move(row));
        prev = cut;
    }
    return JointScenarios(std::move(probs), std::move(rows),
                          JointScenarios::Provenance::Comonotone);
}

JointScenarios product_coupling(std::span<const DiscreteDistribution> components,
                                std::size_t scenario_cap) {
    if (components.empty()) {
        throw Error(Errc::EmptyInput, "product coupling: no components");
    }
    std::size_t count = 1;
    for (const auto& c : components) {
        if (c.size() != 0 && count > scenario_cap / c.size()) {
            count = scenario_cap;  // saturate; triggers the cap check below
            break;
        }
        count *= c.size();
    }
    if (count >= scenario_cap) {
        throw Error(Errc::SizeCapExceeded,
                    "product coupling: scenario count reaches the cap of " +
                        std::to_string(scenario_cap));
    }

    std::vector<double> probs;
    std::vector<std::vector<double>> rows;
    probs.reserve(count);
    rows.reserve(count);

    std::vector<std::size_t> odometer(components.size(), 0);
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<double> row(components.size());
        double prob = 1.0;
        for (std::size_t j = 0; j < components.size(); ++j) {
            const Atom& a = components[j].atoms()[odometer[j]];
            row[j] = a.value;
            prob *= a.mass;
        }
        probs.push_back(prob);
        rows.push_back(std::move(row));
        // advance odometer, last component fastest
        for (std::size_t j = components.size(); j-- > 0;) {
            if (++odometer[j] < components[j].size()) break;
            odometer[j] = 0;
        }
    }
    return JointScenarios(std::move(probs), std::move(rows),
                          JointScenarios::Provenance::Product);
}

std::size_t effective_scenario_cap() {
    if (const char* env = std::getenv("RISKMIX_SIZE_CAP")) {
        char* end = nullptr;
        const unsigned long long parsed = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && parsed > 0) {
            return static_cast<std::size_t>(parsed);
        }
    }
    return kDefaultScenarioCap;
}

namespace {

bool columns_identical(const JointScenarios& joint) {
    for (const auto& row : joint.values()) {
        for (std::size_t j = 1; j < row.size(); ++j) {
            if (row[j] != row[0]) return false;
        }
    }
    return true;
}

std::vector<DiscreteDistribution> all_marginals(const JointScenarios& joint) {
    std::vector<DiscreteDistribution> out;
    out.reserve(joint.position_count());
    for (std::size_t j = 0; j < joint.position_count(); ++j) {
        out.push_back(marginal(joint, j));
    }
    return out;
}

}  // namespace

GapReport convexity_gap(const JointScenarios& joint, const Weights& beta,
                        double alpha) {
    require_level_closed(alpha);
    if (beta.size() != joint.position_count()) {
        throw Error(Errc::LengthMismatch,
                    "convexity gap: " + std::to_string(beta.size()) + " weights vs " +
                        std::to_string(joint.position_count()) + " positions");
    }
    CompensatedSum lhs;
    for (std::size_t j = 0; j < beta.size(); ++j) {
        if (beta[j] == 0.0) continue;
        lhs.add(beta[j] * es(marginal(joint, j), alpha).value);
    }
    const double rhs = es(portfolio(joint, beta), alpha).value;
    const bool equality =
        joint.provenance() == JointScenarios::Provenance::Comonotone ||
        beta.is_unit_vector() || joint.position_count() == 1;
    return {alpha, lhs.value(), rhs, lhs.value() - rhs, equality};
}

GapReport diversification_gap(const JointScenarios& joint, const Weights& beta,
                              double alpha) {
    require_level_closed(alpha);
    if (beta.size() != joint.position_count()) {
        throw Error(Errc::LengthMismatch,
                    "diversification gap: " + std::to_string(beta.size()) +
                        " weights vs " + std::to_string(joint.position_count()) +
                        " positions");
    }
    const std::vector<DiscreteDistribution> marginals = all_marginals(joint);
    const double lhs = es(mix(marginals, beta), alpha).value;
    const double rhs = es(portfolio(joint, beta), alpha).value;
    const bool equality =
        beta.is_unit_vector() || joint.position_count() == 1 ||
        (joint.provenance() == JointScenarios::Provenance::Comonotone &&
         columns_identical(joint));
    return {alpha, lhs, rhs, lhs - rhs, equality};
}

}  // namespace riskmix
