#include "riskmix/expected_shortfall.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "riskmix/numeric.hpp"

namespace riskmix {

double es_integral(const DiscreteDistribution& d, double alpha) {
    require_level_left_open(alpha);

    // The lower quantile function is the step function taking value_i on the
    // cumulative-mass segment (cum_{i-1}, cum_i]; the last segment is
    // truncated at alpha.
    CompensatedSum integral;
    const auto& atoms = d.atoms();
    const auto cum = d.cumulative();
    double lo = 0.0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        const double hi = std::min(cum[i], alpha);
        if (hi > lo) integral.add(atoms[i].value * (hi - lo));
        if (cum[i] >= alpha) break;
        lo = cum[i];
    }
    return -integral.value() / alpha;
}

double es_tail(const DiscreteDistribution& d, double alpha) {
    require_level_left_open(alpha);

    const double q = d.lower_quantile(alpha);
    CompensatedSum below;  // E[X 1{X < q}]
    for (const Atom& a : d.atoms()) {
        if (!(a.value < q)) break;
        below.add(a.value * a.mass);
    }
    return -(below.value() + q * (alpha - d.prob_lt(q))) / alpha;
}

EsValue es(const DiscreteDistribution& d, double alpha) {
    require_level_closed(alpha);
    if (alpha == 0.0) {
        return {-d.essinf(), alpha, EsRepresentation::Level0};
    }
    if (alpha == 1.0) {
        return {-d.expectation(), alpha, EsRepresentation::Level1};
    }
    const double v = es_tail(d, alpha);
    assert(std::abs(es_integral(d, alpha) - v) <= rel_tol(v));
    return {v, alpha, EsRepresentation::TailExpectation};
}

double es_value(const DiscreteDistribution& d, double alpha) {
    return es(d, alpha).value;
}

std::vector<std::pair<double, double>> es_curve(const DiscreteDistribution& d,
                                                std::span<const double> grid) {
    for (double alpha : grid) require_level_closed(alpha);

    std::vector<std::pair<double, double>> out;
    out.reserve(grid.size());
    for (double alpha : grid) out.emplace_back(alpha, es(d, alpha).value);
    std::ranges::stable_sort(out, {}, &std::pair<double, double>::first);
    return out;
}

}  // namespace riskmix
