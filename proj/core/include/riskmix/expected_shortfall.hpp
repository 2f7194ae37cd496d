#pragma once

#include <utility>
#include <vector>

#include "riskmix/distribution.hpp"

namespace riskmix {

/// Which formula produced an ES value.
enum class EsRepresentation { Integral, TailExpectation, Level0, Level1 };

/// ES in loss convention: positive = loss.
struct EsValue {
    double value;
    double level;
    EsRepresentation representation;
};

/// ES as -(1/alpha) * integral of the lower quantile function over (0, alpha].
/// Exact piecewise integration of the quantile step function; alpha in (0, 1].
/// Verification path.
double es_integral(const DiscreteDistribution& d, double alpha);

/// ES via the tail-expectation form: with q the lower alpha-quantile,
/// -(1/alpha) * ( E[X 1{X<q}] + q * (alpha - P(X < q)) ); alpha in (0, 1].
/// The boundary atom at q is split fractionally by the correction term.
/// Production path.
double es_tail(const DiscreteDistribution& d, double alpha);

/// ES on the full level range [0, 1]: level 0 is -essinf, level 1 is
/// -expectation, interior levels use the tail-expectation form (cross-checked
/// against the integral form in debug builds).
EsValue es(const DiscreteDistribution& d, double alpha);

/// Convenience accessor for es(d, alpha).value.
double es_value(const DiscreteDistribution& d, double alpha);

/// Pointwise ES over a level grid; output sorted ascending by level.
std::vector<std::pair<double, double>> es_curve(const DiscreteDistribution& d,
                                                std::span<const double> grid);

}  // namespace riskmix
