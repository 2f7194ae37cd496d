#pragma once

#include "riskmix/distribution.hpp"

namespace riskmix {

struct EsMinimization {
    double es;      // minimum of the objective
    double argmin;  // smallest minimizing c
};

/// ES as min over c of  c + E[(-X - c)+] / alpha,  alpha in (0, 1].
///
/// The objective is piecewise linear and convex in c with kinks exactly at
/// the negated atom values, so the minimum is found by evaluating every such
/// candidate. Independent of the quantile-based paths by construction; used
/// only as a cross-check oracle.
EsMinimization es_minimization(const DiscreteDistribution& d, double alpha);

}  // namespace riskmix
