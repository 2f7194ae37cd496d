#include "riskmix/cvar_minimization.hpp"

#include <vector>

#include "riskmix/numeric.hpp"

namespace riskmix {

EsMinimization es_minimization(const DiscreteDistribution& d, double alpha) {
    require_level_left_open(alpha);

    const auto& atoms = d.atoms();
    const std::size_t n = atoms.size();

    // Prefix sums over atoms sorted by value: mass below index k and
    // E[X 1{X < value_k}].
    std::vector<double> mass_below(n + 1, 0.0);
    std::vector<double> ev_below(n + 1, 0.0);
    CompensatedSum ev;
    for (std::size_t k = 0; k < n; ++k) {
        mass_below[k + 1] = mass_below[k] + atoms[k].mass;
        ev.add(atoms[k].value * atoms[k].mass);
        ev_below[k + 1] = ev.value();
    }

    // Candidate c = -value_k; E[(-X - c)+] covers exactly the atoms below k.
    // Ascending candidates with a strict comparison return the smallest
    // minimizing c.
    double best_obj = 0.0;
    double best_c = 0.0;
    bool first = true;
    for (std::size_t k = n; k-- > 0;) {
        const double c = -atoms[k].value;
        const double expected_excess = -ev_below[k] - c * mass_below[k];
        const double obj = c + expected_excess / alpha;
        if (first || obj < best_obj) {
            best_obj = obj;
            best_c = c;
            first = false;
        }
    }
    return {best_obj, best_c};
}

}  // namespace riskmix
