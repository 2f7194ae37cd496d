#include "riskmix/harness.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>

#include "riskmix/cvar_minimization.hpp"
#include "riskmix/expected_shortfall.hpp"
#include "riskmix/io.hpp"
#include "riskmix/mixture_concavity.hpp"
#include "riskmix/numeric.hpp"
#include "riskmix/scenarios.hpp"

namespace riskmix {

namespace {

enum class Check : std::size_t {
    RepresentationEquivalence,
    MinimizationAgreement,
    QuantileOrder,
    QuantileMonotonicity,
    DecompositionLevelSum,
    DecompositionBracketing,
    DecompositionIdentity,
    TailLocation,
    ConcavityGap,
    ConcavityEquality,
    MarginalPreservation,
    ComonotoneAdditivity,
    ConvexityGap,
    DiversificationGap,
    GapChainIdentity,
    SpectralConcavity,
    SpectralPointMass,
    Count_,
};

constexpr std::size_t kCheckCount = static_cast<std::size_t>(Check::Count_);

struct CheckDescriptor {
    const char* name;
    bool track_min;  // gap checks track their minimum, everything else maxima
};

constexpr std::array<CheckDescriptor, kCheckCount> kChecks = {{
    {"representation_equivalence", false},
    {"minimization_agreement", false},
    {"quantile_order", false},
    {"quantile_monotonicity", false},
    {"decomposition_level_sum", false},
    {"decomposition_bracketing", false},
    {"decomposition_identity", false},
    {"tail_location", false},
    {"concavity_gap", true},
    {"concavity_equality", false},
    {"marginal_preservation", false},
    {"comonotone_additivity", false},
    {"convexity_gap", true},
    {"diversification_gap", true},
    {"gap_chain_identity", false},
    {"spectral_concavity", true},
    {"spectral_point_mass", false},
}};

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t index, std::uint32_t salt) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(index >> 32), salt};
    return std::mt19937_64(seq);
}

// Plain modulo reduction: bias is irrelevant here and the draw stays
// reproducible across standard-library versions.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t n) {
    return rng() % n;
}

int draw_range(std::mt19937_64& rng, IntRange r) {
    return r.lo + static_cast<int>(draw_below(rng, static_cast<std::uint64_t>(r.hi - r.lo + 1)));
}

// First k entries of a partial Fisher-Yates shuffle of 0..universe-1.
std::vector<int> draw_distinct(std::mt19937_64& rng, int universe, int k) {
    std::vector<int> idx(static_cast<std::size_t>(universe));
    std::iota(idx.begin(), idx.end(), 0);
    for (int i = 0; i < k; ++i) {
        const int j = i + static_cast<int>(draw_below(rng, static_cast<std::uint64_t>(universe - i)));
        std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
    }
    idx.resize(static_cast<std::size_t>(k));
    return idx;
}

// Composition of `total` into `parts` strictly positive integers.
std::vector<int> positive_composition(std::mt19937_64& rng, int total, int parts) {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(parts));
    if (parts == 1) {
        out.push_back(total);
        return out;
    }
    std::vector<int> cuts = draw_distinct(rng, total - 1, parts - 1);
    for (int& c : cuts) c += 1;
    std::ranges::sort(cuts);
    int prev = 0;
    for (int c : cuts) {
        out.push_back(c - prev);
        prev = c;
    }
    out.push_back(total - prev);
    return out;
}

std::vector<double> breakpoint_alphas(const DiscreteDistribution& mixture) {
    std::vector<double> alphas;
    alphas.push_back(0.0);
    double prev = 0.0;
    for (double c : mixture.cumulative()) {
        alphas.push_back((prev + c) / 2.0);
        alphas.push_back(c);
        prev = c;
    }
    alphas.push_back(1.0);
    std::ranges::sort(alphas);
    alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());
    return alphas;
}

std::string serialize_instance(const Instance& inst) {
    JsonWriter w;
    w.begin_object().key("components").begin_array();
    for (const auto& c : inst.components) write_json(w, c);
    w.end_array().key("beta").begin_array();
    for (double b : inst.beta.entries()) w.value(b);
    w.end_array().key("alphas").begin_array();
    for (double a : inst.alphas) w.value(a);
    w.end_array().end_object();
    return w.str();
}

class PhaseAccumulator {
public:
    PhaseAccumulator(std::string name, std::vector<SuiteFailure>& sink)
        : name_(std::move(name)), failures_(sink) {
        for (std::size_t c = 0; c < kCheckCount; ++c) {
            stats_[c].name = kChecks[c].name;
            stats_[c].worst_is_min = kChecks[c].track_min;
        }
    }

    void begin_instance(std::uint64_t index, const Instance& inst) {
        index_ = index;
        instance_json_ = serialize_instance(inst);
    }

    template <typename DetailFn>
    void record(Check c, std::optional<double> alpha, bool pass, double metric,
                DetailFn&& detail) {
        CheckStats& s = stats_[static_cast<std::size_t>(c)];
        if (pass) {
            ++s.pass;
        } else {
            ++s.fail;
            failures_.push_back({name_, s.name, index_, alpha, detail(), instance_json_});
        }
        const bool better =
            !s.has_worst || (s.worst_is_min ? metric < s.worst : metric > s.worst);
        if (better) {
            s.has_worst = true;
            s.worst = metric;
            s.worst_index = index_;
            s.worst_detail = detail();
            s.worst_instance_json = instance_json_;
        }
    }

    // residual <= tol
    template <typename DetailFn>
    void residual(Check c, std::optional<double> alpha, double r, double tol,
                  DetailFn&& detail) {
        record(c, alpha, r <= tol, r, std::forward<DetailFn>(detail));
    }

    // gap >= -tol
    template <typename DetailFn>
    void floor_check(Check c, std::optional<double> alpha, double gap, double tol,
                     DetailFn&& detail) {
        record(c, alpha, gap >= -tol, gap, std::forward<DetailFn>(detail));
    }

    PhaseReport finish(std::uint64_t instances) {
        PhaseReport out;
        out.name = name_;
        out.instances = instances;
        out.checks.assign(stats_.begin(), stats_.end());
        return out;
    }

private:
    std::string name_;
    std::vector<SuiteFailure>& failures_;
    std::array<CheckStats, kCheckCount> stats_{};
    std::uint64_t index_ = 0;
    std::string instance_json_;
};

struct CouplingData {
    std::vector<DiscreteDistribution> marginals;
    DiscreteDistribution pf;        // portfolio under the instance weights
    DiscreteDistribution marg_mix;  // mixture of the marginals
    bool comonotone = false;
};

CouplingData derive_coupling(const JointScenarios& joint, const Weights& beta,
                             bool comonotone) {
    std::vector<DiscreteDistribution> marginals;
    marginals.reserve(joint.position_count());
    for (std::size_t j = 0; j < joint.position_count(); ++j) {
        marginals.push_back(marginal(joint, j));
    }
    DiscreteDistribution pf = portfolio(joint, beta);
    DiscreteDistribution marg_mix = mix(marginals, beta);
    return {std::move(marginals), std::move(pf), std::move(marg_mix), comonotone};
}

void check_marginal_preservation(PhaseAccumulator& acc, const Instance& inst,
                                 const CouplingData& coupling) {
    double viol = 0.0;
    bool ok = true;
    for (std::size_t j = 0; j < inst.components.size(); ++j) {
        const auto& expected = inst.components[j].atoms();
        const auto& got = coupling.marginals[j].atoms();
        if (expected.size() != got.size()) {
            ok = false;
            viol = 1.0;
            break;
        }
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (expected[i].value != got[i].value) {
                ok = false;
                viol = 1.0;
                break;
            }
            viol = std::max(viol, std::abs(expected[i].mass - got[i].mass));
        }
        if (!ok) break;
    }
    ok = ok && viol <= kProbTol;
    acc.record(Check::MarginalPreservation, std::nullopt, ok, viol, [&] {
        return "marginal mismatch, max mass deviation " + format_real(viol);
    });
}

void check_coupling_at_level(PhaseAccumulator& acc, const Weights& beta,
                             const CouplingData& coupling, double alpha) {
    const double pf_es = es(coupling.pf, alpha).value;
    CompensatedSum weighted;
    for (std::size_t j = 0; j < beta.size(); ++j) {
        if (beta[j] == 0.0) continue;
        weighted.add(beta[j] * es(coupling.marginals[j], alpha).value);
    }
    const double sum_es = weighted.value();
    const double mix_es = es(coupling.marg_mix, alpha).value;

    const double conv_gap = sum_es - pf_es;
    const double div_gap = mix_es - pf_es;
    const double conc_gap = mix_es - sum_es;

    acc.floor_check(Check::ConvexityGap, alpha, conv_gap, rel_tol(sum_es), [&] {
        return "sum_es=" + format_real(sum_es) + " pf_es=" + format_real(pf_es);
    });
    acc.floor_check(Check::DiversificationGap, alpha, div_gap, rel_tol(mix_es), [&] {
        return "mix_es=" + format_real(mix_es) + " pf_es=" + format_real(pf_es);
    });
    const double chain = std::abs(div_gap - (conv_gap + conc_gap));
    acc.residual(Check::GapChainIdentity, alpha, chain, 2e-9 * (1.0 + std::abs(mix_es)),
                 [&] {
                     return "div=" + format_real(div_gap) + " conv=" + format_real(conv_gap) +
                            " conc=" + format_real(conc_gap);
                 });
    if (coupling.comonotone) {
        acc.residual(Check::ComonotoneAdditivity, alpha, std::abs(conv_gap),
                     rel_tol(sum_es), [&] {
                         return "sum_es=" + format_real(sum_es) +
                                " pf_es=" + format_real(pf_es);
                     });
    }
}

void run_instance_checks(PhaseAccumulator& acc, std::uint64_t index,
                         const Instance& inst, const SpectralMeasure& nu) {
    acc.begin_instance(index, inst);

    const auto& comps = inst.components;
    const Weights& beta = inst.beta;
    const DiscreteDistribution mixture = mix(comps, beta);

    std::vector<const DiscreteDistribution*> probes;
    probes.reserve(comps.size() + 1);
    for (const auto& c : comps) probes.push_back(&c);
    probes.push_back(&mixture);

    const CouplingData com =
        derive_coupling(comonotone_coupling(comps), beta, /*comonotone=*/true);
    std::optional<CouplingData> prod;
    try {
        prod = derive_coupling(product_coupling(comps, effective_scenario_cap()), beta,
                               /*comonotone=*/false);
    } catch (const Error& e) {
        if (e.code() != Errc::SizeCapExceeded) throw;
    }

    check_marginal_preservation(acc, inst, com);
    if (prod) check_marginal_preservation(acc, inst, *prod);

    for (double alpha : inst.alphas) {
        for (const DiscreteDistribution* d : probes) {
            if (alpha > 0.0) {
                const double t = es_tail(*d, alpha);
                const double i = es_integral(*d, alpha);
                const double m = es_minimization(*d, alpha).es;
                acc.residual(Check::RepresentationEquivalence, alpha, std::abs(i - t),
                             rel_tol(t), [&] {
                                 return "integral=" + format_real(i) +
                                        " tail=" + format_real(t);
                             });
                acc.residual(Check::MinimizationAgreement, alpha, std::abs(m - t),
                             rel_tol(t), [&] {
                                 return "minimization=" + format_real(m) +
                                        " tail=" + format_real(t);
                             });
            }
            if (alpha > 0.0 && alpha < 1.0) {
                const double lo = d->lower_quantile(alpha);
                const double up = d->upper_quantile(alpha);
                const auto cum = d->cumulative();
                const bool at_breakpoint =
                    std::ranges::binary_search(cum, alpha);
                const bool ok = lo <= up && (at_breakpoint || lo == up);
                acc.record(Check::QuantileOrder, alpha, ok, std::max(lo - up, 0.0), [&] {
                    return "lower=" + format_real(lo) + " upper=" + format_real(up);
                });
            }
        }

        if (alpha > 0.0 && alpha < 1.0) {
            const std::vector<double> levels =
                decomposition_levels(mixture, comps, beta, alpha);
            const DecompositionReport rep =
                es_mixture_decomposition(mixture, comps, beta, alpha);

            acc.residual(Check::DecompositionLevelSum, alpha,
                         std::abs(rep.weighted_level_sum - alpha), kProbTol, [&] {
                             return "weighted_level_sum=" +
                                    format_real(rep.weighted_level_sum);
                         });

            double bracket_viol = 0.0;
            for (std::size_t j = 0; j < comps.size(); ++j) {
                const double lo = comps[j].prob_lt(rep.q_alpha);
                const double hi = comps[j].cdf(rep.q_alpha);
                bracket_viol = std::max({bracket_viol, lo - levels[j], levels[j] - hi});
            }
            acc.record(Check::DecompositionBracketing, alpha, bracket_viol <= 0.0,
                       bracket_viol, [&] {
                           return "bracketing violation " + format_real(bracket_viol);
                       });

            acc.residual(Check::DecompositionIdentity, alpha,
                         std::abs(rep.lhs - rep.rhs), rel_tol(rep.lhs), [&] {
                             return "lhs=" + format_real(rep.lhs) +
                                    " rhs=" + format_real(rep.rhs);
                         });

            // q_gamma(X_j) >= q_alpha(mixture) for every grid level strictly
            // above alpha_j
            double tail_viol = 0.0;
            for (std::size_t j = 0; j < comps.size(); ++j) {
                for (double gamma : comps[j].cumulative()) {
                    if (gamma > levels[j] + kProbTol) {
                        tail_viol = std::max(
                            tail_viol, rep.q_alpha - comps[j].lower_quantile(gamma));
                    }
                }
            }
            acc.record(Check::TailLocation, alpha, tail_viol <= 0.0, tail_viol, [&] {
                return "tail-location violation " + format_real(tail_viol);
            });
        }

        const GapReport conc = concavity_gap(mixture, comps, beta, alpha);
        acc.floor_check(Check::ConcavityGap, alpha, conc.gap, rel_tol(conc.lhs), [&] {
            return "lhs=" + format_real(conc.lhs) + " rhs=" + format_real(conc.rhs);
        });
        if (conc.equality_expected) {
            acc.residual(Check::ConcavityEquality, alpha, std::abs(conc.gap),
                         rel_tol(conc.lhs), [&] {
                             return "gap=" + format_real(conc.gap);
                         });
        }

        check_coupling_at_level(acc, beta, com, alpha);
        if (prod) check_coupling_at_level(acc, beta, *prod, alpha);
    }

    for (const DiscreteDistribution* d : probes) {
        double viol = 0.0;
        for (std::size_t i = 1; i < inst.alphas.size(); ++i) {
            const double a = inst.alphas[i - 1];
            const double b = inst.alphas[i];
            if (a > 0.0) {
                viol = std::max(viol, d->lower_quantile(a) - d->lower_quantile(b));
            }
            if (b < 1.0) {
                viol = std::max(viol, d->upper_quantile(a) - d->upper_quantile(b));
            }
        }
        acc.record(Check::QuantileMonotonicity, std::nullopt, viol <= 0.0, viol, [&] {
            return "monotonicity violation " + format_real(viol);
        });
    }

    const GapReport sg = spectral_concavity_gap(comps, beta, nu);
    acc.floor_check(Check::SpectralConcavity, std::nullopt, sg.gap, rel_tol(sg.lhs),
                    [&] {
                        return "lhs=" + format_real(sg.lhs) + " rhs=" + format_real(sg.rhs);
                    });

    const double pm_alpha = nu.points().front().alpha;
    const double pm = spectral_value(mixture, SpectralMeasure::point_mass_at(pm_alpha));
    const double direct = es(mixture, pm_alpha).value;
    acc.residual(Check::SpectralPointMass, pm_alpha, std::abs(pm - direct), 0.0, [&] {
        return "point_mass=" + format_real(pm) + " es=" + format_real(direct);
    });
}

SpectralMeasure draw_spectral(std::mt19937_64& rng, int mass_grid,
                              const std::vector<double>& alphas) {
    const int max_pts = static_cast<int>(
        std::min<std::size_t>({5, alphas.size(), static_cast<std::size_t>(mass_grid)}));
    const int k = 1 + static_cast<int>(draw_below(rng, static_cast<std::uint64_t>(max_pts)));
    const std::vector<int> picks =
        draw_distinct(rng, static_cast<int>(alphas.size()), k);
    const std::vector<int> parts = positive_composition(rng, mass_grid, k);
    std::vector<SpectralPoint> points;
    points.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        points.push_back({alphas[static_cast<std::size_t>(picks[static_cast<std::size_t>(i)])],
                          static_cast<double>(parts[static_cast<std::size_t>(i)]) / mass_grid});
    }
    return SpectralMeasure(std::move(points));
}

}  // namespace

void GenConfig::validate() const {
    if (n_components.lo < 1 || n_components.hi < n_components.lo) {
        throw Error(Errc::ParseError, "config: bad n_components range");
    }
    if (atoms_per_component.lo < 1 || atoms_per_component.hi < atoms_per_component.lo) {
        throw Error(Errc::ParseError, "config: bad atoms_per_component range");
    }
    if (!(value_range.first < value_range.second) ||
        !std::isfinite(value_range.first) || !std::isfinite(value_range.second)) {
        throw Error(Errc::ParseError, "config: value_range must satisfy lo < hi");
    }
    if (std::floor(value_range.second) < std::ceil(value_range.first)) {
        throw Error(Errc::ParseError,
                    "config: value_range contains no integer lattice point");
    }
    if (mass_grid < 1 || mass_grid < n_components.hi) {
        throw Error(Errc::ParseError,
                    "config: mass_grid must be >= max component count");
    }
    if (instance_count < 0) {
        throw Error(Errc::ParseError, "config: negative instance_count");
    }
    for (double a : alpha_grid) require_level_closed(a);
}

Instance gen_instance(const GenConfig& config, std::uint64_t index) {
    config.validate();
    std::mt19937_64 rng = make_rng(config.seed, index, 0);

    const int lat_lo = static_cast<int>(std::ceil(config.value_range.first));
    const int lat_hi = static_cast<int>(std::floor(config.value_range.second));
    const int lattice = lat_hi - lat_lo + 1;

    const int n = draw_range(rng, config.n_components);
    std::vector<DiscreteDistribution> components;
    components.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        int k = draw_range(rng, config.atoms_per_component);
        k = std::min({k, config.mass_grid, lattice});
        const std::vector<int> values = draw_distinct(rng, lattice, k);
        const std::vector<int> parts = positive_composition(rng, config.mass_grid, k);
        std::vector<Atom> atoms;
        atoms.reserve(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) {
            atoms.push_back({static_cast<double>(lat_lo + values[static_cast<std::size_t>(i)]),
                             static_cast<double>(parts[static_cast<std::size_t>(i)]) /
                                 config.mass_grid});
        }
        components.push_back(make_discrete(std::move(atoms)));
    }

    // Simplex weights on the same grid; one boundary entry (beta_j = 0) with
    // 10% probability.
    std::vector<double> entries(static_cast<std::size_t>(n), 0.0);
    const bool boundary = n >= 2 && draw_below(rng, 10) == 0;
    if (boundary) {
        const std::size_t zero_j = draw_below(rng, static_cast<std::uint64_t>(n));
        const std::vector<int> parts = positive_composition(rng, config.mass_grid, n - 1);
        std::size_t next = 0;
        for (std::size_t j = 0; j < entries.size(); ++j) {
            if (j == zero_j) continue;
            entries[j] = static_cast<double>(parts[next++]) / config.mass_grid;
        }
    } else {
        const std::vector<int> parts = positive_composition(rng, config.mass_grid, n);
        for (std::size_t j = 0; j < entries.size(); ++j) {
            entries[j] = static_cast<double>(parts[j]) / config.mass_grid;
        }
    }
    Weights beta(std::move(entries));

    std::vector<double> alphas;
    if (!config.alpha_grid.empty()) {
        alphas = config.alpha_grid;
        std::ranges::sort(alphas);
        alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());
    } else {
        alphas = breakpoint_alphas(mix(components, beta));
    }
    return {std::move(components), std::move(beta), std::move(alphas)};
}

SpectralMeasure gen_spectral_measure(const GenConfig& config, std::uint64_t index,
                                     const std::vector<double>& alphas) {
    std::mt19937_64 rng = make_rng(config.seed, index, 1);
    return draw_spectral(rng, config.mass_grid, alphas);
}

std::vector<DiscreteDistribution> exhaustive_grid_distributions() {
    std::vector<DiscreteDistribution> out;
    for (int g0 = 0; g0 <= 4; ++g0)
        for (int g1 = 0; g1 + g0 <= 4; ++g1)
            for (int g2 = 0; g2 + g1 + g0 <= 4; ++g2)
                for (int g3 = 0; g3 + g2 + g1 + g0 <= 4; ++g3) {
                    const int g4 = 4 - g0 - g1 - g2 - g3;
                    const int grid[5] = {g0, g1, g2, g3, g4};
                    std::vector<Atom> atoms;
                    for (int i = 0; i < 5; ++i) {
                        if (grid[i] > 0) {
                            atoms.push_back({static_cast<double>(i - 2), grid[i] / 4.0});
                        }
                    }
                    out.push_back(make_discrete(std::move(atoms)));
                }
    return out;
}

std::uint64_t PhaseReport::total_pass() const {
    std::uint64_t total = 0;
    for (const auto& c : checks) total += c.pass;
    return total;
}

std::uint64_t PhaseReport::total_fail() const {
    std::uint64_t total = 0;
    for (const auto& c : checks) total += c.fail;
    return total;
}

std::uint64_t SuiteReport::total_pass() const {
    return randomized.total_pass() + exhaustive.total_pass();
}

std::uint64_t SuiteReport::total_fail() const {
    return randomized.total_fail() + exhaustive.total_fail();
}

namespace {

void write_phase(JsonWriter& w, const PhaseReport& phase) {
    w.begin_object().key("name").value(std::string_view(phase.name));
    w.key("instances").value(phase.instances);
    w.key("checks").begin_array();
    for (const CheckStats& c : phase.checks) {
        w.begin_object();
        w.key("name").value(std::string_view(c.name));
        w.key("pass").value(c.pass);
        w.key("fail").value(c.fail);
        if (c.has_worst) {
            w.key("worst").value(c.worst);
            w.key("worst_index").value(c.worst_index);
            w.key("worst_detail").value(std::string_view(c.worst_detail));
            w.key("worst_instance").raw(c.worst_instance_json);
        } else {
            w.key("worst").null();
        }
        w.end_object();
    }
    w.end_array().end_object();
}

}  // namespace

std::string SuiteReport::to_json(bool include_wall_time) const {
    JsonWriter w;
    w.begin_object();
    w.key("seed").value(seed);
    w.key("config").begin_object();
    w.key("n_components").begin_array()
        .value(static_cast<std::int64_t>(config.n_components.lo))
        .value(static_cast<std::int64_t>(config.n_components.hi)).end_array();
    w.key("atoms_per_component").begin_array()
        .value(static_cast<std::int64_t>(config.atoms_per_component.lo))
        .value(static_cast<std::int64_t>(config.atoms_per_component.hi)).end_array();
    w.key("value_range").begin_array()
        .value(config.value_range.first).value(config.value_range.second).end_array();
    w.key("mass_grid").value(static_cast<std::int64_t>(config.mass_grid));
    if (config.alpha_grid.empty()) {
        w.key("alpha_grid").value(std::string_view("all-breakpoints"));
    } else {
        w.key("alpha_grid").begin_array();
        for (double a : config.alpha_grid) w.value(a);
        w.end_array();
    }
    w.key("instance_count").value(static_cast<std::int64_t>(config.instance_count));
    w.end_object();

    w.key("phases").begin_array();
    write_phase(w, randomized);
    write_phase(w, exhaustive);
    w.end_array();

    w.key("failures").begin_array();
    for (const SuiteFailure& f : failures) {
        w.begin_object();
        w.key("phase").value(std::string_view(f.phase));
        w.key("check").value(std::string_view(f.check));
        w.key("instance_index").value(f.instance_index);
        if (f.alpha.has_value()) {
            w.key("alpha").value(*f.alpha);
        } else {
            w.key("alpha").null();
        }
        w.key("detail").value(std::string_view(f.detail));
        w.key("instance").raw(f.instance_json);
        w.end_object();
    }
    w.end_array();

    w.key("total_pass").value(total_pass());
    w.key("total_fail").value(total_fail());
    if (include_wall_time) {
        w.key("wall_ms").value(wall_ms);
    }
    w.end_object();
    return w.str();
}

SuiteReport run_suite(const GenConfig& config) {
    config.validate();

    SuiteReport report;
    report.seed = config.seed;
    report.config = config;

    const auto t0 = std::chrono::steady_clock::now();

    PhaseAccumulator randomized("randomized", report.failures);
    PhaseAccumulator exhaustive("exhaustive", report.failures);
    std::uint64_t exhaustive_count = 0;

    if (config.instance_count > 0) {
        for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(config.instance_count);
             ++i) {
            const Instance inst = gen_instance(config, i);
            const SpectralMeasure nu = gen_spectral_measure(config, i, inst.alphas);
            run_instance_checks(randomized, i, inst, nu);
        }

        const std::vector<DiscreteDistribution> grid = exhaustive_grid_distributions();
        for (std::size_t a = 0; a < grid.size(); ++a) {
            for (std::size_t b = 0; b < grid.size(); ++b) {
                for (int quarters = 1; quarters <= 3; ++quarters) {
                    Instance inst{{grid[a], grid[b]},
                                  Weights({quarters / 4.0, (4 - quarters) / 4.0}),
                                  {}};
                    inst.alphas = breakpoint_alphas(mix(inst.components, inst.beta));
                    std::mt19937_64 rng = make_rng(0x45584841u, exhaustive_count, 2);
                    const SpectralMeasure nu = draw_spectral(rng, 4, inst.alphas);
                    run_instance_checks(exhaustive, exhaustive_count, inst, nu);
                    ++exhaustive_count;
                }
            }
        }
    }

    report.randomized = randomized.finish(
        config.instance_count > 0 ? static_cast<std::uint64_t>(config.instance_count) : 0);
    report.exhaustive = exhaustive.finish(exhaustive_count);

    const auto t1 = std::chrono::steady_clock::now();
    report.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return report;
}

}  // namespace riskmix
