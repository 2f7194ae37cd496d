// Acceptance suite: runs every acceptance criterion at its pinned tolerance
// and prints one PASS/FAIL line per criterion. Exits nonzero when any
// criterion fails. The riskmix CLI path is taken from argv[1] (criteria 6
// and 7 drive the binary itself).

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <json.hpp>

#include "riskmix/cvar_minimization.hpp"
#include "riskmix/expected_shortfall.hpp"
#include "riskmix/harness.hpp"
#include "riskmix/mixture_concavity.hpp"
#include "riskmix/numeric.hpp"
#include "riskmix/scenarios.hpp"
#include "riskmix/spectral.hpp"
#include "support/subprocess.hpp"

namespace {

namespace fs = std::filesystem;
using namespace riskmix;
using testsupport::run_command;
using testsupport::shell_quote;

struct Criterion {
    int id;
    std::string name;
    bool pass;
    std::string detail;
};

std::string fmt(double v) { return format_real(v); }

// Shared state accumulated over the 10,000-instance pass (criteria 1-4).
struct BatchStats {
    std::uint64_t instances = 0;
    // criterion 1
    double max_int_tail = 0.0;
    double max_min_tail = 0.0;
    std::uint64_t equivalence_checks = 0;
    std::uint64_t equivalence_failures = 0;
    // criterion 2
    std::uint64_t decomposition_checks = 0;
    std::uint64_t decomposition_failures = 0;
    double max_level_sum_err = 0.0;
    double max_decomp_residual = 0.0;
    // criterion 3
    std::uint64_t concavity_checks = 0;
    std::uint64_t concavity_failures = 0;
    double min_concavity_gap = 0.0;
    // criterion 4
    std::uint64_t coupling_checks = 0;
    std::uint64_t coupling_failures = 0;
    double min_coupling_gap = 0.0;
    double max_chain_residual = 0.0;
};

void check_instance(const std::vector<DiscreteDistribution>& comps, const Weights& beta,
                    const std::vector<double>& alphas, BatchStats& s) {
    ++s.instances;
    const DiscreteDistribution mixture = mix(comps, beta);

    std::vector<const DiscreteDistribution*> probes;
    for (const auto& c : comps) probes.push_back(&c);
    probes.push_back(&mixture);

    // couplings derived once per instance
    const JointScenarios com_joint = comonotone_coupling(comps);
    const JointScenarios prod_joint = product_coupling(comps);
    std::vector<DiscreteDistribution> com_marg, prod_marg;
    for (std::size_t j = 0; j < comps.size(); ++j) {
        com_marg.push_back(marginal(com_joint, j));
        prod_marg.push_back(marginal(prod_joint, j));
    }
    const DiscreteDistribution com_pf = portfolio(com_joint, beta);
    const DiscreteDistribution prod_pf = portfolio(prod_joint, beta);
    const DiscreteDistribution com_mix = mix(com_marg, beta);
    const DiscreteDistribution prod_mix = mix(prod_marg, beta);

    for (double alpha : alphas) {
        // --- criterion 1: representation equivalence + oracle agreement
        if (alpha > 0.0) {
            for (const DiscreteDistribution* d : probes) {
                const double t = es_tail(*d, alpha);
                const double i = es_integral(*d, alpha);
                const double m = es_minimization(*d, alpha).es;
                const double tol = 1e-9 * (1.0 + std::abs(t));
                s.equivalence_checks += 2;
                s.max_int_tail = std::max(s.max_int_tail, std::abs(i - t));
                s.max_min_tail = std::max(s.max_min_tail, std::abs(m - t));
                if (std::abs(i - t) > tol) ++s.equivalence_failures;
                if (std::abs(m - t) > tol) ++s.equivalence_failures;
            }
        }

        // --- criterion 2: decomposition level sum, bracketing, identity
        if (alpha > 0.0 && alpha < 1.0) {
            const auto levels = decomposition_levels(mixture, comps, beta, alpha);
            const auto rep = es_mixture_decomposition(mixture, comps, beta, alpha);
            s.decomposition_checks += 1;
            bool ok = true;

            const double level_err = std::abs(rep.weighted_level_sum - alpha);
            s.max_level_sum_err = std::max(s.max_level_sum_err, level_err);
            if (level_err > 1e-12) ok = false;

            for (std::size_t j = 0; j < comps.size(); ++j) {
                const double lo = comps[j].prob_lt(rep.q_alpha);
                const double hi = comps[j].cdf(rep.q_alpha);
                if (!(levels[j] >= lo && levels[j] <= hi)) ok = false;
            }

            const double residual = std::abs(rep.lhs - rep.rhs);
            s.max_decomp_residual = std::max(s.max_decomp_residual, residual);
            if (residual > 1e-9 * (1.0 + std::abs(rep.lhs))) ok = false;

            if (!ok) ++s.decomposition_failures;
        }

        // --- criterion 3: concavity gap and its equality cases
        {
            const GapReport gap = concavity_gap(mixture, comps, beta, alpha);
            const double tol = 1e-9 * (1.0 + std::abs(gap.lhs));
            s.concavity_checks += 1;
            s.min_concavity_gap = std::min(s.min_concavity_gap, gap.gap);
            bool ok = gap.gap >= -tol;
            if (gap.equality_expected && std::abs(gap.gap) > tol) ok = false;
            if (alpha == 1.0 && std::abs(gap.gap) > tol) ok = false;
            if (!ok) ++s.concavity_failures;
        }

        // --- criterion 4: convexity, diversification, gap chain
        {
            for (int which = 0; which < 2; ++which) {
                const bool comonotone = which == 0;
                const auto& marg = comonotone ? com_marg : prod_marg;
                const auto& pf = comonotone ? com_pf : prod_pf;
                const auto& marg_mix = comonotone ? com_mix : prod_mix;

                const double pf_es = es(pf, alpha).value;
                CompensatedSum weighted;
                for (std::size_t j = 0; j < comps.size(); ++j) {
                    if (beta[j] == 0.0) continue;
                    weighted.add(beta[j] * es(marg[j], alpha).value);
                }
                const double sum_es = weighted.value();
                const double mix_es = es(marg_mix, alpha).value;

                const double conv_gap = sum_es - pf_es;
                const double div_gap = mix_es - pf_es;
                const double conc_gap = mix_es - sum_es;

                s.coupling_checks += 1;
                s.min_coupling_gap =
                    std::min({s.min_coupling_gap, conv_gap, div_gap});
                bool ok = true;
                if (comonotone) {
                    if (std::abs(conv_gap) > 1e-9 * (1.0 + std::abs(sum_es))) ok = false;
                } else {
                    if (conv_gap < -1e-9 * (1.0 + std::abs(sum_es))) ok = false;
                }
                if (div_gap < -1e-9 * (1.0 + std::abs(mix_es))) ok = false;

                const double chain = std::abs(div_gap - (conv_gap + conc_gap));
                s.max_chain_residual = std::max(s.max_chain_residual, chain);
                if (chain > 2e-9 * (1.0 + std::abs(mix_es))) ok = false;

                if (!ok) ++s.coupling_failures;
            }
        }
    }
}

std::vector<nlohmann::json> parse_json_lines(const std::string& text) {
    std::vector<nlohmann::json> out;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        out.push_back(nlohmann::json::parse(line));
    }
    return out;
}

std::vector<std::pair<double, double>> parse_alpha_value_csv(const std::string& text) {
    std::vector<std::pair<double, double>> rows;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) continue;
        rows.emplace_back(std::strtod(line.substr(0, comma).c_str(), nullptr),
                          std::strtod(line.substr(comma + 1).c_str(), nullptr));
    }
    return rows;
}

std::string read_all(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_all(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: riskmix_acceptance <riskmix-cli-path>\n";
        return 2;
    }
    const std::string cli = argv[1];
    const fs::path dir =
        fs::temp_directory_path() / ("riskmix_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);

    std::vector<Criterion> results;

    // ---- criteria 1-4: one pass over 10,000 grid-rational instances -------
    {
        const auto t0 = std::chrono::steady_clock::now();
        BatchStats stats;

        struct BatchConfig {
            int mass_grid;
            int count;
            std::uint64_t seed;
        };
        // three mass grids: binary-exact, decimal, and prime
        const BatchConfig batches[] = {{16, 4000, 101}, {10, 3000, 202}, {7, 3000, 303}};
        for (const BatchConfig& batch : batches) {
            GenConfig config;
            config.seed = batch.seed;
            config.mass_grid = batch.mass_grid;
            config.atoms_per_component = {1, std::min(12, batch.mass_grid)};
            config.instance_count = batch.count;
            for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(batch.count); ++i) {
                const Instance inst = gen_instance(config, i);
                check_instance(inst.components, inst.beta, inst.alphas, stats);
            }
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        results.push_back(
            {1, "representation equivalence (integral vs tail vs minimization)",
             stats.equivalence_failures == 0 && elapsed <= 60.0,
             "max|integral-tail|=" + fmt(stats.max_int_tail) +
                 ", max|minimization-tail|=" + fmt(stats.max_min_tail) + ", " +
                 std::to_string(stats.equivalence_checks) + " checks over " +
                 std::to_string(stats.instances) + " instances, batch runtime " +
                 fmt(elapsed) + "s (limit 60s)"});

        // exhaustive small grid extends criterion 2
        std::uint64_t exhaustive_checks = 0;
        std::uint64_t exhaustive_failures = 0;
        {
            BatchStats ex;
            const auto grid = exhaustive_grid_distributions();
            for (std::size_t a = 0; a < grid.size(); ++a) {
                for (std::size_t b = 0; b < grid.size(); ++b) {
                    for (int q = 1; q <= 3; ++q) {
                        const std::vector<DiscreteDistribution> comps = {grid[a], grid[b]};
                        const Weights beta({q / 4.0, (4 - q) / 4.0});
                        std::vector<double> alphas;
                        alphas.push_back(0.0);
                        double prev = 0.0;
                        const DiscreteDistribution m = mix(comps, beta);
                        for (double c : m.cumulative()) {
                            alphas.push_back((prev + c) / 2.0);
                            alphas.push_back(c);
                            prev = c;
                        }
                        alphas.push_back(1.0);
                        std::sort(alphas.begin(), alphas.end());
                        alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());
                        check_instance(comps, beta, alphas, ex);
                    }
                }
            }
            exhaustive_checks = ex.decomposition_checks;
            exhaustive_failures = ex.decomposition_failures + ex.concavity_failures +
                                  ex.coupling_failures + ex.equivalence_failures;
            stats.max_level_sum_err =
                std::max(stats.max_level_sum_err, ex.max_level_sum_err);
            stats.max_decomp_residual =
                std::max(stats.max_decomp_residual, ex.max_decomp_residual);
        }

        results.push_back(
            {2, "decomposition suite (level sum, bracketing, identity)",
             stats.decomposition_failures == 0 && exhaustive_failures == 0,
             std::to_string(stats.decomposition_checks) + " randomized + " +
                 std::to_string(exhaustive_checks) +
                 " exhaustive decompositions, max level-sum error " +
                 fmt(stats.max_level_sum_err) + ", max residual " +
                 fmt(stats.max_decomp_residual) + ", failures " +
                 std::to_string(stats.decomposition_failures + exhaustive_failures)});

        results.push_back(
            {3, "concavity of ES under mixing",
             stats.concavity_failures == 0,
             std::to_string(stats.concavity_checks) + " gaps, min gap " +
                 fmt(stats.min_concavity_gap) + ", failures " +
                 std::to_string(stats.concavity_failures)});

        results.push_back(
            {4, "convexity, diversification and the gap chain",
             stats.coupling_failures == 0,
             std::to_string(stats.coupling_checks) + " coupling checks, min gap " +
                 fmt(stats.min_coupling_gap) + ", max chain residual " +
                 fmt(stats.max_chain_residual) + ", failures " +
                 std::to_string(stats.coupling_failures)});
    }

    // ---- criterion 5: spectral concavity over 1000 (instance, nu) pairs ---
    {
        GenConfig config;
        config.seed = 505;
        config.instance_count = 1000;
        std::uint64_t failures = 0;
        double min_gap = 0.0;
        double max_point_mass_err = 0.0;
        for (std::uint64_t i = 0; i < 1000; ++i) {
            const Instance inst = gen_instance(config, i);
            const SpectralMeasure nu = gen_spectral_measure(config, i, inst.alphas);
            const GapReport gap = spectral_concavity_gap(inst.components, inst.beta, nu);
            min_gap = std::min(min_gap, gap.gap);
            if (gap.gap < -1e-9 * (1.0 + std::abs(gap.lhs))) ++failures;

            const DiscreteDistribution mixture = mix(inst.components, inst.beta);
            const double level = nu.points().front().alpha;
            const double reproduced =
                spectral_value(mixture, SpectralMeasure::point_mass_at(level));
            const double direct = es(mixture, level).value;
            max_point_mass_err =
                std::max(max_point_mass_err, std::abs(reproduced - direct));
            if (reproduced != direct) ++failures;
        }
        results.push_back({5, "spectral concavity (1000 random measures, <=5 points)",
                           failures == 0,
                           "min gap " + fmt(min_gap) + ", max point-mass error " +
                               fmt(max_point_mass_err) + ", failures " +
                               std::to_string(failures)});
    }

    // ---- criterion 6: worked examples through the CLI ----------------------
    {
        write_all(dir / "A.json",
                  R"({"atoms":[{"x":-10.0,"p":0.1},{"x":0.0,"p":0.5},{"x":5.0,"p":0.4}]})");
        write_all(dir / "X1.json", R"({"atoms":[{"x":-10.0,"p":0.2},{"x":0.0,"p":0.8}]})");
        write_all(dir / "X2.json", R"({"atoms":[{"x":-10.0,"p":0.4},{"x":5.0,"p":0.6}]})");
        write_all(dir / "Jprod.json",
                  R"({"probs":[0.25,0.25,0.25,0.25],"values":[[0,1],[0,3],[2,1],[2,3]]})");

        bool ok = true;
        std::string detail;
        double worst = 0.0;
        const auto note = [&](const std::string& what, double err) {
            worst = std::max(worst, err);
            if (err > 1e-12) {
                ok = false;
                detail += (detail.empty() ? "" : "; ") + what + " off by " + fmt(err);
            }
        };

        const auto es_run = run_command(
            shell_quote(cli) + " es " + shell_quote((dir / "A.json").string()) +
            " --alpha 0,0.1,0.2,0.6,1 --method tail 2>/dev/null");
        if (es_run.exit_code != 0) {
            ok = false;
            detail += "es exited " + std::to_string(es_run.exit_code);
        } else {
            const auto rows = parse_alpha_value_csv(es_run.output);
            const double expected[5] = {10.0, 10.0, 5.0, 5.0 / 3.0, -1.0};
            if (rows.size() != 5) {
                ok = false;
                detail += "es printed " + std::to_string(rows.size()) + " rows";
            } else {
                for (int i = 0; i < 5; ++i) {
                    note("es row " + std::to_string(i),
                         std::abs(rows[static_cast<std::size_t>(i)].second - expected[i]));
                }
            }
        }

        const auto mix_run = run_command(
            shell_quote(cli) + " mix " + shell_quote((dir / "X1.json").string()) + " " +
            shell_quote((dir / "X2.json").string()) +
            " --beta 0.5,0.5 --alpha 0.25 2>/dev/null");
        if (mix_run.exit_code != 0) {
            ok = false;
            detail += "mix exited " + std::to_string(mix_run.exit_code);
        } else {
            const auto lines = parse_json_lines(mix_run.output);
            bool found = false;
            for (const auto& line : lines) {
                if (line.value("kind", "") != "decomposition") continue;
                found = true;
                note("alpha_1", std::abs(line["alphas"][0].get<double>() - 1.0 / 6.0));
                note("alpha_2", std::abs(line["alphas"][1].get<double>() - 1.0 / 3.0));
                note("decomposition lhs", std::abs(line["lhs"].get<double>() - 10.0));
                note("decomposition rhs", std::abs(line["rhs"].get<double>() - 10.0));
            }
            if (!found) {
                ok = false;
                detail += "; no decomposition line";
            }
        }

        const auto joint_run = run_command(
            shell_quote(cli) + " joint " + shell_quote((dir / "Jprod.json").string()) +
            " --beta 0.5,0.5 --alpha 0.5 2>/dev/null");
        if (joint_run.exit_code != 0) {
            ok = false;
            detail += "joint exited " + std::to_string(joint_run.exit_code);
        } else {
            for (const auto& line : parse_json_lines(joint_run.output)) {
                note(line.value("kind", "gap"),
                     std::abs(line["gap"].get<double>() - 0.5));
            }
        }

        results.push_back({6, "worked examples reproduced by the CLI", ok,
                           ok ? "max deviation " + fmt(worst) + " (tolerance 1e-12)"
                              : detail});
    }

    // ---- criterion 7: determinism of check ---------------------------------
    {
        const fs::path r1 = dir / "check1.json";
        const fs::path r2 = dir / "check2.json";
        const std::string cmd = shell_quote(cli) +
                                " check --seed 4242 --instances 300 --out ";
        const auto first = run_command(cmd + shell_quote(r1.string()) + " 2>/dev/null");
        const auto second = run_command(cmd + shell_quote(r2.string()) + " 2>/dev/null");
        const std::string b1 = read_all(r1);
        const std::string b2 = read_all(r2);
        const bool ok = first.exit_code == 0 && second.exit_code == 0 && !b1.empty() &&
                        b1 == b2;
        results.push_back({7, "check is byte-deterministic per seed", ok,
                           "exit codes " + std::to_string(first.exit_code) + "/" +
                               std::to_string(second.exit_code) + ", report bytes " +
                               std::to_string(b1.size()) +
                               (b1 == b2 ? ", identical" : ", DIFFER")});
    }

    std::error_code ec;
    fs::remove_all(dir, ec);

    bool all_pass = true;
    for (const Criterion& c : results) {
        all_pass = all_pass && c.pass;
        std::cout << (c.pass ? "PASS" : "FAIL") << "  " << c.id << ". " << c.name
                  << " -- " << c.detail << '\n';
    }
    std::cout << (all_pass ? "ACCEPTANCE: all criteria passed"
                           : "ACCEPTANCE: FAILURES PRESENT")
              << '\n';
    return all_pass ? 0 : 1;
}
