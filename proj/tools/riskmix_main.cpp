// riskmix: Expected Shortfall and spectral risk measures on finite discrete
// distributions, with built-in verification of the classical coherence
// inequalities.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or input error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "riskmix/cvar_minimization.hpp"
#include "riskmix/errors.hpp"
#include "riskmix/expected_shortfall.hpp"
#include "riskmix/harness.hpp"
#include "riskmix/io.hpp"
#include "riskmix/mixture_concavity.hpp"
#include "riskmix/numeric.hpp"
#include "riskmix/scenarios.hpp"
#include "riskmix/spectral.hpp"

namespace {

using namespace riskmix;

enum class Format { Csv, Json };

struct OutputTarget {
    std::ofstream file;
    std::ostream* stream = &std::cout;

    void open(const std::string& path) {
        if (path.empty()) return;
        file.open(path, std::ios::binary);
        if (!file) {
            throw Error(Errc::ParseError, "cannot open output file: " + path);
        }
        stream = &file;
    }
    std::ostream& out() { return *stream; }
};

Format parse_format(const std::string& name) {
    if (name == "csv") return Format::Csv;
    if (name == "json") return Format::Json;
    throw Error(Errc::ParseError, "unknown format: " + name + " (want csv or json)");
}

std::vector<double> sorted_levels(std::vector<double> alphas) {
    if (alphas.empty()) {
        throw Error(Errc::ParseError, "at least one --alpha is required");
    }
    for (double a : alphas) require_level_closed(a);
    std::sort(alphas.begin(), alphas.end());
    return alphas;
}

// --- es ----------------------------------------------------------------

int cmd_es(const std::string& input, std::vector<double> alphas,
           const std::string& method, Format format, OutputTarget& target) {
    const DiscreteDistribution d = load_distribution_file(input);
    alphas = sorted_levels(std::move(alphas));
    std::ostream& out = target.out();

    for (double alpha : alphas) {
        if (method == "all") {
            require_level_left_open(alpha);
            const double t = es_tail(d, alpha);
            const double i = es_integral(d, alpha);
            const double m = es_minimization(d, alpha).es;
            const double residual =
                std::max(std::abs(i - t), std::abs(m - t));
            if (format == Format::Csv) {
                out << format_real(alpha) << ',' << format_real(t) << ','
                    << format_real(i) << ',' << format_real(m) << ','
                    << format_real(residual) << '\n';
            } else {
                JsonWriter w;
                w.begin_object()
                    .key("alpha").value(alpha)
                    .key("es_tail").value(t)
                    .key("es_integral").value(i)
                    .key("es_minimization").value(m)
                    .key("max_residual").value(residual)
                    .end_object();
                out << w.str() << '\n';
            }
            continue;
        }

        double value = 0.0;
        if (method == "tail") {
            value = alpha > 0.0 && alpha < 1.0 ? es_tail(d, alpha) : es(d, alpha).value;
        } else if (method == "integral") {
            value = alpha > 0.0 && alpha < 1.0 ? es_integral(d, alpha)
                                               : es(d, alpha).value;
        } else if (method == "minimization") {
            value = alpha > 0.0 ? es_minimization(d, alpha).es : es(d, alpha).value;
        } else {
            throw Error(Errc::ParseError,
                        "unknown method: " + method +
                            " (want tail, integral, minimization or all)");
        }
        if (format == Format::Csv) {
            out << format_real(alpha) << ',' << format_real(value) << '\n';
        } else {
            JsonWriter w;
            w.begin_object()
                .key("alpha").value(alpha)
                .key("es").value(value)
                .key("method").value(std::string_view(method))
                .end_object();
            out << w.str() << '\n';
        }
    }
    return 0;
}

// --- curve -------------------------------------------------------------

std::vector<double> curve_grid(const DiscreteDistribution& d,
                               const std::string& spec,
                               const std::vector<double>& explicit_alphas) {
    if (!explicit_alphas.empty()) {
        std::vector<double> grid = explicit_alphas;
        for (double a : grid) require_level_closed(a);
        return grid;
    }
    if (spec == "breakpoints") {
        std::vector<double> grid;
        grid.push_back(0.0);
        for (double c : d.cumulative()) grid.push_back(c);
        grid.push_back(1.0);
        std::sort(grid.begin(), grid.end());
        grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
        return grid;
    }
    if (spec == "none") {
        return {};
    }
    if (spec.rfind("n=", 0) == 0) {
        char* end = nullptr;
        const long k = std::strtol(spec.c_str() + 2, &end, 10);
        if (*end != '\0' || k < 2) {
            throw Error(Errc::ParseError, "bad grid spec: " + spec + " (want n=K, K >= 2)");
        }
        std::vector<double> grid;
        grid.reserve(static_cast<std::size_t>(k));
        for (long i = 0; i < k; ++i) {
            grid.push_back(static_cast<double>(i) / static_cast<double>(k - 1));
        }
        return grid;
    }
    throw Error(Errc::ParseError, "bad grid spec: " + spec);
}

int cmd_curve(const std::string& input, const std::string& grid_spec,
              const std::vector<double>& explicit_alphas, OutputTarget& target) {
    const DiscreteDistribution d = load_distribution_file(input);
    const std::vector<double> grid = curve_grid(d, grid_spec, explicit_alphas);
    std::ostream& out = target.out();
    out << "alpha,es\n";
    for (const auto& [alpha, value] : es_curve(d, grid)) {
        out << format_real(alpha) << ',' << format_real(value) << '\n';
    }
    return 0;
}

// --- mix ---------------------------------------------------------------

int cmd_mix(const std::vector<std::string>& inputs, const std::vector<double>& beta_list,
            std::vector<double> alphas, OutputTarget& target) {
    std::vector<DiscreteDistribution> components;
    components.reserve(inputs.size());
    for (const auto& path : inputs) components.push_back(load_distribution_file(path));
    if (beta_list.size() != components.size()) {
        throw Error(Errc::LengthMismatch,
                    "--beta has " + std::to_string(beta_list.size()) + " entries for " +
                        std::to_string(components.size()) + " inputs");
    }
    const Weights beta(beta_list);
    alphas = sorted_levels(std::move(alphas));
    std::ostream& out = target.out();

    for (double alpha : alphas) {
        if (alpha > 0.0 && alpha < 1.0) {
            const DecompositionReport rep =
                es_mixture_decomposition(components, beta, alpha);
            JsonWriter w;
            w.begin_object().key("kind").value(std::string_view("decomposition"));
            write_fields(w, rep);
            w.end_object();
            out << w.str() << '\n';
        }
        const GapReport gap = concavity_gap(components, beta, alpha);
        JsonWriter w;
        w.begin_object().key("kind").value(std::string_view("concavity_gap"));
        write_fields(w, gap);
        w.end_object();
        out << w.str() << '\n';
    }
    return 0;
}

// --- joint -------------------------------------------------------------

int cmd_joint(const std::string& input, const std::vector<double>& beta_list,
              std::vector<double> alphas, OutputTarget& target) {
    const JointScenarios joint = load_joint_file(input);
    if (beta_list.size() != joint.position_count()) {
        throw Error(Errc::LengthMismatch,
                    "--beta has " + std::to_string(beta_list.size()) + " entries for " +
                        std::to_string(joint.position_count()) + " positions");
    }
    const Weights beta(beta_list);
    alphas = sorted_levels(std::move(alphas));
    std::ostream& out = target.out();

    for (double alpha : alphas) {
        const GapReport conv = convexity_gap(joint, beta, alpha);
        JsonWriter wc;
        wc.begin_object().key("kind").value(std::string_view("convexity_gap"));
        write_fields(wc, conv);
        wc.end_object();
        out << wc.str() << '\n';

        const GapReport div = diversification_gap(joint, beta, alpha);
        JsonWriter wd;
        wd.begin_object().key("kind").value(std::string_view("diversification_gap"));
        write_fields(wd, div);
        wd.end_object();
        out << wd.str() << '\n';
    }
    return 0;
}

// --- spectral ----------------------------------------------------------

int cmd_spectral(const std::string& input, const std::string& nu_path, Format format,
                 OutputTarget& target) {
    const DiscreteDistribution d = load_distribution_file(input);
    const SpectralMeasure nu = load_spectral_file(nu_path);
    const double value = spectral_value(d, nu);
    if (format == Format::Csv) {
        target.out() << format_real(value) << '\n';
    } else {
        JsonWriter w;
        w.begin_object().key("spectral_value").value(value).end_object();
        target.out() << w.str() << '\n';
    }
    return 0;
}

// --- check -------------------------------------------------------------

int cmd_check(std::uint64_t seed, int instances, OutputTarget& target) {
    GenConfig config;
    config.seed = seed;
    config.instance_count = instances;

    const SuiteReport report = run_suite(config);
    target.out() << report.to_json() << '\n';

    std::cerr << "check: seed=" << seed << " instances=" << instances << '\n'
              << "  randomized: " << report.randomized.instances << " instances, "
              << report.randomized.total_pass() << " checks passed, "
              << report.randomized.total_fail() << " failed\n"
              << "  exhaustive: " << report.exhaustive.instances << " instances, "
              << report.exhaustive.total_pass() << " checks passed, "
              << report.exhaustive.total_fail() << " failed\n"
              << "  wall_ms=" << format_real(report.wall_ms) << '\n'
              << (report.all_passed() ? "OK" : "FAILURES DETECTED") << '\n';
    return report.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Expected Shortfall and spectral risk measures on finite discrete "
                 "distributions, with verification of their coherence inequalities"};
    app.require_subcommand(1);

    std::vector<double> alphas;
    std::vector<double> beta_list;
    std::string method = "tail";
    std::string format_name = "csv";
    std::string out_path;
    std::string grid_spec = "breakpoints";
    std::uint64_t seed = 42;
    int instances = 10000;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_path, "Write output to this file instead of stdout");
        cmd->add_option("--format", format_name, "Output format: csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    std::string es_input;
    CLI::App* es_cmd = app.add_subcommand("es", "Expected Shortfall at given levels");
    es_cmd->add_option("input", es_input, "Distribution JSON or sample CSV file")
        ->required();
    es_cmd->add_option("--alpha", alphas, "Level in [0,1] (repeatable or comma list)")
        ->delimiter(',');
    es_cmd->add_option("--method", method, "tail, integral, minimization or all");
    add_common(es_cmd);

    std::string curve_input;
    CLI::App* curve_cmd = app.add_subcommand("curve", "ES curve as CSV plot data");
    curve_cmd->add_option("input", curve_input, "Distribution JSON or sample CSV file")
        ->required();
    curve_cmd->add_option("--grid", grid_spec, "breakpoints (default), n=K, or none");
    curve_cmd->add_option("--alpha", alphas, "Explicit level list (overrides --grid)")
        ->delimiter(',');
    add_common(curve_cmd);

    std::vector<std::string> mix_inputs;
    CLI::App* mix_cmd =
        app.add_subcommand("mix", "Mixture ES decomposition and concavity gaps");
    mix_cmd->add_option("inputs", mix_inputs, "Component distribution files")
        ->required()
        ->expected(-1);
    mix_cmd->add_option("--beta", beta_list, "Mixture weights (comma list)")
        ->delimiter(',')
        ->required();
    mix_cmd->add_option("--alpha", alphas, "Level in [0,1] (repeatable or comma list)")
        ->delimiter(',');
    add_common(mix_cmd);

    std::string joint_input;
    CLI::App* joint_cmd =
        app.add_subcommand("joint", "Convexity and diversification gaps of a joint law");
    joint_cmd->add_option("input", joint_input, "Joint scenarios JSON file")->required();
    joint_cmd->add_option("--beta", beta_list, "Portfolio weights (comma list)")
        ->delimiter(',')
        ->required();
    joint_cmd->add_option("--alpha", alphas, "Level in [0,1] (repeatable or comma list)")
        ->delimiter(',');
    add_common(joint_cmd);

    std::string spectral_input;
    std::string nu_path;
    CLI::App* spectral_cmd =
        app.add_subcommand("spectral", "Spectral risk measure value");
    spectral_cmd->add_option("input", spectral_input, "Distribution JSON or sample CSV file")
        ->required();
    spectral_cmd->add_option("nu", nu_path, "Spectral measure JSON file")->required();
    add_common(spectral_cmd);

    CLI::App* check_cmd = app.add_subcommand(
        "check", "Run the randomized and exhaustive verification suites");
    check_cmd->add_option("--seed", seed, "Suite seed");
    check_cmd->add_option("--instances", instances, "Randomized instance count")
        ->check(CLI::NonNegativeNumber);
    add_common(check_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        OutputTarget target;
        target.open(out_path);
        const Format format = parse_format(format_name);

        if (es_cmd->parsed()) return cmd_es(es_input, alphas, method, format, target);
        if (curve_cmd->parsed()) return cmd_curve(curve_input, grid_spec, alphas, target);
        if (mix_cmd->parsed()) return cmd_mix(mix_inputs, beta_list, alphas, target);
        if (joint_cmd->parsed()) return cmd_joint(joint_input, beta_list, alphas, target);
        if (spectral_cmd->parsed())
            return cmd_spectral(spectral_input, nu_path, format, target);
        if (check_cmd->parsed()) return cmd_check(seed, instances, target);
    } catch (const riskmix::Error& e) {
        std::cerr << "riskmix: " << riskmix::errc_name(e.code()) << ": " << e.what()
                  << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "riskmix: unexpected error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
