#include <doctest.h>

#include <cmath>
#include <set>

#include "riskmix/harness.hpp"
#include "riskmix/numeric.hpp"

using namespace riskmix;

TEST_CASE("gen_instance is a pure function of seed and index") {
    GenConfig config;
    config.seed = 2024;
    const Instance a = gen_instance(config, 17);
    const Instance b = gen_instance(config, 17);
    REQUIRE(a.components.size() == b.components.size());
    for (std::size_t j = 0; j < a.components.size(); ++j) {
        REQUIRE(a.components[j].size() == b.components[j].size());
        for (std::size_t i = 0; i < a.components[j].size(); ++i) {
            CHECK(a.components[j].atoms()[i].value == b.components[j].atoms()[i].value);
            CHECK(a.components[j].atoms()[i].mass == b.components[j].atoms()[i].mass);
        }
    }
    CHECK(a.beta.entries() == b.beta.entries());
    CHECK(a.alphas == b.alphas);

    const Instance c = gen_instance(config, 18);
    config.seed = 2025;
    const Instance d = gen_instance(config, 18);
    const bool same = c.components.size() == d.components.size() &&
                      c.alphas == d.alphas && c.beta.entries() == d.beta.entries();
    CHECK_FALSE(same);
}

TEST_CASE("generated masses sit on the grid and values on the lattice") {
    GenConfig config;
    config.seed = 55;
    config.mass_grid = 4;
    config.atoms_per_component = {1, 2};
    config.n_components = {2, 2};
    for (std::uint64_t i = 0; i < 50; ++i) {
        const Instance inst = gen_instance(config, i);
        for (const auto& comp : inst.components) {
            for (const Atom& a : comp.atoms()) {
                const double scaled_mass = a.mass * 4.0;
                CHECK(scaled_mass == std::floor(scaled_mass));
                CHECK(a.mass >= 0.25);
                CHECK(a.value == std::floor(a.value));
                CHECK(a.value >= config.value_range.first);
                CHECK(a.value <= config.value_range.second);
            }
        }
        // level list covers the endpoints and is sorted and unique
        REQUIRE(inst.alphas.size() >= 2);
        CHECK(inst.alphas.front() == 0.0);
        CHECK(inst.alphas.back() == 1.0);
        for (std::size_t k = 1; k < inst.alphas.size(); ++k) {
            CHECK(inst.alphas[k - 1] < inst.alphas[k]);
        }
    }
}

TEST_CASE("explicit alpha grid is honored") {
    GenConfig config;
    config.alpha_grid = {0.5, 0.25, 0.25, 1.0};
    const Instance inst = gen_instance(config, 3);
    CHECK(inst.alphas == std::vector<double>{0.25, 0.5, 1.0});

    GenConfig bad;
    bad.alpha_grid = {0.5, 1.5};
    CHECK_THROWS_AS(gen_instance(bad, 0), Error);
}

TEST_CASE("config validation") {
    GenConfig config;
    config.n_components = {3, 2};
    CHECK_THROWS_AS(config.validate(), Error);
    config = GenConfig{};
    config.mass_grid = 2;  // below the max component count
    CHECK_THROWS_AS(config.validate(), Error);
    config = GenConfig{};
    config.value_range = {2.25, 2.75};  // no lattice point
    CHECK_THROWS_AS(config.validate(), Error);
    config = GenConfig{};
    config.instance_count = -1;
    CHECK_THROWS_AS(config.validate(), Error);
}

TEST_CASE("exhaustive grid has every quarter-mass distribution on {-2..2}") {
    const auto grid = exhaustive_grid_distributions();
    CHECK(grid.size() == 70);  // compositions of 4 into 5 nonnegative parts
    std::set<std::string> seen;
    for (const auto& d : grid) {
        std::string key;
        for (const Atom& a : d.atoms()) {
            CHECK(a.value >= -2.0);
            CHECK(a.value <= 2.0);
            const double quarters = a.mass * 4.0;
            CHECK(quarters == std::floor(quarters));
            key += format_real(a.value) + ":" + format_real(a.mass) + ";";
        }
        seen.insert(key);
    }
    CHECK(seen.size() == 70);
}

TEST_CASE("spectral measures from the generator stay within bounds") {
    GenConfig config;
    for (std::uint64_t i = 0; i < 30; ++i) {
        const Instance inst = gen_instance(config, i);
        const SpectralMeasure nu = gen_spectral_measure(config, i, inst.alphas);
        CHECK(nu.points().size() <= 5);
        for (const auto& p : nu.points()) {
            CHECK(p.alpha >= 0.0);
            CHECK(p.alpha <= 1.0);
            CHECK(p.weight > 0.0);
        }
    }
}

TEST_CASE("run_suite with no instances is an empty pass") {
    GenConfig config;
    config.instance_count = 0;
    const SuiteReport report = run_suite(config);
    CHECK(report.all_passed());
    CHECK(report.total_pass() == 0);
    CHECK(report.total_fail() == 0);
    CHECK(report.randomized.instances == 0);
    CHECK(report.exhaustive.instances == 0);
}

TEST_CASE("run_suite is deterministic and clean on a small batch") {
    GenConfig config;
    config.seed = 31415;
    config.instance_count = 60;

    const SuiteReport first = run_suite(config);
    CHECK(first.all_passed());
    CHECK(first.total_fail() == 0);
    CHECK(first.randomized.instances == 60);
    CHECK(first.exhaustive.instances == 70 * 70 * 3);
    CHECK(first.randomized.total_pass() > 0);

    const SuiteReport second = run_suite(config);
    CHECK(first.to_json() == second.to_json());
    // wall time is excluded from the default serialization
    CHECK(first.to_json().find("wall_ms") == std::string::npos);
    CHECK(first.to_json(true).find("wall_ms") != std::string::npos);
}

TEST_CASE("single-component instances have zero gaps everywhere") {
    GenConfig config;
    config.seed = 8;
    config.n_components = {1, 1};
    config.instance_count = 40;
    const SuiteReport report = run_suite(config);
    CHECK(report.all_passed());
    for (const CheckStats& c : report.randomized.checks) {
        if (c.name == "concavity_gap" || c.name == "convexity_gap" ||
            c.name == "diversification_gap" || c.name == "spectral_concavity") {
            CHECK(c.has_worst);
            CHECK(std::abs(c.worst) <= 1e-9);
        }
    }
}

TEST_CASE("a tiny scenario cap skips product couplings but nothing else") {
    GenConfig config;
    config.seed = 99;
    config.instance_count = 25;
    const SuiteReport uncapped = run_suite(config);

    setenv("RISKMIX_SIZE_CAP", "2", 1);
    const SuiteReport capped = run_suite(config);
    unsetenv("RISKMIX_SIZE_CAP");

    CHECK(capped.all_passed());
    auto count_of = [](const SuiteReport& r, const char* name) {
        for (const CheckStats& c : r.randomized.checks) {
            if (c.name == name) return c.pass;
        }
        return std::uint64_t{0};
    };
    CHECK(count_of(capped, "convexity_gap") < count_of(uncapped, "convexity_gap"));
    CHECK(count_of(capped, "comonotone_additivity") ==
          count_of(uncapped, "comonotone_additivity"));
}

TEST_CASE("suite report serialization surfaces failures") {
    SuiteReport report;
    report.seed = 1;
    report.failures.push_back({"randomized", "concavity_gap", 3, 0.5, "gap=-1",
                               "{\"components\":[]}"});
    CHECK_FALSE(report.all_passed());
    const std::string json = report.to_json();
    CHECK(json.find("\"check\":\"concavity_gap\"") != std::string::npos);
    CHECK(json.find("\"alpha\":0.5") != std::string::npos);
    CHECK(json.find("\"instance\":{\"components\":[]}") != std::string::npos);
}

TEST_CASE("adversarial breakpoint-heavy config still passes") {
    GenConfig config;
    config.seed = 777;
    config.mass_grid = 7;  // non-binary grid: cumulative sums carry rounding
    config.atoms_per_component = {2, 7};
    config.n_components = {2, 4};
    config.instance_count = 150;
    const SuiteReport report = run_suite(config);
    CHECK(report.all_passed());
}
