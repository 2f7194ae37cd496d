#include <doctest.h>

#include <cmath>
#include <random>

#include "riskmix/expected_shortfall.hpp"
#include "riskmix/numeric.hpp"
#include "riskmix/spectral.hpp"

using namespace riskmix;

namespace {

DiscreteDistribution dist_a() {
    return make_discrete({{-10.0, 0.1}, {0.0, 0.5}, {5.0, 0.4}});
}

}  // namespace

TEST_CASE("spectral measure validation") {
    CHECK_THROWS_AS(SpectralMeasure({}), Error);
    CHECK_THROWS_AS(SpectralMeasure({{0.2, 0.5}, {1.0, 0.4}}), Error);  // sums to 0.9
    CHECK_THROWS_AS(SpectralMeasure({{0.2, -0.5}, {1.0, 1.5}}), Error);
    CHECK_THROWS_AS(SpectralMeasure({{1.5, 1.0}}), Error);

    // duplicate levels merge
    const SpectralMeasure nu({{0.2, 0.25}, {0.2, 0.25}, {0.7, 0.5}});
    REQUIRE(nu.points().size() == 2);
    CHECK(nu.points()[0].alpha == 0.2);
    CHECK(nu.points()[0].weight == doctest::Approx(0.5).epsilon(1e-12));

    // level 0 is allowed
    CHECK(SpectralMeasure({{0.0, 1.0}}).points().front().alpha == 0.0);
}

TEST_CASE("spectral value on the worked examples") {
    const auto a = dist_a();
    CHECK(std::abs(spectral_value(a, SpectralMeasure::point_mass_at(0.2)) - 5.0) <= 1e-12);
    CHECK(std::abs(spectral_value(a, SpectralMeasure({{0.2, 0.5}, {1.0, 0.5}})) - 2.0) <=
          1e-12);
    const SpectralMeasure mixed({{0.0, 0.25}, {0.3, 0.25}, {0.9, 0.5}});
    CHECK(std::abs(spectral_value(point_mass(2.5), mixed) - (-2.5)) <= 1e-12);
}

TEST_CASE("point-mass measure reproduces es exactly") {
    const auto a = dist_a();
    for (double alpha : {0.0, 0.1, 0.2, 0.6, 1.0}) {
        CHECK(spectral_value(a, SpectralMeasure::point_mass_at(alpha)) ==
              es(a, alpha).value);
    }
}

TEST_CASE("spectral concavity gap on the worked examples") {
    {
        const DiscreteDistribution comps[] = {point_mass(0.0), point_mass(-10.0)};
        const auto gap = spectral_concavity_gap(comps, Weights({0.5, 0.5}),
                                                SpectralMeasure::point_mass_at(0.1));
        CHECK(std::abs(gap.gap - 5.0) <= 1e-12);
    }
    {
        const DiscreteDistribution comps[] = {dist_a(), point_mass(2.0)};
        const auto gap = spectral_concavity_gap(comps, Weights({0.5, 0.5}),
                                                SpectralMeasure::point_mass_at(1.0));
        CHECK(std::abs(gap.gap) <= 1e-12);
        CHECK(gap.equality_expected);
    }
    {
        const DiscreteDistribution comps[] = {dist_a(), dist_a()};
        const SpectralMeasure nu({{0.1, 0.5}, {0.6, 0.5}});
        const auto gap = spectral_concavity_gap(comps, Weights({0.3, 0.7}), nu);
        CHECK(std::abs(gap.gap) <= rel_tol(gap.lhs));
    }
    const DiscreteDistribution comps[] = {dist_a()};
    CHECK_THROWS_AS(
        spectral_concavity_gap(comps, Weights({0.5, 0.5}), SpectralMeasure::point_mass_at(0.5)),
        Error);
}

TEST_CASE("moving spectral mass toward smaller levels never decreases the value") {
    std::mt19937_64 rng(31337);
    const auto a = dist_a();
    const auto b = make_discrete({{-4.0, 0.25}, {-1.0, 0.25}, {3.0, 0.5}});
    for (int trial = 0; trial < 100; ++trial) {
        const double a1 = (1 + static_cast<int>(rng() % 30)) / 32.0;
        const double a2 = (1 + static_cast<int>(rng() % 30)) / 32.0;
        const double shift_target = a1 * (static_cast<double>(rng() % 16) / 16.0);
        if (a1 == a2 || shift_target == a2) continue;
        const SpectralMeasure nu({{a1, 0.5}, {a2, 0.5}});
        const SpectralMeasure moved({{shift_target, 0.5}, {a2, 0.5}});
        for (const auto& d : {a, b}) {
            CHECK(spectral_value(d, moved) >= spectral_value(d, nu) - rel_tol(spectral_value(d, nu)));
        }
    }
}
