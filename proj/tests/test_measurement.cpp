#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "hardrods/measurement.hpp"
#include "hardrods/random.hpp"
#include "hardrods/sde.hpp"

using namespace hardrods;

namespace {

SystemState static_state(std::vector<double> centers, double epsilon) {
    SystemState st;
    st.model = Model::JumpReset;  // static frame
    st.params.epsilon = epsilon;
    st.params.n = static_cast<std::int64_t>(centers.size());
    st.params.b = epsilon * static_cast<double>(centers.size());
    st.x = std::move(centers);
    return st;
}

}  // namespace

TEST_CASE("density_window: interval arithmetic") {
    REQUIRE(density_window(static_state({}, 0.1), 0.0, 1.0) == 0.0);
    REQUIRE_THAT(density_window(static_state({0.25, 0.35}, 0.1), 0.2, 0.4),
                 Catch::Matchers::WithinAbs(1.0, 1e-12));
    // rod centered on a window edge contributes half its width
    REQUIRE_THAT(density_window(static_state({0.4}, 0.1), 0.4, 0.6),
                 Catch::Matchers::WithinAbs(0.05 / 0.2, 1e-12));
    REQUIRE_THROWS_AS(density_window(static_state({0.5}, 0.1), 0.4, 0.4), std::domain_error);
}

TEST_CASE("density_window: barrier model windows ride with the barrier") {
    SystemState st;
    st.model = Model::BarrierPushed;
    st.params = DiffusionParams::barrier(2.0, 1.0, 1, 0.1);
    st.t = 3.0;  // barrier shift c*t = 6
    st.x = {6.25};
    REQUIRE_THAT(density_window(st, 0.2, 0.3), Catch::Matchers::WithinAbs(1.0, 1e-12));
    REQUIRE(density_window(st, 1.0, 2.0) == 0.0);
}

TEST_CASE("density_window: additivity is exact") {
    RandomStream s(71, 0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> centers;
        double c = s.uniform01() * 0.1;
        for (int i = 0; i < 30; ++i) {
            centers.push_back(c);
            c += 0.02 + 0.1 * s.uniform01();
        }
        const auto st = static_state(centers, 0.02);
        const double x1 = 0.3 * s.uniform01();
        const double x2 = x1 + 0.1 + s.uniform01();
        const double x3 = x2 + 0.1 + s.uniform01();
        const double lhs = density_window(st, x1, x3) * (x3 - x1);
        const double rhs =
            density_window(st, x1, x2) * (x2 - x1) + density_window(st, x2, x3) * (x3 - x2);
        REQUIRE_THAT(lhs, Catch::Matchers::WithinAbs(rhs, 1e-12));
    }
}

TEST_CASE("density_profile: single rod, full packing, refinement consistency") {
    const auto edges10 = uniform_bin_edges(0.0, 1.0, 10);
    const auto one = density_profile(static_state({0.35}, 0.04), edges10);
    for (std::size_t i = 0; i < 10; ++i) {
        REQUIRE_THAT(one.mass_fraction[i],
                     Catch::Matchers::WithinAbs(i == 3 ? 0.04 / 0.1 : 0.0, 1e-12));
    }

    // rods tiling [0.2, 0.8]: interior bins read exactly 1
    std::vector<double> packed;
    for (int i = 0; i < 12; ++i) packed.push_back(0.2 + 0.025 + i * 0.05);
    const auto full = density_profile(static_state(packed, 0.05), edges10);
    for (std::size_t i = 2; i < 8; ++i) {
        REQUIRE_THAT(full.mass_fraction[i], Catch::Matchers::WithinAbs(1.0, 1e-12));
    }

    RandomStream s(72, 0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> centers;
        double c = s.uniform01() * 0.05;
        while (c < 1.0) {
            centers.push_back(c);
            c += 0.03 + 0.05 * s.uniform01();
        }
        const auto st = static_state(centers, 0.03);
        const auto coarse = density_profile(st, uniform_bin_edges(0.0, 1.0, 10));
        const auto fine = density_profile(st, uniform_bin_edges(0.0, 1.0, 100));
        for (std::size_t i = 0; i < 10; ++i) {
            double avg = 0.0;
            for (std::size_t j = 0; j < 10; ++j) avg += fine.mass_fraction[10 * i + j];
            REQUIRE_THAT(coarse.mass_fraction[i], Catch::Matchers::WithinAbs(avg / 10.0, 1e-12));
        }
    }
}

TEST_CASE("gap_stats: touching rods, plain gaps, undefined cases") {
    REQUIRE(*gap_stats(static_state({0.2, 0.3, 0.4}, 0.1), 0.0, 1.0) == 0.0);
    REQUIRE_THAT(*gap_stats(static_state({0.2, 0.5}, 0.1), 0.0, 1.0),
                 Catch::Matchers::WithinAbs(0.2, 1e-12));
    REQUIRE_FALSE(gap_stats(static_state({0.2}, 0.1), 0.0, 1.0).has_value());
    REQUIRE_FALSE(gap_stats(static_state({0.2, 0.5}, 0.1), 0.8, 0.9).has_value());
    REQUIRE(gap_stats(static_state({}, 0.1), 0.0, 1.0) == std::nullopt);
}

TEST_CASE("increment_scaling: free Brownian track has unit slope") {
    RandomStream s(73, 0);
    TaggedTrack track;
    track.label = 1;
    const double dt = 0.01;
    double x = 0.0;
    for (int i = 0; i < 100000; ++i) {
        track.times.push_back(i * dt);
        track.centers.push_back(x);
        x += gaussian_increment(s, dt, 1.0);
    }
    const std::vector<double> lags = {0.02, 0.05, 0.1, 0.2, 0.5, 1.0};
    const double slope = increment_scaling(track, lags);
    REQUIRE(slope >= 0.95);
    REQUIRE(slope <= 1.05);
}

TEST_CASE("increment_scaling: degenerate and invalid tracks") {
    TaggedTrack line;
    for (int i = 0; i < 2000; ++i) {
        line.times.push_back(i * 0.01);
        line.centers.push_back(3.0 * i * 0.01);  // deterministic drift
    }
    const std::vector<double> lags = {0.05, 0.1, 0.2};
    REQUIRE_THROWS_AS(increment_scaling(line, lags), std::domain_error);

    TaggedTrack stub;
    stub.times = {0.0, 0.01, 0.02};
    stub.centers = {0.0, 0.1, 0.0};
    REQUIRE_THROWS_AS(increment_scaling(stub, lags), std::invalid_argument);  // too short

    const std::vector<double> two = {0.05, 0.1};
    REQUIRE_THROWS_AS(increment_scaling(line, two), std::invalid_argument);  // < 3 lags
}
