#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "hardrods/analytics.hpp"
#include "hardrods/sde.hpp"
#include "hardrods/statcheck.hpp"

using namespace hardrods;

namespace {

/// Test stream yielding a fixed uniform sequence.
struct SequenceStream {
    std::vector<double> values;
    std::size_t next = 0;
    double uniform01() {
        if (next >= values.size()) throw std::runtime_error("SequenceStream exhausted");
        return values[next++];
    }
};

DiffusionParams drift_only(double a, double sigma2) {
    DiffusionParams p;
    p.a = a;
    p.sigma2 = sigma2;
    return p;
}

}  // namespace

TEST_CASE("gaussian_increment: degenerate and moment checks") {
    RandomStream s(11, 0);
    REQUIRE(gaussian_increment(s, 1.0, 0.0) == 0.0);
    REQUIRE_THROWS_AS(gaussian_increment(s, 0.0, 1.0), std::domain_error);
    REQUIRE_THROWS_AS(gaussian_increment(s, -1.0, 1.0), std::domain_error);

    const int n = 1000000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += gaussian_increment(s, 1.0, 1.0);
    REQUIRE(std::abs(sum / n) <= 0.004);  // 4 sigma / sqrt(N)

    double sq = 0.0, mean = 0.0;
    std::vector<double> draws(n);
    for (auto& d : draws) d = gaussian_increment(s, 0.25, 4.0);  // variance 1
    for (double d : draws) mean += d;
    mean /= n;
    for (double d : draws) sq += (d - mean) * (d - mean);
    const double var = sq / (n - 1);
    REQUIRE(var >= 0.995);
    REQUIRE(var <= 1.005);
}

TEST_CASE("sample_exponential: inversion arithmetic and law") {
    SequenceStream fixed{{std::exp(-1.0)}};
    REQUIRE_THAT(sample_exponential(fixed, 2.0), Catch::Matchers::WithinAbs(0.5, 1e-15));
    RandomStream s(12, 0);
    REQUIRE_THROWS_AS(sample_exponential(s, 0.0), std::domain_error);

    const int n = 1000000;
    std::vector<double> draws(n);
    double sum = 0.0;
    for (auto& d : draws) {
        d = sample_exponential(s, 2.0);
        sum += d;
    }
    REQUIRE(sum / n >= 0.498);
    REQUIRE(sum / n <= 0.502);
    std::sort(draws.begin(), draws.end());
    const double d = ks_statistic(draws, [](double x) { return 1.0 - std::exp(-2.0 * x); });
    REQUIRE(d <= 0.002);
}

TEST_CASE("sample_bridge_minimum: degenerate limit and domination") {
    SequenceStream top{{1.0 - 1e-16}};  // ln U ~ 0
    REQUIRE_THAT(sample_bridge_minimum(0.3, 0.7, 1.0, 1.0, top),
                 Catch::Matchers::WithinAbs(0.3, 1e-12));
    SequenceStream any{{0.5}};
    REQUIRE_THAT(sample_bridge_minimum(0.3, 0.7, 1.0, 0.0, any),
                 Catch::Matchers::WithinAbs(0.3, 1e-15));  // sigma2 = 0

    RandomStream s(13, 0);
    for (int i = 0; i < 100000; ++i) {
        const double w0 = 2.0 * s.uniform01() - 1.0;
        const double w1 = 2.0 * s.uniform01() - 1.0;
        const double m = sample_bridge_minimum(w0, w1, 0.5, 1.3, s);
        REQUIRE(m <= std::min(w0, w1) + 1e-12);
    }
}

TEST_CASE("sample_bridge_minimum: pinned-at-zero law") {
    // with w0 = w1 = 0, sigma2*h = 1: P(min <= -x) = exp(-2 x^2)
    RandomStream s(14, 0);
    const int n = 100000;
    std::vector<double> neg_min(n);
    for (auto& v : neg_min) v = -sample_bridge_minimum(0.0, 0.0, 1.0, 1.0, s);
    std::sort(neg_min.begin(), neg_min.end());
    const double d =
        ks_statistic(neg_min, [](double x) { return x <= 0.0 ? 0.0 : 1.0 - std::exp(-2.0 * x * x); });
    REQUIRE(d <= 0.01);
}

TEST_CASE("reflect_step: zero-noise dynamics and positivity") {
    RandomStream s(15, 0);
    for (auto scheme : {StepScheme::GridSkorohod, StepScheme::BridgeExact}) {
        REQUIRE_THAT(reflect_step(1.0, 1.0, drift_only(0.3, 0.0), s, scheme),
                     Catch::Matchers::WithinAbs(0.7, 1e-15));
        REQUIRE(reflect_step(0.05, 1.0, drift_only(1.0, 0.0), s, scheme) == 0.0);
        REQUIRE_THROWS_AS(reflect_step(-0.1, 1.0, drift_only(1.0, 1.0), s, scheme),
                          std::domain_error);
    }
    for (int i = 0; i < 100000; ++i) {
        const double z = 2.0 * s.uniform01();
        const auto scheme = (i % 2 == 0) ? StepScheme::GridSkorohod : StepScheme::BridgeExact;
        REQUIRE(reflect_step(z, 0.01, drift_only(1.0, 1.0), s, scheme) >= 0.0);
    }
}

TEST_CASE("reflect_step: driftless bridge endpoints follow the half-normal law") {
    RandomStream s(16, 0);
    const DiffusionParams p = drift_only(0.0, 1.0);
    const int paths = 100000;
    const int steps = 100;
    const double h = 0.01;
    std::vector<double> endpoint(paths);
    for (auto& e : endpoint) {
        double z = 0.0;
        for (int k = 0; k < steps; ++k) z = reflect_step(z, h, p, s, StepScheme::BridgeExact);
        e = z;
    }
    std::sort(endpoint.begin(), endpoint.end());
    const double d = ks_statistic(endpoint, [](double x) { return std::erf(x / std::sqrt(2.0)); });
    REQUIRE(d <= 0.01);
}

TEST_CASE("draw accounting: one uniform per grid step, two per bridge step") {
    RandomStream s(17, 0);
    const DiffusionParams p = drift_only(1.0, 1.0);
    reflect_step(0.5, 0.1, p, s, StepScheme::GridSkorohod);
    REQUIRE(s.counter() == 1);
    reflect_step(0.5, 0.1, p, s, StepScheme::BridgeExact);
    REQUIRE(s.counter() == 3);
}
