#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "hardrods/chain_projection.hpp"
#include "hardrods/random.hpp"
#include "hardrods/qp_reference.hpp"

using namespace hardrods;

namespace {

std::vector<double> random_instance(RandomStream& s, std::size_t n, double scale) {
    std::vector<double> p(n);
    for (auto& v : p) v = scale * (2.0 * s.uniform01() - 1.0);
    return p;
}

}  // namespace

TEST_CASE("project_chain: feasible input is returned unchanged") {
    const std::vector<double> x = {0.1, 0.4, 0.9};
    const auto p = project_chain(x, 0.2, 0.0, 1.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        REQUIRE_THAT(p[i], Catch::Matchers::WithinAbs(x[i], 1e-15));
    }
    REQUIRE(project_chain(std::vector<double>{}, 0.1, 0.0, 1.0).empty());
}

TEST_CASE("project_chain: two-rod KKT case") {
    const std::vector<double> prop = {0.5, 0.4};
    const auto p = project_chain(prop, 0.2, -kNoBound, kNoBound);
    REQUIRE_THAT(p[0], Catch::Matchers::WithinAbs(0.35, 1e-12));
    REQUIRE_THAT(p[1], Catch::Matchers::WithinAbs(0.55, 1e-12));
}

TEST_CASE("project_chain: empty feasible set is rejected") {
    REQUIRE_THROWS_AS(project_chain(std::vector<double>{0.1, 0.2, 0.3}, 0.6, 0.0, 1.0),
                      std::invalid_argument);
}

TEST_CASE("project_chain: idempotent, feasible, distance-reducing") {
    RandomStream s(31, 0);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(6.0 * s.uniform01());
        const double eps = 0.3 * s.uniform01();
        const double lo = -0.5 * s.uniform01();
        const double hi = lo + static_cast<double>(n - 1) * eps + 0.1 + 2.0 * s.uniform01();
        const auto prop = random_instance(s, n, 2.0);
        const auto proj = project_chain(prop, eps, lo, hi);

        REQUIRE(proj.front() >= lo - 1e-12);
        REQUIRE(proj.back() <= hi + 1e-12);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            REQUIRE(proj[i + 1] - proj[i] >= eps - 1e-12);
        }

        const auto again = project_chain(proj, eps, lo, hi);
        for (std::size_t i = 0; i < n; ++i) {
            REQUIRE_THAT(again[i], Catch::Matchers::WithinAbs(proj[i], 1e-12));
        }

        // distance to any feasible point never grows under projection
        std::vector<double> feasible(n);
        feasible[0] = lo + 0.05;
        for (std::size_t i = 1; i < n; ++i) feasible[i] = feasible[i - 1] + eps + 0.01;
        if (feasible.back() <= hi) {
            double before = 0.0, after = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                before += (prop[i] - feasible[i]) * (prop[i] - feasible[i]);
                after += (proj[i] - feasible[i]) * (proj[i] - feasible[i]);
            }
            REQUIRE(after <= before + 1e-12);
        }
    }
}

TEST_CASE("project_chain matches the active-set QP oracle") {
    RandomStream s(32, 0);
    for (int trial = 0; trial < 250; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(6.0 * s.uniform01());
        const double eps = 0.3 * s.uniform01();
        const int bounds = trial % 4;  // none / lo / hi / both
        double lo = -kNoBound, hi = kNoBound;
        if (bounds == 1 || bounds == 3) lo = -0.4 * s.uniform01();
        if (bounds == 2 || bounds == 3) {
            const double base = std::isfinite(lo) ? lo : -1.0;
            hi = base + static_cast<double>(n - 1) * eps + 0.05 + 1.5 * s.uniform01();
        }
        const auto prop = random_instance(s, n, 1.5);
        const auto fast = project_chain(prop, eps, lo, hi);
        const auto slow = reference::project_chain_qp(prop, eps, lo, hi);
        REQUIRE(slow.size() == n);
        for (std::size_t i = 0; i < n; ++i) {
            REQUIRE_THAT(fast[i], Catch::Matchers::WithinAbs(slow[i], 1e-8));
        }
    }
}
