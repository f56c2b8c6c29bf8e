#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hardrods/params.hpp"

namespace hardrods {

/// Open interval of rod material.
struct Interval {
    double left;
    double right;
};

using RodIntervals = std::vector<Interval>;

/**
 * Snapshot of a rod system.
 *
 * `z` holds the free coordinates driving the order-statistics construction
 * (all n of them in the barrier model, the alive ones in the influx model,
 * unused by the direct/jump integrators). `x` holds the ascending centers of
 * the alive rods; consecutive centers are always >= epsilon apart (exactly
 * for the order-statistics engines, up to 1e-9 for the projection engines).
 */
struct SystemState {
    Model model = Model::BarrierPushed;
    DiffusionParams params;
    double t = 0.0;
    std::vector<double> z;
    std::vector<double> x;
    std::int64_t injected = 0;  // influx model: rods that have entered
    std::int64_t killed = 0;    // influx model: rods removed at the right end
    std::int64_t jumps = 0;     // jump model: boundary resets so far
    std::int64_t waiting = 0;   // jump model: rods parked outside (deferred reinsertion)

    std::int64_t alive() const noexcept { return static_cast<std::int64_t>(x.size()); }
};

/// Centers to open intervals (X - eps/2, X + eps/2). Throws if the state
/// violates the spacing invariant beyond 1e-9.
inline RodIntervals reconstruct_intervals(const SystemState& state) {
    const double eps = state.params.epsilon;
    RodIntervals out;
    out.reserve(state.x.size());
    double prev = -1e300;
    for (double c : state.x) {
        if (c - prev < eps - 1e-9) {
            throw std::runtime_error("reconstruct_intervals: spacing invariant violated (gap " +
                                     std::to_string(c - prev) + " < epsilon)");
        }
        out.push_back({c - eps / 2.0, c + eps / 2.0});
        prev = c;
    }
    return out;
}

}  // namespace hardrods
