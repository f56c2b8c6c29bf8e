#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hardrods/sde.hpp"
#include "hardrods/system_state.hpp"

namespace hardrods {

/// Empty influx system at t = 0; the first rod enters at time epsilon/a.
inline SystemState make_influx_state(const DiffusionParams& params) {
    params.validate(Model::InfluxKilled);
    SystemState state;
    state.model = Model::InfluxKilled;
    state.params = params;
    return state;
}

/// Throws unless epsilon/(a*h) is an integer (within 1e-9 relative), so that
/// injection times land on step boundaries.
inline std::int64_t influx_steps_per_injection(const DiffusionParams& params, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("influx model: h must be > 0");
    const double ratio = params.epsilon / (params.a * h);
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * rounded) {
        throw std::invalid_argument(
            "influx model: h must divide epsilon/a; epsilon/(a*h) = " + std::to_string(ratio) +
            " is not an integer");
    }
    return static_cast<std::int64_t>(rounded);
}

namespace detail {

/// Ascending centers from the alive free coordinates: sorting z ascending and
/// labelling j = killed + alive - i gives x_i = z_(i) - j*eps + eps/2 + a*t.
inline void rebuild_influx_centers(SystemState& state) {
    const double eps = state.params.epsilon;
    state.x.assign(state.z.begin(), state.z.end());
    std::sort(state.x.begin(), state.x.end());
    const auto alive = static_cast<std::int64_t>(state.x.size());
    const double shift = eps / 2.0 + state.params.a * state.t;
    for (std::int64_t i = 0; i < alive; ++i) {
        const auto label = state.killed + alive - i;
        state.x[static_cast<std::size_t>(i)] += shift - static_cast<double>(label) * eps;
    }
}

}  // namespace detail

/**
 * One step of the influx model. Alive free coordinates advance as drift -a
 * Brownian motion reflected at 0; a fresh coordinate enters at 0 on each
 * injection grid time k*epsilon/a (which land on step ends because h divides
 * epsilon/a); then coordinates at or above the moving kill threshold
 * 1 - a*t + killed*epsilon are removed, largest first, until none remain
 * above it. Kills are detected at step boundaries only, so rods die up to
 * O(sqrt(h)) late.
 */
template <class Stream>
void step_model_c(SystemState& state, double h, Stream& stream,
                  StepScheme scheme = StepScheme::BridgeExact) {
    if (state.model != Model::InfluxKilled) {
        throw std::invalid_argument("step_model_c: state is not an influx-model state");
    }
    influx_steps_per_injection(state.params, h);
    if (static_cast<std::int64_t>(state.z.size()) != state.injected - state.killed) {
        throw std::logic_error("step_model_c: alive count != injected - killed");
    }

    const double period = state.params.epsilon / state.params.a;
    const double t_new = state.t + h;
    const double tol = 1e-4 * h;  // absorbs accumulated rounding of t += h

    for (auto& z : state.z) {
        z = reflect_step(z, h, state.params, stream, scheme);
    }
    while (static_cast<double>(state.injected + 1) * period <= t_new + tol) {
        state.z.push_back(0.0);
        ++state.injected;
    }
    while (!state.z.empty()) {
        auto max_it = std::max_element(state.z.begin(), state.z.end());
        const double threshold =
            1.0 - state.params.a * t_new + static_cast<double>(state.killed) * state.params.epsilon;
        if (*max_it >= threshold) {
            state.z.erase(max_it);
            ++state.killed;
        } else {
            break;
        }
    }

    state.t = t_new;
    detail::rebuild_influx_centers(state);
}

}  // namespace hardrods
