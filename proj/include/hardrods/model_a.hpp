#pragma once

#include <algorithm>
#include <cmath>

#include "hardrods/chain_projection.hpp"
#include "hardrods/sde.hpp"
#include "hardrods/system_state.hpp"

namespace hardrods {

namespace detail {

/// Sorted free coordinates + offsets: x_i = z_(i) + i*eps + eps/2 + c*t.
inline void rebuild_barrier_centers(SystemState& state) {
    const double eps = state.params.epsilon;
    const double shift = eps / 2.0 + state.params.c * state.t;
    state.x.assign(state.z.begin(), state.z.end());
    std::sort(state.x.begin(), state.x.end());
    for (std::size_t i = 0; i < state.x.size(); ++i) {
        state.x[i] += static_cast<double>(i) * eps + shift;
    }
}

}  // namespace detail

/**
 * Barrier model initial state: the n free coordinates are iid draws from the
 * single-coordinate stationary law Exp(2c/sigma2), which the dynamics
 * preserve for every t.
 */
template <class Stream>
SystemState init_model_a_pseudostationary(const DiffusionParams& params, Stream& stream) {
    params.validate(Model::BarrierPushed);
    SystemState state;
    state.model = Model::BarrierPushed;
    state.params = params;
    state.z.reserve(params.n);
    for (std::int64_t k = 0; k < params.n; ++k) {
        state.z.push_back(sample_exponential(stream, params.rate()));
    }
    detail::rebuild_barrier_centers(state);
    return state;
}

/**
 * Order-statistics step of the barrier model: every free coordinate advances
 * independently as drift -c Brownian motion reflected at 0; the rod centers
 * are the sorted coordinates plus the (i*eps + eps/2 + c*t) offsets.
 */
template <class Stream>
void step_model_a(SystemState& state, double h, Stream& stream,
                  StepScheme scheme = StepScheme::BridgeExact) {
    for (auto& z : state.z) {
        z = reflect_step(z, h, state.params, stream, scheme);
    }
    state.t += h;
    detail::rebuild_barrier_centers(state);
}

/**
 * Direct projection step of the barrier model, kept as an independent
 * cross-validation engine: propose free Gaussian moves of the centers, then
 * project onto the feasible chain above the barrier lo = c*(t+h) + eps/2.
 * The free coordinates are not maintained here.
 */
template <class Stream>
void step_model_a_direct(SystemState& state, double h, Stream& stream) {
    state.z.clear();
    std::vector<double> proposal(state.x.begin(), state.x.end());
    for (auto& p : proposal) {
        p += gaussian_increment(stream, h, state.params.sigma2);
    }
    state.t += h;
    const double lo = state.params.c * state.t + state.params.epsilon / 2.0;
    state.x = project_chain(proposal, state.params.epsilon, lo, kNoBound);
}

}  // namespace hardrods
