#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hardrods/params.hpp"
#include "hardrods/random.hpp"

namespace hardrods {

/**
 * One-step discretizations of drifted Brownian motion reflected at 0.
 *
 * GridSkorohod clamps the free endpoint at 0 and consumes one Gaussian per
 * step; it under-counts boundary visits with O(sqrt(h)) bias. BridgeExact
 * additionally samples the within-step minimum of the free path from the
 * Brownian-bridge minimum law (one extra uniform per step) and applies the
 * Skorohod map with that minimum, which makes the one-step endpoint exact in
 * law. BridgeExact is the default everywhere; GridSkorohod is kept for speed
 * comparisons.
 */
enum class StepScheme { GridSkorohod, BridgeExact };

inline const char* to_string(StepScheme s) {
    return s == StepScheme::GridSkorohod ? "grid" : "bridge";
}

inline StepScheme scheme_from_string(const std::string& s) {
    if (s == "grid") return StepScheme::GridSkorohod;
    if (s == "bridge") return StepScheme::BridgeExact;
    throw std::invalid_argument("unknown scheme '" + s + "' (grid|bridge)");
}

/// N(0, sigma2*h) draw; exactly 0 when sigma2 == 0.
template <class Stream>
double gaussian_increment(Stream& stream, double h, double sigma2) {
    if (!(h > 0.0)) throw std::domain_error("gaussian_increment: h must be > 0");
    if (sigma2 < 0.0) throw std::domain_error("gaussian_increment: sigma2 must be >= 0");
    return std::sqrt(sigma2 * h) * inverse_normal_cdf(stream.uniform01());
}

/// Exp(rate) draw by inversion.
template <class Stream>
double sample_exponential(Stream& stream, double rate) {
    if (!(rate > 0.0)) throw std::domain_error("sample_exponential: rate must be > 0");
    return -std::log(stream.uniform01()) / rate;
}

/**
 * Minimum over one step of a Brownian path pinned at w0 and w1, variance
 * sigma2*h. Conditioned on its endpoints the drift drops out, so this is the
 * exact bridge-minimum law: m = (w0 + w1 - sqrt((w1-w0)^2 - 2 sigma2 h ln U))/2.
 * Always m <= min(w0, w1).
 */
template <class Stream>
double sample_bridge_minimum(double w0, double w1, double h, double sigma2, Stream& stream) {
    if (!(h > 0.0)) throw std::domain_error("sample_bridge_minimum: h must be > 0");
    const double u = stream.uniform01();
    const double d = w1 - w0;
    const double disc = d * d - 2.0 * sigma2 * h * std::log(u);
    return 0.5 * (w0 + w1 - std::sqrt(disc));
}

/**
 * Advances a coordinate of dZ = sigma dB - a dt reflected at 0 by one step.
 * The free endpoint is w1 = z + N(0, sigma2 h) - a h; GridSkorohod returns
 * max(w1, 0), BridgeExact returns w1 - min(0, m) with m the sampled
 * within-step minimum of the free path. The result is >= 0 for every input.
 */
template <class Stream>
double reflect_step(double z, double h, const DiffusionParams& params, Stream& stream,
                    StepScheme scheme) {
    if (z < 0.0) throw std::domain_error("reflect_step: z must be >= 0");
    const double w1 = z + gaussian_increment(stream, h, params.sigma2) - params.a * h;
    if (scheme == StepScheme::GridSkorohod) {
        return std::max(w1, 0.0);
    }
    const double m = sample_bridge_minimum(z, w1, h, params.sigma2, stream);
    return w1 - std::min(0.0, m);
}

}  // namespace hardrods
