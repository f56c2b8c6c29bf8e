#pragma once

#include <cmath>
#include <stdexcept>

#include "hardrods/params.hpp"

namespace hardrods {
namespace detail {

/// Root of f on [lo, hi] for strictly increasing f: bisection to width 1e-6,
/// then Newton polished to |f| <= 1e-10 (falls back to more bisection when a
/// Newton step leaves the bracket).
template <class F, class DF>
double solve_increasing(F f, DF df, double lo, double hi) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo > 0.0 || fhi < 0.0) throw std::domain_error("solve_increasing: root not bracketed");
    while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) <= 0.0) lo = mid; else hi = mid;
    }
    double y = 0.5 * (lo + hi);
    for (int it = 0; it < 100; ++it) {
        const double r = f(y);
        if (std::abs(r) <= 1e-10) return y;
        const double d = df(y);
        double next = (d != 0.0) ? y - r / d : lo - 1.0;
        if (!(next >= lo && next <= hi)) {
            if (r <= 0.0) lo = y; else hi = y;
            next = 0.5 * (lo + hi);
        } else if (r <= 0.0) {
            lo = y;
        } else {
            hi = y;
        }
        y = next;
    }
    return y;
}

}  // namespace detail

/// Stationary density lambda*exp(-lambda z), lambda = 2a/sigma2, of a single
/// free coordinate reflected at 0 with drift -a.
inline double stationary_density(const DiffusionParams& params, double z) {
    if (z < 0.0) throw std::domain_error("stationary_density: z must be >= 0");
    const double lambda = params.rate();
    return lambda * std::exp(-lambda * z);
}

/// Occupation density, before absorption at v1, of the coordinate started at
/// 0, reflected at 0 and killed at v1: G(v) = (1/a)(exp(2a(v1-v)/sigma2) - 1).
inline double green_function(const DiffusionParams& params, double v1, double v) {
    if (v < 0.0 || v > v1) throw std::domain_error("green_function: require 0 <= v <= v1");
    return (std::exp(2.0 * params.a * (v1 - v) / params.sigma2) - 1.0) / params.a;
}

/// Domain height v0 of the influx model: the unique solution of
/// (sigma2/2a)(exp(2a v0/sigma2) - 1) = 1, in closed form
/// v0 = (sigma2/2a) ln(1 + 2a/sigma2).
inline double solve_v0(const DiffusionParams& params) {
    if (!(params.a > 0.0) || !(params.sigma2 > 0.0)) {
        throw std::invalid_argument("solve_v0: a and sigma2 must be > 0");
    }
    const double s = params.sigma2 / (2.0 * params.a);
    return s * std::log1p(1.0 / s);
}

/// Predicted stationary mass density of the influx model at x in [0,1]:
/// (1-x)/(1-x + sigma2/(2a)).
inline double predicted_density_model_c(double x, const DiffusionParams& params) {
    if (x < 0.0 || x > 1.0) throw std::domain_error("predicted_density_model_c: x must be in [0,1]");
    const double s = params.sigma2 / (2.0 * params.a);
    return (1.0 - x) / (1.0 - x + s);
}

/// Inverts x = b(1 - exp(-lambda y)) + y for y >= 0 (barrier-model
/// position-to-free-coordinate map).
inline double invert_y_model_a(double x, double b, double lambda_rate) {
    if (x < 0.0) throw std::domain_error("invert_y_model_a: x must be >= 0");
    if (x == 0.0) return 0.0;
    auto fwd = [&](double y) { return b * (1.0 - std::exp(-lambda_rate * y)) + y - x; };
    auto dfwd = [&](double y) { return b * lambda_rate * std::exp(-lambda_rate * y) + 1.0; };
    return detail::solve_increasing(fwd, dfwd, 0.0, x);
}

/// Inverts the influx-model position map
/// x = (sigma2/2a)(exp(2a v0/sigma2) - exp(2a(v0-y)/sigma2)) on y in [0, v0].
inline double invert_y_model_c(double x, const DiffusionParams& params) {
    if (x < 0.0 || x > 1.0) throw std::domain_error("invert_y_model_c: x must be in [0,1]");
    const double v0 = solve_v0(params);
    if (x == 0.0) return 0.0;
    const double r = 2.0 * params.a / params.sigma2;
    const double e0 = std::exp(r * v0);
    auto fwd = [&](double y) { return (e0 - std::exp(r * (v0 - y))) / r - x; };
    auto dfwd = [&](double y) { return std::exp(r * (v0 - y)); };
    const double y = detail::solve_increasing(fwd, dfwd, 0.0, v0);
    return std::min(std::max(y, 0.0), v0);
}

/// Typical inter-rod gap at position x of the influx model:
/// epsilon*sigma2/(2a(1-x)). Diverges as x -> 1.
inline double predicted_gap(double x, const DiffusionParams& params) {
    if (x < 0.0 || x >= 1.0) throw std::domain_error("predicted_gap: x must be in [0,1)");
    return params.epsilon * params.sigma2 / (2.0 * params.a * (1.0 - x));
}

/// Closed-form density profiles the simulations are checked against.
struct AnalyticProfile {
    enum class Kind { ModelA_PseudoStationary, ModelC_Predicted };

    Kind kind;
    DiffusionParams params;

    /// Mass fraction at (comoving) position x, in [0,1].
    double operator()(double x) const {
        switch (kind) {
            case Kind::ModelC_Predicted:
                return predicted_density_model_c(x, params);
            case Kind::ModelA_PseudoStationary: {
                // x = b*Phi(y) + y splits any window into rod material
                // b*phi dy and gap dy, so the local fraction is
                // b*phi/(1 + b*phi).
                const double y = invert_y_model_a(x, params.b, params.rate());
                const double phi = stationary_density(params, y);
                return params.b * phi / (1.0 + params.b * phi);
            }
        }
        return 0.0;
    }
};

}  // namespace hardrods
