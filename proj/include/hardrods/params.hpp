#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace hardrods {

enum class Model { BarrierPushed, InfluxKilled, JumpReset };

inline const char* to_string(Model m) {
    switch (m) {
        case Model::BarrierPushed: return "barrier";
        case Model::InfluxKilled: return "influx";
        case Model::JumpReset: return "jump";
    }
    return "?";
}

inline Model model_from_string(const std::string& s) {
    if (s == "barrier") return Model::BarrierPushed;
    if (s == "influx") return Model::InfluxKilled;
    if (s == "jump") return Model::JumpReset;
    throw std::invalid_argument("unknown model '" + s + "' (barrier|influx|jump)");
}

/**
 * Physical parameters of a rod system.
 *
 * `a` is the drift magnitude of the free coordinates; in the barrier model it
 * equals the barrier speed `c` (the construction reuses one constant for
 * both), so the stationary rate of a single reflected coordinate is always
 * lambda = 2a/sigma2. `b = n*epsilon` is the total rod material in the
 * fixed-count models.
 */
struct DiffusionParams {
    double a = 0.0;       // drift magnitude (= barrier speed in the barrier model)
    double sigma2 = 0.0;  // diffusion coefficient
    double epsilon = 0.0; // rod width
    double c = 0.0;       // barrier speed (barrier model only)
    std::int64_t n = 0;   // rod count (fixed-count models)
    double b = 0.0;       // mass budget n*epsilon (fixed-count models)

    double rate() const noexcept { return 2.0 * a / sigma2; }

    static DiffusionParams barrier(double barrier_speed, double sigma2, std::int64_t n, double b) {
        DiffusionParams p;
        p.a = barrier_speed;
        p.c = barrier_speed;
        p.sigma2 = sigma2;
        p.n = n;
        p.b = b;
        p.epsilon = (n > 0) ? b / static_cast<double>(n) : 0.0;
        p.validate(Model::BarrierPushed);
        return p;
    }

    static DiffusionParams influx(double a, double sigma2, double epsilon) {
        DiffusionParams p;
        p.a = a;
        p.sigma2 = sigma2;
        p.epsilon = epsilon;
        p.validate(Model::InfluxKilled);
        return p;
    }

    static DiffusionParams jump_reset(double sigma2, std::int64_t n, double b) {
        DiffusionParams p;
        p.sigma2 = sigma2;
        p.n = n;
        p.b = b;
        p.epsilon = (n > 0) ? b / static_cast<double>(n) : 0.0;
        p.validate(Model::JumpReset);
        return p;
    }

    void validate(Model model) const {
        if (!(sigma2 >= 0.0) || !std::isfinite(sigma2)) {
            throw std::invalid_argument("sigma2 must be finite and >= 0");
        }
        if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
            throw std::invalid_argument("epsilon must be >= 0");
        }
        switch (model) {
            case Model::BarrierPushed:
                if (!(c > 0.0)) throw std::invalid_argument("barrier model: c must be > 0");
                if (a != c) throw std::invalid_argument("barrier model: drift a must equal barrier speed c");
                if (n < 1) throw std::invalid_argument("barrier model: n >= 1 required");
                if (std::abs(static_cast<double>(n) * epsilon - b) > 1e-12) {
                    throw std::invalid_argument("barrier model: n*epsilon must equal b within 1e-12");
                }
                break;
            case Model::InfluxKilled:
                if (!(a > 0.0)) throw std::invalid_argument("influx model: a must be > 0");
                if (!(epsilon > 0.0)) throw std::invalid_argument("influx model: epsilon must be > 0");
                break;
            case Model::JumpReset:
                if (n < 1) throw std::invalid_argument("jump model: n >= 1 required");
                if (std::abs(static_cast<double>(n) * epsilon - b) > 1e-12) {
                    throw std::invalid_argument("jump model: n*epsilon must equal b within 1e-12");
                }
                // feasible set of centers in [0,1] is nonempty iff (n-1)*eps <= 1
                if (static_cast<double>(n) * epsilon > 1.0 + epsilon + 1e-12) {
                    throw std::invalid_argument("jump model: n*epsilon exceeds domain capacity 1+epsilon");
                }
                break;
        }
    }
};

}  // namespace hardrods
