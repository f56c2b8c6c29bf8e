#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "hardrods/system_state.hpp"

namespace hardrods {

enum class Frame { Static, BarrierComoving };

/// Binned mass-fraction profile. In the barrier model the bins live in the
/// frame comoving with the barrier.
struct DensityProfile {
    std::vector<double> bin_edges;     // strictly ascending, size bins+1
    std::vector<double> mass_fraction; // per bin, each in [0,1]
    Frame frame = Frame::Static;
};

inline std::vector<double> uniform_bin_edges(double lo, double hi, int bins) {
    if (!(lo < hi) || bins < 1) throw std::invalid_argument("uniform_bin_edges: bad range");
    std::vector<double> edges(static_cast<std::size_t>(bins) + 1);
    for (int i = 0; i <= bins; ++i) {
        edges[static_cast<std::size_t>(i)] =
            lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(bins);
    }
    return edges;
}

/**
 * Mass fraction of [x1, x2]: Lebesgue measure of the window's intersection
 * with the union of rod intervals, divided by the window width. In the
 * barrier model the window is interpreted in the comoving frame and shifted
 * by +c*t; the other models use the window as given.
 */
inline double density_window(const SystemState& state, double x1, double x2) {
    if (!(x1 < x2)) throw std::domain_error("density_window: require x1 < x2");
    double shift = 0.0;
    if (state.model == Model::BarrierPushed) shift = state.params.c * state.t;
    const double w1 = x1 + shift;
    const double w2 = x2 + shift;
    const double half = state.params.epsilon / 2.0;

    // first rod whose right edge can reach past w1
    auto it = std::lower_bound(state.x.begin(), state.x.end(), w1 - half);
    double covered = 0.0;
    for (; it != state.x.end(); ++it) {
        const double left = *it - half;
        const double right = *it + half;
        if (left >= w2) break;
        covered += std::max(0.0, std::min(right, w2) - std::max(left, w1));
    }
    return covered / (w2 - w1);
}

/// density_window per bin.
inline DensityProfile density_profile(const SystemState& state, std::span<const double> bin_edges) {
    if (bin_edges.size() < 2) throw std::invalid_argument("density_profile: need >= 1 bin");
    DensityProfile profile;
    profile.bin_edges.assign(bin_edges.begin(), bin_edges.end());
    profile.frame = state.model == Model::BarrierPushed ? Frame::BarrierComoving : Frame::Static;
    profile.mass_fraction.reserve(bin_edges.size() - 1);
    for (std::size_t i = 0; i + 1 < bin_edges.size(); ++i) {
        profile.mass_fraction.push_back(density_window(state, bin_edges[i], bin_edges[i + 1]));
    }
    return profile;
}

/**
 * Mean gap between consecutive rods whose gap midpoint lies in [x1, x2]
 * (same frame convention as density_window). Absent when fewer than two rods
 * qualify.
 */
inline std::optional<double> gap_stats(const SystemState& state, double x1, double x2) {
    if (!(x1 < x2)) throw std::domain_error("gap_stats: require x1 < x2");
    double shift = 0.0;
    if (state.model == Model::BarrierPushed) shift = state.params.c * state.t;
    const double w1 = x1 + shift;
    const double w2 = x2 + shift;
    const double eps = state.params.epsilon;

    double sum = 0.0;
    std::int64_t count = 0;
    for (std::size_t i = 0; i + 1 < state.x.size(); ++i) {
        const double gap = state.x[i + 1] - state.x[i] - eps;  // right edge to left edge
        const double mid = 0.5 * (state.x[i] + state.x[i + 1]);
        if (mid >= w1 && mid <= w2) {
            sum += gap;
            ++count;
        }
    }
    if (count == 0) return std::nullopt;
    return sum / static_cast<double>(count);
}

/// Sampled trajectory of one labelled rod.
struct TaggedTrack {
    std::int64_t label = 0;
    std::vector<double> times;    // strictly increasing, uniform spacing
    std::vector<double> centers;
};

/**
 * OLS slope of log Var(X_{t+lag} - X_t) against log lag.
 *
 * Increments are taken over every admissible start index (overlapping
 * windows) and the plug-in sample mean of the increments is subtracted, which
 * removes a constant drift exactly. Overlapping increments are positively
 * correlated, so the variance estimates carry a smaller effective sample size
 * than their count; the estimator stays consistent and is adequate for the
 * diagnostic use here. Requires uniform sampling, track length >= 10x the
 * largest lag, and >= 3 lags.
 */
inline double increment_scaling(const TaggedTrack& track, std::span<const double> lags) {
    const std::size_t n = track.times.size();
    if (n < 2 || track.centers.size() != n) {
        throw std::invalid_argument("increment_scaling: track too short");
    }
    if (lags.size() < 3) throw std::invalid_argument("increment_scaling: need >= 3 lags");
    const double dt = track.times[1] - track.times[0];
    if (!(dt > 0.0)) throw std::invalid_argument("increment_scaling: times must increase");
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (std::abs(track.times[i + 1] - track.times[i] - dt) > 1e-9 * dt) {
            throw std::invalid_argument("increment_scaling: sampling must be uniform");
        }
    }
    const double span = track.times.back() - track.times.front();
    const double max_lag = *std::max_element(lags.begin(), lags.end());
    if (span < 10.0 * max_lag) {
        throw std::invalid_argument("increment_scaling: track must cover >= 10x the largest lag");
    }

    std::vector<double> log_lag, log_var;
    for (double lag : lags) {
        const auto k = static_cast<std::size_t>(std::llround(lag / dt));
        if (k < 1 || std::abs(static_cast<double>(k) * dt - lag) > 1e-6 * lag) {
            throw std::invalid_argument("increment_scaling: lag is not a multiple of the spacing");
        }
        const std::size_t m = n - k;
        double mean = 0.0;
        for (std::size_t i = 0; i < m; ++i) mean += track.centers[i + k] - track.centers[i];
        mean /= static_cast<double>(m);
        double ss = 0.0;
        double msq = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double raw = track.centers[i + k] - track.centers[i];
            const double d = raw - mean;
            ss += d * d;
            msq += raw * raw;
        }
        const double var = ss / static_cast<double>(m > 1 ? m - 1 : 1);
        // a drift-only track leaves rounding residue of order ulp^2 * msq
        if (!(var > 1e-20 * msq / static_cast<double>(m))) {
            throw std::domain_error("increment_scaling: zero increment variance (deterministic track)");
        }
        log_lag.push_back(std::log(lag));
        log_var.push_back(std::log(var));
    }

    const auto m = static_cast<double>(log_lag.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < log_lag.size(); ++i) {
        mx += log_lag[i];
        my += log_var[i];
    }
    mx /= m;
    my /= m;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < log_lag.size(); ++i) {
        sxy += (log_lag[i] - mx) * (log_var[i] - my);
        sxx += (log_lag[i] - mx) * (log_lag[i] - mx);
    }
    return sxy / sxx;
}

}  // namespace hardrods
