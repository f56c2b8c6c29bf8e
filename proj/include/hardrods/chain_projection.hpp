#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace hardrods {

inline constexpr double kNoBound = std::numeric_limits<double>::infinity();

namespace detail {

/// In-place pool-adjacent-violators: Euclidean projection of `u` onto the
/// nondecreasing cone (unit weights).
inline void pool_adjacent_violators(std::vector<double>& u) {
    const std::size_t n = u.size();
    if (n < 2) return;
    // blocks[k] = (sum, count, last index) of the k-th pooled block
    std::vector<double> sum(n);
    std::vector<std::size_t> count(n), last(n);
    std::size_t m = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sum[m] = u[i];
        count[m] = 1;
        last[m] = i;
        ++m;
        while (m > 1 && sum[m - 2] * static_cast<double>(count[m - 1]) >=
                            sum[m - 1] * static_cast<double>(count[m - 2])) {
            sum[m - 2] += sum[m - 1];
            count[m - 2] += count[m - 1];
            last[m - 2] = last[m - 1];
            --m;
        }
    }
    std::size_t i = 0;
    for (std::size_t k = 0; k < m; ++k) {
        const double mean = sum[k] / static_cast<double>(count[k]);
        for (; i <= last[k]; ++i) u[i] = mean;
    }
}

}  // namespace detail

/**
 * Euclidean projection of proposed rod centers onto the feasible chain
 * { lo <= x_0, x_{i+1} - x_i >= epsilon, x_{n-1} <= hi }.
 *
 * Change of variables u_i = x_i - i*epsilon turns the spacing constraints
 * into monotonicity and the endpoint constraints into the box
 * [lo, hi - (n-1)epsilon]; the translation is an isometry, so the projection
 * is computed there: pool-adjacent-violators for the isotone cone, then
 * alternating clamp/re-pool sweeps until fixed point (clamping an isotone
 * sequence with constant bounds keeps it isotone, so the alternation
 * terminates immediately in exact arithmetic; the sweep cap is 100).
 *
 * Pass kNoBound (+-inf) for an absent endpoint constraint.
 */
inline std::vector<double> project_chain(std::span<const double> proposal, double epsilon,
                                         double lo, double hi) {
    const std::size_t n = proposal.size();
    if (n == 0) return {};
    if (epsilon < 0.0) throw std::invalid_argument("project_chain: epsilon must be >= 0");
    const double box_hi = hi - static_cast<double>(n - 1) * epsilon;
    if (lo > box_hi + 1e-12) {
        throw std::invalid_argument("project_chain: empty feasible set (hi - lo < (n-1)*epsilon)");
    }
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = proposal[i] - static_cast<double>(i) * epsilon;

    detail::pool_adjacent_violators(u);
    for (int sweep = 0; sweep < 100; ++sweep) {
        bool changed = false;
        for (auto& v : u) {
            double w = v;
            if (w < lo) w = lo;
            if (w > box_hi) w = box_hi;
            if (std::abs(w - v) > 1e-12 * std::max(1.0, std::abs(v))) changed = true;
            v = w;
        }
        if (!changed) break;
        detail::pool_adjacent_violators(u);
    }

    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = u[i] + static_cast<double>(i) * epsilon;
    return out;
}

}  // namespace hardrods
