#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hardrods/analytics.hpp"
#include "hardrods/measurement.hpp"

namespace hardrods {

/// One verification result. `pass` is statistic <= threshold when
/// `upper_bound` (the usual case) and statistic >= threshold otherwise.
struct StatReport {
    std::string name;
    double statistic = 0.0;
    double threshold = 0.0;
    bool upper_bound = true;
    bool pass = false;
    bool gating = true;
    std::int64_t replicas = 0;
    std::uint64_t seed_digest = 0;
    std::string notes;

    static StatReport make(std::string name, double statistic, double threshold, bool upper_bound,
                           bool gating, std::int64_t replicas, std::uint64_t seed_digest,
                           std::string notes = {}) {
        StatReport r;
        r.name = std::move(name);
        r.statistic = statistic;
        r.threshold = threshold;
        r.upper_bound = upper_bound;
        r.pass = upper_bound ? statistic <= threshold : statistic >= threshold;
        r.gating = gating;
        r.replicas = replicas;
        r.seed_digest = seed_digest;
        r.notes = std::move(notes);
        return r;
    }
};

/**
 * Kolmogorov-Smirnov distance of a sorted sample to a distribution function:
 * D = max_i max(|i/n - F(x_i)|, |(i-1)/n - F(x_i)|).
 */
inline double ks_statistic(std::span<const double> sorted_sample,
                           const std::function<double(double)>& cdf) {
    const std::size_t n = sorted_sample.size();
    if (n == 0) throw std::invalid_argument("ks_statistic: empty sample");
    const auto dn = static_cast<double>(n);
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double f = cdf(sorted_sample[i]);
        d = std::max(d, std::abs(static_cast<double>(i + 1) / dn - f));
        d = std::max(d, std::abs(static_cast<double>(i) / dn - f));
    }
    return d;
}

/// Sup and width-weighted L1 deviation of a binned profile from an analytic
/// profile evaluated at bin midpoints.
inline std::pair<double, double> profile_deviation(const DensityProfile& empirical,
                                                   const AnalyticProfile& predicted) {
    double sup = 0.0;
    double weighted = 0.0;
    double total_width = 0.0;
    for (std::size_t i = 0; i < empirical.mass_fraction.size(); ++i) {
        const double mid = 0.5 * (empirical.bin_edges[i] + empirical.bin_edges[i + 1]);
        const double width = empirical.bin_edges[i + 1] - empirical.bin_edges[i];
        const double dev = std::abs(empirical.mass_fraction[i] - predicted(mid));
        sup = std::max(sup, dev);
        weighted += width * dev;
        total_width += width;
    }
    return {sup, total_width > 0.0 ? weighted / total_width : 0.0};
}

/**
 * Wilson score interval for a binomial fraction. Levels 0.90/0.95/0.99 only;
 * the normal quantiles are pinned to six digits.
 */
inline std::pair<double, double> fraction_ci(std::int64_t successes, std::int64_t trials,
                                             double level) {
    if (trials < 1 || successes < 0 || successes > trials) {
        throw std::invalid_argument("fraction_ci: need 0 <= successes <= trials, trials >= 1");
    }
    double z;
    if (level == 0.90) z = 1.64485;
    else if (level == 0.95) z = 1.95996;
    else if (level == 0.99) z = 2.57583;
    else throw std::invalid_argument("fraction_ci: level must be 0.90, 0.95 or 0.99");

    const auto n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

}  // namespace hardrods
