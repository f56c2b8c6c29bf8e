#pragma once

// The acceptance suite: desk-scale Monte Carlo instantiations of the model
// laws plus the deterministic oracles, each pinned to a fixed seed, fixed
// parameters and a fixed threshold. Suites: "unit" (1, 2, 5), "theorems"
// (3, 4, 6), "exploratory" (7, 8, 9 — report-only except the estimator
// control inside 9), "all".

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "hardrods/analytics.hpp"
#include "hardrods/experiment.hpp"
#include "hardrods/measurement.hpp"
#include "hardrods/model_a.hpp"
#include "hardrods/model_c.hpp"
#include "hardrods/qp_reference.hpp"
#include "hardrods/statcheck.hpp"

namespace hardrods {
namespace detail {

template <class Fn>
void parallel_indices(std::int64_t count, int threads, Fn fn) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const auto workers =
        std::min<std::int64_t>(threads > 0 ? threads : static_cast<int>(hw), count);
    if (workers <= 1) {
        for (std::int64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::int64_t> next{0};
    auto work = [&]() {
        for (;;) {
            const std::int64_t i = next.fetch_add(1);
            if (i >= count) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    for (std::int64_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
}

inline std::uint64_t seed_digest(std::uint64_t base_seed, std::int64_t replicas) {
    return mix64(base_seed + mix64(static_cast<std::uint64_t>(replicas)));
}

}  // namespace detail

/// Single-coordinate stationarity: endpoint law of the reflected bridge
/// scheme at t = 50 against Exp(2a/sigma2).
inline std::vector<StatReport> criterion_1(int threads = 0) {
    constexpr std::uint64_t kSeed = 101;
    const DiffusionParams p = DiffusionParams::influx(1.0, 1.0, 0.01);
    const std::int64_t chains = 10000;
    const double h = 1e-3;
    const std::int64_t steps = 50000;

    std::vector<double> endpoint(chains);
    detail::parallel_indices(chains, threads, [&](std::int64_t i) {
        RandomStream stream(kSeed, static_cast<std::uint64_t>(i));
        double z = 0.0;
        for (std::int64_t k = 0; k < steps; ++k) {
            z = reflect_step(z, h, p, stream, StepScheme::BridgeExact);
        }
        endpoint[static_cast<std::size_t>(i)] = z;
    });
    std::sort(endpoint.begin(), endpoint.end());
    const double lambda = p.rate();
    const double d = ks_statistic(endpoint, [&](double x) { return 1.0 - std::exp(-lambda * x); });
    return {StatReport::make("c1_single_particle_stationarity", d, 0.02, true, true, chains,
                             detail::seed_digest(kSeed, chains),
                             "KS of 1e4 endpoints at t=50 vs Exp(2), h=1e-3")};
}

/// Occupation-time histogram of the killed reflected diffusion against the
/// closed-form occupation density.
inline std::vector<StatReport> criterion_2(int threads = 0) {
    constexpr std::uint64_t kSeed = 102;
    const DiffusionParams p = DiffusionParams::influx(0.5, 1.0, 0.01);
    const double v1 = 0.5;
    const double h = 1e-4;
    const std::int64_t paths = 20000;
    const int bins = 50;
    const double width = v1 / bins;

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const auto workers = std::max<std::int64_t>(
        1, std::min<std::int64_t>(threads > 0 ? threads : static_cast<int>(hw), paths));
    // integer step counts per worker chunk merge deterministically
    std::vector<std::vector<std::int64_t>> counts(
        static_cast<std::size_t>(workers), std::vector<std::int64_t>(bins, 0));
    detail::parallel_indices(workers, threads, [&](std::int64_t w) {
        auto& local = counts[static_cast<std::size_t>(w)];
        for (std::int64_t i = w; i < paths; i += workers) {
            RandomStream stream(kSeed, static_cast<std::uint64_t>(i));
            double z = 0.0;
            for (;;) {
                auto bin = static_cast<std::int64_t>(z / width);
                if (bin >= bins) bin = bins - 1;
                ++local[static_cast<std::size_t>(bin)];
                const double znew = reflect_step(z, h, p, stream, StepScheme::BridgeExact);
                if (znew >= v1) break;
                // grid detection alone leaves an O(sqrt(h)) late-kill excess
                // (~2.9% here); the bridge crossing probability of the level
                // removes it, leaving the estimate noise-dominated
                const double cross =
                    std::exp(-2.0 * (v1 - z) * (v1 - znew) / (p.sigma2 * h));
                if (stream.uniform01() < cross) break;
                z = znew;
            }
        }
    });

    double num = 0.0, den = 0.0;
    for (int i = 0; i < bins; ++i) {
        std::int64_t total = 0;
        for (const auto& chunk : counts) total += chunk[static_cast<std::size_t>(i)];
        const double estimate =
            h * static_cast<double>(total) / (static_cast<double>(paths) * width);
        const double mid = (static_cast<double>(i) + 0.5) * width;
        const double exact = green_function(p, v1, mid);
        num += std::abs(estimate - exact) * width;
        den += exact * width;
    }
    return {StatReport::make("c2_green_function_occupation", num / den, 0.03, true, true, paths,
                             detail::seed_digest(kSeed, paths),
                             "L1 relative deviation, 50 bins, h=1e-4, 2e4 killed paths, "
                             "bridge-crossing kill")};
}

/// Sharp density transition of the barrier model under pseudo-stationary
/// initial data, at t = 0 and after stepping to t = 1.
inline std::vector<StatReport> criterion_3(int threads = 0) {
    constexpr std::uint64_t kSeed = 103;
    const auto params = DiffusionParams::barrier(30.0, 1.0, 1000, 1.0);

    auto gate = [&](std::int64_t seeds, bool step_to_one) {
        std::vector<std::uint8_t> dense_ok(seeds), sparse_ok(seeds);
        detail::parallel_indices(seeds, threads, [&](std::int64_t i) {
            RandomStream stream(step_to_one ? 1030 : kSeed, static_cast<std::uint64_t>(i));
            auto state = init_model_a_pseudostationary(params, stream);
            if (step_to_one) {
                for (int k = 0; k < 1000; ++k) step_model_a(state, 1e-3, stream);
            }
            dense_ok[static_cast<std::size_t>(i)] = density_window(state, 0.1, 0.6) >= 0.9;
            sparse_ok[static_cast<std::size_t>(i)] = density_window(state, 1.5, 2.0) <= 0.1;
        });
        const auto dense = static_cast<std::int64_t>(
            std::count(dense_ok.begin(), dense_ok.end(), std::uint8_t{1}));
        const auto sparse = static_cast<std::int64_t>(
            std::count(sparse_ok.begin(), sparse_ok.end(), std::uint8_t{1}));
        return std::make_pair(fraction_ci(dense, seeds, 0.95).first,
                              fraction_ci(sparse, seeds, 0.95).first);
    };

    const auto [dense0, sparse0] = gate(200, false);
    const auto [dense1, sparse1] = gate(50, true);
    const auto digest = detail::seed_digest(kSeed, 200);
    return {
        StatReport::make("c3_transition_dense_window_t0", dense0, 0.9, false, true, 200, digest,
                         "Wilson 95% lower bound of P(d([0.1,0.6]) >= 0.9), t=0"),
        StatReport::make("c3_transition_sparse_window_t0", sparse0, 0.9, false, true, 200, digest,
                         "Wilson 95% lower bound of P(d([1.5,2.0]) <= 0.1), t=0"),
        StatReport::make("c3_transition_dense_window_t1", dense1, 0.9, false, true, 50, digest,
                         "same gate after stepping to t=1, h=1e-3"),
        StatReport::make("c3_transition_sparse_window_t1", sparse1, 0.9, false, true, 50, digest,
                         "same gate after stepping to t=1, h=1e-3"),
    };
}

/// Stationary influx-model profile against (1-x)/(1-x + sigma2/(2a)).
inline std::vector<StatReport> criterion_4(int threads = 0) {
    ExperimentConfig cfg;
    cfg.model = Model::InfluxKilled;
    cfg.a = 0.5;
    cfg.sigma2 = 1.0;
    cfg.epsilon = 0.002;
    cfg.h = 2e-4;
    cfg.t_end = 40.0;
    cfg.burn_in = 20.0;
    cfg.snapshot_interval = 0.5;
    cfg.profile_lo = 0.05;
    cfg.profile_hi = 0.95;
    cfg.bins = 9;
    cfg.replicas = 20;
    cfg.base_seed = 104;
    cfg.threads = threads;
    const auto result = run_experiment(cfg);

    const AnalyticProfile predicted{AnalyticProfile::Kind::ModelC_Predicted, cfg.params()};
    const auto [sup, l1] = profile_deviation(result.profile, predicted);
    const double mean_alive =
        static_cast<double>(result.total_injected - result.total_killed) /
        static_cast<double>(cfg.replicas);
    return {StatReport::make(
        "c4_influx_profile_law", sup, 0.07, true, true, cfg.replicas,
        detail::seed_digest(cfg.base_seed, cfg.replicas),
        "sup bin deviation, bins of 0.1 on [0.05,0.95], t averaged over [20,40]; L1=" +
            std::to_string(l1) + ", mean alive at t_end=" + std::to_string(mean_alive))};
}

/// Chain projection against the brute-force KKT active-set oracle.
inline std::vector<StatReport> criterion_5(int /*threads*/ = 0) {
    constexpr std::uint64_t kSeed = 105;
    RandomStream s(kSeed, 0);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(6.0 * s.uniform01());
        const double eps = 0.3 * s.uniform01();
        const int bounds = trial % 4;
        double lo = -kNoBound, hi = kNoBound;
        if (bounds == 1 || bounds == 3) lo = -0.4 * s.uniform01();
        if (bounds == 2 || bounds == 3) {
            const double base = std::isfinite(lo) ? lo : -1.0;
            hi = base + static_cast<double>(n - 1) * eps + 0.05 + 1.5 * s.uniform01();
        }
        std::vector<double> prop(n);
        for (auto& v : prop) v = 1.5 * (2.0 * s.uniform01() - 1.0);
        const auto fast = project_chain(prop, eps, lo, hi);
        const auto slow = reference::project_chain_qp(prop, eps, lo, hi);
        for (std::size_t i = 0; i < n; ++i) {
            worst = std::max(worst, std::abs(fast[i] - slow[i]));
        }
    }
    return {StatReport::make("c5_projection_oracle", worst, 1e-8, true, true, 1000,
                             detail::seed_digest(kSeed, 1000),
                             "max per-coordinate gap to active-set QP enumeration")};
}

/// Barrier model: order-statistics engine vs direct projection engine.
inline std::vector<StatReport> criterion_6(int threads = 0) {
    ExperimentConfig cfg;
    cfg.model = Model::BarrierPushed;
    cfg.a = 1.0;
    cfg.sigma2 = 1.0;
    cfg.n = 50;
    cfg.b = 0.5;
    cfg.h = 1e-4;
    cfg.t_end = 1.0;
    cfg.burn_in = 1.0;  // single snapshot at t = 1
    cfg.snapshot_interval = 1.0;
    cfg.profile_lo = 0.0;
    cfg.profile_hi = 1.5;
    cfg.bins = 20;
    cfg.replicas = 500;
    cfg.threads = threads;

    cfg.base_seed = 106;
    cfg.direct_engine = false;
    const auto ordered = run_experiment(cfg);
    cfg.base_seed = 1060;
    cfg.direct_engine = true;
    const auto direct = run_experiment(cfg);

    double l1 = 0.0;
    for (int i = 0; i < cfg.bins; ++i) {
        l1 += std::abs(ordered.profile.mass_fraction[static_cast<std::size_t>(i)] -
                       direct.profile.mass_fraction[static_cast<std::size_t>(i)]);
    }
    l1 /= cfg.bins;
    // the gap to the continuum profile localizes any disagreement: the
    // order-statistics engine is exact in law, the projection engine carries
    // the O(sqrt(h)) clamping bias that dominates this statistic
    const AnalyticProfile continuum{AnalyticProfile::Kind::ModelA_PseudoStationary, cfg.params()};
    const double l1_ordered = profile_deviation(ordered.profile, continuum).second;
    const double l1_direct = profile_deviation(direct.profile, continuum).second;
    return {StatReport::make("c6_two_engine_cross_validation", l1, 0.05, true, true,
                             2 * cfg.replicas, detail::seed_digest(cfg.base_seed, cfg.replicas),
                             "L1 distance of comoving profiles, 20 bins on [0,1.5], t=1; vs "
                             "continuum profile: ordered " + std::to_string(l1_ordered) +
                             ", direct " + std::to_string(l1_direct) +
                             " (statistic sits at the projection scheme's discretization error)")};
}

/// Jump model: effective influx fitted from the jump rate; profile reported
/// against the influx-model law, plus sensitivity to the reinsertion rule
/// and to the step size (driftless collisions resolve only once
/// sigma*sqrt(h) is well below the mean gap, and the jump rate is not yet
/// h-converged at desk scale — disclosed in the notes).
inline std::vector<StatReport> criterion_7(int threads = 0) {
    ExperimentConfig cfg;
    cfg.model = Model::JumpReset;
    cfg.sigma2 = 1.0;
    cfg.n = 150;
    cfg.b = 0.3;
    cfg.h = 5e-6;
    cfg.t_end = 40.0;
    cfg.burn_in = 15.0;
    cfg.snapshot_interval = 0.5;
    cfg.profile_lo = 0.025;
    cfg.profile_hi = 0.975;
    cfg.bins = 19;
    cfg.replicas = 2;
    cfg.base_seed = 107;
    cfg.threads = threads;

    struct Fit {
        double a_eff;
        double sup;
        double l1;
        DensityProfile profile;
    };
    auto fit_rule = [&](ReinsertRule rule, double h, double burn, double t_end) {
        auto run = cfg;
        run.reinsert = rule;
        run.h = h;
        run.burn_in = burn;
        run.t_end = t_end;
        const auto result = run_experiment(run);
        Fit f;
        f.a_eff = result.mean_jump_rate * (cfg.b / static_cast<double>(cfg.n));
        DiffusionParams eff;
        eff.a = f.a_eff;
        eff.sigma2 = cfg.sigma2;
        const AnalyticProfile predicted{AnalyticProfile::Kind::ModelC_Predicted, eff};
        std::tie(f.sup, f.l1) = profile_deviation(result.profile, predicted);
        f.profile = result.profile;
        return f;
    };
    const Fit immediate = fit_rule(ReinsertRule::Immediate, cfg.h, cfg.burn_in, cfg.t_end);
    const Fit deferred = fit_rule(ReinsertRule::Deferred, cfg.h, cfg.burn_in, cfg.t_end);
    const Fit coarse = fit_rule(ReinsertRule::Immediate, 2e-5, 10.0, 25.0);

    double rule_l1 = 0.0;
    for (std::size_t i = 0; i < immediate.profile.mass_fraction.size(); ++i) {
        rule_l1 += std::abs(immediate.profile.mass_fraction[i] - deferred.profile.mass_fraction[i]);
    }
    rule_l1 /= static_cast<double>(immediate.profile.mass_fraction.size());

    // the influx value that would make the conjectured form hold the mass
    // budget: integral of (1-x)/(1-x+s) over [0,1] equals b at s ~ 1.0363
    const double a_mass = 0.48248;

    const auto digest = detail::seed_digest(cfg.base_seed, cfg.replicas);
    return {
        StatReport::make("c7_jump_reset_profile_fit", immediate.sup, 0.10, true, false,
                         cfg.replicas, digest,
                         "sup deviation vs (1-x)/(1-x+sigma2/(2a_eff)); a_eff=" +
                             std::to_string(immediate.a_eff) + " (rate fit), L1=" +
                             std::to_string(immediate.l1) + "; mass-consistent value would be " +
                             std::to_string(a_mass)),
        StatReport::make("c7_reinsertion_sensitivity", rule_l1, 0.05, true, false,
                         2 * cfg.replicas, digest,
                         "profile L1 between immediate and deferred reinsertion; a_eff " +
                             std::to_string(immediate.a_eff) + " vs " +
                             std::to_string(deferred.a_eff)),
        StatReport::make("c7_step_size_sensitivity",
                         std::abs(coarse.a_eff - immediate.a_eff) / immediate.a_eff, 0.10, true,
                         false, 2, digest,
                         "relative a_eff shift from h=2e-5 to h=5e-6: " +
                             std::to_string(coarse.a_eff) + " -> " +
                             std::to_string(immediate.a_eff) +
                             "; the jump rate is not h-converged at desk scale"),
    };
}

/// Influx-model gap law: windowed mean gaps against eps*sigma2/(2a(1-x)).
inline std::vector<StatReport> criterion_8(int threads = 0) {
    ExperimentConfig cfg;
    cfg.model = Model::InfluxKilled;
    cfg.a = 0.5;
    cfg.sigma2 = 1.0;
    cfg.epsilon = 0.002;
    cfg.h = 2e-4;
    cfg.t_end = 30.0;
    cfg.burn_in = 20.0;
    cfg.snapshot_interval = 0.5;
    cfg.profile_lo = 0.05;
    cfg.profile_hi = 0.95;
    cfg.bins = 9;
    cfg.windows = {{0.15, 0.25}, {0.45, 0.55}, {0.75, 0.85}};
    cfg.replicas = 3;
    cfg.base_seed = 108;
    cfg.threads = threads;
    const auto result = run_experiment(cfg);

    std::vector<StatReport> reports;
    const auto digest = detail::seed_digest(cfg.base_seed, cfg.replicas);
    for (std::size_t w = 0; w < cfg.windows.size(); ++w) {
        const double mid = 0.5 * (cfg.windows[w].first + cfg.windows[w].second);
        const double expected = predicted_gap(mid, cfg.params());
        const double measured = result.window_gaps[w].value_or(std::nan(""));
        const double rel = std::abs(measured - expected) / expected;
        reports.push_back(StatReport::make(
            "c8_gap_law_x" + std::to_string(mid).substr(0, 4), rel, 0.20, true, false,
            cfg.replicas, digest,
            "relative gap error; measured " + std::to_string(measured) + " vs " +
                std::to_string(expected)));
    }
    return reports;
}

/// Tagged-rod increment scaling. The free-particle control gates the
/// estimator itself; the influx-model slope is reported against the
/// informative band 0.5 +- 0.2.
inline std::vector<StatReport> criterion_9(int /*threads*/ = 0) {
    constexpr std::uint64_t kSeed = 109;

    // estimator control: free Brownian motion must fit slope 1
    TaggedTrack control;
    control.label = 0;
    RandomStream s(kSeed, 0);
    double xpos = 0.0;
    const double dt = 0.01;
    for (int i = 0; i < 100000; ++i) {
        control.times.push_back(i * dt);
        control.centers.push_back(xpos);
        xpos += gaussian_increment(s, dt, 1.0);
    }
    const std::vector<double> control_lags = {0.02, 0.05, 0.1, 0.2, 0.5, 1.0};
    const double control_slope = increment_scaling(control, control_lags);

    // slow influx system so a single rod's transit spans the lag range
    const auto params = DiffusionParams::influx(0.02, 0.04, 0.002);
    const auto tracks = track_influx_rods(params, 1e-3, StepScheme::BridgeExact, kSeed, 1,
                                          20.0, 45.0, 0.01, 40);
    const std::vector<double> lags = {0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0};
    double slope = std::nan("");
    double span = 0.0;
    for (const auto& track : tracks) {
        if (track.times.size() < 2) continue;
        const double s_span = track.times.back() - track.times.front();
        if (s_span >= 10.0 && s_span > span) {
            span = s_span;
            slope = increment_scaling(track, lags);
        }
    }

    const auto digest = detail::seed_digest(kSeed, 1);
    return {
        StatReport::make("c9_estimator_control", std::abs(control_slope - 1.0), 0.05, true, true,
                         1, digest,
                         "free-particle OLS slope " + std::to_string(control_slope) +
                             " against exact diffusive scaling"),
        StatReport::make("c9_tagged_slope", std::abs(slope - 0.5), 0.2, true, false, 1, digest,
                         "influx-model tagged slope " + std::to_string(slope) +
                             " (informative band 0.3..0.7), track span " + std::to_string(span)),
    };
}

inline std::vector<StatReport> run_suite(const std::string& suite, int threads = 0) {
    std::vector<int> which;
    if (suite == "unit") which = {1, 2, 5};
    else if (suite == "theorems") which = {3, 4, 6};
    else if (suite == "exploratory") which = {7, 8, 9};
    else if (suite == "all") which = {1, 2, 3, 4, 5, 6, 7, 8, 9};
    else throw std::invalid_argument("unknown suite '" + suite + "' (unit|theorems|exploratory|all)");

    std::vector<StatReport> reports;
    for (int c : which) {
        std::vector<StatReport> part;
        switch (c) {
            case 1: part = criterion_1(threads); break;
            case 2: part = criterion_2(threads); break;
            case 3: part = criterion_3(threads); break;
            case 4: part = criterion_4(threads); break;
            case 5: part = criterion_5(threads); break;
            case 6: part = criterion_6(threads); break;
            case 7: part = criterion_7(threads); break;
            case 8: part = criterion_8(threads); break;
            case 9: part = criterion_9(threads); break;
            default: throw std::invalid_argument("criterion out of range");
        }
        reports.insert(reports.end(), part.begin(), part.end());
    }
    return reports;
}

inline std::vector<StatReport> run_criterion(int criterion, int threads = 0) {
    switch (criterion) {
        case 1: return criterion_1(threads);
        case 2: return criterion_2(threads);
        case 3: return criterion_3(threads);
        case 4: return criterion_4(threads);
        case 5: return criterion_5(threads);
        case 6: return criterion_6(threads);
        case 7: return criterion_7(threads);
        case 8: return criterion_8(threads);
        case 9: return criterion_9(threads);
        default: throw std::invalid_argument("criterion must be 1..9");
    }
}

inline nlohmann::json reports_to_json(const std::vector<StatReport>& reports) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) {
        nlohmann::json j;
        j["name"] = r.name;
        j["statistic"] = r.statistic;
        j["threshold"] = r.threshold;
        j["orientation"] = r.upper_bound ? "<=" : ">=";
        j["pass"] = r.pass;
        j["gating"] = r.gating;
        j["replicas"] = r.replicas;
        j["seed_digest"] = r.seed_digest;
        j["notes"] = r.notes;
        arr.push_back(j);
    }
    return arr;
}

inline bool all_gating_pass(const std::vector<StatReport>& reports) {
    for (const auto& r : reports) {
        if (r.gating && !r.pass) return false;
    }
    return true;
}

}  // namespace hardrods
