#pragma once

#include <atomic>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "hardrods/checkpoint.hpp"
#include "hardrods/config.hpp"
#include "hardrods/measurement.hpp"
#include "hardrods/model_a.hpp"
#include "hardrods/model_c.hpp"
#include "hardrods/model_r.hpp"
#include "hardrods/system_state.hpp"

namespace hardrods {

struct SnapshotRow {
    double t;
    std::int64_t k;
    double center;
    double left;
    double right;
};

struct ReplicaOutcome {
    std::vector<double> profile_mean;           // per bin, averaged over snapshots
    std::int64_t snapshots = 0;
    std::vector<double> window_gap_sum;
    std::vector<std::int64_t> window_gap_count;
    std::int64_t jumps_at_burn_in = 0;
    SystemState final_state;
    std::uint64_t final_counter = 0;
};

struct ExperimentResult {
    DensityProfile profile;                     // replica-merged
    std::int64_t snapshots_per_replica = 0;
    std::vector<std::optional<double>> window_gaps;  // merged per configured window
    double mean_jump_rate = 0.0;                // jump model, post burn-in
    std::int64_t total_injected = 0;
    std::int64_t total_killed = 0;
    std::vector<ReplicaOutcome> replicas;
};

namespace detail {

inline SystemState make_initial_state(const ExperimentConfig& cfg, RandomStream& stream) {
    switch (cfg.model) {
        case Model::BarrierPushed:
            return init_model_a_pseudostationary(cfg.params(), stream);
        case Model::InfluxKilled:
            return make_influx_state(cfg.params());
        case Model::JumpReset:
            return init_model_r(cfg.params());
    }
    throw std::logic_error("unreachable");
}

inline void advance_state(SystemState& state, const ExperimentConfig& cfg, RandomStream& stream) {
    switch (cfg.model) {
        case Model::BarrierPushed:
            if (cfg.direct_engine) {
                step_model_a_direct(state, cfg.h, stream);
            } else {
                step_model_a(state, cfg.h, stream, cfg.scheme);
            }
            return;
        case Model::InfluxKilled:
            step_model_c(state, cfg.h, stream, cfg.scheme);
            return;
        case Model::JumpReset:
            step_model_r(state, cfg.h, stream, cfg.reinsert);
            return;
    }
}

inline ReplicaOutcome run_replica(const ExperimentConfig& cfg, std::span<const double> edges,
                                  std::int64_t replica, std::vector<SnapshotRow>* rows) {
    RandomStream stream(cfg.base_seed, static_cast<std::uint64_t>(replica));
    SystemState state = make_initial_state(cfg, stream);

    const auto total_steps = static_cast<std::int64_t>(std::llround(cfg.t_end / cfg.h));
    const auto burn_steps = static_cast<std::int64_t>(std::llround(cfg.burn_in / cfg.h));
    const auto snap_steps =
        std::max<std::int64_t>(1, std::llround(cfg.snapshot_interval / cfg.h));

    ReplicaOutcome out;
    out.profile_mean.assign(edges.size() - 1, 0.0);
    out.window_gap_sum.assign(cfg.windows.size(), 0.0);
    out.window_gap_count.assign(cfg.windows.size(), 0);

    auto observe = [&](std::int64_t step) {
        if (step < burn_steps || (step - burn_steps) % snap_steps != 0) return;
        if (out.snapshots == 0) out.jumps_at_burn_in = state.jumps;
        const DensityProfile p = density_profile(state, edges);
        for (std::size_t i = 0; i < p.mass_fraction.size(); ++i) {
            out.profile_mean[i] += p.mass_fraction[i];
        }
        for (std::size_t w = 0; w < cfg.windows.size(); ++w) {
            if (auto g = gap_stats(state, cfg.windows[w].first, cfg.windows[w].second)) {
                out.window_gap_sum[w] += *g;
                ++out.window_gap_count[w];
            }
        }
        if (rows) {
            const RodIntervals iv = reconstruct_intervals(state);
            for (std::size_t k = 0; k < iv.size(); ++k) {
                rows->push_back({state.t, static_cast<std::int64_t>(k), state.x[k], iv[k].left,
                                 iv[k].right});
            }
        }
        ++out.snapshots;
    };

    observe(0);
    for (std::int64_t step = 1; step <= total_steps; ++step) {
        advance_state(state, cfg, stream);
        observe(step);
    }
    if (out.snapshots > 0) {
        for (auto& v : out.profile_mean) v /= static_cast<double>(out.snapshots);
    }
    out.final_state = std::move(state);
    out.final_counter = stream.counter();
    return out;
}

inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace detail

/**
 * Runs every replica (replica i consumes stream (base_seed, i)), merges the
 * per-replica mean profiles bin-wise in replica order, and — when out_dir is
 * set — writes profile.csv, summary.json and the optional snapshot/checkpoint
 * artifacts. Outputs are identical for any thread count and across reruns;
 * the only non-reproducible field is the timestamp inside summary.json
 * metadata.
 */
inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const std::vector<double> edges = uniform_bin_edges(cfg.profile_lo, cfg.profile_hi, cfg.bins);

    std::vector<ReplicaOutcome> outcomes(static_cast<std::size_t>(cfg.replicas));
    std::vector<SnapshotRow> rows;  // replica 0 only
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const auto want = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads) : hw;
    const auto workers = std::min<std::uint64_t>(want, static_cast<std::uint64_t>(cfg.replicas));

    std::atomic<std::int64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&]() {
        for (;;) {
            const std::int64_t r = next.fetch_add(1);
            if (r >= cfg.replicas) return;
            try {
                outcomes[static_cast<std::size_t>(r)] = detail::run_replica(
                    cfg, edges, r, (cfg.write_snapshots && r == 0) ? &rows : nullptr);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (std::uint64_t w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    ExperimentResult result;
    result.profile.bin_edges = edges;
    result.profile.frame =
        cfg.model == Model::BarrierPushed ? Frame::BarrierComoving : Frame::Static;
    result.profile.mass_fraction.assign(static_cast<std::size_t>(cfg.bins), 0.0);
    result.snapshots_per_replica = outcomes.empty() ? 0 : outcomes.front().snapshots;

    double jump_rate_sum = 0.0;
    for (const auto& out : outcomes) {  // fixed replica order: deterministic reduction
        for (std::size_t i = 0; i < result.profile.mass_fraction.size(); ++i) {
            result.profile.mass_fraction[i] += out.profile_mean[i];
        }
        result.total_injected += out.final_state.injected;
        result.total_killed += out.final_state.killed;
        if (cfg.t_end > cfg.burn_in) {
            jump_rate_sum += static_cast<double>(out.final_state.jumps - out.jumps_at_burn_in) /
                             (cfg.t_end - cfg.burn_in);
        }
    }
    for (auto& v : result.profile.mass_fraction) v /= static_cast<double>(cfg.replicas);
    result.mean_jump_rate = jump_rate_sum / static_cast<double>(cfg.replicas);

    for (std::size_t w = 0; w < cfg.windows.size(); ++w) {
        double sum = 0.0;
        std::int64_t count = 0;
        for (const auto& out : outcomes) {
            sum += out.window_gap_sum[w];
            count += out.window_gap_count[w];
        }
        result.window_gaps.push_back(count > 0 ? std::optional<double>(sum / static_cast<double>(count))
                                               : std::nullopt);
    }
    result.replicas = std::move(outcomes);

    if (!cfg.out_dir.empty()) {
        namespace fs = std::filesystem;
        fs::create_directories(cfg.out_dir);
        const fs::path dir(cfg.out_dir);
        {
            std::ofstream csv(dir / "profile.csv");
            csv << "bin_left,bin_right,density\n";
            for (std::size_t i = 0; i < result.profile.mass_fraction.size(); ++i) {
                csv << detail::format_double(edges[i]) << ',' << detail::format_double(edges[i + 1])
                    << ',' << detail::format_double(result.profile.mass_fraction[i]) << '\n';
            }
        }
        if (cfg.write_snapshots) {
            std::ofstream csv(dir / "snapshots.csv");
            csv << "t,k,center,left,right\n";
            for (const auto& row : rows) {
                csv << detail::format_double(row.t) << ',' << row.k << ','
                    << detail::format_double(row.center) << ',' << detail::format_double(row.left)
                    << ',' << detail::format_double(row.right) << '\n';
            }
        }
        if (cfg.write_checkpoints) {
            for (std::size_t r = 0; r < result.replicas.size(); ++r) {
                RandomStream s(cfg.base_seed, static_cast<std::uint64_t>(r));
                s.seek(result.replicas[r].final_counter);
                write_checkpoint((dir / ("state_" + std::to_string(r) + ".ckpt")).string(),
                                 result.replicas[r].final_state, s);
            }
        }
        {
            nlohmann::json j;
            j["config"] = cfg.to_kv();
            j["seed_set"] = {{"base_seed", cfg.base_seed},
                             {"stream_ids", {{"first", 0}, {"last", cfg.replicas - 1}}}};
            j["burn_in"] = cfg.burn_in;
            j["snapshot_count"] = result.snapshots_per_replica;
            j["injected"] = result.total_injected;
            j["killed"] = result.total_killed;
            j["mean_jump_rate"] = result.mean_jump_rate;
            nlohmann::json gaps = nlohmann::json::array();
            for (std::size_t w = 0; w < result.window_gaps.size(); ++w) {
                nlohmann::json g;
                g["window"] = {cfg.windows[w].first, cfg.windows[w].second};
                if (result.window_gaps[w]) g["mean_gap"] = *result.window_gaps[w];
                else g["mean_gap"] = nullptr;
                gaps.push_back(g);
            }
            j["window_gaps"] = gaps;
            j["metadata"]["timestamp"] = static_cast<std::int64_t>(std::time(nullptr));
            std::ofstream out(dir / "summary.json");
            out << j.dump(2) << '\n';
        }
    }
    return result;
}

/**
 * Influx-model tagged tracks: runs one replica and records the centers of the
 * first `max_labels` rods injected after burn_in, sampled every sample_dt,
 * each track ending at the rod's death or t_end. Rod j occupies ascending
 * slot alive - j + killed while killed < j <= injected.
 */
inline std::vector<TaggedTrack> track_influx_rods(const DiffusionParams& params, double h,
                                                  StepScheme scheme, std::uint64_t base_seed,
                                                  std::uint64_t stream_id, double burn_in,
                                                  double t_end, double sample_dt,
                                                  std::int64_t max_labels) {
    RandomStream stream(base_seed, stream_id);
    SystemState state = make_influx_state(params);
    const auto total_steps = static_cast<std::int64_t>(std::llround(t_end / h));
    const auto burn_steps = static_cast<std::int64_t>(std::llround(burn_in / h));
    const auto sample_steps = std::max<std::int64_t>(1, std::llround(sample_dt / h));

    std::vector<TaggedTrack> tracks;
    std::int64_t first_label = -1;
    for (std::int64_t step = 1; step <= total_steps; ++step) {
        step_model_c(state, h, stream, scheme);
        if (step < burn_steps) continue;
        if (first_label < 0) first_label = state.injected + 1;
        if (step % sample_steps != 0) continue;
        const std::int64_t last_label =
            std::min(first_label + max_labels - 1, state.injected);
        for (std::int64_t j = first_label; j <= last_label; ++j) {
            if (j <= state.killed || j > state.injected) continue;
            const auto idx = static_cast<std::size_t>(state.alive() - j + state.killed);
            const auto slot = static_cast<std::size_t>(j - first_label);
            if (tracks.size() <= slot) tracks.resize(slot + 1);
            if (tracks[slot].times.empty()) tracks[slot].label = j;
            tracks[slot].times.push_back(state.t);
            tracks[slot].centers.push_back(state.x[idx]);
        }
    }
    return tracks;
}

}  // namespace hardrods
