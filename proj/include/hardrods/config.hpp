#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hardrods/model_c.hpp"
#include "hardrods/model_r.hpp"
#include "hardrods/params.hpp"
#include "hardrods/sde.hpp"

namespace hardrods {

/**
 * One experiment: which model, physical parameters, discretization, the
 * observation schedule and the replica/seed layout. Serializes to a flat
 * key=value file; unknown keys are rejected.
 */
struct ExperimentConfig {
    Model model = Model::InfluxKilled;
    double a = 0.5;           // drift (influx); barrier speed when model=barrier
    double sigma2 = 1.0;
    double epsilon = 0.01;    // rod width (influx); derived as b/n otherwise
    std::int64_t n = 0;       // rod count (barrier, jump)
    double b = 0.0;           // mass budget (barrier, jump)
    StepScheme scheme = StepScheme::BridgeExact;
    ReinsertRule reinsert = ReinsertRule::Immediate;
    bool direct_engine = false;  // barrier model: projection integrator instead
    double h = 1e-3;
    double t_end = 1.0;
    double burn_in = 0.0;
    double snapshot_interval = 0.5;
    double profile_lo = 0.0;
    double profile_hi = 1.0;
    int bins = 10;
    std::vector<std::pair<double, double>> windows;  // extra gap/density windows
    std::int64_t replicas = 1;
    std::uint64_t base_seed = 20100604;
    int threads = 0;  // 0 = hardware concurrency
    std::string out_dir;
    bool write_snapshots = false;
    bool write_checkpoints = false;

    DiffusionParams params() const {
        switch (model) {
            case Model::BarrierPushed: return DiffusionParams::barrier(a, sigma2, n, b);
            case Model::InfluxKilled: return DiffusionParams::influx(a, sigma2, epsilon);
            case Model::JumpReset: return DiffusionParams::jump_reset(sigma2, n, b);
        }
        throw std::logic_error("unreachable");
    }

    void validate() const {
        params();  // parameter-level checks
        if (!(h > 0.0)) throw std::invalid_argument("config: h must be > 0");
        if (replicas < 1) throw std::invalid_argument("config: replicas >= 1 required");
        if (!(t_end >= 0.0)) throw std::invalid_argument("config: t_end must be >= 0");
        if (burn_in > t_end) throw std::invalid_argument("config: burn_in must be <= t_end");
        if (!(snapshot_interval > 0.0)) {
            throw std::invalid_argument("config: snapshot_interval must be > 0");
        }
        if (!(profile_lo < profile_hi) || bins < 1) {
            throw std::invalid_argument("config: bad profile range");
        }
        if (model == Model::InfluxKilled) {
            influx_steps_per_injection(params(), h);  // divisibility diagnostic
        }
        for (const auto& [lo, hi] : windows) {
            if (!(lo < hi)) throw std::invalid_argument("config: window lo must be < hi");
        }
    }

    std::map<std::string, std::string> to_kv() const {
        auto fmt = [](double v) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.17g", v);
            return std::string(buf);
        };
        std::map<std::string, std::string> kv;
        kv["model"] = to_string(model);
        kv["a"] = fmt(a);
        kv["sigma2"] = fmt(sigma2);
        kv["epsilon"] = fmt(epsilon);
        kv["n"] = std::to_string(n);
        kv["b"] = fmt(b);
        kv["scheme"] = to_string(scheme);
        kv["reinsert"] = to_string(reinsert);
        kv["direct_engine"] = direct_engine ? "1" : "0";
        kv["h"] = fmt(h);
        kv["t_end"] = fmt(t_end);
        kv["burn_in"] = fmt(burn_in);
        kv["snapshot_interval"] = fmt(snapshot_interval);
        kv["profile_lo"] = fmt(profile_lo);
        kv["profile_hi"] = fmt(profile_hi);
        kv["bins"] = std::to_string(bins);
        std::string w;
        for (const auto& [lo, hi] : windows) {
            if (!w.empty()) w += ";";
            w += fmt(lo) + ":" + fmt(hi);
        }
        kv["windows"] = w;
        kv["replicas"] = std::to_string(replicas);
        kv["base_seed"] = std::to_string(base_seed);
        kv["threads"] = std::to_string(threads);
        kv["out_dir"] = out_dir;
        kv["write_snapshots"] = write_snapshots ? "1" : "0";
        kv["write_checkpoints"] = write_checkpoints ? "1" : "0";
        return kv;
    }

    void apply(const std::string& key, const std::string& value) {
        try {
            if (key == "model") model = model_from_string(value);
            else if (key == "a") a = std::stod(value);
            else if (key == "sigma2") sigma2 = std::stod(value);
            else if (key == "epsilon") epsilon = std::stod(value);
            else if (key == "n") n = std::stoll(value);
            else if (key == "b") b = std::stod(value);
            else if (key == "scheme") scheme = scheme_from_string(value);
            else if (key == "reinsert") reinsert = reinsert_rule_from_string(value);
            else if (key == "direct_engine") direct_engine = value == "1" || value == "true";
            else if (key == "h") h = std::stod(value);
            else if (key == "t_end") t_end = std::stod(value);
            else if (key == "burn_in") burn_in = std::stod(value);
            else if (key == "snapshot_interval") snapshot_interval = std::stod(value);
            else if (key == "profile_lo") profile_lo = std::stod(value);
            else if (key == "profile_hi") profile_hi = std::stod(value);
            else if (key == "bins") bins = std::stoi(value);
            else if (key == "windows") {
                windows.clear();
                std::stringstream ss(value);
                std::string item;
                while (std::getline(ss, item, ';')) {
                    if (item.empty()) continue;
                    const auto colon = item.find(':');
                    if (colon == std::string::npos) {
                        throw std::invalid_argument("window needs lo:hi");
                    }
                    windows.emplace_back(std::stod(item.substr(0, colon)),
                                         std::stod(item.substr(colon + 1)));
                }
            }
            else if (key == "replicas") replicas = std::stoll(value);
            else if (key == "base_seed") base_seed = std::stoull(value);
            else if (key == "threads") threads = std::stoi(value);
            else if (key == "out_dir") out_dir = value;
            else if (key == "write_snapshots") write_snapshots = value == "1" || value == "true";
            else if (key == "write_checkpoints") write_checkpoints = value == "1" || value == "true";
            else throw std::invalid_argument("unknown config key '" + key + "'");
        } catch (const std::invalid_argument&) {
            throw;
        } catch (const std::exception&) {
            throw std::invalid_argument("config: bad value '" + value + "' for key '" + key + "'");
        }
    }

    static ExperimentConfig from_kv(const std::map<std::string, std::string>& kv) {
        ExperimentConfig cfg;
        for (const auto& [k, v] : kv) cfg.apply(k, v);
        return cfg;
    }

    std::string serialize() const {
        std::string out;
        for (const auto& [k, v] : to_kv()) out += k + " = " + v + "\n";
        return out;
    }

    static ExperimentConfig parse(const std::string& text) {
        ExperimentConfig cfg;
        std::stringstream ss(text);
        std::string line;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        while (std::getline(ss, line)) {
            const std::string t = trim(line);
            if (t.empty() || t[0] == '#') continue;
            const auto eq = t.find('=');
            if (eq == std::string::npos) {
                throw std::invalid_argument("config: expected 'key = value', got '" + t + "'");
            }
            cfg.apply(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
        }
        return cfg;
    }

    static ExperimentConfig load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("config: cannot open " + path);
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        return parse(text);
    }

    bool operator==(const ExperimentConfig&) const = default;
};

}  // namespace hardrods
