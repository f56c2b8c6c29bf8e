#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "hardrods/experiment.hpp"

using namespace hardrods;

namespace {

ExperimentConfig small_influx() {
    ExperimentConfig cfg;
    cfg.model = Model::InfluxKilled;
    cfg.a = 0.5;
    cfg.sigma2 = 1.0;
    cfg.epsilon = 0.02;
    cfg.h = 0.008;  // epsilon/(a h) = 5
    cfg.t_end = 4.0;
    cfg.burn_in = 2.0;
    cfg.snapshot_interval = 0.4;
    cfg.profile_lo = 0.05;
    cfg.profile_hi = 0.95;
    cfg.bins = 9;
    cfg.windows = {{0.4, 0.6}};
    cfg.replicas = 4;
    cfg.base_seed = 321;
    return cfg;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("run_experiment: reruns and thread counts give identical numbers") {
    auto cfg = small_influx();
    cfg.threads = 1;
    const auto serial = run_experiment(cfg);
    const auto serial_again = run_experiment(cfg);
    cfg.threads = 4;
    const auto threaded = run_experiment(cfg);

    REQUIRE(serial.profile.mass_fraction == serial_again.profile.mass_fraction);
    REQUIRE(serial.profile.mass_fraction == threaded.profile.mass_fraction);
    REQUIRE(serial.total_killed == threaded.total_killed);
    REQUIRE(serial.window_gaps.size() == 1);
    REQUIRE(serial.window_gaps[0].has_value());
    REQUIRE(*serial.window_gaps[0] == *threaded.window_gaps[0]);
    REQUIRE(serial.snapshots_per_replica == 6);  // t = 2.0, 2.4, ..., 4.0
}

TEST_CASE("run_experiment: profile CSV bytes are reproducible") {
    namespace fs = std::filesystem;
    const auto dir_a = fs::temp_directory_path() / "hardrods_exp_a";
    const auto dir_b = fs::temp_directory_path() / "hardrods_exp_b";
    fs::remove_all(dir_a);
    fs::remove_all(dir_b);

    auto cfg = small_influx();
    cfg.threads = 2;
    cfg.write_snapshots = true;
    cfg.out_dir = dir_a.string();
    run_experiment(cfg);
    cfg.threads = 1;
    cfg.out_dir = dir_b.string();
    run_experiment(cfg);

    const auto profile_a = slurp(dir_a / "profile.csv");
    REQUIRE(!profile_a.empty());
    REQUIRE(profile_a == slurp(dir_b / "profile.csv"));
    REQUIRE(slurp(dir_a / "snapshots.csv") == slurp(dir_b / "snapshots.csv"));
    REQUIRE(profile_a.substr(0, 27) == "bin_left,bin_right,density\n");

    fs::remove_all(dir_a);
    fs::remove_all(dir_b);
}

TEST_CASE("run_experiment: checkpoints capture the final replica states") {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "hardrods_exp_ckpt";
    fs::remove_all(dir);
    auto cfg = small_influx();
    cfg.replicas = 2;
    cfg.write_checkpoints = true;
    cfg.out_dir = dir.string();
    const auto result = run_experiment(cfg);

    const auto cp = read_checkpoint((dir / "state_1.ckpt").string());
    REQUIRE(cp.state.t == result.replicas[1].final_state.t);
    REQUIRE(cp.state.z == result.replicas[1].final_state.z);
    REQUIRE(cp.stream_id == 1);
    fs::remove_all(dir);
}

TEST_CASE("run_experiment: infeasible configs are rejected before simulating") {
    auto cfg = small_influx();
    cfg.h = 0.009;  // epsilon/(a h) not an integer
    REQUIRE_THROWS_AS(run_experiment(cfg), std::invalid_argument);
    cfg = small_influx();
    cfg.burn_in = 10.0;  // burn-in past t_end
    REQUIRE_THROWS_AS(run_experiment(cfg), std::invalid_argument);
}

TEST_CASE("tagged tracks: labels, spans and slot arithmetic") {
    const auto params = DiffusionParams::influx(0.5, 1.0, 0.02);
    const auto tracks = track_influx_rods(params, 0.004, StepScheme::BridgeExact, 99, 0,
                                          2.0, 6.0, 0.04, 5);
    REQUIRE(!tracks.empty());
    for (const auto& tr : tracks) {
        REQUIRE(!tr.times.empty());
        for (std::size_t i = 1; i < tr.times.size(); ++i) {
            REQUIRE(tr.times[i] > tr.times[i - 1]);
        }
        for (double c : tr.centers) {
            REQUIRE(c >= -params.epsilon);
            REQUIRE(c <= 1.0);
        }
    }
}
