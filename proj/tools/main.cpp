// Batch front end: validates experiment configs, runs the simulation /
// certification / estimation pipeline, and reproduces the built-in
// Langevin demonstration.

#include "sdecert/config.hpp"
#include "sdecert/runner.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

namespace {

void print_key_results(const sdecert::RunResult& result) {
    const auto& reports = result.summary.at("reports");
    if (reports.contains("certificates")) {
        const auto& certs = reports.at("certificates");
        if (certs.contains("exp")) {
            const auto& e = certs.at("exp");
            std::printf("exp certificate: %s  r=%.6g  rate=%.6g  stable=%s\n",
                        e.at("passed").get<bool>() ? "passed" : "FAILED",
                        e.at("radius").get<double>(), e.at("rate_bound").get<double>(),
                        e.at("stable").get<bool>() ? "true" : "false");
        }
        if (certs.contains("practical")) {
            const auto& p = certs.at("practical");
            std::printf("practical certificate: %s\n",
                        p.at("passed").get<bool>() ? "passed" : "FAILED");
        }
    }
    if (reports.contains("estimates")) {
        for (const auto& [name, rep] : reports.at("estimates").items()) {
            std::printf("%s: p_hat=%.4f  [%.4f, %.4f]  (%ld/%ld trials)\n", name.c_str(),
                        rep.at("p_hat").get<double>(), rep.at("lo").get<double>(),
                        rep.at("hi").get<double>(), rep.at("successes").get<long>(),
                        rep.at("trials").get<long>());
        }
    }
    if (reports.contains("exponent")) {
        const auto& e = reports.at("exponent");
        if (e.contains("p90_slope"))
            std::printf("exponent: median=%.4f  p90=%.4f  entered=%.3f\n",
                        e.at("median_slope").get<double>(),
                        e.at("p90_slope").get<double>(),
                        e.at("entered_fraction").get<double>());
    }
    for (const auto& [name, seconds] : result.phase_seconds)
        std::printf("phase %-12s %8.3f s\n", name.c_str(), seconds);
}

int run_config(sdecert::ExperimentConfig cfg, const std::string& out_dir, int threads,
               bool seed_given, std::uint64_t seed) {
    if (seed_given) cfg.seed = seed;
    const auto result = sdecert::run(cfg, threads, out_dir);
    print_key_results(result);
    for (const auto& f : result.files_written) std::printf("wrote %s\n", f.c_str());
    if (!result.expectations_ok) {
        for (const auto& msg : result.failed_expectations)
            std::fprintf(stderr, "expectation failed: %s\n", msg.c_str());
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"SDE simulation and Lyapunov certificate checking"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    int threads = 1;
    std::uint64_t seed = 0;
    bool seed_given = false;
    double alpha = -1.0, beta = 1.0;

    auto* check = app.add_subcommand("check-config", "validate a config and echo it");
    check->add_option("path", config_path, "config file")->required();

    auto* run_cmd = app.add_subcommand("run", "run all phases of an experiment");
    run_cmd->add_option("path", config_path, "config file")->required();
    run_cmd->add_option("--out-dir", out_dir, "override the output directory");
    run_cmd->add_option("--threads", threads, "worker threads (speed only)")
        ->check(CLI::PositiveNumber);
    run_cmd->add_option("--seed", seed, "override the ensemble master seed")
        ->each([&](const std::string&) { seed_given = true; });

    auto* demo = app.add_subcommand("langevin-demo",
                                    "run the built-in Langevin reproduction");
    demo->add_option("--alpha", alpha, "drift coefficient (< -1/2)");
    demo->add_option("--beta", beta, "noise coefficient");
    demo->add_option("--seed", seed, "ensemble master seed")
        ->each([&](const std::string&) { seed_given = true; });
    demo->add_option("--out-dir", out_dir, "override the output directory");
    demo->add_option("--threads", threads, "worker threads (speed only)")
        ->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) {
            const auto cfg = sdecert::load_config(config_path);
            std::cout << cfg.echo().dump(2) << "\n";
            std::printf("config ok: %s\n", config_path.c_str());
            return 0;
        }
        if (run_cmd->parsed()) {
            return run_config(sdecert::load_config(config_path), out_dir, threads,
                              seed_given, seed);
        }
        // langevin-demo
        if (!(alpha < -0.5)) {
            std::fprintf(stderr, "langevin-demo: alpha must be < -1/2 (got %g)\n", alpha);
            return 2;
        }
        const auto j = sdecert::langevin_demo_config(alpha, beta, seed_given ? seed : 42);
        return run_config(sdecert::parse_config(j), out_dir, threads, false, 0);
    } catch (const sdecert::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
