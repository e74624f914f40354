// deauthguard: run attack scenarios on the simulated medium and time the
// token primitives.
//
//   deauthguard run <scenario-file|preset> [--seed N] [--format human|json] [--log events.jsonl]
//   deauthguard bench [--iterations N] [--format human|json]
//   deauthguard list-scenarios [--export DIR]

#include "deauthguard/bench.hpp"
#include "deauthguard/scenario.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitTickLimit = 3;

deauthguard::ScenarioConfig resolve_scenario(const std::string& arg) {
    if (std::filesystem::exists(arg)) return deauthguard::load_scenario_file(arg);
    if (auto preset = deauthguard::find_bundled_scenario(arg)) return *preset;
    throw deauthguard::ConfigError("no scenario file or bundled preset named '" + arg + "'");
}

int cmd_run(const std::string& scenario, std::optional<std::uint64_t> seed, const std::string& format,
            const std::string& log_path) {
    try {
        auto cfg = resolve_scenario(scenario);
        if (seed) cfg.seed = *seed;
        auto run = deauthguard::run_scenario(cfg);
        if (!log_path.empty()) {
            std::ofstream log(log_path, std::ios::binary);
            if (!log) throw deauthguard::ConfigError("cannot write event log " + log_path);
            log << deauthguard::to_jsonl(run.events);
        }
        if (format == "json") {
            std::cout << deauthguard::outcome_to_json(run.outcome) << '\n';
        } else {
            std::cout << deauthguard::outcome_to_table(run.outcome);
        }
        return kExitOk;
    } catch (const deauthguard::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const deauthguard::TickLimitExceeded& e) {
        std::cerr << "tick limit exceeded: " << e.what() << '\n';
        return kExitTickLimit;
    }
}

int cmd_bench(std::size_t iterations, const std::string& format) {
    auto report = deauthguard::run_bench(iterations);
    if (format == "json") {
        std::cout << deauthguard::bench_to_json(report) << '\n';
    } else {
        std::cout << deauthguard::bench_to_table(report);
    }
    return kExitOk;
}

int cmd_list(const std::string& export_dir) {
    for (const auto& s : deauthguard::bundled_scenarios()) {
        std::cout << s.name << "  [" << deauthguard::to_string(s.mode) << "]  " << s.description << '\n';
        if (export_dir.empty()) continue;
        auto path = std::filesystem::path(export_dir) / (s.name + ".json");
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            std::cerr << "config error: cannot write " << path.string() << '\n';
            return kExitConfig;
        }
        out << deauthguard::scenario_to_json(s);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Token-authenticated deauthentication: scenario runner and microbenchmark"};
    app.require_subcommand(1);

    std::string scenario;
    std::optional<std::uint64_t> seed;
    std::string run_format = "human";
    std::string log_path;
    auto* run = app.add_subcommand("run", "Run a scenario file or bundled preset");
    run->add_option("scenario", scenario, "Scenario JSON file or preset name")->required();
    run->add_option("--seed", seed, "Override the scenario seed");
    run->add_option("--format", run_format, "Output format")->check(CLI::IsMember({"human", "json"}));
    run->add_option("--log", log_path, "Write the event log as JSON Lines");

    std::size_t iterations = 10000;
    std::string bench_format = "human";
    auto* bench = app.add_subcommand("bench", "Time token generation and SHA-512 hashing");
    bench->add_option("--iterations", iterations, "Iterations (>= 100)")
        ->check(CLI::Range(deauthguard::kMinBenchIterations, std::size_t{1} << 32));
    bench->add_option("--format", bench_format, "Output format")->check(CLI::IsMember({"human", "json"}));

    std::string export_dir;
    auto* list = app.add_subcommand("list-scenarios", "List bundled presets");
    list->add_option("--export", export_dir, "Also write each preset as <DIR>/<name>.json")
        ->check(CLI::ExistingDirectory);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    if (*run) return cmd_run(scenario, seed, run_format, log_path);
    if (*bench) return cmd_bench(iterations, bench_format);
    if (*list) return cmd_list(export_dir);
    return kExitConfig;
}
