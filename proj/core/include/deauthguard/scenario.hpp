#pragma once

// Scenario configs, bundled presets, and the end-to-end runner that wires
// stations and attackers into a Medium.

#include "deauthguard/adversary.hpp"
#include "deauthguard/frame.hpp"
#include "deauthguard/medium.hpp"
#include "deauthguard/station.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace deauthguard {

inline constexpr int kScenarioSchemaVersion = 1;

enum class Mode : std::uint8_t { Protected, Legacy };

std::string_view to_string(Mode mode);

class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Role : std::uint8_t { Client, Ap };

struct StationSpec {
    Role role = Role::Client;
    MacAddress mac;

    friend bool operator==(const StationSpec&, const StationSpec&) = default;
};

struct AttackerSpec {
    AttackerConfig config;
    /// True identity on the medium; spoof_src may be anything.
    std::optional<MacAddress> mac;

    friend bool operator==(const AttackerSpec&, const AttackerSpec&) = default;
};

namespace script {

struct Associate {
    MacAddress client;
    MacAddress ap;
    friend bool operator==(const Associate&, const Associate&) = default;
};

/// Verified teardown sent by `initiator`. An AP initiator with no target
/// tears down every live session.
struct Deauth {
    MacAddress initiator;
    ReasonCode reason{ReasonCode::kLeavingDeauth};
    std::optional<MacAddress> target;
    friend bool operator==(const Deauth&, const Deauth&) = default;
};

struct Attack {
    std::size_t index = 0;
    friend bool operator==(const Attack&, const Attack&) = default;
};

}  // namespace script

using ScriptAction = std::variant<script::Associate, script::Deauth, script::Attack>;

struct ScenarioConfig {
    std::string name;
    std::string description;
    Mode mode = Mode::Protected;
    std::uint64_t seed = 0;
    std::vector<StationSpec> stations;
    std::vector<AttackerSpec> attackers;
    std::vector<ScriptAction> script;
    double loss_probability = 0.0;
    std::uint64_t max_ticks = 10000;

    /// Throws ConfigError.
    void validate() const;

    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Throws ConfigError on malformed documents or invalid configs.
ScenarioConfig parse_scenario(std::string_view json_text);
ScenarioConfig load_scenario_file(const std::string& path);
std::string scenario_to_json(const ScenarioConfig& cfg);

const std::vector<ScenarioConfig>& bundled_scenarios();
std::optional<ScenarioConfig> find_bundled_scenario(std::string_view name);

struct ScenarioOutcome {
    std::string name;
    Mode mode = Mode::Protected;
    std::uint64_t seed = 0;

    std::uint64_t frames_sent = 0;
    std::uint64_t frames_delivered = 0;
    std::uint64_t frames_dropped = 0;
    std::uint64_t frames_undecodable = 0;

    /// Cause tag -> count, over every judged AssocRequest / deauth / disassoc.
    std::map<std::string, std::uint64_t> verdicts;
    std::uint64_t frames_judged = 0;

    std::uint64_t attack_frames_sent = 0;
    std::uint64_t attack_success_count = 0;

    std::uint64_t legit_teardowns_sent = 0;
    std::uint64_t legit_teardowns_accepted = 0;
    bool legit_disconnect_success = false;

    /// Client MAC -> lifecycle state at the end of the run.
    std::map<MacAddress, LifecycleState> final_states;
    /// AP MAC -> clients it still holds sessions for.
    std::map<MacAddress, std::vector<MacAddress>> ap_sessions;

    std::uint64_t verdict_total() const;

    friend bool operator==(const ScenarioOutcome&, const ScenarioOutcome&) = default;
};

struct ScenarioRun {
    ScenarioOutcome outcome;
    std::vector<MediumEvent> events;
};

/// Deterministic for a fixed config. Throws ConfigError, TickLimitExceeded.
ScenarioRun run_scenario(const ScenarioConfig& cfg);

std::string outcome_to_json(const ScenarioOutcome& outcome);
std::string outcome_to_table(const ScenarioOutcome& outcome);

/// SplitMix64 finalizer over (base, stream); independent seeds per component.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace deauthguard
