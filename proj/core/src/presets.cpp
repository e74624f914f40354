#include "deauthguard/scenario.hpp"

#include <algorithm>

namespace deauthguard {

namespace {

constexpr MacAddress kAp({0x02, 0x00, 0x00, 0x00, 0x00, 0x01});
constexpr MacAddress kClientA({0x02, 0x00, 0x00, 0x00, 0x00, 0x10});
constexpr MacAddress kClientB({0x02, 0x00, 0x00, 0x00, 0x00, 0x11});

ScenarioConfig base(std::string name, std::string description, Mode mode) {
    ScenarioConfig cfg;
    cfg.name = std::move(name);
    cfg.description = std::move(description);
    cfg.mode = mode;
    cfg.seed = 1;
    cfg.stations = {{Role::Ap, kAp}, {Role::Client, kClientA}};
    return cfg;
}

AttackerSpec attacker(AttackKind kind, MacAddress spoof, MacAddress target, std::uint32_t count,
                      std::uint16_t reason = ReasonCode::kLeavingDeauth) {
    AttackerSpec a;
    a.config.kind = kind;
    a.config.spoof_src = spoof;
    a.config.target = target;
    a.config.frame_count = count;
    a.config.reason = ReasonCode{reason};
    return a;
}

ScenarioConfig forged_deauth(Mode mode) {
    auto cfg = base(std::string(to_string(mode)) + "_forged_deauth",
                    "one token-less deauth spoofing the AP, aimed at an associated client", mode);
    cfg.attackers = {attacker(AttackKind::ForgedDeauth, kAp, kClientA, 1)};
    cfg.script = {script::Associate{kClientA, kAp}, script::Attack{0}};
    return cfg;
}

std::vector<ScenarioConfig> build() {
    std::vector<ScenarioConfig> all;
    all.push_back(forged_deauth(Mode::Legacy));
    all.push_back(forged_deauth(Mode::Protected));

    {
        auto cfg = base("protected_legit_teardown", "client leaves with a verified deauth (reason 3)",
                        Mode::Protected);
        cfg.script = {script::Associate{kClientA, kAp}, script::Deauth{kClientA, ReasonCode{3}, std::nullopt}};
        all.push_back(cfg);
    }
    {
        auto cfg = base("protected_token_guess", "1000 random-token deauths spoofing the AP", Mode::Protected);
        cfg.attackers = {attacker(AttackKind::TokenGuess, kAp, kClientA, 1000)};
        cfg.script = {script::Associate{kClientA, kAp}, script::Attack{0}};
        all.push_back(cfg);
    }
    {
        auto cfg = base("protected_assoc_replay",
                        "captured AssocRequest replayed during and after the original session", Mode::Protected);
        cfg.attackers = {attacker(AttackKind::AssocReplay, kClientA, kAp, 1)};
        cfg.script = {script::Associate{kClientA, kAp}, script::Attack{0},
                      script::Deauth{kClientA, ReasonCode{3}, std::nullopt}, script::Attack{0}};
        all.push_back(cfg);
    }
    {
        auto cfg = base("protected_deauth_replay", "captured verified deauth replayed after the teardown",
                        Mode::Protected);
        cfg.attackers = {attacker(AttackKind::DeauthReplay, kClientA, kAp, 1)};
        cfg.script = {script::Associate{kClientA, kAp}, script::Deauth{kClientA, ReasonCode{3}, std::nullopt},
                      script::Attack{0}};
        all.push_back(cfg);
    }
    {
        auto cfg = base("protected_ap_shutdown", "AP releases every client with reason 5", Mode::Protected);
        cfg.stations.push_back({Role::Client, kClientB});
        cfg.script = {script::Associate{kClientA, kAp}, script::Associate{kClientB, kAp},
                      script::Deauth{kAp, ReasonCode{5}, std::nullopt}};
        all.push_back(cfg);
    }
    {
        auto cfg = base("legacy_spoofed_disassoc_to_ap", "token-less deauth spoofing the client, aimed at the AP",
                        Mode::Legacy);
        cfg.attackers = {attacker(AttackKind::ForgedDeauth, kClientA, kAp, 1, ReasonCode::kLeavingDisassoc)};
        cfg.script = {script::Associate{kClientA, kAp}, script::Attack{0}};
        all.push_back(cfg);
    }
    {
        auto cfg = base("protected_lossy_mixed", "two clients, 20% loss, forged and guessed deauths",
                        Mode::Protected);
        cfg.stations.push_back({Role::Client, kClientB});
        cfg.loss_probability = 0.2;
        cfg.attackers = {attacker(AttackKind::ForgedDeauth, kAp, kClientA, 50),
                         attacker(AttackKind::TokenGuess, kClientB, kAp, 50, ReasonCode::kInactivity)};
        cfg.script = {script::Associate{kClientA, kAp}, script::Associate{kClientB, kAp}, script::Attack{0},
                      script::Attack{1}, script::Deauth{kClientB, ReasonCode{8}, std::nullopt}};
        all.push_back(cfg);
    }
    return all;
}

}  // namespace

const std::vector<ScenarioConfig>& bundled_scenarios() {
    static const std::vector<ScenarioConfig> presets = build();
    return presets;
}

std::optional<ScenarioConfig> find_bundled_scenario(std::string_view name) {
    const auto& all = bundled_scenarios();
    auto it = std::find_if(all.begin(), all.end(), [&](const ScenarioConfig& c) { return c.name == name; });
    if (it == all.end()) return std::nullopt;
    return *it;
}

}  // namespace deauthguard
