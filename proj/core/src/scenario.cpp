#include "deauthguard/scenario.hpp"

#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <memory>
#include <set>
#include <sstream>

namespace deauthguard {

using nlohmann::ordered_json;

std::string_view to_string(Mode mode) { return mode == Mode::Protected ? "protected" : "legacy"; }

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::uint64_t ScenarioOutcome::verdict_total() const {
    std::uint64_t total = 0;
    for (const auto& [tag, n] : verdicts) total += n;
    return total;
}

namespace {

MacAddress attacker_identity(const ScenarioConfig& cfg, std::size_t index) {
    if (cfg.attackers[index].mac) return *cfg.attackers[index].mac;
    return MacAddress({0x02, 0x00, 0x00, 0xad, static_cast<std::uint8_t>(index >> 8),
                       static_cast<std::uint8_t>(index & 0xff)});
}

const StationSpec* find_station(const ScenarioConfig& cfg, const MacAddress& mac) {
    for (const auto& s : cfg.stations)
        if (s.mac == mac) return &s;
    return nullptr;
}

}  // namespace

void ScenarioConfig::validate() const {
    if (name.empty()) throw ConfigError("scenario name is empty");
    if (!(loss_probability >= 0.0 && loss_probability <= 1.0))
        throw ConfigError("loss_probability must be within [0, 1]");
    if (max_ticks == 0) throw ConfigError("max_ticks must be positive");

    std::set<MacAddress> macs;
    for (const auto& s : stations) {
        if (s.mac.is_broadcast()) throw ConfigError("station MAC may not be broadcast");
        if (!macs.insert(s.mac).second) throw ConfigError("duplicate station MAC " + s.mac.to_string());
    }
    for (std::size_t i = 0; i < attackers.size(); ++i) {
        if (attackers[i].config.frame_count < 1)
            throw ConfigError("attacker " + std::to_string(i) + ": frame_count must be >= 1");
        auto id = attacker_identity(*this, i);
        if (!macs.insert(id).second) throw ConfigError("attacker MAC collides: " + id.to_string());
    }

    auto require_role = [&](const MacAddress& mac, Role role, std::string_view what) {
        const auto* s = find_station(*this, mac);
        if (!s || s->role != role)
            throw ConfigError(std::string(what) + " " + mac.to_string() + " is not a declared " +
                              (role == Role::Ap ? "ap" : "client"));
    };
    for (const auto& action : script) {
        if (const auto* a = std::get_if<script::Associate>(&action)) {
            require_role(a->client, Role::Client, "associate client");
            require_role(a->ap, Role::Ap, "associate ap");
        } else if (const auto* d = std::get_if<script::Deauth>(&action)) {
            if (!find_station(*this, d->initiator))
                throw ConfigError("deauth initiator " + d->initiator.to_string() + " is not a station");
            if (d->target && !find_station(*this, *d->target))
                throw ConfigError("deauth target " + d->target->to_string() + " is not a station");
        } else if (const auto* k = std::get_if<script::Attack>(&action)) {
            if (k->index >= attackers.size())
                throw ConfigError("attack index " + std::to_string(k->index) + " out of range");
        }
    }
}

// JSON

namespace {

MacAddress mac_field(const ordered_json& j, const char* key) {
    if (!j.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
    auto text = j.at(key).get<std::string>();
    auto mac = MacAddress::parse(text);
    if (!mac) throw ConfigError(std::string("bad MAC in '") + key + "': " + text);
    return *mac;
}

std::uint16_t reason_field(const ordered_json& j) {
    auto v = j.value("reason", std::int64_t{ReasonCode::kLeavingDeauth});
    if (v < 0 || v > 0xffff) throw ConfigError("reason out of 16-bit range");
    return static_cast<std::uint16_t>(v);
}

ScenarioConfig from_json(const ordered_json& j) {
    if (!j.is_object()) throw ConfigError("scenario document must be an object");
    if (j.value("schema", 0) != kScenarioSchemaVersion)
        throw ConfigError("unsupported scenario schema (expected " + std::to_string(kScenarioSchemaVersion) + ")");

    ScenarioConfig cfg;
    cfg.name = j.at("name").get<std::string>();
    cfg.description = j.value("description", std::string{});
    auto mode = j.value("mode", std::string{"protected"});
    if (mode == "protected") {
        cfg.mode = Mode::Protected;
    } else if (mode == "legacy") {
        cfg.mode = Mode::Legacy;
    } else {
        throw ConfigError("unknown mode '" + mode + "'");
    }
    cfg.seed = j.value("seed", std::uint64_t{0});
    cfg.loss_probability = j.value("loss_probability", 0.0);
    cfg.max_ticks = j.value("max_ticks", std::uint64_t{10000});

    for (const auto& s : j.value("stations", ordered_json::array())) {
        StationSpec spec;
        auto role = s.at("role").get<std::string>();
        if (role == "ap") {
            spec.role = Role::Ap;
        } else if (role == "client") {
            spec.role = Role::Client;
        } else {
            throw ConfigError("unknown station role '" + role + "'");
        }
        spec.mac = mac_field(s, "mac");
        cfg.stations.push_back(spec);
    }

    for (const auto& a : j.value("attackers", ordered_json::array())) {
        AttackerSpec spec;
        auto kind_text = a.at("kind").get<std::string>();
        auto kind = attack_kind_from_string(kind_text);
        if (!kind) throw ConfigError("unknown attack kind '" + kind_text + "'");
        spec.config.kind = *kind;
        spec.config.spoof_src = mac_field(a, "spoof_src");
        spec.config.target = mac_field(a, "target");
        auto count = a.value("frame_count", std::int64_t{1});
        if (count < 1 || count > 0xffffffffLL) throw ConfigError("frame_count must be >= 1");
        spec.config.frame_count = static_cast<std::uint32_t>(count);
        spec.config.reason = ReasonCode{reason_field(a)};
        spec.config.seed = a.value("seed", std::uint64_t{0});
        if (a.contains("mac")) spec.mac = mac_field(a, "mac");
        cfg.attackers.push_back(spec);
    }

    for (const auto& step : j.value("script", ordered_json::array())) {
        auto action = step.at("action").get<std::string>();
        if (action == "associate") {
            cfg.script.emplace_back(script::Associate{mac_field(step, "client"), mac_field(step, "ap")});
        } else if (action == "deauth") {
            script::Deauth d;
            d.initiator = mac_field(step, "initiator");
            d.reason = ReasonCode{reason_field(step)};
            if (step.contains("target")) d.target = mac_field(step, "target");
            cfg.script.emplace_back(d);
        } else if (action == "attack") {
            auto index = step.at("index").get<std::int64_t>();
            if (index < 0) throw ConfigError("attack index must be non-negative");
            cfg.script.emplace_back(script::Attack{static_cast<std::size_t>(index)});
        } else {
            throw ConfigError("unknown script action '" + action + "'");
        }
    }

    cfg.validate();
    return cfg;
}

}  // namespace

ScenarioConfig parse_scenario(std::string_view json_text) {
    try {
        return from_json(ordered_json::parse(json_text));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("scenario JSON: ") + e.what());
    }
}

ScenarioConfig load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario file " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_scenario(text.str());
}

std::string scenario_to_json(const ScenarioConfig& cfg) {
    ordered_json j;
    j["schema"] = kScenarioSchemaVersion;
    j["name"] = cfg.name;
    j["description"] = cfg.description;
    j["mode"] = to_string(cfg.mode);
    j["seed"] = cfg.seed;
    j["loss_probability"] = cfg.loss_probability;
    j["max_ticks"] = cfg.max_ticks;

    j["stations"] = ordered_json::array();
    for (const auto& s : cfg.stations)
        j["stations"].push_back({{"role", s.role == Role::Ap ? "ap" : "client"}, {"mac", s.mac.to_string()}});

    j["attackers"] = ordered_json::array();
    for (const auto& a : cfg.attackers) {
        ordered_json aj{{"kind", to_string(a.config.kind)},
                        {"spoof_src", a.config.spoof_src.to_string()},
                        {"target", a.config.target.to_string()},
                        {"frame_count", a.config.frame_count},
                        {"reason", a.config.reason.value},
                        {"seed", a.config.seed}};
        if (a.mac) aj["mac"] = a.mac->to_string();
        j["attackers"].push_back(aj);
    }

    j["script"] = ordered_json::array();
    for (const auto& action : cfg.script) {
        if (const auto* a = std::get_if<script::Associate>(&action)) {
            j["script"].push_back(
                {{"action", "associate"}, {"client", a->client.to_string()}, {"ap", a->ap.to_string()}});
        } else if (const auto* d = std::get_if<script::Deauth>(&action)) {
            ordered_json dj{{"action", "deauth"}, {"initiator", d->initiator.to_string()}, {"reason", d->reason.value}};
            if (d->target) dj["target"] = d->target->to_string();
            j["script"].push_back(dj);
        } else if (const auto* k = std::get_if<script::Attack>(&action)) {
            j["script"].push_back({{"action", "attack"}, {"index", k->index}});
        }
    }
    return j.dump(2) + "\n";
}

// Runner

namespace {

struct Tally {
    ScenarioOutcome& outcome;
    const std::set<std::string>& attacker_ids;
    const std::set<std::string>& station_ids;

    void judged(const Verdict& v, const std::string& from) {
        ++outcome.verdicts[std::string(to_string(v.cause))];
        ++outcome.frames_judged;
        if (v.action != Action::Accept) return;
        if (attacker_ids.contains(from)) ++outcome.attack_success_count;
    }
    void teardown_judged(const Verdict& v, const std::string& from) {
        judged(v, from);
        if (v.action == Action::Accept && station_ids.contains(from)) ++outcome.legit_teardowns_accepted;
    }
};

class ClientNode : public Endpoint {
public:
    ClientNode(MacAddress mac, Mode mode, std::uint64_t seed, Tally& tally)
        : client_(mac), mode_(mode), rng_(seed), tally_(tally) {}

    Client& client() { return client_; }
    void want_association(MacAddress ap) { assoc_target_ = ap; }

    void on_frame(Medium& medium, const Delivery& d) override {
        auto decoded = decode_frame(d.bytes);
        auto* frame = std::get_if<ManagementFrame>(&decoded);
        if (!frame) {
            ++tally_.outcome.frames_undecodable;
            return;
        }
        switch (frame->subtype) {
            case Subtype::AuthResponse:
                if (client_.handle_auth_response(*frame) && assoc_target_ == frame->src) {
                    medium.send(d.self, encode_frame(client_.begin_association(frame->src, rng_)));
                    assoc_target_.reset();
                }
                break;
            case Subtype::AssocResponse:
                try {
                    client_.handle_assoc_response(*frame);
                } catch (const NoPendingSession&) {
                    // stray or replayed response
                }
                break;
            case Subtype::Deauthentication:
            case Subtype::Disassociation: {
                auto v = mode_ == Mode::Protected ? client_.verify_deauth(*frame)
                                                  : client_.legacy_verify_deauth(*frame);
                tally_.teardown_judged(v, d.from);
                break;
            }
            default:
                break;
        }
    }

private:
    Client client_;
    Mode mode_;
    TokenRng rng_;
    Tally& tally_;
    std::optional<MacAddress> assoc_target_;
};

class ApNode : public Endpoint {
public:
    ApNode(MacAddress mac, Mode mode, std::uint64_t seed, Tally& tally)
        : ap_(mac), mode_(mode), rng_(seed), tally_(tally) {}

    AccessPoint& ap() { return ap_; }

    void on_frame(Medium& medium, const Delivery& d) override {
        auto decoded = decode_frame(d.bytes);
        auto* frame = std::get_if<ManagementFrame>(&decoded);
        if (!frame) {
            ++tally_.outcome.frames_undecodable;
            return;
        }
        switch (frame->subtype) {
            case Subtype::AuthRequest:
                medium.send(d.self, encode_frame(ap_.handle_auth_request(*frame)));
                break;
            case Subtype::AssocRequest: {
                auto result = ap_.handle_assoc_request(*frame, rng_);
                tally_.judged(result.verdict, d.from);
                medium.send(d.self, encode_frame(result.response));
                break;
            }
            case Subtype::Deauthentication:
            case Subtype::Disassociation: {
                auto v = mode_ == Mode::Protected ? ap_.verify_deauth(*frame) : ap_.legacy_verify_deauth(*frame);
                tally_.teardown_judged(v, d.from);
                break;
            }
            default:
                break;
        }
    }

private:
    AccessPoint ap_;
    Mode mode_;
    TokenRng rng_;
    Tally& tally_;
};

}  // namespace

ScenarioRun run_scenario(const ScenarioConfig& cfg) {
    cfg.validate();

    ScenarioRun run;
    ScenarioOutcome& out = run.outcome;
    out.name = cfg.name;
    out.mode = cfg.mode;
    out.seed = cfg.seed;

    std::set<std::string> attacker_ids;
    std::set<std::string> station_ids;
    std::vector<std::string> tap_ids;
    for (std::size_t i = 0; i < cfg.attackers.size(); ++i) {
        attacker_ids.insert("attacker" + std::to_string(i));
        tap_ids.push_back("attacker" + std::to_string(i));
    }

    Tally tally{out, attacker_ids, station_ids};

    MediumConfig mcfg;
    mcfg.loss_probability = cfg.loss_probability;
    mcfg.seed = derive_seed(cfg.seed, 0);
    mcfg.promiscuous_taps = tap_ids;
    mcfg.max_ticks = cfg.max_ticks;
    Medium medium(mcfg);

    struct ClientEntry {
        std::unique_ptr<ClientNode> node;
        EndpointHandle handle;
    };
    struct ApEntry {
        std::unique_ptr<ApNode> node;
        EndpointHandle handle;
    };
    std::map<MacAddress, ClientEntry> clients;
    std::map<MacAddress, ApEntry> aps;

    std::size_t n_clients = 0;
    std::size_t n_aps = 0;
    for (std::size_t i = 0; i < cfg.stations.size(); ++i) {
        const auto& s = cfg.stations[i];
        const std::uint64_t seed = derive_seed(cfg.seed, 100 + i);
        if (s.role == Role::Client) {
            auto id = "client" + std::to_string(n_clients++);
            station_ids.insert(id);
            auto node = std::make_unique<ClientNode>(s.mac, cfg.mode, seed, tally);
            auto handle = medium.attach(id, s.mac, *node);
            clients.emplace(s.mac, ClientEntry{std::move(node), handle});
        } else {
            auto id = "ap" + std::to_string(n_aps++);
            station_ids.insert(id);
            auto node = std::make_unique<ApNode>(s.mac, cfg.mode, seed, tally);
            auto handle = medium.attach(id, s.mac, *node);
            aps.emplace(s.mac, ApEntry{std::move(node), handle});
        }
    }

    std::vector<std::unique_ptr<Attacker>> attackers;
    std::vector<EndpointHandle> attacker_handles;
    for (std::size_t i = 0; i < cfg.attackers.size(); ++i) {
        AttackerConfig acfg = cfg.attackers[i].config;
        acfg.seed = derive_seed(cfg.seed, 200 + i) ^ acfg.seed;
        attackers.push_back(std::make_unique<Attacker>(acfg));
        attacker_handles.push_back(
            medium.attach("attacker" + std::to_string(i), attacker_identity(cfg, i), *attackers.back(), true));
    }

    auto send_teardowns = [&](EndpointHandle handle, const std::vector<ManagementFrame>& frames, auto&& local) {
        for (const auto& f : frames) {
            medium.send(handle, encode_frame(f));
            ++out.legit_teardowns_sent;
            local(f);
        }
    };

    for (const auto& action : cfg.script) {
        if (const auto* a = std::get_if<script::Associate>(&action)) {
            auto& entry = clients.at(a->client);
            entry.node->want_association(a->ap);
            medium.send(entry.handle, encode_frame(entry.node->client().authentication_request(a->ap)));
        } else if (const auto* d = std::get_if<script::Deauth>(&action)) {
            if (auto c = clients.find(d->initiator); c != clients.end()) {
                Client& client = c->second.node->client();
                // A client already torn down has nothing to reveal; counted as a failed teardown.
                if (client.session() && (!d->target || client.session()->peer == *d->target)) {
                    send_teardowns(c->second.handle, {client.make_verified_deauth(d->reason)},
                                   [&](const ManagementFrame& f) { client.complete_local_teardown(f); });
                } else {
                    ++out.legit_teardowns_sent;
                }
            } else {
                auto& entry = aps.at(d->initiator);
                AccessPoint& ap = entry.node->ap();
                std::vector<ManagementFrame> frames;
                if (d->target) {
                    if (ap.store().sessions.contains(*d->target)) {
                        frames.push_back(ap.make_verified_deauth(*d->target, d->reason));
                    } else {
                        ++out.legit_teardowns_sent;
                    }
                } else {
                    frames = ap.make_verified_deauth_all(d->reason);
                }
                send_teardowns(entry.handle, frames,
                               [&](const ManagementFrame& f) { ap.complete_local_teardown(f); });
            }
        } else if (const auto* k = std::get_if<script::Attack>(&action)) {
            try {
                out.attack_frames_sent += attackers[k->index]->launch(medium, attacker_handles[k->index]);
            } catch (const AttackError& e) {
                throw ConfigError("attack " + std::to_string(k->index) + ": " + e.what());
            }
        }
        medium.run_until_idle();
    }

    run.events = medium.log();
    for (const auto& e : run.events) {
        switch (e.kind) {
            case EventKind::Delivered: ++out.frames_delivered; break;
            case EventKind::Dropped: ++out.frames_dropped; break;
            default: break;
        }
    }
    out.frames_sent = out.frames_delivered + out.frames_dropped;
    out.legit_disconnect_success =
        out.legit_teardowns_sent > 0 && out.legit_teardowns_accepted == out.legit_teardowns_sent;

    for (auto& [mac, entry] : clients) out.final_states[mac] = entry.node->client().state();
    for (auto& [mac, entry] : aps) {
        auto& list = out.ap_sessions[mac];
        for (const auto& [peer, record] : entry.node->ap().store().sessions) list.push_back(peer);
    }
    return run;
}

std::string outcome_to_json(const ScenarioOutcome& o) {
    ordered_json j;
    j["name"] = o.name;
    j["mode"] = to_string(o.mode);
    j["seed"] = o.seed;
    j["frames_sent"] = o.frames_sent;
    j["frames_delivered"] = o.frames_delivered;
    j["frames_dropped"] = o.frames_dropped;
    j["frames_undecodable"] = o.frames_undecodable;
    j["frames_judged"] = o.frames_judged;
    j["verdicts"] = ordered_json::object();
    for (const auto& [tag, n] : o.verdicts) j["verdicts"][tag] = n;
    j["attack_frames_sent"] = o.attack_frames_sent;
    j["attack_success_count"] = o.attack_success_count;
    j["legit_teardowns_sent"] = o.legit_teardowns_sent;
    j["legit_teardowns_accepted"] = o.legit_teardowns_accepted;
    j["legit_disconnect_success"] = o.legit_disconnect_success;
    j["final_states"] = ordered_json::object();
    for (const auto& [mac, st] : o.final_states) j["final_states"][mac.to_string()] = to_string(st);
    j["ap_sessions"] = ordered_json::object();
    for (const auto& [ap, peers] : o.ap_sessions) {
        auto arr = ordered_json::array();
        for (const auto& p : peers) arr.push_back(p.to_string());
        j["ap_sessions"][ap.to_string()] = arr;
    }
    return j.dump(2);
}

std::string outcome_to_table(const ScenarioOutcome& o) {
    std::ostringstream s;
    auto row = [&](std::string_view key, const auto& value) {
        s << "  " << std::left << std::setw(26) << key << value << '\n';
    };
    s << "scenario " << o.name << " (" << to_string(o.mode) << ", seed " << o.seed << ")\n";
    row("frames sent", o.frames_sent);
    row("frames delivered", o.frames_delivered);
    row("frames dropped", o.frames_dropped);
    row("frames undecodable", o.frames_undecodable);
    row("frames judged", o.frames_judged);
    row("attack frames sent", o.attack_frames_sent);
    row("attack successes", o.attack_success_count);
    row("legit teardowns", std::to_string(o.legit_teardowns_accepted) + "/" + std::to_string(o.legit_teardowns_sent));
    row("legit disconnect success", o.legit_disconnect_success ? "yes" : "no");
    s << "verdicts\n";
    for (const auto& [tag, n] : o.verdicts) row(tag, n);
    s << "final states\n";
    for (const auto& [mac, st] : o.final_states) row(mac.to_string(), to_string(st));
    s << "ap sessions\n";
    for (const auto& [ap, peers] : o.ap_sessions) row(ap.to_string(), peers.size());
    return s.str();
}

}  // namespace deauthguard
