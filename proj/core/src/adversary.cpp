#include "deauthguard/adversary.hpp"

#include <algorithm>

namespace deauthguard {

std::string_view to_string(AttackKind kind) {
    switch (kind) {
        case AttackKind::ForgedDeauth: return "forged_deauth";
        case AttackKind::TokenGuess: return "token_guess";
        case AttackKind::AssocReplay: return "assoc_replay";
        case AttackKind::DeauthReplay: return "deauth_replay";
    }
    return "unknown";
}

std::optional<AttackKind> attack_kind_from_string(std::string_view text) {
    for (auto k : {AttackKind::ForgedDeauth, AttackKind::TokenGuess, AttackKind::AssocReplay,
                   AttackKind::DeauthReplay}) {
        if (to_string(k) == text) return k;
    }
    return std::nullopt;
}

void AttackerConfig::validate() const {
    if (frame_count < 1) throw std::invalid_argument("attacker frame_count must be >= 1");
}

namespace {

ManagementFrame bare_deauth(const AttackerConfig& cfg) {
    ManagementFrame frame;
    frame.subtype = Subtype::Deauthentication;
    frame.src = cfg.spoof_src;
    frame.dst = cfg.target;
    frame.status_or_reason = cfg.reason.value;
    return frame;
}

template <typename Pred>
std::optional<Bytes> latest_capture(std::span<const MediumEvent> log, const MacAddress& preferred_src, Pred pred) {
    std::optional<Bytes> any;
    for (auto it = log.rbegin(); it != log.rend(); ++it) {
        auto decoded = decode_frame(it->frame_bytes);
        const auto* frame = std::get_if<ManagementFrame>(&decoded);
        if (!frame || !pred(*frame)) continue;
        if (frame->src == preferred_src) return it->frame_bytes;
        if (!any) any = it->frame_bytes;
    }
    return any;
}

}  // namespace

std::vector<Bytes> forged_deauth_frames(const AttackerConfig& cfg) {
    cfg.validate();
    const Bytes encoded = encode_frame(bare_deauth(cfg));
    return std::vector<Bytes>(cfg.frame_count, encoded);
}

std::vector<Bytes> token_guess_frames(const AttackerConfig& cfg, TokenRng& rng) {
    cfg.validate();
    std::vector<Bytes> out;
    out.reserve(cfg.frame_count);
    ManagementFrame frame = bare_deauth(cfg);
    for (std::uint32_t i = 0; i < cfg.frame_count; ++i) {
        TokenBytes guess{};
        for (int word = 0; word < 2; ++word) {
            std::uint64_t v = rng();
            for (int b = 0; b < 8; ++b) guess[word * 8 + b] = static_cast<std::uint8_t>(v >> (8 * b));
        }
        frame.ie = InformationElement::token(guess);
        out.push_back(encode_frame(frame));
    }
    return out;
}

std::vector<Bytes> assoc_replay_frames(std::span<const MediumEvent> sniffed_log, const AttackerConfig& cfg) {
    cfg.validate();
    auto captured = latest_capture(sniffed_log, cfg.spoof_src,
                                   [](const ManagementFrame& f) { return f.subtype == Subtype::AssocRequest; });
    if (!captured) throw NoCapturedAssoc("capture log holds no AssocRequest");
    return std::vector<Bytes>(cfg.frame_count, *captured);
}

std::vector<Bytes> deauth_replay_frames(std::span<const MediumEvent> sniffed_log, const AttackerConfig& cfg) {
    cfg.validate();
    auto captured = latest_capture(sniffed_log, cfg.spoof_src, [](const ManagementFrame& f) {
        return f.is_teardown() && f.ie && f.ie->kind() == PayloadKind::Token;
    });
    if (!captured) throw NoCapturedDeauth("capture log holds no token-bearing deauth/disassoc");
    return std::vector<Bytes>(cfg.frame_count, *captured);
}

Attacker::Attacker(AttackerConfig cfg) : cfg_(cfg), rng_(cfg.seed) { cfg_.validate(); }

std::size_t Attacker::launch(Medium& medium, EndpointHandle self) {
    std::vector<Bytes> frames;
    switch (cfg_.kind) {
        case AttackKind::ForgedDeauth: frames = forged_deauth_frames(cfg_); break;
        case AttackKind::TokenGuess: frames = token_guess_frames(cfg_, rng_); break;
        case AttackKind::AssocReplay: frames = assoc_replay_frames(captured_, cfg_); break;
        case AttackKind::DeauthReplay: frames = deauth_replay_frames(captured_, cfg_); break;
    }
    for (auto& f : frames) medium.send(self, std::move(f));
    return frames.size();
}

}  // namespace deauthguard
