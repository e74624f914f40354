#pragma once

// Scripted attackers. All output is raw frame bytes meant for Medium::send;
// attackers never touch station internals.

#include "deauthguard/frame.hpp"
#include "deauthguard/medium.hpp"
#include "deauthguard/token.hpp"

#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace deauthguard {

enum class AttackKind : std::uint8_t { ForgedDeauth, TokenGuess, AssocReplay, DeauthReplay };

std::string_view to_string(AttackKind kind);
std::optional<AttackKind> attack_kind_from_string(std::string_view text);

struct AttackerConfig {
    AttackKind kind = AttackKind::ForgedDeauth;
    MacAddress spoof_src;
    MacAddress target;
    std::uint32_t frame_count = 1;
    ReasonCode reason{ReasonCode::kLeavingDeauth};
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument when frame_count is zero.
    void validate() const;

    friend bool operator==(const AttackerConfig&, const AttackerConfig&) = default;
};

class AttackError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};
class NoCapturedAssoc : public AttackError {
    using AttackError::AttackError;
};
class NoCapturedDeauth : public AttackError {
    using AttackError::AttackError;
};

/// aireplay-style: token-less deauths from a spoofed source.
std::vector<Bytes> forged_deauth_frames(const AttackerConfig& cfg);

/// Deauths each carrying 16 uniformly random bytes as the token.
std::vector<Bytes> token_guess_frames(const AttackerConfig& cfg, TokenRng& rng);

/// Replays the latest captured AssocRequest verbatim (preferring one sent
/// from cfg.spoof_src). Throws NoCapturedAssoc.
std::vector<Bytes> assoc_replay_frames(std::span<const MediumEvent> sniffed_log, const AttackerConfig& cfg);

/// Replays the latest captured token-bearing deauth/disassoc verbatim
/// (preferring one sent from cfg.spoof_src). Throws NoCapturedDeauth.
std::vector<Bytes> deauth_replay_frames(std::span<const MediumEvent> sniffed_log, const AttackerConfig& cfg);

/// Medium endpoint wrapping one AttackerConfig. Records everything it sniffs.
class Attacker : public Endpoint {
public:
    explicit Attacker(AttackerConfig cfg);

    const AttackerConfig& config() const { return cfg_; }
    const std::vector<MediumEvent>& captured() const { return captured_; }

    /// Builds this attack's frames and queues them on the medium; returns the count.
    std::size_t launch(Medium& medium, EndpointHandle self);

    void on_frame(Medium&, const Delivery&) override {}
    void on_sniff(const MediumEvent& event) override { captured_.push_back(event); }

private:
    AttackerConfig cfg_;
    TokenRng rng_;
    std::vector<MediumEvent> captured_;
};

}  // namespace deauthguard
