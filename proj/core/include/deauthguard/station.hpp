#pragma once

// Client and access-point state machines for the token-authenticated
// association / deauthentication protocol.

#include "deauthguard/frame.hpp"
#include "deauthguard/token.hpp"

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace deauthguard {

enum class LifecycleState : std::uint8_t {
    UnauthUnassoc = 1,
    AuthUnassoc = 2,
    AuthAssoc = 3,
    Dot1xAuthed = 4,
};

enum class LifecycleEvent : std::uint8_t {
    AuthOk,
    AssocOk,
    Dot1xOk,
    VerifiedDisassoc,
    VerifiedDeauth,
};

/// "S1".."S4".
std::string_view to_string(LifecycleState state);
std::string_view to_string(LifecycleEvent event);

/// Total over all (state, event) pairs; undefined edges are the identity.
LifecycleState transition(LifecycleState state, LifecycleEvent event);

inline bool is_associated(LifecycleState s) { return s >= LifecycleState::AuthAssoc; }

enum class Action : std::uint8_t { Accept, Ignore, Reject };

enum class Cause : std::uint8_t {
    Associated,
    AssocRefused,
    MissingHash,
    ReplayedHash,
    SessionExists,
    VerifiedToken,
    LegacyAccept,
    NoSession,
    MissingToken,
    TokenMismatch,
    ReservedReason,
    UnspecifiedReason,
    UnauthenticatedReason,
};

std::string_view to_string(Action action);
/// Stable snake_case tag used in logs and metrics.
std::string_view to_string(Cause cause);

struct Verdict {
    Action action = Action::Ignore;
    Cause cause = Cause::NoSession;

    friend bool operator==(const Verdict&, const Verdict&) = default;
};

class ProtocolError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};
class WrongState : public ProtocolError {
    using ProtocolError::ProtocolError;
};
class MalformedFrame : public ProtocolError {
    using ProtocolError::ProtocolError;
};
class NoPendingSession : public ProtocolError {
    using ProtocolError::ProtocolError;
};

/// Per-peer association state. own_hash is always hash_token(own_token).
struct SessionRecord {
    MacAddress peer;
    Token own_token;
    Digest own_hash;
    std::optional<Digest> peer_hash;
    LifecycleState state = LifecycleState::AuthUnassoc;

    static SessionRecord create(MacAddress peer, const Token& token, LifecycleState state);

    friend bool operator==(const SessionRecord&, const SessionRecord&) = default;
};

/// Reason-code dispatch for a received deauth/disassoc. `session` is the
/// receiver's record for frame.src, or null. Pure; callers apply the verdict.
Verdict judge_teardown(const SessionRecord* session, const ManagementFrame& frame);

/// Stock 802.11: any teardown from a peer with a session is honored.
Verdict judge_teardown_legacy(const SessionRecord* session, const ManagementFrame& frame);

/// Teardown frame revealing the session's own token. Reason 8 yields a
/// Disassociation, everything else a Deauthentication.
ManagementFrame make_verified_deauth(const SessionRecord& session, MacAddress self, ReasonCode reason);

/// Event a verified teardown of this subtype applies.
LifecycleEvent teardown_event(Subtype subtype);

class Client {
public:
    explicit Client(MacAddress mac) : mac_(mac) {}

    const MacAddress& mac() const { return mac_; }
    LifecycleState state() const { return state_; }
    const std::optional<MacAddress>& ap() const { return ap_; }
    const std::optional<SessionRecord>& session() const { return session_; }
    const std::optional<SessionRecord>& pending() const { return pending_; }

    ManagementFrame authentication_request(MacAddress ap) const;
    /// Opaque authentication success (open system or WPA). Moves S1 -> S2.
    void complete_authentication(MacAddress ap);
    /// Returns true when the response completed authentication.
    bool handle_auth_response(const ManagementFrame& frame);

    /// Draws u1, stores (u1, h1) as pending and returns the AssocRequest carrying h1.
    /// Throws WrongState unless authenticated (S2) toward `ap`.
    ManagementFrame begin_association(MacAddress ap, TokenRng& rng);
    /// Throws NoPendingSession / MalformedFrame.
    Verdict handle_assoc_response(const ManagementFrame& frame);

    /// 802.1x label only; S3 -> S4 with no extra protocol behavior.
    void complete_dot1x();

    /// Throws WrongState when not associated.
    ManagementFrame make_verified_deauth(ReasonCode reason) const;
    /// Local teardown after this client sent `sent`.
    void complete_local_teardown(const ManagementFrame& sent);

    /// Throws MalformedFrame if `frame` is not a deauth/disassoc.
    Verdict verify_deauth(const ManagementFrame& frame);
    Verdict legacy_verify_deauth(const ManagementFrame& frame);

    friend bool operator==(const Client&, const Client&) = default;

private:
    const SessionRecord* session_for(const MacAddress& peer) const;
    Verdict apply(const Verdict& verdict, const ManagementFrame& frame);

    MacAddress mac_;
    LifecycleState state_ = LifecycleState::UnauthUnassoc;
    std::optional<MacAddress> ap_;
    std::optional<SessionRecord> pending_;
    std::optional<SessionRecord> session_;
};

/// AP memory: live sessions plus every h1 ever accepted (replay memory, grows only).
struct ApStore {
    std::map<MacAddress, SessionRecord> sessions;
    std::set<Digest> seen_hashes;
    /// AP-side view of peers without a live session (S1/S2).
    std::map<MacAddress, LifecycleState> peer_states;

    friend bool operator==(const ApStore&, const ApStore&) = default;
};

struct AssocResult {
    ManagementFrame response;
    Verdict verdict;
};

class AccessPoint {
public:
    /// Called once per session deletion with the record and the frame that caused it.
    using DeletionObserver = std::function<void(const SessionRecord&, const ManagementFrame&)>;

    explicit AccessPoint(MacAddress mac) : mac_(mac) {}

    const MacAddress& mac() const { return mac_; }
    const ApStore& store() const { return store_; }
    LifecycleState peer_state(const MacAddress& client) const;

    void set_deletion_observer(DeletionObserver observer) { on_delete_ = std::move(observer); }

    /// Open-system authentication: always status 0.
    ManagementFrame handle_auth_request(const ManagementFrame& frame);

    /// Throws MalformedFrame unless frame is an AssocRequest.
    AssocResult handle_assoc_request(const ManagementFrame& frame, TokenRng& rng);

    /// Throws WrongState when `client` has no session.
    ManagementFrame make_verified_deauth(const MacAddress& client, ReasonCode reason) const;
    /// One unicast teardown per live session; each client holds a different u2.
    std::vector<ManagementFrame> make_verified_deauth_all(ReasonCode reason) const;
    void complete_local_teardown(const ManagementFrame& sent);

    Verdict verify_deauth(const ManagementFrame& frame);
    Verdict legacy_verify_deauth(const ManagementFrame& frame);

private:
    const SessionRecord* session_for(const MacAddress& peer) const;
    Verdict apply(const Verdict& verdict, const ManagementFrame& frame);

    MacAddress mac_;
    ApStore store_;
    DeletionObserver on_delete_;
};

}  // namespace deauthguard
