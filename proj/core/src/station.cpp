#include "deauthguard/station.hpp"

#include <string>

namespace deauthguard {

std::string_view to_string(LifecycleState state) {
    switch (state) {
        case LifecycleState::UnauthUnassoc: return "S1";
        case LifecycleState::AuthUnassoc: return "S2";
        case LifecycleState::AuthAssoc: return "S3";
        case LifecycleState::Dot1xAuthed: return "S4";
    }
    return "S?";
}

std::string_view to_string(LifecycleEvent event) {
    switch (event) {
        case LifecycleEvent::AuthOk: return "auth_ok";
        case LifecycleEvent::AssocOk: return "assoc_ok";
        case LifecycleEvent::Dot1xOk: return "dot1x_ok";
        case LifecycleEvent::VerifiedDisassoc: return "verified_disassoc";
        case LifecycleEvent::VerifiedDeauth: return "verified_deauth";
    }
    return "unknown";
}

LifecycleState transition(LifecycleState state, LifecycleEvent event) {
    using S = LifecycleState;
    switch (event) {
        case LifecycleEvent::AuthOk:
            return state == S::UnauthUnassoc ? S::AuthUnassoc : state;
        case LifecycleEvent::AssocOk:
            return state == S::AuthUnassoc ? S::AuthAssoc : state;
        case LifecycleEvent::Dot1xOk:
            return state == S::AuthAssoc ? S::Dot1xAuthed : state;
        case LifecycleEvent::VerifiedDisassoc:
            return is_associated(state) ? S::AuthUnassoc : state;
        case LifecycleEvent::VerifiedDeauth:
            return S::UnauthUnassoc;
    }
    return state;
}

std::string_view to_string(Action action) {
    switch (action) {
        case Action::Accept: return "accept";
        case Action::Ignore: return "ignore";
        case Action::Reject: return "reject";
    }
    return "unknown";
}

std::string_view to_string(Cause cause) {
    switch (cause) {
        case Cause::Associated: return "associated";
        case Cause::AssocRefused: return "assoc_refused";
        case Cause::MissingHash: return "missing_hash";
        case Cause::ReplayedHash: return "replayed_hash";
        case Cause::SessionExists: return "session_exists";
        case Cause::VerifiedToken: return "verified_token";
        case Cause::LegacyAccept: return "legacy_accept";
        case Cause::NoSession: return "no_session";
        case Cause::MissingToken: return "missing_token";
        case Cause::TokenMismatch: return "token_mismatch";
        case Cause::ReservedReason: return "reserved_reason";
        case Cause::UnspecifiedReason: return "unspecified_reason";
        case Cause::UnauthenticatedReason: return "unauthenticated_reason";
    }
    return "unknown";
}

SessionRecord SessionRecord::create(MacAddress peer, const Token& token, LifecycleState state) {
    return SessionRecord{peer, token, hash_token(token), std::nullopt, state};
}

namespace {

void require_teardown(const ManagementFrame& frame) {
    if (!frame.is_teardown())
        throw MalformedFrame("expected deauth/disassoc, got " + std::string(to_string(frame.subtype)));
}

}  // namespace

Verdict judge_teardown(const SessionRecord* session, const ManagementFrame& frame) {
    require_teardown(frame);
    switch (frame.status_or_reason) {
        case ReasonCode::kUnspecified:
            return {Action::Reject, Cause::UnspecifiedReason};
        case ReasonCode::kPriorAuthInvalid:
        case ReasonCode::kClass2FromUnauth:
        case ReasonCode::kClass3FromUnassoc:
        case ReasonCode::kAssocBeforeAuth:
            // These codes describe an unauthenticated sender; nothing to tear down either way.
            return {Action::Ignore, session ? Cause::UnauthenticatedReason : Cause::NoSession};
        case ReasonCode::kLeavingDeauth:
        case ReasonCode::kInactivity:
        case ReasonCode::kApOverloaded:
        case ReasonCode::kLeavingDisassoc:
            break;
        default:
            return {Action::Ignore, Cause::ReservedReason};
    }

    if (!session || !session->peer_hash) return {Action::Ignore, Cause::NoSession};
    if (!frame.ie) return {Action::Ignore, Cause::MissingToken};
    auto token = frame.ie->as_token();
    if (!token) return {Action::Ignore, Cause::MissingToken};
    if (hash_token_bytes(*token) != *session->peer_hash) return {Action::Ignore, Cause::TokenMismatch};
    return {Action::Accept, Cause::VerifiedToken};
}

Verdict judge_teardown_legacy(const SessionRecord* session, const ManagementFrame& frame) {
    require_teardown(frame);
    if (!session) return {Action::Ignore, Cause::NoSession};
    return {Action::Accept, Cause::LegacyAccept};
}

ManagementFrame make_verified_deauth(const SessionRecord& session, MacAddress self, ReasonCode reason) {
    if (!is_associated(session.state))
        throw WrongState("verified deauth needs an associated session, state is " +
                         std::string(to_string(session.state)));
    ManagementFrame frame;
    frame.subtype = reason.value == ReasonCode::kLeavingDisassoc ? Subtype::Disassociation
                                                                 : Subtype::Deauthentication;
    frame.src = self;
    frame.dst = session.peer;
    frame.status_or_reason = reason.value;
    frame.ie = InformationElement::token(session.own_token);
    return frame;
}

LifecycleEvent teardown_event(Subtype subtype) {
    return subtype == Subtype::Disassociation ? LifecycleEvent::VerifiedDisassoc
                                              : LifecycleEvent::VerifiedDeauth;
}

// Client

ManagementFrame Client::authentication_request(MacAddress ap) const {
    ManagementFrame frame;
    frame.subtype = Subtype::AuthRequest;
    frame.src = mac_;
    frame.dst = ap;
    return frame;
}

void Client::complete_authentication(MacAddress ap) {
    if (state_ != LifecycleState::UnauthUnassoc) return;
    ap_ = ap;
    state_ = transition(state_, LifecycleEvent::AuthOk);
}

bool Client::handle_auth_response(const ManagementFrame& frame) {
    if (frame.subtype != Subtype::AuthResponse)
        throw MalformedFrame("expected auth_response, got " + std::string(to_string(frame.subtype)));
    if (frame.status_or_reason != 0 || state_ != LifecycleState::UnauthUnassoc) return false;
    complete_authentication(frame.src);
    return true;
}

ManagementFrame Client::begin_association(MacAddress ap, TokenRng& rng) {
    if (state_ != LifecycleState::AuthUnassoc || ap_ != ap)
        throw WrongState("association requires S2 toward " + ap.to_string() + ", state is " +
                         std::string(to_string(state_)));
    pending_ = SessionRecord::create(ap, generate_token(rng), LifecycleState::AuthUnassoc);

    ManagementFrame frame;
    frame.subtype = Subtype::AssocRequest;
    frame.src = mac_;
    frame.dst = ap;
    frame.ie = InformationElement::hash(pending_->own_hash);
    return frame;
}

Verdict Client::handle_assoc_response(const ManagementFrame& frame) {
    if (frame.subtype != Subtype::AssocResponse)
        throw MalformedFrame("expected assoc_response, got " + std::string(to_string(frame.subtype)));
    if (!pending_ || pending_->peer != frame.src)
        throw NoPendingSession("no association in flight with " + frame.src.to_string());

    std::optional<Digest> peer_hash = frame.ie ? frame.ie->as_digest() : std::nullopt;
    if (frame.status_or_reason != 0 || !peer_hash) {
        pending_.reset();
        return {Action::Reject, Cause::AssocRefused};
    }
    state_ = transition(state_, LifecycleEvent::AssocOk);
    pending_->peer_hash = peer_hash;
    pending_->state = state_;
    session_ = std::move(pending_);
    pending_.reset();
    return {Action::Accept, Cause::Associated};
}

void Client::complete_dot1x() {
    state_ = transition(state_, LifecycleEvent::Dot1xOk);
    if (session_) session_->state = state_;
}

ManagementFrame Client::make_verified_deauth(ReasonCode reason) const {
    if (!session_) throw WrongState("client " + mac_.to_string() + " has no session");
    return deauthguard::make_verified_deauth(*session_, mac_, reason);
}

void Client::complete_local_teardown(const ManagementFrame& sent) {
    if (!session_ || session_->peer != sent.dst) return;
    session_.reset();
    state_ = transition(state_, teardown_event(sent.subtype));
    if (state_ == LifecycleState::UnauthUnassoc) ap_.reset();
}

const SessionRecord* Client::session_for(const MacAddress& peer) const {
    return session_ && session_->peer == peer ? &*session_ : nullptr;
}

Verdict Client::apply(const Verdict& verdict, const ManagementFrame& frame) {
    if (verdict.action == Action::Accept) {
        session_.reset();
        state_ = transition(state_, teardown_event(frame.subtype));
        if (state_ == LifecycleState::UnauthUnassoc) ap_.reset();
    }
    return verdict;
}

Verdict Client::verify_deauth(const ManagementFrame& frame) {
    return apply(judge_teardown(session_for(frame.src), frame), frame);
}

Verdict Client::legacy_verify_deauth(const ManagementFrame& frame) {
    return apply(judge_teardown_legacy(session_for(frame.src), frame), frame);
}

// AccessPoint

LifecycleState AccessPoint::peer_state(const MacAddress& client) const {
    if (auto it = store_.sessions.find(client); it != store_.sessions.end()) return it->second.state;
    if (auto it = store_.peer_states.find(client); it != store_.peer_states.end()) return it->second;
    return LifecycleState::UnauthUnassoc;
}

ManagementFrame AccessPoint::handle_auth_request(const ManagementFrame& frame) {
    if (frame.subtype != Subtype::AuthRequest)
        throw MalformedFrame("expected auth_request, got " + std::string(to_string(frame.subtype)));
    if (!store_.sessions.contains(frame.src)) {
        store_.peer_states[frame.src] = transition(peer_state(frame.src), LifecycleEvent::AuthOk);
    }
    ManagementFrame reply;
    reply.subtype = Subtype::AuthResponse;
    reply.src = mac_;
    reply.dst = frame.src;
    return reply;
}

AssocResult AccessPoint::handle_assoc_request(const ManagementFrame& frame, TokenRng& rng) {
    if (frame.subtype != Subtype::AssocRequest)
        throw MalformedFrame("expected assoc_request, got " + std::string(to_string(frame.subtype)));

    AssocResult result;
    result.response.subtype = Subtype::AssocResponse;
    result.response.src = mac_;
    result.response.dst = frame.src;
    result.response.status_or_reason = 1;

    std::optional<Digest> h1 = frame.ie ? frame.ie->as_digest() : std::nullopt;
    if (!h1) {
        result.verdict = {Action::Reject, Cause::MissingHash};
        return result;
    }
    if (store_.seen_hashes.contains(*h1)) {
        result.verdict = {Action::Reject, Cause::ReplayedHash};
        return result;
    }
    if (store_.sessions.contains(frame.src)) {
        result.verdict = {Action::Reject, Cause::SessionExists};
        return result;
    }

    store_.seen_hashes.insert(*h1);
    auto record = SessionRecord::create(frame.src, generate_token(rng), LifecycleState::AuthAssoc);
    record.peer_hash = h1;
    result.response.status_or_reason = 0;
    result.response.ie = InformationElement::hash(record.own_hash);
    store_.peer_states.erase(frame.src);
    store_.sessions.insert_or_assign(frame.src, std::move(record));
    result.verdict = {Action::Accept, Cause::Associated};
    return result;
}

ManagementFrame AccessPoint::make_verified_deauth(const MacAddress& client, ReasonCode reason) const {
    auto it = store_.sessions.find(client);
    if (it == store_.sessions.end()) throw WrongState("AP has no session with " + client.to_string());
    return deauthguard::make_verified_deauth(it->second, mac_, reason);
}

std::vector<ManagementFrame> AccessPoint::make_verified_deauth_all(ReasonCode reason) const {
    std::vector<ManagementFrame> frames;
    frames.reserve(store_.sessions.size());
    for (const auto& [client, record] : store_.sessions)
        frames.push_back(deauthguard::make_verified_deauth(record, mac_, reason));
    return frames;
}

void AccessPoint::complete_local_teardown(const ManagementFrame& sent) {
    auto it = store_.sessions.find(sent.dst);
    if (it == store_.sessions.end()) return;
    store_.peer_states[sent.dst] = transition(it->second.state, teardown_event(sent.subtype));
    store_.sessions.erase(it);
}

const SessionRecord* AccessPoint::session_for(const MacAddress& peer) const {
    auto it = store_.sessions.find(peer);
    return it == store_.sessions.end() ? nullptr : &it->second;
}

Verdict AccessPoint::apply(const Verdict& verdict, const ManagementFrame& frame) {
    if (verdict.action != Action::Accept) return verdict;
    auto it = store_.sessions.find(frame.src);
    if (on_delete_) on_delete_(it->second, frame);
    // h1 stays in seen_hashes.
    store_.peer_states[frame.src] = transition(it->second.state, teardown_event(frame.subtype));
    store_.sessions.erase(it);
    return verdict;
}

Verdict AccessPoint::verify_deauth(const ManagementFrame& frame) {
    return apply(judge_teardown(session_for(frame.src), frame), frame);
}

Verdict AccessPoint::legacy_verify_deauth(const ManagementFrame& frame) {
    return apply(judge_teardown_legacy(session_for(frame.src), frame), frame);
}

}  // namespace deauthguard
