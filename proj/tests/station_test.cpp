#include "deauthguard/station.hpp"

#include "support/fixtures.hpp"
#include "support/generators.hpp"

#include <gtest/gtest.h>

namespace dg = deauthguard;
using fixtures::kAp;
using fixtures::kClient;
using fixtures::kOtherClient;
using fixtures::kStranger;
using S = dg::LifecycleState;
using E = dg::LifecycleEvent;

TEST(Transition, DocumentedEdges) {
    EXPECT_EQ(dg::transition(S::AuthAssoc, E::VerifiedDeauth), S::UnauthUnassoc);
    EXPECT_EQ(dg::transition(S::Dot1xAuthed, E::VerifiedDisassoc), S::AuthUnassoc);
    EXPECT_EQ(dg::transition(S::UnauthUnassoc, E::AssocOk), S::UnauthUnassoc);
}

TEST(Transition, FullTable) {
    const S states[] = {S::UnauthUnassoc, S::AuthUnassoc, S::AuthAssoc, S::Dot1xAuthed};
    const E events[] = {E::AuthOk, E::AssocOk, E::Dot1xOk, E::VerifiedDisassoc, E::VerifiedDeauth};
    // rows: states S1..S4; columns: events in the order above
    const S expected[4][5] = {
        {S::AuthUnassoc, S::UnauthUnassoc, S::UnauthUnassoc, S::UnauthUnassoc, S::UnauthUnassoc},
        {S::AuthUnassoc, S::AuthAssoc, S::AuthUnassoc, S::AuthUnassoc, S::UnauthUnassoc},
        {S::AuthAssoc, S::AuthAssoc, S::Dot1xAuthed, S::AuthUnassoc, S::UnauthUnassoc},
        {S::Dot1xAuthed, S::Dot1xAuthed, S::Dot1xAuthed, S::AuthUnassoc, S::UnauthUnassoc},
    };
    for (int s = 0; s < 4; ++s)
        for (int e = 0; e < 5; ++e)
            EXPECT_EQ(dg::transition(states[s], events[e]), expected[s][e])
                << dg::to_string(states[s]) << " " << dg::to_string(events[e]);
}

class StationTest : public ::testing::Test {
protected:
    dg::TokenRng rng{2718};
    dg::Client client{kClient};
    dg::AccessPoint ap{kAp};

    void associate() { fixtures::associate(client, ap, rng); }
};

TEST_F(StationTest, BeginAssociationCarriesHash) {
    client.complete_authentication(kAp);
    auto req = client.begin_association(kAp, rng);
    EXPECT_EQ(req.subtype, dg::Subtype::AssocRequest);
    ASSERT_TRUE(req.ie);
    EXPECT_EQ(req.ie->payload().size(), 64u);
    ASSERT_TRUE(client.pending());
    EXPECT_EQ(req.ie->as_digest(), client.pending()->own_hash);
    EXPECT_EQ(client.pending()->own_hash, dg::hash_token(client.pending()->own_token));
    EXPECT_EQ(dg::encode_frame(req).size(), dg::kHashFrameSize);
}

TEST_F(StationTest, BeginAssociationNeedsAuthentication) {
    EXPECT_THROW(client.begin_association(kAp, rng), dg::WrongState);
    client.complete_authentication(kAp);
    EXPECT_THROW(client.begin_association(kStranger, rng), dg::WrongState);
}

TEST_F(StationTest, ClientsDrawDistinctTokens) {
    dg::Client other{kOtherClient};
    client.complete_authentication(kAp);
    other.complete_authentication(kAp);
    auto a = client.begin_association(kAp, rng);
    auto b = other.begin_association(kAp, rng);
    EXPECT_NE(client.pending()->own_token, other.pending()->own_token);
    EXPECT_NE(a.ie, b.ie);
}

TEST_F(StationTest, FreshAssocRequestAccepted) {
    client.complete_authentication(kAp);
    auto req = client.begin_association(kAp, rng);
    auto result = ap.handle_assoc_request(req, rng);
    EXPECT_EQ(result.verdict, (dg::Verdict{dg::Action::Accept, dg::Cause::Associated}));
    EXPECT_EQ(result.response.subtype, dg::Subtype::AssocResponse);
    EXPECT_EQ(result.response.status_or_reason, 0);
    EXPECT_EQ(result.response.dst, kClient);
    ASSERT_TRUE(result.response.ie && result.response.ie->as_digest());

    const auto& session = ap.store().sessions.at(kClient);
    EXPECT_EQ(session.state, S::AuthAssoc);
    EXPECT_EQ(session.peer_hash, req.ie->as_digest());
    EXPECT_EQ(result.response.ie->as_digest(), session.own_hash);
    EXPECT_TRUE(ap.store().seen_hashes.contains(*req.ie->as_digest()));
}

TEST_F(StationTest, IdenticalAssocRequestRejectedAsReplay) {
    client.complete_authentication(kAp);
    auto req = client.begin_association(kAp, rng);
    ap.handle_assoc_request(req, rng);
    auto before = ap.store();
    auto again = ap.handle_assoc_request(req, rng);
    EXPECT_EQ(again.verdict, (dg::Verdict{dg::Action::Reject, dg::Cause::ReplayedHash}));
    EXPECT_EQ(again.response.status_or_reason, 1);
    EXPECT_FALSE(again.response.ie);
    EXPECT_EQ(ap.store(), before);
}

TEST_F(StationTest, AssocRequestWithoutHashRejected) {
    dg::ManagementFrame req;
    req.subtype = dg::Subtype::AssocRequest;
    req.src = kClient;
    req.dst = kAp;
    auto result = ap.handle_assoc_request(req, rng);
    EXPECT_EQ(result.verdict, (dg::Verdict{dg::Action::Reject, dg::Cause::MissingHash}));
    EXPECT_EQ(result.response.status_or_reason, 1);
    EXPECT_TRUE(ap.store().sessions.empty());

    req.ie = dg::InformationElement::token(std::array<std::uint8_t, 16>{});
    EXPECT_EQ(ap.handle_assoc_request(req, rng).verdict.cause, dg::Cause::MissingHash);
}

TEST_F(StationTest, AssocRequestOverLiveSessionRejected) {
    associate();
    dg::ManagementFrame forged;
    forged.subtype = dg::Subtype::AssocRequest;
    forged.src = kClient;
    forged.dst = kAp;
    forged.ie = dg::InformationElement::hash(dg::hash_token(dg::generate_token(rng)));
    auto before = ap.store();
    EXPECT_EQ(ap.handle_assoc_request(forged, rng).verdict, (dg::Verdict{dg::Action::Reject, dg::Cause::SessionExists}));
    EXPECT_EQ(ap.store(), before);
}

TEST_F(StationTest, AssocRequestWrongSubtype) {
    auto f = fixtures::teardown(dg::Subtype::Deauthentication, kClient, kAp, 3);
    EXPECT_THROW(ap.handle_assoc_request(f, rng), dg::MalformedFrame);
}

TEST_F(StationTest, AssocResponseAccepted) {
    associate();
    EXPECT_EQ(client.state(), S::AuthAssoc);
    ASSERT_TRUE(client.session());
    EXPECT_FALSE(client.pending());
    EXPECT_EQ(client.session()->peer_hash, ap.store().sessions.at(kClient).own_hash);
}

TEST_F(StationTest, AssocResponseRefusalDiscardsPending) {
    client.complete_authentication(kAp);
    client.begin_association(kAp, rng);
    dg::ManagementFrame resp;
    resp.subtype = dg::Subtype::AssocResponse;
    resp.src = kAp;
    resp.dst = kClient;
    resp.status_or_reason = 1;
    EXPECT_EQ(client.handle_assoc_response(resp), (dg::Verdict{dg::Action::Reject, dg::Cause::AssocRefused}));
    EXPECT_FALSE(client.pending());
    EXPECT_EQ(client.state(), S::AuthUnassoc);
}

TEST_F(StationTest, AssocResponseStatusZeroWithoutHashRefused) {
    client.complete_authentication(kAp);
    client.begin_association(kAp, rng);
    dg::ManagementFrame resp;
    resp.subtype = dg::Subtype::AssocResponse;
    resp.src = kAp;
    resp.dst = kClient;
    EXPECT_EQ(client.handle_assoc_response(resp).action, dg::Action::Reject);
}

TEST_F(StationTest, AssocResponseFromUnknownMac) {
    client.complete_authentication(kAp);
    client.begin_association(kAp, rng);
    dg::ManagementFrame resp;
    resp.subtype = dg::Subtype::AssocResponse;
    resp.src = kStranger;
    EXPECT_THROW(client.handle_assoc_response(resp), dg::NoPendingSession);
}

TEST_F(StationTest, ClientDeauthVerifiesAtAp) {
    associate();
    auto f = client.make_verified_deauth(dg::ReasonCode{3});
    EXPECT_EQ(f.subtype, dg::Subtype::Deauthentication);
    ASSERT_TRUE(f.ie && f.ie->as_token());
    EXPECT_EQ(dg::hash_token_bytes(*f.ie->as_token()), ap.store().sessions.at(kClient).peer_hash);
    EXPECT_EQ(ap.verify_deauth(f), (dg::Verdict{dg::Action::Accept, dg::Cause::VerifiedToken}));
    EXPECT_FALSE(ap.store().sessions.contains(kClient));
    EXPECT_EQ(ap.peer_state(kClient), S::UnauthUnassoc);
}

TEST_F(StationTest, ApReason5VerifiesAtClient) {
    associate();
    auto f = ap.make_verified_deauth(kClient, dg::ReasonCode{5});
    EXPECT_EQ(f.subtype, dg::Subtype::Deauthentication);
    EXPECT_EQ(f.ie->as_token(), ap.store().sessions.at(kClient).own_token.bytes());
    EXPECT_EQ(client.verify_deauth(f).action, dg::Action::Accept);
    EXPECT_EQ(client.state(), S::UnauthUnassoc);
    EXPECT_FALSE(client.session());
}

TEST_F(StationTest, Reason8IsDisassociation) {
    associate();
    auto f = client.make_verified_deauth(dg::ReasonCode{8});
    EXPECT_EQ(f.subtype, dg::Subtype::Disassociation);
    EXPECT_EQ(ap.verify_deauth(f).action, dg::Action::Accept);
    EXPECT_EQ(ap.peer_state(kClient), S::AuthUnassoc);

    dg::Client c2{kOtherClient};
    fixtures::associate(c2, ap, rng);
    auto from_ap = ap.make_verified_deauth(kOtherClient, dg::ReasonCode{8});
    EXPECT_EQ(c2.verify_deauth(from_ap).action, dg::Action::Accept);
    EXPECT_EQ(c2.state(), S::AuthUnassoc);
}

TEST_F(StationTest, MakeDeauthNeedsSession) {
    EXPECT_THROW(client.make_verified_deauth(dg::ReasonCode{3}), dg::WrongState);
    EXPECT_THROW(ap.make_verified_deauth(kClient, dg::ReasonCode{3}), dg::WrongState);

    auto record = dg::SessionRecord::create(kAp, dg::generate_token(rng), S::AuthUnassoc);
    EXPECT_THROW(dg::make_verified_deauth(record, kClient, dg::ReasonCode{3}), dg::WrongState);
}

TEST_F(StationTest, SpoofedRandomTokenIgnored) {
    associate();
    auto f = fixtures::teardown(dg::Subtype::Deauthentication, kClient, kAp, 3);
    std::array<std::uint8_t, 16> guess{};
    for (auto& b : guess) b = static_cast<std::uint8_t>(rng());
    f.ie = dg::InformationElement::token(guess);
    auto before = ap.store();
    EXPECT_EQ(ap.verify_deauth(f), (dg::Verdict{dg::Action::Ignore, dg::Cause::TokenMismatch}));
    EXPECT_EQ(ap.store(), before);
}

TEST_F(StationTest, ClientsOwnTokenSentBackIsIgnored) {
    // Reflecting u1 to the client does not match h2.
    associate();
    auto f = client.make_verified_deauth(dg::ReasonCode{3});
    std::swap(f.src, f.dst);
    EXPECT_EQ(client.verify_deauth(f).cause, dg::Cause::TokenMismatch);
}

TEST_F(StationTest, HashIeInsteadOfTokenIgnored) {
    associate();
    auto f = fixtures::teardown(dg::Subtype::Deauthentication, kClient, kAp, 3);
    f.ie = dg::InformationElement::hash(ap.store().sessions.at(kClient).peer_hash.value());
    EXPECT_EQ(ap.verify_deauth(f).cause, dg::Cause::MissingToken);
}

TEST_F(StationTest, Reason2WithoutSessionIgnored) {
    auto f = fixtures::teardown(dg::Subtype::Deauthentication, kStranger, kAp, 2);
    EXPECT_EQ(ap.verify_deauth(f), (dg::Verdict{dg::Action::Ignore, dg::Cause::NoSession}));
}

TEST_F(StationTest, ReplayedDeauthIgnoredAfterTeardown) {
    associate();
    auto f = client.make_verified_deauth(dg::ReasonCode{3});
    ASSERT_EQ(ap.verify_deauth(f).action, dg::Action::Accept);
    EXPECT_EQ(ap.verify_deauth(f), (dg::Verdict{dg::Action::Ignore, dg::Cause::NoSession}));
}

TEST_F(StationTest, ReplayWinningTheRaceIsAccepted) {
    // Once revealed, the token is a bearer credential: whoever arrives first wins.
    associate();
    auto legit = client.make_verified_deauth(dg::ReasonCode{3});
    auto captured = dg::decode_frame(dg::encode_frame(legit));
    EXPECT_EQ(ap.verify_deauth(std::get<dg::ManagementFrame>(captured)).action, dg::Action::Accept);
    EXPECT_EQ(ap.verify_deauth(legit).action, dg::Action::Ignore);
}

TEST_F(StationTest, Code1RejectedEvenWithValidToken) {
    associate();
    auto f = client.make_verified_deauth(dg::ReasonCode{1});
    auto before = ap.store();
    EXPECT_EQ(ap.verify_deauth(f), (dg::Verdict{dg::Action::Reject, dg::Cause::UnspecifiedReason}));
    EXPECT_EQ(ap.store(), before);
}

TEST_F(StationTest, LegacyAcceptsTokenlessDeauth) {
    associate();
    auto f = fixtures::teardown(dg::Subtype::Deauthentication, kAp, kClient, 3);
    dg::Client protected_copy = client;
    EXPECT_EQ(protected_copy.verify_deauth(f).action, dg::Action::Ignore);
    EXPECT_EQ(protected_copy, client);

    EXPECT_EQ(client.legacy_verify_deauth(f), (dg::Verdict{dg::Action::Accept, dg::Cause::LegacyAccept}));
    EXPECT_EQ(client.state(), S::UnauthUnassoc);
}

TEST_F(StationTest, LegacyWithoutSessionIgnored) {
    auto f = fixtures::teardown(dg::Subtype::Deauthentication, kStranger, kAp, 3);
    EXPECT_EQ(ap.legacy_verify_deauth(f), (dg::Verdict{dg::Action::Ignore, dg::Cause::NoSession}));
}

TEST_F(StationTest, TeardownVerifiersRejectOtherSubtypes) {
    dg::ManagementFrame f;
    f.subtype = dg::Subtype::AssocRequest;
    EXPECT_THROW(ap.verify_deauth(f), dg::MalformedFrame);
    EXPECT_THROW(ap.legacy_verify_deauth(f), dg::MalformedFrame);
    EXPECT_THROW(client.verify_deauth(f), dg::MalformedFrame);
}

TEST_F(StationTest, SeenHashesSurviveTeardown) {
    client.complete_authentication(kAp);
    auto req = client.begin_association(kAp, rng);
    client.handle_assoc_response(ap.handle_assoc_request(req, rng).response);
    ap.verify_deauth(client.make_verified_deauth(dg::ReasonCode{3}));
    ASSERT_TRUE(ap.store().sessions.empty());
    EXPECT_EQ(ap.handle_assoc_request(req, rng).verdict.cause, dg::Cause::ReplayedHash);
}

TEST_F(StationTest, ReassociationAfterTeardownWithFreshToken) {
    associate();
    auto f = client.make_verified_deauth(dg::ReasonCode{3});
    client.complete_local_teardown(f);
    ap.verify_deauth(f);
    EXPECT_EQ(client.state(), S::UnauthUnassoc);
    associate();
    EXPECT_EQ(client.state(), S::AuthAssoc);
    EXPECT_EQ(ap.store().seen_hashes.size(), 2u);
}

TEST_F(StationTest, Dot1xLabelKeepsProtocolBehavior) {
    associate();
    client.complete_dot1x();
    EXPECT_EQ(client.state(), S::Dot1xAuthed);
    auto f = client.make_verified_deauth(dg::ReasonCode{8});
    client.complete_local_teardown(f);
    EXPECT_EQ(client.state(), S::AuthUnassoc);
    EXPECT_EQ(ap.verify_deauth(f).action, dg::Action::Accept);
}

TEST_F(StationTest, ApDeauthAllIsOneFramePerSession) {
    dg::Client other{kOtherClient};
    associate();
    fixtures::associate(other, ap, rng);
    auto frames = ap.make_verified_deauth_all(dg::ReasonCode{5});
    ASSERT_EQ(frames.size(), 2u);
    EXPECT_NE(frames[0].ie, frames[1].ie);
    EXPECT_EQ(client.verify_deauth(frames[0]).action, dg::Action::Accept);
    EXPECT_EQ(other.verify_deauth(frames[1]).action, dg::Action::Accept);
    // each token only opens its own session
    fixtures::associate(client, ap, rng);
    EXPECT_NE(client.verify_deauth(frames[1]).action, dg::Action::Accept);
}

// Properties over many seeded sessions.

TEST(StationProperties, LivenessAndIdempotentTeardown) {
    dg::TokenRng rng(31337);
    const std::uint16_t reasons[] = {3, 4, 5, 8};
    for (int i = 0; i < 500; ++i) {
        dg::Client client{kClient};
        dg::AccessPoint ap{kAp};
        fixtures::associate(client, ap, rng);
        auto reason = dg::ReasonCode{reasons[i % 4]};
        bool from_client = (i / 4) % 2 == 0;
        if (from_client) {
            auto f = client.make_verified_deauth(reason);
            ASSERT_EQ(ap.verify_deauth(f).action, dg::Action::Accept);
            ASSERT_EQ(ap.verify_deauth(f).action, dg::Action::Ignore);
        } else {
            auto f = ap.make_verified_deauth(kClient, reason);
            ASSERT_EQ(client.verify_deauth(f).action, dg::Action::Accept);
            ASSERT_EQ(client.verify_deauth(f).action, dg::Action::Ignore);
        }
    }
}

TEST(StationProperties, NoStateChangeOnIgnoreOrReject) {
    std::mt19937_64 rng(4242);
    dg::TokenRng tokens(4242);
    dg::Client client{kClient};
    dg::AccessPoint ap{kAp};
    fixtures::associate(client, ap, tokens);
    auto u1 = client.session()->own_token;

    for (int i = 0; i < 20000; ++i) {
        auto f = gen::frame(rng);
        if (!f.is_teardown()) continue;
        if (rng() % 2) f.src = kClient;
        if (rng() % 4 == 0) f.ie = dg::InformationElement::token(u1);
        auto before = ap.store();
        auto v = ap.verify_deauth(f);
        if (v.action != dg::Action::Accept) {
            ASSERT_EQ(ap.store(), before);
        } else {
            ASSERT_EQ(f.ie->as_token(), u1.bytes());
            client = dg::Client{kClient};
            fixtures::associate(client, ap, tokens);
            u1 = client.session()->own_token;
        }
    }
}
