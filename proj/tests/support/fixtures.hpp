#pragma once

#include "deauthguard/station.hpp"

#include <random>

namespace fixtures {

namespace dg = deauthguard;

inline const dg::MacAddress kAp({0x02, 0x00, 0x00, 0x00, 0x00, 0x01});
inline const dg::MacAddress kClient({0x02, 0x00, 0x00, 0x00, 0x00, 0x10});
inline const dg::MacAddress kOtherClient({0x02, 0x00, 0x00, 0x00, 0x00, 0x11});
inline const dg::MacAddress kStranger({0x02, 0x00, 0x00, 0x00, 0x00, 0x99});

/// Runs the full handshake through the station APIs.
inline void associate(dg::Client& client, dg::AccessPoint& ap, dg::TokenRng& rng) {
    auto auth = ap.handle_auth_request(client.authentication_request(ap.mac()));
    client.handle_auth_response(auth);
    auto req = client.begin_association(ap.mac(), rng);
    auto result = ap.handle_assoc_request(req, rng);
    client.handle_assoc_response(result.response);
}

inline dg::ManagementFrame teardown(dg::Subtype subtype, dg::MacAddress src, dg::MacAddress dst,
                                    std::uint16_t reason) {
    dg::ManagementFrame f;
    f.subtype = subtype;
    f.src = src;
    f.dst = dst;
    f.status_or_reason = reason;
    return f;
}

}  // namespace fixtures
