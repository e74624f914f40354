#pragma once

// Management-frame model and the simulation wire format.
//
// Layout (all frames):
//   [0]      subtype code
//   [1..6]   source MAC
//   [7..12]  destination MAC
//   [13..14] status (AssocResponse) or reason (Deauth/Disassoc), little-endian
// Optional trailing information element:
//   [15]     0xDD (vendor specific)
//   [16]     payload length + 1
//   [17]     payload kind (0x01 hash, 0x02 token)
//   [18..]   payload (64 or 16 bytes)

#include "deauthguard/bytes.hpp"
#include "deauthguard/token.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>

namespace deauthguard {

class MacAddress {
public:
    static constexpr std::size_t kSize = 6;

    constexpr MacAddress() = default;
    constexpr explicit MacAddress(const std::array<std::uint8_t, kSize>& octets) : octets_(octets) {}

    static constexpr MacAddress broadcast() { return MacAddress({0xff, 0xff, 0xff, 0xff, 0xff, 0xff}); }
    /// "aa:bb:cc:dd:ee:ff", either case; '-' separators also accepted.
    static std::optional<MacAddress> parse(std::string_view text);

    const std::array<std::uint8_t, kSize>& octets() const { return octets_; }
    bool is_broadcast() const { return *this == broadcast(); }
    std::string to_string() const;

    friend constexpr bool operator==(const MacAddress&, const MacAddress&) = default;
    friend constexpr auto operator<=>(const MacAddress&, const MacAddress&) = default;

private:
    std::array<std::uint8_t, kSize> octets_{};
};

/// 16-bit reason code. 0 and 10..65535 are reserved.
struct ReasonCode {
    std::uint16_t value = 0;

    static constexpr std::uint16_t kUnspecified = 1;
    static constexpr std::uint16_t kPriorAuthInvalid = 2;
    static constexpr std::uint16_t kLeavingDeauth = 3;
    static constexpr std::uint16_t kInactivity = 4;
    static constexpr std::uint16_t kApOverloaded = 5;
    static constexpr std::uint16_t kClass2FromUnauth = 6;
    static constexpr std::uint16_t kClass3FromUnassoc = 7;
    static constexpr std::uint16_t kLeavingDisassoc = 8;
    static constexpr std::uint16_t kAssocBeforeAuth = 9;

    bool is_reserved() const { return value == 0 || value >= 10; }
    std::string_view description() const;

    friend bool operator==(const ReasonCode&, const ReasonCode&) = default;
};

enum class Subtype : std::uint8_t {
    AssocRequest = 0x00,
    AssocResponse = 0x01,
    Disassociation = 0x0A,
    Deauthentication = 0x0C,
    AuthRequest = 0x10,
    AuthResponse = 0x11,
};

std::string_view to_string(Subtype subtype);
std::optional<Subtype> subtype_from_code(std::uint8_t code);

enum class PayloadKind : std::uint8_t {
    Hash = 0x01,
    Token = 0x02,
};

/// Vendor-specific element carrying either a 64-byte hash or a 16-byte token.
/// Payload length always matches the kind.
class InformationElement {
public:
    static constexpr std::uint8_t kElementId = 0xDD;

    static InformationElement hash(const Digest& digest);
    /// Raw 16 bytes; need not be a well-formed UUID (forged frames).
    static InformationElement token(std::span<const std::uint8_t, 16> raw);
    static InformationElement token(const Token& token) { return InformationElement::token(token.bytes()); }

    PayloadKind kind() const { return kind_; }
    std::span<const std::uint8_t> payload() const;

    std::optional<Digest> as_digest() const;
    std::optional<TokenBytes> as_token() const;

    friend bool operator==(const InformationElement&, const InformationElement&) = default;

private:
    InformationElement() = default;
    PayloadKind kind_ = PayloadKind::Hash;
    DigestBytes storage_{};
};

struct ManagementFrame {
    Subtype subtype = Subtype::AuthRequest;
    MacAddress src;
    MacAddress dst;
    std::uint16_t status_or_reason = 0;
    std::optional<InformationElement> ie;

    ReasonCode reason() const { return ReasonCode{status_or_reason}; }
    bool is_teardown() const {
        return subtype == Subtype::Deauthentication || subtype == Subtype::Disassociation;
    }

    friend bool operator==(const ManagementFrame&, const ManagementFrame&) = default;
};

inline constexpr std::size_t kHeaderSize = 15;
inline constexpr std::size_t kHashFrameSize = kHeaderSize + 3 + Digest::kSize;  // 82
inline constexpr std::size_t kTokenFrameSize = kHeaderSize + 3 + Token::kSize;  // 34

Bytes encode_frame(const ManagementFrame& frame);

enum class DecodeError {
    TooShort,
    UnknownSubtype,
    BadIeLength,
    TrailingBytes,
};

std::string_view to_string(DecodeError error);

using DecodeResult = std::variant<ManagementFrame, DecodeError>;

/// Never throws; any byte string maps to a frame or the first layout rule it breaks.
DecodeResult decode_frame(std::span<const std::uint8_t> bytes);

/// Destination MAC read straight from bytes 7..12, without validating the rest.
std::optional<MacAddress> peek_destination(std::span<const std::uint8_t> bytes);

/// One-line log rendering, e.g. "deauth aa:..:aa -> bb:..:bb reason=3 token=...".
std::string describe(const ManagementFrame& frame);

}  // namespace deauthguard
