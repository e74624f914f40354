#include "deauthguard/frame.hpp"

#include <algorithm>
#include <cstdio>

namespace deauthguard {

std::optional<MacAddress> MacAddress::parse(std::string_view text) {
    if (text.size() != 17) return std::nullopt;
    std::array<std::uint8_t, kSize> octets{};
    for (std::size_t i = 0; i < kSize; ++i) {
        if (i > 0) {
            char sep = text[i * 3 - 1];
            if (sep != ':' && sep != '-') return std::nullopt;
        }
        try {
            auto b = from_hex(text.substr(i * 3, 2));
            octets[i] = b[0];
        } catch (const std::invalid_argument&) {
            return std::nullopt;
        }
    }
    return MacAddress(octets);
}

std::string MacAddress::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < kSize; ++i) {
        if (i > 0) out.push_back(':');
        out += to_hex(std::span(octets_).subspan(i, 1));
    }
    return out;
}

std::string_view ReasonCode::description() const {
    switch (value) {
        case 1: return "unspecified";
        case 2: return "prior authentication is not valid";
        case 3: return "station has left the basic service area and is deauthenticated";
        case 4: return "inactivity timer expired and station was disassociated";
        case 5: return "disassociated due to insufficient resources at the access point";
        case 6: return "incorrect frame type or subtype received from unauthenticated station";
        case 7: return "incorrect frame type or subtype received from nonassociated station";
        case 8: return "station has left the basic service area and is disassociated";
        case 9: return "association requested before authentication is complete";
        default: return "reserved";
    }
}

std::string_view to_string(Subtype subtype) {
    switch (subtype) {
        case Subtype::AssocRequest: return "assoc_request";
        case Subtype::AssocResponse: return "assoc_response";
        case Subtype::Disassociation: return "disassoc";
        case Subtype::Deauthentication: return "deauth";
        case Subtype::AuthRequest: return "auth_request";
        case Subtype::AuthResponse: return "auth_response";
    }
    return "unknown";
}

std::optional<Subtype> subtype_from_code(std::uint8_t code) {
    switch (code) {
        case 0x00: return Subtype::AssocRequest;
        case 0x01: return Subtype::AssocResponse;
        case 0x0A: return Subtype::Disassociation;
        case 0x0C: return Subtype::Deauthentication;
        case 0x10: return Subtype::AuthRequest;
        case 0x11: return Subtype::AuthResponse;
        default: return std::nullopt;
    }
}

InformationElement InformationElement::hash(const Digest& digest) {
    InformationElement ie;
    ie.kind_ = PayloadKind::Hash;
    ie.storage_ = digest.bytes();
    return ie;
}

InformationElement InformationElement::token(std::span<const std::uint8_t, 16> raw) {
    InformationElement ie;
    ie.kind_ = PayloadKind::Token;
    std::copy(raw.begin(), raw.end(), ie.storage_.begin());
    return ie;
}

std::span<const std::uint8_t> InformationElement::payload() const {
    return std::span(storage_).first(kind_ == PayloadKind::Hash ? Digest::kSize : Token::kSize);
}

std::optional<Digest> InformationElement::as_digest() const {
    if (kind_ != PayloadKind::Hash) return std::nullopt;
    return Digest(storage_);
}

std::optional<TokenBytes> InformationElement::as_token() const {
    if (kind_ != PayloadKind::Token) return std::nullopt;
    TokenBytes out{};
    std::copy_n(storage_.begin(), out.size(), out.begin());
    return out;
}

Bytes encode_frame(const ManagementFrame& frame) {
    Bytes out;
    out.reserve(kHashFrameSize);
    out.push_back(static_cast<std::uint8_t>(frame.subtype));
    out.insert(out.end(), frame.src.octets().begin(), frame.src.octets().end());
    out.insert(out.end(), frame.dst.octets().begin(), frame.dst.octets().end());
    out.push_back(static_cast<std::uint8_t>(frame.status_or_reason & 0xff));
    out.push_back(static_cast<std::uint8_t>(frame.status_or_reason >> 8));
    if (frame.ie) {
        auto payload = frame.ie->payload();
        out.push_back(InformationElement::kElementId);
        out.push_back(static_cast<std::uint8_t>(payload.size() + 1));
        out.push_back(static_cast<std::uint8_t>(frame.ie->kind()));
        out.insert(out.end(), payload.begin(), payload.end());
    }
    return out;
}

std::string_view to_string(DecodeError error) {
    switch (error) {
        case DecodeError::TooShort: return "too_short";
        case DecodeError::UnknownSubtype: return "unknown_subtype";
        case DecodeError::BadIeLength: return "bad_ie_length";
        case DecodeError::TrailingBytes: return "trailing_bytes";
    }
    return "unknown";
}

namespace {

MacAddress read_mac(std::span<const std::uint8_t> bytes, std::size_t offset) {
    std::array<std::uint8_t, MacAddress::kSize> octets{};
    std::copy_n(bytes.begin() + static_cast<std::ptrdiff_t>(offset), octets.size(), octets.begin());
    return MacAddress(octets);
}

}  // namespace

DecodeResult decode_frame(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < kHeaderSize) return DecodeError::TooShort;
    auto subtype = subtype_from_code(bytes[0]);
    if (!subtype) return DecodeError::UnknownSubtype;

    ManagementFrame frame;
    frame.subtype = *subtype;
    frame.src = read_mac(bytes, 1);
    frame.dst = read_mac(bytes, 7);
    frame.status_or_reason = static_cast<std::uint16_t>(bytes[13] | (bytes[14] << 8));
    if (bytes.size() == kHeaderSize) return frame;

    // Anything after the header must be exactly one vendor IE.
    if (bytes[kHeaderSize] != InformationElement::kElementId) return DecodeError::TrailingBytes;
    if (bytes.size() < kHeaderSize + 3) return DecodeError::BadIeLength;

    const std::size_t declared = bytes[kHeaderSize + 1];
    const std::uint8_t kind = bytes[kHeaderSize + 2];
    std::size_t expected_payload = 0;
    if (kind == static_cast<std::uint8_t>(PayloadKind::Hash)) {
        expected_payload = Digest::kSize;
    } else if (kind == static_cast<std::uint8_t>(PayloadKind::Token)) {
        expected_payload = Token::kSize;
    } else {
        return DecodeError::BadIeLength;
    }
    if (declared != expected_payload + 1) return DecodeError::BadIeLength;

    const std::size_t end = kHeaderSize + 2 + declared;
    if (bytes.size() < end) return DecodeError::BadIeLength;
    if (bytes.size() > end) return DecodeError::TrailingBytes;

    auto payload = bytes.subspan(kHeaderSize + 3, expected_payload);
    if (expected_payload == Digest::kSize) {
        frame.ie = InformationElement::hash(*Digest::from_bytes(payload));
    } else {
        frame.ie = InformationElement::token(payload.first<16>());
    }
    return frame;
}

std::optional<MacAddress> peek_destination(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 13) return std::nullopt;
    return read_mac(bytes, 7);
}

std::string describe(const ManagementFrame& frame) {
    std::string out{to_string(frame.subtype)};
    out += ' ';
    out += frame.src.to_string();
    out += " -> ";
    out += frame.dst.to_string();
    if (frame.is_teardown()) {
        out += " reason=" + std::to_string(frame.status_or_reason);
    } else if (frame.subtype == Subtype::AssocResponse || frame.subtype == Subtype::AuthResponse) {
        out += " status=" + std::to_string(frame.status_or_reason);
    }
    if (frame.ie) {
        out += frame.ie->kind() == PayloadKind::Hash ? " hash=" : " token=";
        out += to_hex(frame.ie->payload());
    }
    return out;
}

}  // namespace deauthguard
