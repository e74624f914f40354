#include "deauthguard/token.hpp"

#include "deauthguard/bytes.hpp"
#include "deauthguard/sha512.hpp"

#include <algorithm>

namespace deauthguard {

Token Token::from_random_bytes(TokenBytes raw) {
    raw[6] = static_cast<std::uint8_t>((raw[6] & 0x0f) | 0x40);
    raw[8] = static_cast<std::uint8_t>((raw[8] & 0x3f) | 0x80);
    return Token(raw);
}

std::optional<Token> Token::from_bytes(std::span<const std::uint8_t> raw) {
    if (raw.size() != kSize) return std::nullopt;
    if ((raw[6] >> 4) != 0x4 || (raw[8] >> 6) != 0x2) return std::nullopt;
    TokenBytes b{};
    std::copy(raw.begin(), raw.end(), b.begin());
    return Token(b);
}

std::optional<Token> Token::parse(std::string_view text) {
    if (text.size() != 36) return std::nullopt;
    std::string compact;
    for (std::size_t i = 0; i < text.size(); ++i) {
        bool dash_slot = (i == 8 || i == 13 || i == 18 || i == 23);
        if (dash_slot != (text[i] == '-')) return std::nullopt;
        if (!dash_slot) compact.push_back(text[i]);
    }
    try {
        return from_bytes(from_hex(compact));
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

std::string Token::to_string() const {
    std::string hex = to_hex(bytes_);
    return hex.substr(0, 8) + '-' + hex.substr(8, 4) + '-' + hex.substr(12, 4) + '-' +
           hex.substr(16, 4) + '-' + hex.substr(20, 12);
}

std::optional<Digest> Digest::from_bytes(std::span<const std::uint8_t> raw) {
    if (raw.size() != kSize) return std::nullopt;
    DigestBytes b{};
    std::copy(raw.begin(), raw.end(), b.begin());
    return Digest(b);
}

std::string Digest::to_hex() const { return deauthguard::to_hex(bytes_); }

Token generate_token() {
    std::random_device entropy;
    TokenBytes raw{};
    for (std::size_t i = 0; i < raw.size(); i += 4) {
        auto v = static_cast<std::uint32_t>(entropy());
        for (std::size_t j = 0; j < 4; ++j) raw[i + j] = static_cast<std::uint8_t>(v >> (8 * j));
    }
    return Token::from_random_bytes(raw);
}

Digest hash_token(const Token& token) { return Digest(sha512(token.bytes())); }

Digest hash_token_bytes(std::span<const std::uint8_t, 16> raw) { return Digest(sha512(raw)); }

}  // namespace deauthguard
