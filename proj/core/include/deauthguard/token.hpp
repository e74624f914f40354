#pragma once

// Association tokens (RFC 4122 version 4 UUIDs) and their SHA-512 commitments.

#include <array>
#include <compare>
#include <concepts>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>

namespace deauthguard {

using TokenBytes = std::array<std::uint8_t, 16>;
using DigestBytes = std::array<std::uint8_t, 64>;

/// 128-bit RFC 4122 v4 / variant 1 identifier. Every instance carries the
/// version and variant bits; arbitrary 16-byte values go through from_bytes.
class Token {
public:
    static constexpr std::size_t kSize = 16;

    /// Forces the version (byte 6 high nibble = 4) and variant (byte 8 top bits = 10).
    static Token from_random_bytes(TokenBytes raw);
    /// Accepts only byte strings that already satisfy the v4 layout.
    static std::optional<Token> from_bytes(std::span<const std::uint8_t> raw);
    static std::optional<Token> parse(std::string_view text);

    const TokenBytes& bytes() const { return bytes_; }
    std::uint8_t version() const { return bytes_[6] >> 4; }
    std::uint8_t variant_bits() const { return bytes_[8] >> 6; }

    /// Lowercase 8-4-4-4-12 hyphenated form.
    std::string to_string() const;

    friend bool operator==(const Token&, const Token&) = default;
    friend auto operator<=>(const Token&, const Token&) = default;

private:
    explicit Token(const TokenBytes& b) : bytes_(b) {}
    TokenBytes bytes_{};
};

/// 512-bit SHA-512 output. Any 64-byte value is a valid digest.
class Digest {
public:
    static constexpr std::size_t kSize = 64;

    Digest() = default;
    explicit Digest(const DigestBytes& b) : bytes_(b) {}
    static std::optional<Digest> from_bytes(std::span<const std::uint8_t> raw);

    const DigestBytes& bytes() const { return bytes_; }
    /// 128 lowercase hex characters.
    std::string to_hex() const;

    friend bool operator==(const Digest&, const Digest&) = default;
    friend auto operator<=>(const Digest&, const Digest&) = default;

private:
    DigestBytes bytes_{};
};

/// Seeded random source used by every simulation path. std::mt19937_64 is
/// fully specified by the standard, so a seed replays identically everywhere.
using TokenRng = std::mt19937_64;

template <typename Rng>
concept Rng64 = std::uniform_random_bit_generator<Rng> &&
                std::same_as<typename Rng::result_type, std::uint64_t> &&
                (Rng::min() == 0) && (Rng::max() == ~std::uint64_t{0});

/// Two consecutive 64-bit draws, big-endian into the 16 bytes, then the
/// version/variant bits are forced.
template <Rng64 Rng>
Token generate_token(Rng& rng) {
    TokenBytes raw{};
    for (int word = 0; word < 2; ++word) {
        std::uint64_t v = rng();
        for (int i = 7; i >= 0; --i) {
            raw[word * 8 + i] = static_cast<std::uint8_t>(v);
            v >>= 8;
        }
    }
    return Token::from_random_bytes(raw);
}

/// OS entropy.
Token generate_token();

/// SHA-512 over the 16 raw token bytes (not the text form).
Digest hash_token(const Token& token);

/// Same hash over any 16-byte value, for checking tokens received off the air.
Digest hash_token_bytes(std::span<const std::uint8_t, 16> raw);

}  // namespace deauthguard
