#pragma once

// Test-only oracles. Nothing here calls into the library code it checks.

#include <openssl/evp.h>

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace oracle {

/// SHA-512 via OpenSSL's EVP interface.
inline std::array<std::uint8_t, 64> openssl_sha512(std::span<const std::uint8_t> data) {
    std::array<std::uint8_t, 64> out{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha512(), nullptr) != 1 || len != 64)
        throw std::runtime_error("EVP_Digest failed");
    return out;
}

/// MT19937-64, written out from the reference algorithm (Nishimura & Matsumoto).
class Mt64 {
public:
    explicit Mt64(std::uint64_t seed) {
        mt_[0] = seed;
        for (index_ = 1; index_ < kN; ++index_)
            mt_[index_] = 6364136223846793005ull * (mt_[index_ - 1] ^ (mt_[index_ - 1] >> 62)) + index_;
    }

    std::uint64_t next() {
        if (index_ >= kN) twist();
        std::uint64_t x = mt_[index_++];
        x ^= (x >> 29) & 0x5555555555555555ull;
        x ^= (x << 17) & 0x71d67fffeda60000ull;
        x ^= (x << 37) & 0xfff7eee000000000ull;
        x ^= x >> 43;
        return x;
    }

private:
    static constexpr std::size_t kN = 312;
    static constexpr std::size_t kM = 156;
    static constexpr std::uint64_t kUpper = 0xffffffff80000000ull;
    static constexpr std::uint64_t kLower = 0x7fffffffull;
    static constexpr std::uint64_t kMatrixA = 0xb5026f5aa96619e9ull;

    void twist() {
        for (std::size_t i = 0; i < kN; ++i) {
            std::uint64_t y = (mt_[i] & kUpper) | (mt_[(i + 1) % kN] & kLower);
            std::uint64_t v = mt_[(i + kM) % kN] ^ (y >> 1);
            if (y & 1) v ^= kMatrixA;
            mt_[i] = v;
        }
        index_ = 0;
    }

    std::array<std::uint64_t, kN> mt_{};
    std::size_t index_ = kN;
};

inline std::string hex(std::span<const std::uint8_t> bytes) {
    static const char* digits = "0123456789abcdef";
    std::string s;
    for (auto b : bytes) {
        s.push_back(digits[b >> 4]);
        s.push_back(digits[b & 15]);
    }
    return s;
}

inline std::vector<std::uint8_t> bytes_of(const std::string& s) { return {s.begin(), s.end()}; }

}  // namespace oracle
