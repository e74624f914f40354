#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

namespace deauthguard {

/** Incremental SHA-512 (FIPS 180-4). */
class Sha512 {
public:
    static constexpr std::size_t kOutputSize = 64;
    static constexpr std::size_t kBlockSize = 128;

    Sha512();

    Sha512& update(std::span<const std::uint8_t> data);
    std::array<std::uint8_t, kOutputSize> finalize();
    Sha512& reset();

private:
    void compress(const std::uint8_t* block);

    std::array<std::uint64_t, 8> state_{};
    std::array<std::uint8_t, kBlockSize> buffer_{};
    std::size_t buffered_ = 0;
    std::uint64_t total_bytes_ = 0;  // messages beyond 2^61 bytes are not supported
};

std::array<std::uint8_t, Sha512::kOutputSize> sha512(std::span<const std::uint8_t> data);

}  // namespace deauthguard
