#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace deauthguard {

using Bytes = std::vector<std::uint8_t>;

/// Lowercase hex, no separators.
std::string to_hex(std::span<const std::uint8_t> bytes);

/// Parses an even-length hex string (either case). Throws std::invalid_argument.
Bytes from_hex(std::string_view hex);

}  // namespace deauthguard
