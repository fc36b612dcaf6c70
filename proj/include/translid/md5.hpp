#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace translid {

using Md5Digest = std::array<std::uint8_t, 16>;

Md5Digest md5(std::string_view text);
Md5Digest md5(std::span<const std::uint8_t> data);

// Lowercase hex, 32 characters.
std::string to_hex(const Md5Digest& digest);

}  // namespace translid
