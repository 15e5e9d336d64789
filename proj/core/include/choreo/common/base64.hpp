#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace choreo {

/// Standard alphabet with '=' padding (RFC 4648 section 4).
std::string base64Encode(std::span<const std::uint8_t> bytes);

/// Rejects characters outside the alphabet and malformed padding.
std::vector<std::uint8_t> base64Decode(std::string_view text);

} // namespace choreo
