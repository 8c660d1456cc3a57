// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace proofpilot::features {

std::array<std::uint8_t, 16> md5(std::string_view bytes);

/// First eight bytes of the MD5 digest read as a big-endian integer.
std::uint64_t md5_prefix64(std::string_view bytes);

}  // namespace proofpilot::features
