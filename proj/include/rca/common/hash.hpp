// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace rca {

/// Stable across platforms and runs, unlike std::hash.
std::uint64_t fnv1a64(std::string_view data);

/// Lower-case hex SHA-256 digest.
std::string sha256_hex(std::string_view data);

}  // namespace rca
