// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>

namespace rca {

/// Milliseconds since the Unix epoch (UTC).
using EpochMs = std::int64_t;

inline constexpr EpochMs kMsPerSecond = 1000;
inline constexpr EpochMs kMsPerMinute = 60 * kMsPerSecond;

/// "YYYY-MM-DD HH:MM:SS.mmm", UTC.
std::string format_timestamp(EpochMs ts);

}  // namespace rca
