// SPDX-License-Identifier: Apache-2.0
#include "rca/common/time.hpp"

#include <fmt/format.h>

#include <ctime>

namespace rca {

std::string format_timestamp(EpochMs ts) {
  EpochMs seconds = ts / 1000;
  EpochMs millis = ts % 1000;
  if (millis < 0) {
    millis += 1000;
    seconds -= 1;
  }
  const std::time_t t = static_cast<std::time_t>(seconds);
  std::tm tm{};
  gmtime_r(&t, &tm);
  return fmt::format("{:04d}-{:02d}-{:02d} {:02d}:{:02d}:{:02d}.{:03d}", tm.tm_year + 1900, tm.tm_mon + 1,
                     tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec, static_cast<int>(millis));
}

}  // namespace rca
