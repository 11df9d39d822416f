#pragma once

#include <chrono>
#include <string>

namespace mmrt {

// ISO 8601 UTC with millisecond precision, e.g. "2026-08-10T14:03:22.117Z".
std::string utc_timestamp(std::chrono::system_clock::time_point tp);
std::string utc_now();

}  // namespace mmrt
