#pragma once

#include <cstdint>
#include <limits>

namespace manet {

using NodeId = std::int32_t;
using Time = double;   // seconds since simulation start

inline constexpr NodeId kBroadcast = -1;
inline constexpr Time kNever = std::numeric_limits<Time>::infinity();

}  // namespace manet
