#pragma once

namespace volwriter {

enum class Right : char { call = 'C', put = 'P' };

inline constexpr int kTradingDaysPerYear = 252;
inline constexpr int kDefaultSessionLength = 390;
inline constexpr int kContractMultiplier = 100;

} // namespace volwriter
