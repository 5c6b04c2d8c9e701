#pragma once

#include <cmath>
#include <functional>
#include <string>

namespace lecturekit
{

/// All timestamp comparisons are made to millisecond tolerance.
inline constexpr double kTimeEpsilon = 1e-3;

inline double roundMillis(double seconds)
{
    return std::round(seconds * 1000.0) / 1000.0;
}

inline bool timeLess(double a, double b)
{
    return a < b - kTimeEpsilon;
}

inline bool timeNear(double a, double b)
{
    return std::fabs(a - b) <= kTimeEpsilon;
}

/// Source of ISO-8601 UTC wall-clock stamps; injectable so logs are reproducible.
using WallClock = std::function<std::string()>;

std::string isoUtcNow();

} // namespace lecturekit
