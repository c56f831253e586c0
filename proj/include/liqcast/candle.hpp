#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "liqcast/errors.hpp"
#include "liqcast/time_util.hpp"

namespace liqcast {

/// One OHLCV bar. Volumes are non-negative; a missing volume column loads as 0.
struct Candle {
    std::int64_t timestamp = 0; // epoch seconds, bar open time
    double open = 0.0;
    double high = 0.0;
    double low = 0.0;
    double close = 0.0;
    double volume_base = 0.0;
    double volume_quote = 0.0;
};

/// Returns an empty string when the candle is well formed, else a reason.
inline std::string candle_problem(const Candle& c) {
    const double vals[] = {c.open, c.high, c.low, c.close, c.volume_base, c.volume_quote};
    for (double v : vals)
        if (!std::isfinite(v)) return "non-finite field";
    if (c.open <= 0 || c.high <= 0 || c.low <= 0 || c.close <= 0) return "non-positive price";
    if (c.volume_base < 0 || c.volume_quote < 0) return "negative volume";
    if (c.low > c.high) return "low above high";
    if (c.open < c.low || c.open > c.high) return "open outside [low, high]";
    if (c.close < c.low || c.close > c.high) return "close outside [low, high]";
    return {};
}

/// Bars sorted ascending by timestamp with a fixed bar interval.
struct CandleSeries {
    std::vector<Candle> bars;
    std::int64_t interval_seconds = 86400;

    std::size_t size() const { return bars.size(); }
    bool empty() const { return bars.empty(); }
    const Candle& operator[](std::size_t i) const { return bars[i]; }
};

/// Throws DataError unless timestamps are strictly increasing and aligned to the interval grid.
inline void require_regular(const CandleSeries& s) {
    for (std::size_t i = 1; i < s.bars.size(); ++i) {
        const std::int64_t delta = s.bars[i].timestamp - s.bars[i - 1].timestamp;
        if (delta <= 0)
            throw DataError("timestamps not strictly increasing at row " + std::to_string(i));
        if (delta != s.interval_seconds)
            throw DataError("bar gap at " + format_timestamp(s.bars[i - 1].timestamp) +
                            ": expected interval " + std::to_string(s.interval_seconds) +
                            "s, got " + std::to_string(delta) + "s");
    }
}

} // namespace liqcast
