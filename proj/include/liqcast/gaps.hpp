#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "liqcast/candle.hpp"
#include "liqcast/errors.hpp"

namespace liqcast {

enum class GapPolicy { ForwardFill, Drop, Error };

inline GapPolicy gap_policy_from_string(const std::string& s) {
    if (s == "forward-fill-close") return GapPolicy::ForwardFill;
    if (s == "drop") return GapPolicy::Drop;
    if (s == "error") return GapPolicy::Error;
    throw UsageError("unknown gap policy '" + s + "' (expected forward-fill-close, drop, or error)");
}

inline std::string to_string(GapPolicy p) {
    switch (p) {
        case GapPolicy::ForwardFill: return "forward-fill-close";
        case GapPolicy::Drop: return "drop";
        case GapPolicy::Error: return "error";
    }
    return "?";
}

struct GapFillResult {
    CandleSeries series;
    std::size_t gaps_found = 0;    // missing grid slots across all gaps
    std::size_t bars_inserted = 0; // equals gaps_found under forward-fill
};

/// Resolve holes in the timestamp grid.
///
/// ForwardFill inserts flat bars (open=high=low=close=previous close, zero
/// volume) for every missing slot; gaps whose width is not a whole number of
/// intervals cannot be filled and raise DataError. Drop leaves the series as
/// is, only counting missing slots (a misaligned delta counts as one gap);
/// downstream consumers then see an irregular grid. Error raises on the first
/// hole. Input must be strictly increasing by timestamp.
inline GapFillResult fill_gaps(const CandleSeries& input, GapPolicy policy) {
    const std::int64_t step = input.interval_seconds;
    GapFillResult result;
    result.series.interval_seconds = step;
    auto& out = result.series.bars;
    out.reserve(input.bars.size());

    for (std::size_t i = 0; i < input.bars.size(); ++i) {
        const Candle& cur = input.bars[i];
        if (i > 0) {
            const Candle& prev = input.bars[i - 1];
            const std::int64_t delta = cur.timestamp - prev.timestamp;
            if (delta <= 0)
                throw DataError("timestamps not strictly increasing at " +
                                format_timestamp(cur.timestamp));
            if (delta != step) {
                const bool aligned = delta % step == 0;
                const std::size_t missing = aligned ? static_cast<std::size_t>(delta / step - 1) : 1;
                result.gaps_found += missing;
                switch (policy) {
                    case GapPolicy::Error:
                        throw DataError("gap after " + format_timestamp(prev.timestamp) +
                                        " (" + std::to_string(delta) + "s between bars)");
                    case GapPolicy::Drop:
                        break;
                    case GapPolicy::ForwardFill: {
                        if (!aligned)
                            throw DataError("gap after " + format_timestamp(prev.timestamp) +
                                            " is not a whole number of intervals; cannot fill");
                        for (std::int64_t t = prev.timestamp + step; t < cur.timestamp; t += step) {
                            Candle filler;
                            filler.timestamp = t;
                            filler.open = filler.high = filler.low = filler.close = prev.close;
                            filler.volume_base = 0.0;
                            filler.volume_quote = 0.0;
                            out.push_back(filler);
                            ++result.bars_inserted;
                        }
                        break;
                    }
                }
            }
        }
        out.push_back(cur);
    }
    return result;
}

} // namespace liqcast
