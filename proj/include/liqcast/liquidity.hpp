#pragma once

#include <string>
#include <vector>

#include "liqcast/candle.hpp"
#include "liqcast/errors.hpp"
#include "liqcast/indicators.hpp"

namespace liqcast {

enum class VolumeSource { Base, Quote };

inline VolumeSource volume_source_from_string(const std::string& s) {
    if (s == "base") return VolumeSource::Base;
    if (s == "quote") return VolumeSource::Quote;
    throw UsageError("unknown volume source '" + s + "' (expected base or quote)");
}

inline std::string to_string(VolumeSource v) {
    return v == VolumeSource::Base ? "base" : "quote";
}

inline double pick_volume(const Candle& c, VolumeSource src) {
    return src == VolumeSource::Base ? c.volume_base : c.volume_quote;
}

/// Volume-to-volatility ratio: volume / (high - low + epsilon). The epsilon
/// keeps zero-range bars finite; large values flag heavy turnover inside a
/// narrow range, small values flag thin trading.
inline double vvr(double volume, double high, double low, double epsilon = 1e-6) {
    return volume / (high - low + epsilon);
}

inline std::vector<double> vvr_series(const CandleSeries& s, double epsilon = 1e-6,
                                      VolumeSource src = VolumeSource::Base) {
    std::vector<double> out;
    out.reserve(s.size());
    for (const auto& c : s.bars) out.push_back(vvr(pick_volume(c, src), c.high, c.low, epsilon));
    return out;
}

/// Typical price (high + low + close) / 3, the per-bar price used by VWAP.
inline double typical_price(double high, double low, double close) {
    return (high + low + close) / 3.0;
}

inline std::vector<double> typical_price_series(const CandleSeries& s) {
    std::vector<double> out;
    out.reserve(s.size());
    for (const auto& c : s.bars) out.push_back(typical_price(c.high, c.low, c.close));
    return out;
}

/// Rolling volume-weighted average price over the `window` bars ending at t:
/// sum(tp * volume) / sum(volume). Undefined during the warm-up prefix and
/// wherever the window's volume sums to zero. window = 0 selects the
/// cumulative variant, anchored at the start of the series.
inline std::vector<double> vwap_series(const CandleSeries& s, std::size_t window = 14,
                                       VolumeSource src = VolumeSource::Base) {
    std::vector<double> out(s.size(), kUndefined);
    if (window == 0) {
        double pv = 0.0, v = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            const Candle& c = s.bars[i];
            const double vol = pick_volume(c, src);
            pv += typical_price(c.high, c.low, c.close) * vol;
            v += vol;
            if (v > 0.0) out[i] = pv / v;
        }
        return out;
    }
    for (std::size_t i = window - 1; i < s.size(); ++i) {
        double pv = 0.0, v = 0.0;
        for (std::size_t j = i + 1 - window; j <= i; ++j) {
            const Candle& c = s.bars[j];
            const double vol = pick_volume(c, src);
            pv += typical_price(c.high, c.low, c.close) * vol;
            v += vol;
        }
        if (v > 0.0) out[i] = pv / v;
    }
    return out;
}

} // namespace liqcast
