#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "liqcast/candle.hpp"
#include "liqcast/errors.hpp"

namespace liqcast {

struct Histogram {
    double lo = 0.0;
    double hi = 0.0;
    std::vector<std::size_t> counts;
};

/// Distribution summary of one numeric field.
struct FieldSummary {
    std::string name;
    std::size_t count = 0;
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
    double median = 0.0;
    double stddev = 0.0;   // population
    double skewness = 0.0; // m3 / m2^1.5, 0 for a constant field
    Histogram histogram;
};

inline FieldSummary summarize_field(const std::string& name, std::vector<double> values,
                                    std::size_t bins = 20) {
    if (values.empty()) throw DataError("cannot summarize empty field: " + name);
    if (bins == 0) throw UsageError("histogram needs at least one bin");

    FieldSummary s;
    s.name = name;
    s.count = values.size();
    const double n = static_cast<double>(values.size());

    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / n;

    double m2 = 0.0, m3 = 0.0;
    for (double v : values) {
        const double d = v - s.mean;
        m2 += d * d;
        m3 += d * d * d;
    }
    m2 /= n;
    m3 /= n;
    s.stddev = std::sqrt(m2);
    s.skewness = m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;

    std::sort(values.begin(), values.end());
    s.min = values.front();
    s.max = values.back();
    const std::size_t mid = values.size() / 2;
    s.median = values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);

    s.histogram.lo = s.min;
    s.histogram.hi = s.max;
    s.histogram.counts.assign(bins, 0);
    const double width = s.max - s.min;
    for (double v : values) {
        std::size_t b = width > 0.0
                            ? static_cast<std::size_t>((v - s.min) / width * static_cast<double>(bins))
                            : 0;
        if (b >= bins) b = bins - 1; // v == max lands in the last bin
        ++s.histogram.counts[b];
    }
    return s;
}

struct SeriesSummary {
    std::size_t bars = 0;
    std::int64_t first_timestamp = 0;
    std::int64_t last_timestamp = 0;
    std::vector<FieldSummary> fields;
    std::size_t zero_volume_bars = 0;
    // fraction of closes inside [0.25, 0.5], a quick shape check for low-priced assets
    double fraction_in_range = 0.0;
    double fraction_in_range_lo = 0.25;
    double fraction_in_range_hi = 0.5;
};

inline SeriesSummary summarize_series(const CandleSeries& series, std::size_t bins = 20) {
    if (series.empty()) throw DataError("cannot summarize an empty series");
    SeriesSummary out;
    out.bars = series.size();
    out.first_timestamp = series.bars.front().timestamp;
    out.last_timestamp = series.bars.back().timestamp;

    const auto collect = [&](const std::string& name, auto getter) {
        std::vector<double> v;
        v.reserve(series.size());
        for (const auto& c : series.bars) v.push_back(getter(c));
        out.fields.push_back(summarize_field(name, std::move(v), bins));
    };
    collect("open", [](const Candle& c) { return c.open; });
    collect("high", [](const Candle& c) { return c.high; });
    collect("low", [](const Candle& c) { return c.low; });
    collect("close", [](const Candle& c) { return c.close; });
    collect("volume_base", [](const Candle& c) { return c.volume_base; });
    collect("volume_quote", [](const Candle& c) { return c.volume_quote; });

    std::size_t in_range = 0;
    for (const auto& c : series.bars) {
        if (c.volume_base == 0.0) ++out.zero_volume_bars;
        if (c.close >= out.fraction_in_range_lo && c.close <= out.fraction_in_range_hi) ++in_range;
    }
    out.fraction_in_range = static_cast<double>(in_range) / static_cast<double>(series.size());
    return out;
}

} // namespace liqcast
