#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "liqcast/candle.hpp"
#include "liqcast/errors.hpp"
#include "liqcast/io_util.hpp"
#include "liqcast/time_util.hpp"

namespace liqcast {

/// Header names to look up in the input CSV. Volume columns are optional:
/// an absent name or missing column loads as 0.
struct ColumnSchema {
    std::string timestamp = "timestamp";
    std::string open = "open";
    std::string high = "high";
    std::string low = "low";
    std::string close = "close";
    std::string volume_base = "volume_base";
    std::string volume_quote = "volume_quote";
};

/// Bookkeeping for one ingest. rows_kept + duplicates_dropped + invalid_rows == rows_read.
struct IngestReport {
    std::size_t rows_read = 0;
    std::size_t rows_kept = 0;
    std::size_t duplicates_dropped = 0;
    std::size_t invalid_rows = 0;
    bool was_sorted = true;
    std::vector<std::string> problems; // first few invalid-row reasons, for diagnostics

    static constexpr std::size_t kMaxProblems = 20;

    void note_problem(std::size_t line_no, const std::string& why) {
        ++invalid_rows;
        if (problems.size() < kMaxProblems)
            problems.push_back("line " + std::to_string(line_no) + ": " + why);
    }
};

namespace detail {

inline bool same_payload(const Candle& a, const Candle& b) {
    return a.open == b.open && a.high == b.high && a.low == b.low && a.close == b.close &&
           a.volume_base == b.volume_base && a.volume_quote == b.volume_quote;
}

inline std::optional<std::size_t> find_column(const std::vector<std::string>& header,
                                              const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    return std::nullopt;
}

} // namespace detail

/// Parse OHLCV bars from CSV text. Rows that fail to parse or violate candle
/// invariants are counted and skipped. Out-of-order rows are sorted. Rows that
/// repeat a timestamp with an identical payload keep the first copy; a repeated
/// timestamp with a different payload is a hard error.
inline std::pair<CandleSeries, IngestReport> parse_candles_csv(const std::string& text,
                                                               const ColumnSchema& schema = {},
                                                               std::int64_t interval_seconds = 86400) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty input: no header row");
    const auto header = split_csv_line(line);

    const auto ts_col = detail::find_column(header, schema.timestamp);
    const auto open_col = detail::find_column(header, schema.open);
    const auto high_col = detail::find_column(header, schema.high);
    const auto low_col = detail::find_column(header, schema.low);
    const auto close_col = detail::find_column(header, schema.close);
    const auto vb_col = detail::find_column(header, schema.volume_base);
    const auto vq_col = detail::find_column(header, schema.volume_quote);
    for (const auto& [col, name] :
         {std::pair(ts_col, schema.timestamp), std::pair(open_col, schema.open),
          std::pair(high_col, schema.high), std::pair(low_col, schema.low),
          std::pair(close_col, schema.close)})
        if (!col) throw DataError("missing required column: " + name);

    IngestReport report;
    std::vector<Candle> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        ++report.rows_read;
        const auto fields = split_csv_line(line);
        const auto field = [&](std::size_t col) -> std::string_view {
            return col < fields.size() ? std::string_view(fields[col]) : std::string_view();
        };

        const auto ts = parse_timestamp(field(*ts_col));
        if (!ts) {
            report.note_problem(line_no, "bad timestamp '" + std::string(field(*ts_col)) + "'");
            continue;
        }
        Candle c;
        c.timestamp = *ts;
        bool ok = true;
        const auto load = [&](std::optional<std::size_t> col, double& dst, bool required) {
            if (!col || field(*col).empty()) {
                if (required) ok = false;
                else dst = 0.0; // absent volume column
                return;
            }
            const auto v = parse_double(field(*col));
            if (!v) ok = false;
            else dst = *v;
        };
        load(open_col, c.open, true);
        load(high_col, c.high, true);
        load(low_col, c.low, true);
        load(close_col, c.close, true);
        load(vb_col, c.volume_base, false);
        load(vq_col, c.volume_quote, false);
        if (!ok) {
            report.note_problem(line_no, "unparseable numeric field");
            continue;
        }
        if (const auto why = candle_problem(c); !why.empty()) {
            report.note_problem(line_no, why);
            continue;
        }
        rows.push_back(c);
    }

    report.was_sorted = std::is_sorted(rows.begin(), rows.end(), [](const Candle& a, const Candle& b) {
        return a.timestamp < b.timestamp;
    });
    // Stable sort so the first occurrence of a duplicated timestamp survives dedup.
    std::stable_sort(rows.begin(), rows.end(), [](const Candle& a, const Candle& b) {
        return a.timestamp < b.timestamp;
    });

    std::vector<Candle> kept;
    kept.reserve(rows.size());
    for (const auto& c : rows) {
        if (!kept.empty() && kept.back().timestamp == c.timestamp) {
            if (!detail::same_payload(kept.back(), c))
                throw DataError("conflicting rows for timestamp " + format_timestamp(c.timestamp));
            ++report.duplicates_dropped;
            continue;
        }
        kept.push_back(c);
    }
    report.rows_kept = kept.size();

    CandleSeries series;
    series.bars = std::move(kept);
    series.interval_seconds = interval_seconds;
    return {std::move(series), report};
}

inline std::pair<CandleSeries, IngestReport> load_candles(const std::string& path,
                                                          const ColumnSchema& schema = {},
                                                          std::int64_t interval_seconds = 86400) {
    return parse_candles_csv(read_file(path), schema, interval_seconds);
}

/// Canonical CSV form: fixed header, ISO-8601 timestamps, shortest round-trip
/// doubles. Re-ingesting the output reproduces the series exactly.
inline std::string to_canonical_csv(const CandleSeries& s) {
    std::string out = "timestamp,open,high,low,close,volume_base,volume_quote\n";
    for (const auto& c : s.bars) {
        out += format_timestamp(c.timestamp);
        for (double v : {c.open, c.high, c.low, c.close, c.volume_base, c.volume_quote}) {
            out += ',';
            out += format_double(v);
        }
        out += '\n';
    }
    return out;
}

} // namespace liqcast
