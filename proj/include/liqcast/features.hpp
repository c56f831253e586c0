#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "liqcast/candle.hpp"
#include "liqcast/errors.hpp"
#include "liqcast/indicators.hpp"
#include "liqcast/io_util.hpp"
#include "liqcast/liquidity.hpp"

namespace liqcast {

/// Feature recipe. A period of 0 disables the corresponding indicator;
/// vwap_window 0 selects the cumulative VWAP.
struct FeatureConfig {
    std::vector<std::size_t> close_lags = {1, 2, 3};
    std::vector<std::size_t> sma_windows = {7, 14};
    std::size_t rsi_period = 14;
    std::size_t macd_fast = 12;
    std::size_t macd_slow = 26;
    std::size_t macd_signal = 9;
    bool include_typical_price = false;
    bool include_liquidity = true;
    double epsilon = 1e-6;
    std::size_t vwap_window = 14;
    VolumeSource volume_source = VolumeSource::Base;

    bool macd_enabled() const { return macd_fast > 0; }

    void validate() const {
        for (std::size_t lag : close_lags)
            if (lag == 0) throw UsageError("close lags must be >= 1");
        std::set<std::size_t> seen(close_lags.begin(), close_lags.end());
        if (seen.size() != close_lags.size()) throw UsageError("duplicate close lag");
        std::set<std::size_t> sma_seen(sma_windows.begin(), sma_windows.end());
        if (sma_seen.size() != sma_windows.size()) throw UsageError("duplicate sma window");
        for (std::size_t w : sma_windows)
            if (w == 0) throw UsageError("sma windows must be >= 1");
        if (macd_enabled()) {
            if (macd_slow == 0 || macd_signal == 0)
                throw UsageError("macd slow and signal periods must be positive");
            if (macd_fast >= macd_slow)
                throw UsageError("macd fast period must be shorter than slow period");
        }
        if (!(epsilon > 0.0)) throw UsageError("epsilon must be positive");
    }

    /// Column names in emission order.
    std::vector<std::string> column_names() const {
        std::vector<std::string> cols = {"open", "high", "low", "close", "volume"};
        if (include_typical_price) cols.push_back("typical_price");
        for (std::size_t lag : close_lags) cols.push_back("close_lag_" + std::to_string(lag));
        for (std::size_t w : sma_windows) cols.push_back("sma_" + std::to_string(w));
        if (rsi_period > 0) cols.push_back("rsi_" + std::to_string(rsi_period));
        if (macd_enabled()) {
            cols.push_back("macd");
            cols.push_back("macd_signal");
            cols.push_back("macd_histogram");
        }
        if (include_liquidity) {
            cols.push_back("vvr");
            cols.push_back("vwap");
        }
        return cols;
    }

    /// The columns the liquidity ablation removes.
    static const std::vector<std::string>& liquidity_columns() {
        static const std::vector<std::string> cols = {"vvr", "vwap"};
        return cols;
    }
};

/// Row-major feature table. Row r describes bar timestamps[r]; raw_close keeps
/// the unscaled close of the same bar for target construction later. config
/// echoes the recipe that generated the table (column subsets produced by
/// select/drop keep the generating recipe).
struct FeatureMatrix {
    std::vector<std::string> columns;
    std::vector<std::int64_t> timestamps;
    std::vector<double> raw_close;
    std::vector<double> data; // rows * columns.size(), row-major
    std::size_t warmup_rows_dropped = 0;
    FeatureConfig config;

    std::size_t rows() const { return timestamps.size(); }
    std::size_t cols() const { return columns.size(); }
    double at(std::size_t r, std::size_t c) const { return data[r * columns.size() + c]; }
    double& at(std::size_t r, std::size_t c) { return data[r * columns.size() + c]; }

    std::size_t column_index(const std::string& name) const {
        for (std::size_t i = 0; i < columns.size(); ++i)
            if (columns[i] == name) return i;
        throw UsageError("unknown feature column: " + name);
    }

    std::vector<double> column(std::size_t c) const {
        std::vector<double> out(rows());
        for (std::size_t r = 0; r < rows(); ++r) out[r] = at(r, c);
        return out;
    }

    /// Copy of this matrix keeping only the named columns, in the given order.
    FeatureMatrix select(const std::vector<std::string>& names) const {
        FeatureMatrix out;
        out.columns = names;
        out.timestamps = timestamps;
        out.raw_close = raw_close;
        out.warmup_rows_dropped = warmup_rows_dropped;
        out.config = config;
        std::vector<std::size_t> idx;
        idx.reserve(names.size());
        for (const auto& n : names) idx.push_back(column_index(n));
        out.data.reserve(rows() * names.size());
        for (std::size_t r = 0; r < rows(); ++r)
            for (std::size_t c : idx) out.data.push_back(at(r, c));
        return out;
    }

    /// Copy with the named columns removed. Throws if any name is absent.
    FeatureMatrix drop(const std::vector<std::string>& names) const {
        std::vector<std::string> keep;
        for (const auto& col : columns) {
            if (std::find(names.begin(), names.end(), col) == names.end()) keep.push_back(col);
        }
        if (keep.size() + names.size() != columns.size()) {
            for (const auto& n : names) column_index(n); // throws with the missing name
        }
        return select(keep);
    }
};

/// Compute the feature table for a regular series. Bars whose features are not
/// all defined yet (indicator warm-up) are dropped from the front; an undefined
/// value after warm-up, such as a VWAP window with zero total volume, is a
/// DataError because models cannot consume it.
inline FeatureMatrix build_feature_matrix(const CandleSeries& series, const FeatureConfig& cfg) {
    cfg.validate();
    require_regular(series);
    const std::size_t n = series.size();
    if (n == 0) throw DataError("cannot build features from an empty series");

    std::vector<double> close(n), volume(n);
    for (std::size_t i = 0; i < n; ++i) {
        close[i] = series.bars[i].close;
        volume[i] = pick_volume(series.bars[i], cfg.volume_source);
    }

    FeatureMatrix m;
    m.columns = cfg.column_names();
    m.config = cfg;
    std::vector<std::vector<double>> cols;
    cols.reserve(m.columns.size());

    const auto direct = [&](auto getter) {
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = getter(series.bars[i]);
        cols.push_back(std::move(v));
    };
    direct([](const Candle& c) { return c.open; });
    direct([](const Candle& c) { return c.high; });
    direct([](const Candle& c) { return c.low; });
    direct([](const Candle& c) { return c.close; });
    cols.push_back(volume);
    if (cfg.include_typical_price) cols.push_back(typical_price_series(series));
    for (std::size_t lag : cfg.close_lags) {
        std::vector<double> v(n, kUndefined);
        for (std::size_t i = lag; i < n; ++i) v[i] = close[i - lag];
        cols.push_back(std::move(v));
    }
    for (std::size_t w : cfg.sma_windows) cols.push_back(sma(close, w));
    if (cfg.rsi_period > 0) cols.push_back(rsi(close, cfg.rsi_period));
    if (cfg.macd_enabled()) {
        auto r = macd(close, cfg.macd_fast, cfg.macd_slow, cfg.macd_signal);
        cols.push_back(std::move(r.macd));
        cols.push_back(std::move(r.signal));
        cols.push_back(std::move(r.histogram));
    }
    if (cfg.include_liquidity) {
        cols.push_back(vvr_series(series, cfg.epsilon, cfg.volume_source));
        cols.push_back(vwap_series(series, cfg.vwap_window, cfg.volume_source));
    }

    std::size_t first_defined = n;
    for (std::size_t r = 0; r < n; ++r) {
        bool all = true;
        for (const auto& col : cols)
            if (!is_defined(col[r])) { all = false; break; }
        if (all) { first_defined = r; break; }
    }
    if (first_defined == n)
        throw DataError("series too short: no bar has all features defined");

    m.warmup_rows_dropped = first_defined;
    const std::size_t kept = n - first_defined;
    m.timestamps.reserve(kept);
    m.raw_close.reserve(kept);
    m.data.reserve(kept * cols.size());
    for (std::size_t r = first_defined; r < n; ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (!is_defined(cols[c][r]))
                throw DataError("feature '" + m.columns[c] + "' undefined after warm-up at " +
                                format_timestamp(series.bars[r].timestamp) +
                                " (for vwap, widen the window or use the cumulative variant)");
            m.data.push_back(cols[c][r]);
        }
        m.timestamps.push_back(series.bars[r].timestamp);
        m.raw_close.push_back(close[r]);
    }
    return m;
}

/// Parse a feature CSV written by to_csv below. The generating recipe is not
/// recoverable from the file, so the config field keeps its defaults; raw_close
/// is taken from the close column when the file has one.
inline FeatureMatrix load_feature_csv(const std::string& path) {
    std::istringstream in(read_file(path));
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty feature file: " + path);
    auto header = split_csv_line(line);
    if (header.empty() || header[0] != "timestamp")
        throw DataError("feature file must start with a timestamp column: " + path);

    FeatureMatrix m;
    m.columns.assign(header.begin() + 1, header.end());
    std::size_t close_col = m.columns.size();
    for (std::size_t c = 0; c < m.columns.size(); ++c)
        if (m.columns[c] == "close") close_col = c;

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != header.size())
            throw DataError(path + " line " + std::to_string(line_no) + ": expected " +
                            std::to_string(header.size()) + " fields, got " +
                            std::to_string(fields.size()));
        const auto ts = parse_timestamp(fields[0]);
        if (!ts)
            throw DataError(path + " line " + std::to_string(line_no) + ": bad timestamp");
        m.timestamps.push_back(*ts);
        for (std::size_t c = 1; c < fields.size(); ++c) {
            const auto v = parse_double(fields[c]);
            if (!v)
                throw DataError(path + " line " + std::to_string(line_no) +
                                ": unparseable value in column " + header[c]);
            m.data.push_back(*v);
        }
        m.raw_close.push_back(close_col < m.columns.size()
                                  ? m.data[(m.timestamps.size() - 1) * m.columns.size() + close_col]
                                  : kUndefined);
    }
    if (m.rows() == 0) throw DataError("feature file has no rows: " + path);
    return m;
}

/// CSV form: timestamp column followed by the feature columns.
inline std::string to_csv(const FeatureMatrix& m) {
    std::string out = "timestamp";
    for (const auto& c : m.columns) {
        out += ',';
        out += c;
    }
    out += '\n';
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out += format_timestamp(m.timestamps[r]);
        for (std::size_t c = 0; c < m.cols(); ++c) {
            out += ',';
            out += format_double(m.at(r, c));
        }
        out += '\n';
    }
    return out;
}

} // namespace liqcast
