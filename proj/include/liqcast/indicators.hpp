#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "liqcast/errors.hpp"

namespace liqcast {

/// Indicators mark their warm-up prefix with quiet NaN; downstream code treats
/// NaN as "undefined at this bar" and never feeds it to a model.
inline constexpr double kUndefined = std::numeric_limits<double>::quiet_NaN();

inline bool is_defined(double v) { return !std::isnan(v); }

/// Simple moving average over the window ending at each bar.
inline std::vector<double> sma(const std::vector<double>& x, std::size_t period) {
    if (period == 0) throw UsageError("sma period must be positive");
    std::vector<double> out(x.size(), kUndefined);
    if (x.size() < period) return out;
    double running = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        running += x[i];
        if (i >= period) running -= x[i - period];
        if (i + 1 >= period) out[i] = running / static_cast<double>(period);
    }
    return out;
}

/// Exponential moving average seeded with the SMA of the first `period` values,
/// then ema_t = alpha * x_t + (1 - alpha) * ema_{t-1} with alpha = 2 / (period + 1).
inline std::vector<double> ema(const std::vector<double>& x, std::size_t period) {
    if (period == 0) throw UsageError("ema period must be positive");
    std::vector<double> out(x.size(), kUndefined);
    if (x.size() < period) return out;
    double seed = 0.0;
    for (std::size_t i = 0; i < period; ++i) seed += x[i];
    out[period - 1] = seed / static_cast<double>(period);
    const double alpha = 2.0 / (static_cast<double>(period) + 1.0);
    for (std::size_t i = period; i < x.size(); ++i)
        out[i] = alpha * x[i] + (1.0 - alpha) * out[i - 1];
    return out;
}

/// Wilder's RSI. Average gain/loss are seeded with simple means of the first
/// `period` deltas, then smoothed as avg = (avg * (period - 1) + current) / period.
/// A zero average loss reads as RSI 100 even when the average gain is also zero.
inline std::vector<double> rsi(const std::vector<double>& close, std::size_t period) {
    if (period == 0) throw UsageError("rsi period must be positive");
    std::vector<double> out(close.size(), kUndefined);
    if (close.size() < period + 1) return out;

    double avg_gain = 0.0, avg_loss = 0.0;
    for (std::size_t i = 1; i <= period; ++i) {
        const double d = close[i] - close[i - 1];
        if (d > 0) avg_gain += d;
        else avg_loss -= d;
    }
    avg_gain /= static_cast<double>(period);
    avg_loss /= static_cast<double>(period);

    const auto to_rsi = [](double gain, double loss) {
        if (loss == 0.0) return 100.0;
        if (gain == 0.0) return 0.0;
        return 100.0 - 100.0 / (1.0 + gain / loss);
    };
    out[period] = to_rsi(avg_gain, avg_loss);
    const double p = static_cast<double>(period);
    for (std::size_t i = period + 1; i < close.size(); ++i) {
        const double d = close[i] - close[i - 1];
        avg_gain = (avg_gain * (p - 1.0) + (d > 0 ? d : 0.0)) / p;
        avg_loss = (avg_loss * (p - 1.0) + (d < 0 ? -d : 0.0)) / p;
        out[i] = to_rsi(avg_gain, avg_loss);
    }
    return out;
}

struct MacdResult {
    std::vector<double> macd;      // fast EMA - slow EMA
    std::vector<double> signal;    // EMA of the macd line
    std::vector<double> histogram; // macd - signal
};

/// MACD(fast, slow, signal). The signal EMA is seeded with the SMA of the first
/// `signal_period` defined macd values, so it becomes defined at index
/// slow_period + signal_period - 2.
inline MacdResult macd(const std::vector<double>& close, std::size_t fast_period = 12,
                       std::size_t slow_period = 26, std::size_t signal_period = 9) {
    if (fast_period == 0 || slow_period == 0 || signal_period == 0)
        throw UsageError("macd periods must be positive");
    if (fast_period >= slow_period)
        throw UsageError("macd fast period must be shorter than slow period");

    MacdResult r;
    const auto fast = ema(close, fast_period);
    const auto slow = ema(close, slow_period);
    r.macd.assign(close.size(), kUndefined);
    for (std::size_t i = 0; i < close.size(); ++i)
        if (is_defined(fast[i]) && is_defined(slow[i])) r.macd[i] = fast[i] - slow[i];

    r.signal.assign(close.size(), kUndefined);
    r.histogram.assign(close.size(), kUndefined);
    const std::size_t first = slow_period - 1; // first defined macd index
    if (close.size() >= first + signal_period) {
        std::vector<double> defined(r.macd.begin() + static_cast<std::ptrdiff_t>(first),
                                    r.macd.end());
        const auto sig = ema(defined, signal_period);
        for (std::size_t i = 0; i < sig.size(); ++i) {
            if (!is_defined(sig[i])) continue;
            r.signal[first + i] = sig[i];
            r.histogram[first + i] = r.macd[first + i] - sig[i];
        }
    }
    return r;
}

} // namespace liqcast
