#pragma once

// Synthetic series builders shared by the test suites. Everything is
// deterministic in the seed so a failing case reproduces exactly.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "liqcast/candle.hpp"
#include "liqcast/features.hpp"
#include "liqcast/rng.hpp"

namespace fixtures {

constexpr std::int64_t kDay = 86400;
constexpr std::int64_t kStart = 1514764800; // 2018-01-01T00:00:00Z

/// Geometric random walk with plausible OHLC geometry and lognormal volume.
inline liqcast::CandleSeries random_series(std::size_t n, std::uint64_t seed,
                                           double start_price = 0.4) {
    liqcast::Rng rng(seed);
    liqcast::CandleSeries s;
    s.interval_seconds = kDay;
    s.bars.reserve(n);
    double prev_close = start_price;
    for (std::size_t i = 0; i < n; ++i) {
        liqcast::Candle c;
        c.timestamp = kStart + static_cast<std::int64_t>(i) * kDay;
        c.open = prev_close;
        c.close = prev_close * std::exp(rng.normal(0.0, 0.02));
        c.high = std::max(c.open, c.close) * (1.0 + 0.01 * rng.uniform01());
        c.low = std::min(c.open, c.close) * (1.0 - 0.01 * rng.uniform01());
        c.volume_base = std::exp(rng.normal(std::log(1e6), 0.5));
        c.volume_quote = c.volume_base * c.close;
        s.bars.push_back(c);
        prev_close = c.close;
    }
    return s;
}

/// Series with a volume/range signal planted into the next close:
///
///   close[t] = mu + phi1*(close[t-1]-mu) + phi2*(close[t-2]-mu)
///            + beta*(u[t-1]-0.5) + zeta[t]
///
/// where u is uniform on [0,1] and zeta is small Gaussian noise. The bar range
/// is lognormal and volume[t] = (50 + 100*u[t]) * (range[t] + 1e-6), so the
/// volume/range ratio recovers u[t] exactly while neither volume nor range
/// alone does. A model that sees the ratio faces only the zeta noise floor
/// when predicting the next close; one that does not carries the full beta
/// term as irreducible error.
struct PlantedParams {
    double mu = 0.4;
    double phi1 = 0.75;
    double phi2 = 0.15;
    double beta = 0.045;
    double zeta_sd = 0.003;
};

inline liqcast::CandleSeries planted_series(std::size_t n, std::uint64_t seed,
                                            const PlantedParams& p = {}) {
    liqcast::Rng rng(seed);
    std::vector<double> u(n), zeta(n), range(n);
    for (std::size_t i = 0; i < n; ++i) {
        u[i] = rng.uniform01();
        zeta[i] = rng.normal(0.0, p.zeta_sd);
        range[i] = std::exp(rng.normal(std::log(0.008), 0.4));
    }

    liqcast::CandleSeries s;
    s.interval_seconds = kDay;
    s.bars.reserve(n);
    double prev1 = p.mu, prev2 = p.mu; // close[t-1], close[t-2]
    for (std::size_t i = 0; i < n; ++i) {
        double close = p.mu;
        if (i >= 1)
            close = p.mu + p.phi1 * (prev1 - p.mu) + p.phi2 * (prev2 - p.mu) +
                    p.beta * (u[i - 1] - 0.5) + zeta[i];
        liqcast::Candle c;
        c.timestamp = kStart + static_cast<std::int64_t>(i) * kDay;
        c.close = close;
        c.open = close;
        c.high = close + 0.5 * range[i];
        c.low = close - 0.5 * range[i];
        c.volume_base = (50.0 + 100.0 * u[i]) * (range[i] + 1e-6);
        c.volume_quote = c.volume_base * c.close;
        s.bars.push_back(c);
        prev2 = prev1;
        prev1 = close;
    }
    return s;
}

/// Feature recipe for the planted series: lags cover the AR(2) memory, the
/// slow indicators stay off so warm-up is short and the signal path is clean.
inline liqcast::FeatureConfig planted_feature_config() {
    liqcast::FeatureConfig cfg;
    cfg.close_lags = {1, 2};
    cfg.sma_windows = {};
    cfg.rsi_period = 0;
    cfg.macd_fast = 0;
    cfg.include_liquidity = true;
    cfg.vwap_window = 14;
    return cfg;
}

} // namespace fixtures
