#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "liqcast/errors.hpp"
#include "liqcast/features.hpp"

namespace liqcast {

/// Supervised samples cut from one chronological block. Sample s covers
/// feature rows s..s+window-1 and predicts the close of row s+window, so the
/// target is always strictly after every input row. Flat models use window 1:
/// the features of bar t predicting the close of bar t+1.
struct WindowedBlock {
    std::size_t window = 1;
    std::size_t n_features = 0;
    std::vector<double> x;      // n_samples * window * n_features, [sample][time][feature]
    std::vector<double> y;      // scaled target closes
    std::vector<double> y_raw;  // target closes in price units, never round-tripped
    std::vector<std::int64_t> target_timestamps;

    std::size_t size() const { return y.size(); }

    const double* sample(std::size_t s) const { return x.data() + s * window * n_features; }
    double at(std::size_t s, std::size_t t, std::size_t f) const {
        return x[(s * window + t) * n_features + f];
    }
};

/// Cut windows from rows [begin, end) of the scaled matrix. `raw` supplies the
/// unscaled closes; `scaled_targets` the matching scaled values. Windows never
/// cross the block boundary. Yields end - begin - window samples.
inline WindowedBlock make_windows(const FeatureMatrix& scaled, const FeatureMatrix& raw,
                                  const std::vector<double>& scaled_targets, std::size_t begin,
                                  std::size_t end, std::size_t window,
                                  const std::string& block_name) {
    if (window == 0) throw UsageError("window length must be >= 1");
    if (end > scaled.rows() || begin > end) throw UsageError("window range out of bounds");
    const std::size_t rows = end - begin;
    if (rows <= window)
        throw DataError(block_name + " block has " + std::to_string(rows) +
                        " rows; need more than the window length " + std::to_string(window) +
                        " to form a sample");

    WindowedBlock b;
    b.window = window;
    b.n_features = scaled.cols();
    const std::size_t n_samples = rows - window;
    b.x.reserve(n_samples * window * b.n_features);
    b.y.reserve(n_samples);
    b.y_raw.reserve(n_samples);
    b.target_timestamps.reserve(n_samples);
    for (std::size_t s = 0; s < n_samples; ++s) {
        const std::size_t first_row = begin + s;
        for (std::size_t t = 0; t < window; ++t)
            for (std::size_t f = 0; f < b.n_features; ++f)
                b.x.push_back(scaled.at(first_row + t, f));
        const std::size_t target_row = first_row + window;
        b.y.push_back(scaled_targets[target_row]);
        b.y_raw.push_back(raw.raw_close[target_row]);
        b.target_timestamps.push_back(raw.timestamps[target_row]);
    }
    return b;
}

} // namespace liqcast
