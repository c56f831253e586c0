#pragma once

#include <cmath>
#include <cstddef>
#include <string>

#include "liqcast/errors.hpp"

namespace liqcast {

/// Chronological split fractions; the test share is whatever remains.
struct SplitSpec {
    double train_fraction = 0.70;
    double val_fraction = 0.15;

    void validate() const {
        if (!(train_fraction > 0.0) || !(val_fraction > 0.0) ||
            !(train_fraction + val_fraction < 1.0))
            throw UsageError("split fractions must be positive and leave room for a test block");
    }
};

/// Half-open row ranges [begin, end) in chronological order: train, then val,
/// then test. Counts are floor(n * fraction) for train and val; test takes the
/// remainder, so the three blocks always partition the rows.
struct SplitIndices {
    std::size_t train_begin = 0, train_end = 0;
    std::size_t val_begin = 0, val_end = 0;
    std::size_t test_begin = 0, test_end = 0;

    std::size_t train_size() const { return train_end - train_begin; }
    std::size_t val_size() const { return val_end - val_begin; }
    std::size_t test_size() const { return test_end - test_begin; }
};

inline SplitIndices split_chronological(std::size_t n_rows, const SplitSpec& spec = {}) {
    spec.validate();
    const std::size_t n_train =
        static_cast<std::size_t>(std::floor(static_cast<double>(n_rows) * spec.train_fraction));
    const std::size_t n_val =
        static_cast<std::size_t>(std::floor(static_cast<double>(n_rows) * spec.val_fraction));
    if (n_train == 0 || n_val == 0 || n_train + n_val >= n_rows)
        throw DataError("too few rows (" + std::to_string(n_rows) +
                        ") to form non-empty train/val/test blocks");
    SplitIndices idx;
    idx.train_begin = 0;
    idx.train_end = n_train;
    idx.val_begin = n_train;
    idx.val_end = n_train + n_val;
    idx.test_begin = n_train + n_val;
    idx.test_end = n_rows;
    return idx;
}

} // namespace liqcast
