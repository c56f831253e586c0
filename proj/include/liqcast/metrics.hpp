#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "liqcast/errors.hpp"

namespace liqcast {

/// Regression metrics in the units of the inputs. r2 is empty when the true
/// values are constant (zero total sum of squares), where the score has no
/// defined value rather than being 0 or 1.
struct Metrics {
    double mae = 0.0;
    double mse = 0.0;
    std::optional<double> r2;
};

inline Metrics compute_metrics(const std::vector<double>& y_true,
                               const std::vector<double>& y_pred) {
    if (y_true.size() != y_pred.size())
        throw UsageError("metrics need equally sized prediction and truth vectors");
    if (y_true.empty()) throw UsageError("metrics need at least one sample");

    const double n = static_cast<double>(y_true.size());
    Metrics m;
    double ss_res = 0.0, sum = 0.0;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        const double e = y_true[i] - y_pred[i];
        m.mae += std::abs(e);
        ss_res += e * e;
        sum += y_true[i];
    }
    m.mae /= n;
    m.mse = ss_res / n;

    const double mean = sum / n;
    double ss_tot = 0.0;
    for (double y : y_true) {
        const double d = y - mean;
        ss_tot += d * d;
    }
    if (ss_tot > 0.0) m.r2 = 1.0 - ss_res / ss_tot;
    return m;
}

inline double mse_of(const std::vector<double>& y_true, const std::vector<double>& y_pred) {
    double ss = 0.0;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        const double e = y_true[i] - y_pred[i];
        ss += e * e;
    }
    return ss / static_cast<double>(y_true.size());
}

} // namespace liqcast
