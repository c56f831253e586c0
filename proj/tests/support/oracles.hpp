#pragma once

// Reference implementations used to cross-check library results. Each one is
// deliberately written along a different computation path than the library
// (explicit weighted sums instead of recursions, exhaustive search instead of
// prefix-sum scans, iterative descent instead of normal equations) so shared
// bugs are unlikely.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace oracles {

/// Windowed mean by direct summation.
inline double sma_brute(const std::vector<double>& x, std::size_t end_inclusive,
                        std::size_t window) {
    double sum = 0.0;
    for (std::size_t i = end_inclusive + 1 - window; i <= end_inclusive; ++i) sum += x[i];
    return sum / static_cast<double>(window);
}

/// EMA at position t via the closed-form geometric weighting of every term,
/// seeded with the simple mean of the first n values:
///   ema[t] = (1-a)^(t-s) * seed + a * sum_{k=s+1..t} (1-a)^(t-k) * x[k]
/// where s = n-1 is the seed position and a = 2/(n+1).
inline double ema_closed_form(const std::vector<double>& x, std::size_t t, std::size_t n) {
    const double a = 2.0 / (static_cast<double>(n) + 1.0);
    const std::size_t s = n - 1;
    double seed = 0.0;
    for (std::size_t i = 0; i < n; ++i) seed += x[i];
    seed /= static_cast<double>(n);
    double v = std::pow(1.0 - a, static_cast<double>(t - s)) * seed;
    for (std::size_t k = s + 1; k <= t; ++k)
        v += a * std::pow(1.0 - a, static_cast<double>(t - k)) * x[k];
    return v;
}

/// Plain-loop regression metrics with long double accumulation.
struct NaiveMetrics {
    double mae = 0.0;
    double mse = 0.0;
    bool r2_defined = false;
    double r2 = 0.0;
};

inline NaiveMetrics naive_metrics(const std::vector<double>& actual,
                                  const std::vector<double>& predicted) {
    const std::size_t n = actual.size();
    long double abs_sum = 0.0L, sq_sum = 0.0L, mean = 0.0L;
    for (double a : actual) mean += a;
    mean /= static_cast<long double>(n);
    long double ss_res = 0.0L, ss_tot = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        const long double e = static_cast<long double>(actual[i]) - predicted[i];
        abs_sum += e < 0 ? -e : e;
        sq_sum += e * e;
        ss_res += e * e;
        const long double d = actual[i] - mean;
        ss_tot += d * d;
    }
    NaiveMetrics m;
    m.mae = static_cast<double>(abs_sum / n);
    m.mse = static_cast<double>(sq_sum / n);
    if (ss_tot > 0.0L) {
        m.r2_defined = true;
        m.r2 = static_cast<double>(1.0L - ss_res / ss_tot);
    }
    return m;
}

/// Best single split found by trying every feature and every midpoint between
/// consecutive distinct values, recomputing both side SSEs from scratch.
struct ExhaustiveSplit {
    bool found = false;
    std::size_t feature = 0;
    double threshold = 0.0;
    double total_sse = std::numeric_limits<double>::infinity();
};

inline double side_sse(const std::vector<std::vector<double>>& rows,
                       const std::vector<double>& y, std::size_t feature, double threshold,
                       bool left) {
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const bool goes_left = rows[i][feature] < threshold;
        if (goes_left != left) continue;
        sum += y[i];
        ++n;
    }
    if (n == 0) return std::numeric_limits<double>::infinity();
    const double mean = sum / static_cast<double>(n);
    double sse = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const bool goes_left = rows[i][feature] < threshold;
        if (goes_left != left) continue;
        sse += (y[i] - mean) * (y[i] - mean);
    }
    return sse;
}

inline ExhaustiveSplit exhaustive_best_split(const std::vector<std::vector<double>>& rows,
                                             const std::vector<double>& y) {
    ExhaustiveSplit best;
    if (rows.empty()) return best;
    const std::size_t n_features = rows[0].size();
    for (std::size_t f = 0; f < n_features; ++f) {
        std::vector<double> values;
        values.reserve(rows.size());
        for (const auto& r : rows) values.push_back(r[f]);
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        for (std::size_t i = 1; i < values.size(); ++i) {
            const double threshold = 0.5 * (values[i - 1] + values[i]);
            const double sse =
                side_sse(rows, y, f, threshold, true) + side_sse(rows, y, f, threshold, false);
            if (sse < best.total_sse) {
                best.found = true;
                best.feature = f;
                best.threshold = threshold;
                best.total_sse = sse;
            }
        }
    }
    return best;
}

/// Least squares by gradient descent run to convergence. Slow but independent
/// of any matrix decomposition. Returns weights followed by the intercept.
inline std::vector<double> least_squares_descent(const std::vector<std::vector<double>>& rows,
                                                 const std::vector<double>& y,
                                                 double lr = 0.1, std::size_t iters = 200000) {
    const std::size_t n = rows.size();
    const std::size_t d = rows[0].size();
    std::vector<double> w(d + 1, 0.0);
    for (std::size_t it = 0; it < iters; ++it) {
        std::vector<double> grad(d + 1, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double pred = w[d];
            for (std::size_t j = 0; j < d; ++j) pred += w[j] * rows[i][j];
            const double e = pred - y[i];
            for (std::size_t j = 0; j < d; ++j) grad[j] += e * rows[i][j];
            grad[d] += e;
        }
        for (std::size_t j = 0; j <= d; ++j) w[j] -= lr * grad[j] / static_cast<double>(n);
    }
    return w;
}

} // namespace oracles
