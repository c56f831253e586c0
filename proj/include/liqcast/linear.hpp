#pragma once

#include <Eigen/Dense>
#include <vector>

#include "liqcast/errors.hpp"
#include "liqcast/windows.hpp"

namespace liqcast {

/// Ordinary least squares with optional ridge penalty. lambda penalizes the
/// feature weights only, never the intercept.
struct LinearConfig {
    double lambda = 0.0;
};

struct LinearModel {
    std::vector<double> weights;
    double intercept = 0.0;

    double predict_one(const double* features) const {
        double y = intercept;
        for (std::size_t i = 0; i < weights.size(); ++i) y += weights[i] * features[i];
        return y;
    }

    std::vector<double> predict(const WindowedBlock& block) const {
        const std::size_t width = block.window * block.n_features;
        if (width != weights.size())
            throw UsageError("linear model expects " + std::to_string(weights.size()) +
                             " inputs, block provides " + std::to_string(width));
        std::vector<double> out(block.size());
        for (std::size_t s = 0; s < block.size(); ++s) out[s] = predict_one(block.sample(s));
        return out;
    }
};

/// Solve the normal equations for the block's flattened samples. An exactly
/// collinear design with lambda 0 has no unique solution and raises
/// NumericError suggesting a positive lambda.
inline LinearModel train_linear(const WindowedBlock& train, const LinearConfig& cfg = {}) {
    if (cfg.lambda < 0.0) throw UsageError("ridge lambda must be non-negative");
    const std::size_t n = train.size();
    const std::size_t f = train.window * train.n_features;
    if (n == 0) throw DataError("linear regression needs at least one training sample");

    Eigen::MatrixXd x(n, f + 1);
    Eigen::VectorXd y(n);
    for (std::size_t s = 0; s < n; ++s) {
        const double* row = train.sample(s);
        for (std::size_t j = 0; j < f; ++j) x(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(j)) = row[j];
        x(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(f)) = 1.0;
        y(static_cast<Eigen::Index>(s)) = train.y[s];
    }

    Eigen::MatrixXd a = x.transpose() * x;
    for (std::size_t j = 0; j < f; ++j)
        a(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) += cfg.lambda;
    const Eigen::VectorXd b = x.transpose() * y;

    if (cfg.lambda == 0.0) {
        Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
        if (!lu.isInvertible())
            throw NumericError(
                "design matrix is singular (collinear or constant features); "
                "retrain with a positive ridge lambda");
    }
    const Eigen::VectorXd beta = a.ldlt().solve(b);

    LinearModel m;
    m.weights.assign(beta.data(), beta.data() + f);
    m.intercept = beta(static_cast<Eigen::Index>(f));
    return m;
}

} // namespace liqcast
