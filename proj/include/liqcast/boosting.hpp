#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "liqcast/errors.hpp"
#include "liqcast/hash.hpp"
#include "liqcast/metrics.hpp"
#include "liqcast/rng.hpp"
#include "liqcast/tree.hpp"
#include "liqcast/windows.hpp"

namespace liqcast {

/// Gradient boosting with squared loss: each round fits a shallow tree to the
/// current residuals, with leaves shrunk by lambda and the tree's contribution
/// scaled by the learning rate. subsample < 1 draws that fraction of rows
/// (without replacement) per round.
struct BoostConfig {
    std::size_t n_rounds = 200;
    double learning_rate = 0.1;
    std::size_t max_depth = 3;
    std::size_t min_samples_leaf = 1;
    double lambda = 1.0;
    double subsample = 1.0;
    bool select_best_on_val = true;
};

struct BoostedModel {
    double base_score = 0.0;
    double learning_rate = 0.1;
    std::vector<RegressionTree> trees; // already truncated to the kept rounds
    std::vector<double> train_mse_history;
    std::vector<double> val_mse_history;
    std::size_t best_round = 0; // number of trees kept

    double predict_one(const double* features) const {
        double y = base_score;
        for (const auto& t : trees) y += learning_rate * t.predict_one(features);
        return y;
    }

    std::vector<double> predict(const WindowedBlock& block) const {
        std::vector<double> out(block.size());
        for (std::size_t s = 0; s < block.size(); ++s) out[s] = predict_one(block.sample(s));
        return out;
    }
};

/// Trains n_rounds trees, then keeps the prefix whose validation MSE is lowest
/// (earliest round on ties). Pass select_best_on_val = false to keep them all;
/// selecting on validation with an empty validation block is an error.
inline BoostedModel train_boosted(const WindowedBlock& train, const WindowedBlock& val,
                                  const BoostConfig& cfg, std::uint64_t seed) {
    if (cfg.n_rounds == 0) throw UsageError("boosting needs at least one round");
    if (!(cfg.learning_rate > 0.0)) throw UsageError("learning rate must be positive");
    if (cfg.lambda < 0.0) throw UsageError("lambda must be non-negative");
    if (!(cfg.subsample > 0.0) || cfg.subsample > 1.0)
        throw UsageError("subsample must be in (0, 1]");
    if (cfg.select_best_on_val && val.size() == 0)
        throw UsageError("best-round selection needs a non-empty validation block");

    const std::size_t n = train.size();
    BoostedModel model;
    model.learning_rate = cfg.learning_rate;
    double base = 0.0;
    for (double y : train.y) base += y;
    model.base_score = base / static_cast<double>(n);

    TreeConfig tree_cfg;
    tree_cfg.max_depth = cfg.max_depth;
    tree_cfg.min_samples_leaf = cfg.min_samples_leaf;
    tree_cfg.leaf_lambda = cfg.lambda;

    std::vector<double> train_pred(n, model.base_score);
    std::vector<double> val_pred(val.size(), model.base_score);
    std::vector<double> residuals(n);
    const std::size_t n_draw =
        std::max<std::size_t>(1, static_cast<std::size_t>(cfg.subsample * static_cast<double>(n)));

    for (std::size_t round = 0; round < cfg.n_rounds; ++round) {
        for (std::size_t i = 0; i < n; ++i) residuals[i] = train.y[i] - train_pred[i];

        Rng rng(substream(seed, "boost-round", round));
        std::vector<std::size_t> samples;
        if (n_draw < n) {
            const auto perm = rng.permutation(n);
            samples.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_draw));
        } else {
            samples.resize(n);
            for (std::size_t i = 0; i < n; ++i) samples[i] = i;
        }
        auto tree = train_tree(train, residuals, std::move(samples), tree_cfg, rng);

        for (std::size_t i = 0; i < n; ++i)
            train_pred[i] += cfg.learning_rate * tree.predict_one(train.sample(i));
        for (std::size_t i = 0; i < val.size(); ++i)
            val_pred[i] += cfg.learning_rate * tree.predict_one(val.sample(i));
        model.trees.push_back(std::move(tree));
        model.train_mse_history.push_back(mse_of(train.y, train_pred));
        model.val_mse_history.push_back(val.size() ? mse_of(val.y, val_pred)
                                                   : std::numeric_limits<double>::quiet_NaN());
    }

    if (cfg.select_best_on_val) {
        std::size_t best = 0;
        for (std::size_t r = 1; r < model.val_mse_history.size(); ++r)
            if (model.val_mse_history[r] < model.val_mse_history[best]) best = r;
        model.best_round = best + 1;
        model.trees.resize(model.best_round);
    } else {
        model.best_round = model.trees.size();
    }
    return model;
}

} // namespace liqcast
