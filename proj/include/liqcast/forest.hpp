#pragma once

#include <cstdint>
#include <vector>

#include "liqcast/errors.hpp"
#include "liqcast/hash.hpp"
#include "liqcast/rng.hpp"
#include "liqcast/tree.hpp"
#include "liqcast/windows.hpp"

namespace liqcast {

/// Bagged regression forest. max_features 0 picks the usual regression
/// heuristic of one third of the inputs at every node.
struct ForestConfig {
    std::size_t n_trees = 100;
    std::size_t max_depth = 12;
    std::size_t min_samples_split = 2;
    std::size_t min_samples_leaf = 1;
    std::size_t max_features = 0;
    bool bootstrap = true;
};

struct ForestModel {
    std::vector<RegressionTree> trees;

    double predict_one(const double* features) const {
        double sum = 0.0;
        for (const auto& t : trees) sum += t.predict_one(features);
        return sum / static_cast<double>(trees.size());
    }

    std::vector<double> predict(const WindowedBlock& block) const {
        std::vector<double> out(block.size());
        for (std::size_t s = 0; s < block.size(); ++s) out[s] = predict_one(block.sample(s));
        return out;
    }
};

/// Each tree gets its own named substream of the seed, so the forest is
/// reproducible regardless of how many trees run or in what order.
inline ForestModel train_forest(const WindowedBlock& train, const ForestConfig& cfg,
                                std::uint64_t seed) {
    if (cfg.n_trees == 0) throw UsageError("forest needs at least one tree");
    const std::size_t width = train.window * train.n_features;

    TreeConfig tree_cfg;
    tree_cfg.max_depth = cfg.max_depth;
    tree_cfg.min_samples_split = cfg.min_samples_split;
    tree_cfg.min_samples_leaf = cfg.min_samples_leaf;
    tree_cfg.max_features =
        cfg.max_features > 0 ? cfg.max_features : std::max<std::size_t>(1, width / 3);

    ForestModel model;
    model.trees.reserve(cfg.n_trees);
    for (std::size_t i = 0; i < cfg.n_trees; ++i) {
        Rng rng(substream(seed, "forest-tree", i));
        std::vector<std::size_t> samples(train.size());
        if (cfg.bootstrap) {
            for (auto& s : samples) s = rng.below(train.size());
        } else {
            for (std::size_t s = 0; s < samples.size(); ++s) samples[s] = s;
        }
        model.trees.push_back(train_tree(train, train.y, std::move(samples), tree_cfg, rng));
    }
    return model;
}

} // namespace liqcast
