#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "liqcast/errors.hpp"
#include "liqcast/rng.hpp"
#include "liqcast/windows.hpp"

namespace liqcast {

/// CART regression tree. max_features 0 means "consider every feature";
/// otherwise each node draws that many distinct candidate features from the
/// supplied Rng. leaf_lambda shrinks leaf values to sum / (count + lambda),
/// which gradient boosting uses for regularized leaves; 0 gives the plain mean.
struct TreeConfig {
    std::size_t max_depth = 6;
    std::size_t min_samples_split = 2;
    std::size_t min_samples_leaf = 1;
    std::size_t max_features = 0;
    double leaf_lambda = 0.0;
};

struct TreeNode {
    bool is_leaf = true;
    std::size_t feature = 0;
    double threshold = 0.0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    double value = 0.0;
    std::size_t n_samples = 0;
};

struct RegressionTree {
    std::vector<TreeNode> nodes;

    double predict_one(const double* features) const {
        std::size_t i = 0;
        while (!nodes[i].is_leaf)
            i = static_cast<std::size_t>(features[nodes[i].feature] < nodes[i].threshold
                                             ? nodes[i].left
                                             : nodes[i].right);
        return nodes[i].value;
    }
};

namespace detail {

struct TreeBuilder {
    const double* x;
    std::size_t width;
    const std::vector<double>& y;
    const TreeConfig& cfg;
    Rng& rng;
    RegressionTree& tree;

    struct Best {
        double gain = 0.0;
        std::size_t feature = 0;
        double threshold = 0.0;
    };

    double value_at(std::size_t sample, std::size_t feature) const {
        return x[sample * width + feature];
    }

    std::size_t build(std::vector<std::size_t>& samples, std::size_t depth) {
        double sum = 0.0, sum_sq = 0.0;
        for (std::size_t s : samples) {
            sum += y[s];
            sum_sq += y[s] * y[s];
        }
        const double n = static_cast<double>(samples.size());
        const double sse = sum_sq - sum * sum / n;

        const std::size_t node_id = tree.nodes.size();
        tree.nodes.push_back({});
        tree.nodes[node_id].n_samples = samples.size();
        tree.nodes[node_id].value = sum / (n + cfg.leaf_lambda);

        if (depth >= cfg.max_depth || samples.size() < cfg.min_samples_split) return node_id;

        const auto best = find_split(samples, sse);
        // Require a gain clearly above float noise on the node's own scale.
        if (best.gain <= 1e-12 * (1.0 + sse)) return node_id;

        std::vector<std::size_t> left, right;
        for (std::size_t s : samples)
            (value_at(s, best.feature) < best.threshold ? left : right).push_back(s);
        if (left.size() < cfg.min_samples_leaf || right.size() < cfg.min_samples_leaf)
            return node_id;

        samples.clear();
        samples.shrink_to_fit();
        const std::size_t left_id = build(left, depth + 1);
        const std::size_t right_id = build(right, depth + 1);
        tree.nodes[node_id].is_leaf = false;
        tree.nodes[node_id].feature = best.feature;
        tree.nodes[node_id].threshold = best.threshold;
        tree.nodes[node_id].left = static_cast<std::int32_t>(left_id);
        tree.nodes[node_id].right = static_cast<std::int32_t>(right_id);
        return node_id;
    }

    Best find_split(const std::vector<std::size_t>& samples, double parent_sse) {
        std::vector<std::size_t> features(width);
        for (std::size_t f = 0; f < width; ++f) features[f] = f;
        std::size_t n_try = width;
        if (cfg.max_features > 0 && cfg.max_features < width) {
            n_try = cfg.max_features;
            // Partial Fisher-Yates: the first n_try entries are a uniform draw.
            for (std::size_t i = 0; i < n_try; ++i)
                std::swap(features[i], features[i + rng.below(width - i)]);
        }

        Best best;
        std::vector<std::pair<double, double>> vals(samples.size()); // (feature value, target)
        for (std::size_t fi = 0; fi < n_try; ++fi) {
            const std::size_t f = features[fi];
            for (std::size_t i = 0; i < samples.size(); ++i)
                vals[i] = {value_at(samples[i], f), y[samples[i]]};
            std::sort(vals.begin(), vals.end());

            double left_sum = 0.0, left_sq = 0.0, total_sum = 0.0, total_sq = 0.0;
            for (const auto& [v, t] : vals) {
                total_sum += t;
                total_sq += t * t;
            }
            for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
                left_sum += vals[i].second;
                left_sq += vals[i].second * vals[i].second;
                if (vals[i].first == vals[i + 1].first) continue;
                const double nl = static_cast<double>(i + 1);
                const double nr = static_cast<double>(vals.size() - i - 1);
                const double right_sum = total_sum - left_sum;
                const double right_sq = total_sq - left_sq;
                const double child_sse = (left_sq - left_sum * left_sum / nl) +
                                         (right_sq - right_sum * right_sum / nr);
                const double gain = parent_sse - child_sse;
                if (gain > best.gain) {
                    best.gain = gain;
                    best.feature = f;
                    best.threshold = 0.5 * (vals[i].first + vals[i + 1].first);
                }
            }
        }
        return best;
    }
};

} // namespace detail

/// Fit one tree on the given sample indices of the flattened block. Threshold
/// candidates sit midway between consecutive distinct feature values; the
/// split minimizing child SSE wins, earlier features breaking exact ties.
inline RegressionTree train_tree(const WindowedBlock& block, const std::vector<double>& targets,
                                 std::vector<std::size_t> samples, const TreeConfig& cfg,
                                 Rng& rng) {
    if (samples.empty()) throw DataError("regression tree needs at least one sample");
    if (cfg.min_samples_leaf == 0) throw UsageError("min_samples_leaf must be >= 1");
    RegressionTree tree;
    detail::TreeBuilder builder{block.x.data(), block.window * block.n_features, targets, cfg, rng,
                                tree};
    builder.build(samples, 0);
    return tree;
}

inline RegressionTree train_tree(const WindowedBlock& block, const TreeConfig& cfg = {}) {
    std::vector<std::size_t> all(block.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    Rng rng(0); // unused when max_features is 0
    return train_tree(block, block.y, std::move(all), cfg, rng);
}

} // namespace liqcast
