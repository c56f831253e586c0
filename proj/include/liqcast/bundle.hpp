#pragma once

#include <string>
#include <vector>

#include "liqcast/features.hpp"
#include "liqcast/hash.hpp"
#include "liqcast/scaler.hpp"
#include "liqcast/split.hpp"
#include "liqcast/windows.hpp"

namespace liqcast {

/// Everything a model needs to train and be evaluated: the raw feature table,
/// the chronological split, the train-fitted scaler, and windowed samples per
/// block. Build once per feature set; models differ only in how they read it.
struct DatasetBundle {
    FeatureMatrix raw;
    SplitIndices split;
    Scaler scaler;
    std::size_t window = 1;
    WindowedBlock train;
    WindowedBlock val;
    WindowedBlock test;

    const WindowedBlock& block(const std::string& name) const {
        if (name == "train") return train;
        if (name == "val") return val;
        if (name == "test") return test;
        throw UsageError("unknown block name: " + name);
    }
};

/// Fingerprint of the supervised rows a bundle exposes: which targets, in
/// which order, in which blocks. Two bundles with equal fingerprints pose the
/// exact same prediction problem even if their feature columns differ.
inline std::string bundle_row_fingerprint(const DatasetBundle& b) {
    Fnv1a64 h;
    for (const WindowedBlock* block : {&b.train, &b.val, &b.test}) {
        h.update_value(block->size());
        for (std::size_t i = 0; i < block->size(); ++i) {
            h.update_value(block->target_timestamps[i]);
            h.update_value(block->y_raw[i]);
        }
    }
    return to_hex(h.value());
}

/// Identity of the full dataset preparation: columns, split boundaries,
/// scaler parameters, window length, and the row fingerprint. Evaluation
/// reports embed this so a report can be traced to its exact dataset.
inline std::string bundle_manifest_hash(const DatasetBundle& b) {
    Fnv1a64 h;
    for (const auto& c : b.raw.columns) {
        h.update(c);
        h.update_value('\0');
    }
    for (std::size_t v : {b.split.train_begin, b.split.train_end, b.split.val_begin,
                          b.split.val_end, b.split.test_begin, b.split.test_end})
        h.update_value(v);
    h.update(to_string(b.scaler.kind));
    for (const auto& cs : b.scaler.feature_scales) {
        h.update_value(cs.offset);
        h.update_value(cs.denom);
    }
    h.update_value(b.scaler.target_scale.offset);
    h.update_value(b.scaler.target_scale.denom);
    h.update_value(b.window);
    h.update(bundle_row_fingerprint(b));
    return to_hex(h.value());
}

inline DatasetBundle build_dataset(const FeatureMatrix& features, std::size_t window,
                                   const SplitSpec& spec = {},
                                   ScalerKind kind = ScalerKind::MinMax) {
    DatasetBundle b;
    b.raw = features;
    b.window = window;
    b.split = split_chronological(features.rows(), spec);
    b.scaler = Scaler::fit(features, b.split, kind);

    const FeatureMatrix scaled = b.scaler.transform(features);
    std::vector<double> scaled_targets(features.rows());
    for (std::size_t r = 0; r < features.rows(); ++r)
        scaled_targets[r] = b.scaler.transform_target(features.raw_close[r]);

    b.train = make_windows(scaled, features, scaled_targets, b.split.train_begin,
                           b.split.train_end, window, "train");
    b.val = make_windows(scaled, features, scaled_targets, b.split.val_begin, b.split.val_end,
                         window, "val");
    b.test = make_windows(scaled, features, scaled_targets, b.split.test_begin, b.split.test_end,
                          window, "test");
    return b;
}

/// The same rows with the liquidity columns removed, scaled by the restriction
/// of a fresh fit on the reduced matrix. Row count and order are identical to
/// the source bundle by construction.
inline DatasetBundle build_ablated_dataset(const FeatureMatrix& features, std::size_t window,
                                           const SplitSpec& spec = {},
                                           ScalerKind kind = ScalerKind::MinMax) {
    return build_dataset(features.drop(FeatureConfig::liquidity_columns()), window, spec, kind);
}

} // namespace liqcast
