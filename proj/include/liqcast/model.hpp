#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "liqcast/boosting.hpp"
#include "liqcast/bundle.hpp"
#include "liqcast/errors.hpp"
#include "liqcast/forest.hpp"
#include "liqcast/linear.hpp"
#include "liqcast/lstm.hpp"
#include "liqcast/scaler.hpp"

namespace liqcast {

using FamilyConfig = std::variant<LinearConfig, ForestConfig, BoostConfig, LstmConfig>;
using ModelParams = std::variant<LinearModel, ForestModel, BoostedModel, LstmModel>;

inline const std::vector<std::string>& model_families() {
    static const std::vector<std::string> families = {"linear", "rf", "xgb", "lstm"};
    return families;
}

inline std::string family_display_name(const std::string& family) {
    if (family == "linear") return "Linear Regression";
    if (family == "rf") return "Random Forest Regressor";
    if (family == "xgb") return "XGBoost Regressor";
    if (family == "lstm") return "LSTM";
    throw UsageError("unknown model family: " + family);
}

/// Window length a family consumes: sequence models read lstm_window bars,
/// flat models read a single bar.
inline std::size_t family_window(const std::string& family, std::size_t lstm_window) {
    return family == "lstm" ? lstm_window : 1;
}

inline FamilyConfig default_family_config(const std::string& family) {
    if (family == "linear") return LinearConfig{};
    if (family == "rf") return ForestConfig{};
    if (family == "xgb") return BoostConfig{};
    if (family == "lstm") return LstmConfig{};
    throw UsageError("unknown model family: " + family);
}

/// A trained predictor plus everything needed to apply it to fresh bars:
/// the exact feature columns, the train-fitted scaler, and the window length.
struct TrainedModel {
    std::string family;
    ModelParams params;
    FamilyConfig config;
    std::vector<std::string> feature_columns;
    Scaler scaler;
    std::size_t window = 1;
    std::uint64_t seed = 0;

    /// Predictions in scaled target space.
    std::vector<double> predict_scaled(const WindowedBlock& block) const {
        if (block.n_features != feature_columns.size())
            throw UsageError("model expects " + std::to_string(feature_columns.size()) +
                             " features, block has " + std::to_string(block.n_features));
        if (block.window != window)
            throw UsageError("model expects window " + std::to_string(window) + ", block has " +
                             std::to_string(block.window));
        return std::visit([&](const auto& p) { return p.predict(block); }, params);
    }

    /// Predictions inverse-transformed to price units.
    std::vector<double> predict_prices(const WindowedBlock& block) const {
        auto out = predict_scaled(block);
        for (double& v : out) v = scaler.inverse_target(v);
        return out;
    }

    const LstmModel& lstm() const { return std::get<LstmModel>(params); }
};

/// Train one family on the bundle. The bundle's window must already match the
/// family (see family_window).
inline TrainedModel train_family(const std::string& family, const DatasetBundle& bundle,
                                 const FamilyConfig& config, std::uint64_t seed) {
    TrainedModel tm;
    tm.family = family;
    tm.config = config;
    tm.feature_columns = bundle.raw.columns;
    tm.scaler = bundle.scaler;
    tm.window = bundle.window;
    tm.seed = seed;

    if (family == "linear") {
        tm.params = train_linear(bundle.train, std::get<LinearConfig>(config));
    } else if (family == "rf") {
        tm.params = train_forest(bundle.train, std::get<ForestConfig>(config),
                                 substream(seed, "family-rf"));
    } else if (family == "xgb") {
        tm.params = train_boosted(bundle.train, bundle.val, std::get<BoostConfig>(config),
                                  substream(seed, "family-xgb"));
    } else if (family == "lstm") {
        tm.params = train_lstm(bundle.train, bundle.val, std::get<LstmConfig>(config),
                               substream(seed, "family-lstm"));
    } else {
        throw UsageError("unknown model family: " + family);
    }
    return tm;
}

} // namespace liqcast
