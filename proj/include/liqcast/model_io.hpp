#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "liqcast/errors.hpp"
#include "liqcast/hash.hpp"
#include "liqcast/io_util.hpp"
#include "liqcast/model.hpp"

namespace liqcast {

using ordered_json = nlohmann::ordered_json;

namespace detail {

// Loss histories can legitimately hold non-finite entries (diverged runs);
// JSON has no spelling for those, so they round-trip as tagged strings.
inline ordered_json json_from_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

inline double double_from_json(const ordered_json& j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        throw DataError("bad numeric literal in model file: " + s);
    }
    return j.get<double>();
}

inline ordered_json history_to_json(const std::vector<double>& h) {
    ordered_json out = ordered_json::array();
    for (double v : h) out.push_back(json_from_double(v));
    return out;
}

inline std::vector<double> history_from_json(const ordered_json& j) {
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) out.push_back(double_from_json(v));
    return out;
}

// Nodes serialize as [feature, threshold, left, right, value, n_samples];
// left -1 marks a leaf.
inline ordered_json tree_to_json(const RegressionTree& t) {
    ordered_json nodes = ordered_json::array();
    for (const auto& n : t.nodes)
        nodes.push_back({n.feature, n.threshold, n.left, n.right, n.value, n.n_samples});
    return nodes;
}

inline RegressionTree tree_from_json(const ordered_json& j) {
    RegressionTree t;
    t.nodes.reserve(j.size());
    for (const auto& jn : j) {
        TreeNode n;
        n.feature = jn.at(0).get<std::size_t>();
        n.threshold = jn.at(1).get<double>();
        n.left = jn.at(2).get<std::int32_t>();
        n.right = jn.at(3).get<std::int32_t>();
        n.value = jn.at(4).get<double>();
        n.n_samples = jn.at(5).get<std::size_t>();
        n.is_leaf = n.left < 0;
        t.nodes.push_back(n);
    }
    return t;
}

inline ordered_json scaler_to_json(const Scaler& s) {
    ordered_json cols = ordered_json::array();
    for (std::size_t i = 0; i < s.columns.size(); ++i)
        cols.push_back({{"name", s.columns[i]},
                        {"offset", s.feature_scales[i].offset},
                        {"denom", s.feature_scales[i].denom}});
    return {{"kind", to_string(s.kind)},
            {"features", std::move(cols)},
            {"target", {{"offset", s.target_scale.offset}, {"denom", s.target_scale.denom}}}};
}

inline Scaler scaler_from_json(const ordered_json& j) {
    Scaler s;
    s.kind = scaler_kind_from_string(j.at("kind").get<std::string>());
    for (const auto& col : j.at("features")) {
        s.columns.push_back(col.at("name").get<std::string>());
        s.feature_scales.push_back(
            {col.at("offset").get<double>(), col.at("denom").get<double>()});
    }
    s.target_scale = {j.at("target").at("offset").get<double>(),
                      j.at("target").at("denom").get<double>()};
    return s;
}

inline ordered_json config_to_json(const FamilyConfig& config) {
    return std::visit(
        [](const auto& c) -> ordered_json {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, LinearConfig>) {
                return {{"lambda", c.lambda}};
            } else if constexpr (std::is_same_v<T, ForestConfig>) {
                return {{"n_trees", c.n_trees},
                        {"max_depth", c.max_depth},
                        {"min_samples_split", c.min_samples_split},
                        {"min_samples_leaf", c.min_samples_leaf},
                        {"max_features", c.max_features},
                        {"bootstrap", c.bootstrap}};
            } else if constexpr (std::is_same_v<T, BoostConfig>) {
                return {{"n_rounds", c.n_rounds},
                        {"learning_rate", c.learning_rate},
                        {"max_depth", c.max_depth},
                        {"min_samples_leaf", c.min_samples_leaf},
                        {"lambda", c.lambda},
                        {"subsample", c.subsample},
                        {"select_best_on_val", c.select_best_on_val}};
            } else {
                return {{"layers", c.layers},
                        {"hidden", c.hidden},
                        {"dropout", c.dropout},
                        {"epochs", c.epochs},
                        {"batch_size", c.batch_size},
                        {"learning_rate", c.learning_rate},
                        {"beta1", c.beta1},
                        {"beta2", c.beta2},
                        {"adam_epsilon", c.adam_epsilon},
                        {"patience", c.patience}};
            }
        },
        config);
}

inline FamilyConfig config_from_json(const std::string& family, const ordered_json& j) {
    if (family == "linear") {
        LinearConfig c;
        c.lambda = j.at("lambda").get<double>();
        return c;
    }
    if (family == "rf") {
        ForestConfig c;
        c.n_trees = j.at("n_trees").get<std::size_t>();
        c.max_depth = j.at("max_depth").get<std::size_t>();
        c.min_samples_split = j.at("min_samples_split").get<std::size_t>();
        c.min_samples_leaf = j.at("min_samples_leaf").get<std::size_t>();
        c.max_features = j.at("max_features").get<std::size_t>();
        c.bootstrap = j.at("bootstrap").get<bool>();
        return c;
    }
    if (family == "xgb") {
        BoostConfig c;
        c.n_rounds = j.at("n_rounds").get<std::size_t>();
        c.learning_rate = j.at("learning_rate").get<double>();
        c.max_depth = j.at("max_depth").get<std::size_t>();
        c.min_samples_leaf = j.at("min_samples_leaf").get<std::size_t>();
        c.lambda = j.at("lambda").get<double>();
        c.subsample = j.at("subsample").get<double>();
        c.select_best_on_val = j.at("select_best_on_val").get<bool>();
        return c;
    }
    if (family == "lstm") {
        LstmConfig c;
        c.layers = j.at("layers").get<std::size_t>();
        c.hidden = j.at("hidden").get<std::size_t>();
        c.dropout = j.at("dropout").get<double>();
        c.epochs = j.at("epochs").get<std::size_t>();
        c.batch_size = j.at("batch_size").get<std::size_t>();
        c.learning_rate = j.at("learning_rate").get<double>();
        c.beta1 = j.at("beta1").get<double>();
        c.beta2 = j.at("beta2").get<double>();
        c.adam_epsilon = j.at("adam_epsilon").get<double>();
        c.patience = j.at("patience").get<std::size_t>();
        return c;
    }
    throw DataError("unknown model family in file: " + family);
}

inline ordered_json params_to_json(const ModelParams& params) {
    return std::visit(
        [](const auto& p) -> ordered_json {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, LinearModel>) {
                return {{"weights", p.weights}, {"intercept", p.intercept}};
            } else if constexpr (std::is_same_v<T, ForestModel>) {
                ordered_json trees = ordered_json::array();
                for (const auto& t : p.trees) trees.push_back(tree_to_json(t));
                return {{"trees", std::move(trees)}};
            } else if constexpr (std::is_same_v<T, BoostedModel>) {
                ordered_json trees = ordered_json::array();
                for (const auto& t : p.trees) trees.push_back(tree_to_json(t));
                return {{"base_score", p.base_score},
                        {"learning_rate", p.learning_rate},
                        {"best_round", p.best_round},
                        {"trees", std::move(trees)},
                        {"train_mse_history", history_to_json(p.train_mse_history)},
                        {"val_mse_history", history_to_json(p.val_mse_history)}};
            } else {
                return {{"layers", p.layers},
                        {"hidden", p.hidden},
                        {"input_size", p.input_size},
                        {"window", p.window},
                        {"dropout", p.dropout},
                        {"theta", p.theta},
                        {"train_mse_history", history_to_json(p.train_mse_history)},
                        {"val_mse_history", history_to_json(p.val_mse_history)},
                        {"best_epoch", p.best_epoch},
                        {"epochs_run", p.epochs_run},
                        {"diverged", p.diverged},
                        {"note", p.note}};
            }
        },
        params);
}

inline ModelParams params_from_json(const std::string& family, const ordered_json& j) {
    if (family == "linear") {
        LinearModel p;
        p.weights = j.at("weights").get<std::vector<double>>();
        p.intercept = j.at("intercept").get<double>();
        return p;
    }
    if (family == "rf") {
        ForestModel p;
        for (const auto& t : j.at("trees")) p.trees.push_back(tree_from_json(t));
        return p;
    }
    if (family == "xgb") {
        BoostedModel p;
        p.base_score = j.at("base_score").get<double>();
        p.learning_rate = j.at("learning_rate").get<double>();
        p.best_round = j.at("best_round").get<std::size_t>();
        for (const auto& t : j.at("trees")) p.trees.push_back(tree_from_json(t));
        p.train_mse_history = history_from_json(j.at("train_mse_history"));
        p.val_mse_history = history_from_json(j.at("val_mse_history"));
        return p;
    }
    if (family == "lstm") {
        LstmModel p;
        p.layers = j.at("layers").get<std::size_t>();
        p.hidden = j.at("hidden").get<std::size_t>();
        p.input_size = j.at("input_size").get<std::size_t>();
        p.window = j.at("window").get<std::size_t>();
        p.dropout = j.at("dropout").get<double>();
        p.theta = j.at("theta").get<std::vector<double>>();
        p.train_mse_history = history_from_json(j.at("train_mse_history"));
        p.val_mse_history = history_from_json(j.at("val_mse_history"));
        p.best_epoch = j.at("best_epoch").get<std::size_t>();
        p.epochs_run = j.at("epochs_run").get<std::size_t>();
        p.diverged = j.at("diverged").get<bool>();
        p.note = j.at("note").get<std::string>();
        return p;
    }
    throw DataError("unknown model family in file: " + family);
}

} // namespace detail

inline constexpr const char* kModelFormat = "liqcast-model";
inline constexpr int kModelVersion = 1;

/// Self-contained model document: family, architecture, trained parameters,
/// the feature schema and scaler to apply them, and a checksum over the
/// payload so a corrupted file is rejected rather than mispredicting.
inline ordered_json model_to_json(const TrainedModel& m) {
    ordered_json payload = {{"family", m.family},
                            {"window", m.window},
                            {"seed", m.seed},
                            {"feature_columns", m.feature_columns},
                            {"scaler", detail::scaler_to_json(m.scaler)},
                            {"config", detail::config_to_json(m.config)},
                            {"params", detail::params_to_json(m.params)}};
    ordered_json doc;
    doc["format"] = kModelFormat;
    doc["version"] = kModelVersion;
    doc["checksum"] = to_hex(fnv1a64(payload.dump()));
    doc["payload"] = std::move(payload);
    return doc;
}

inline TrainedModel model_from_json(const ordered_json& doc) {
    if (!doc.contains("format") || doc.at("format") != kModelFormat)
        throw DataError("not a model file");
    if (doc.at("version").get<int>() != kModelVersion)
        throw DataError("unsupported model file version");
    const auto& payload = doc.at("payload");
    if (doc.at("checksum").get<std::string>() != to_hex(fnv1a64(payload.dump())))
        throw DataError("model file checksum mismatch; the file is corrupted");

    TrainedModel m;
    m.family = payload.at("family").get<std::string>();
    m.window = payload.at("window").get<std::size_t>();
    m.seed = payload.at("seed").get<std::uint64_t>();
    m.feature_columns = payload.at("feature_columns").get<std::vector<std::string>>();
    m.scaler = detail::scaler_from_json(payload.at("scaler"));
    m.config = detail::config_from_json(m.family, payload.at("config"));
    m.params = detail::params_from_json(m.family, payload.at("params"));
    return m;
}

inline void save_model(const std::string& path, const TrainedModel& m) {
    atomic_write(path, model_to_json(m).dump(2) + "\n");
}

inline TrainedModel load_model(const std::string& path) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw DataError("cannot parse model file " + path + ": " + e.what());
    }
    return model_from_json(doc);
}

} // namespace liqcast
