#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "liqcast/errors.hpp"
#include "liqcast/experiment.hpp"
#include "liqcast/gaps.hpp"
#include "liqcast/hash.hpp"
#include "liqcast/ingest.hpp"
#include "liqcast/io_util.hpp"
#include "liqcast/model_io.hpp"

namespace liqcast {

namespace detail {

/// Read-only view over one JSON object that remembers which keys were
/// consumed; done() rejects whatever is left. Typos in a config are hard
/// errors, never silently ignored defaults.
class StrictView {
public:
    StrictView(const nlohmann::ordered_json& obj, std::string path)
        : obj_(obj), path_(std::move(path)) {
        if (!obj_.is_object()) throw UsageError(path_ + " must be a JSON object");
    }

    const nlohmann::ordered_json* find(const std::string& key) {
        used_.insert(key);
        const auto it = obj_.find(key);
        return it == obj_.end() ? nullptr : &*it;
    }

    template <typename T>
    void read(const std::string& key, T& dst) {
        if (const auto* v = find(key)) {
            try {
                dst = v->get<T>();
            } catch (const nlohmann::json::exception&) {
                throw UsageError(path_ + "." + key + " has the wrong type");
            }
        }
    }

    void read_string_enum(const std::string& key, const std::function<void(const std::string&)>& apply) {
        if (const auto* v = find(key)) {
            if (!v->is_string()) throw UsageError(path_ + "." + key + " must be a string");
            apply(v->get<std::string>());
        }
    }

    bool has_child(const std::string& key) const { return obj_.contains(key); }

    void done() const {
        for (const auto& [key, value] : obj_.items())
            if (!used_.count(key))
                throw UsageError("unknown config key: " + path_ + "." + key);
    }

private:
    const nlohmann::ordered_json& obj_;
    std::string path_;
    std::set<std::string> used_;
};

} // namespace detail

/// Everything one run needs, parsed from a single JSON file. Unknown keys
/// anywhere in the file are usage errors.
struct RunConfig {
    std::string input;
    std::string output_dir = "out";
    std::uint64_t seed = 42;
    std::int64_t interval_seconds = 86400;
    GapPolicy gap_policy = GapPolicy::ForwardFill;
    ColumnSchema columns;
    FeatureConfig features;
    SplitSpec split;
    ScalerKind scaler = ScalerKind::MinMax;
    std::size_t lstm_window = 10;
    std::vector<std::string> families = model_families();
    FamilyConfigs configs;
    std::map<std::string, nlohmann::ordered_json> grids; // family -> {param: [values...]}
    std::size_t stats_bins = 20;

    ExperimentPlan plan() const {
        ExperimentPlan p;
        p.families = families;
        p.configs = configs;
        p.split = split;
        p.scaler = scaler;
        p.lstm_window = lstm_window;
        p.seed = seed;
        return p;
    }
};

/// Overwrite one scalar hyperparameter by name; grid cells go through here.
inline void apply_family_override(FamilyConfigs& configs, const std::string& family,
                                  const std::string& key, const nlohmann::ordered_json& value) {
    const auto bad_key = [&]() {
        throw UsageError("unknown " + family + " hyperparameter: " + key);
    };
    try {
        if (family == "linear") {
            auto& c = configs.linear;
            if (key == "lambda") c.lambda = value.get<double>();
            else bad_key();
        } else if (family == "rf") {
            auto& c = configs.rf;
            if (key == "n_trees") c.n_trees = value.get<std::size_t>();
            else if (key == "max_depth") c.max_depth = value.get<std::size_t>();
            else if (key == "min_samples_split") c.min_samples_split = value.get<std::size_t>();
            else if (key == "min_samples_leaf") c.min_samples_leaf = value.get<std::size_t>();
            else if (key == "max_features") c.max_features = value.get<std::size_t>();
            else if (key == "bootstrap") c.bootstrap = value.get<bool>();
            else bad_key();
        } else if (family == "xgb") {
            auto& c = configs.xgb;
            if (key == "n_rounds") c.n_rounds = value.get<std::size_t>();
            else if (key == "learning_rate") c.learning_rate = value.get<double>();
            else if (key == "max_depth") c.max_depth = value.get<std::size_t>();
            else if (key == "min_samples_leaf") c.min_samples_leaf = value.get<std::size_t>();
            else if (key == "lambda") c.lambda = value.get<double>();
            else if (key == "subsample") c.subsample = value.get<double>();
            else if (key == "select_best_on_val") c.select_best_on_val = value.get<bool>();
            else bad_key();
        } else if (family == "lstm") {
            auto& c = configs.lstm;
            if (key == "layers") c.layers = value.get<std::size_t>();
            else if (key == "hidden") c.hidden = value.get<std::size_t>();
            else if (key == "dropout") c.dropout = value.get<double>();
            else if (key == "epochs") c.epochs = value.get<std::size_t>();
            else if (key == "batch_size") c.batch_size = value.get<std::size_t>();
            else if (key == "learning_rate") c.learning_rate = value.get<double>();
            else if (key == "beta1") c.beta1 = value.get<double>();
            else if (key == "beta2") c.beta2 = value.get<double>();
            else if (key == "adam_epsilon") c.adam_epsilon = value.get<double>();
            else if (key == "patience") c.patience = value.get<std::size_t>();
            else bad_key();
        } else {
            throw UsageError("unknown model family: " + family);
        }
    } catch (const nlohmann::json::exception&) {
        throw UsageError("hyperparameter " + family + "." + key + " has the wrong type");
    }
}

inline RunConfig parse_run_config(const nlohmann::ordered_json& j) {
    RunConfig cfg;
    detail::StrictView root(j, "config");
    root.read("input", cfg.input);
    root.read("output_dir", cfg.output_dir);
    root.read("seed", cfg.seed);
    root.read("stats_bins", cfg.stats_bins);

    if (const auto* data = root.find("data")) {
        detail::StrictView v(*data, "config.data");
        v.read("interval_seconds", cfg.interval_seconds);
        v.read_string_enum("gap_policy",
                           [&](const std::string& s) { cfg.gap_policy = gap_policy_from_string(s); });
        if (const auto* cols = v.find("columns")) {
            detail::StrictView cv(*cols, "config.data.columns");
            cv.read("timestamp", cfg.columns.timestamp);
            cv.read("open", cfg.columns.open);
            cv.read("high", cfg.columns.high);
            cv.read("low", cfg.columns.low);
            cv.read("close", cfg.columns.close);
            cv.read("volume_base", cfg.columns.volume_base);
            cv.read("volume_quote", cfg.columns.volume_quote);
            cv.done();
        }
        v.done();
        if (cfg.interval_seconds <= 0) throw UsageError("interval_seconds must be positive");
    }

    if (const auto* features = root.find("features")) {
        detail::StrictView v(*features, "config.features");
        v.read("close_lags", cfg.features.close_lags);
        v.read("sma_windows", cfg.features.sma_windows);
        v.read("rsi_period", cfg.features.rsi_period);
        v.read("macd_fast", cfg.features.macd_fast);
        v.read("macd_slow", cfg.features.macd_slow);
        v.read("macd_signal", cfg.features.macd_signal);
        v.read("include_typical_price", cfg.features.include_typical_price);
        v.read("include_liquidity", cfg.features.include_liquidity);
        v.read("epsilon", cfg.features.epsilon);
        v.read("vwap_window", cfg.features.vwap_window);
        v.read_string_enum("volume_source", [&](const std::string& s) {
            cfg.features.volume_source = volume_source_from_string(s);
        });
        v.done();
        cfg.features.validate();
    }

    if (const auto* dataset = root.find("dataset")) {
        detail::StrictView v(*dataset, "config.dataset");
        v.read("train_fraction", cfg.split.train_fraction);
        v.read("val_fraction", cfg.split.val_fraction);
        v.read_string_enum("scaler",
                           [&](const std::string& s) { cfg.scaler = scaler_kind_from_string(s); });
        v.read("lstm_window", cfg.lstm_window);
        v.done();
        cfg.split.validate();
        if (cfg.lstm_window == 0) throw UsageError("lstm_window must be >= 1");
    }

    if (const auto* models = root.find("models")) {
        detail::StrictView v(*models, "config.models");
        v.read("families", cfg.families);
        if (cfg.families.empty()) throw UsageError("config.models.families must not be empty");
        std::set<std::string> seen;
        for (const auto& f : cfg.families) {
            family_display_name(f); // validates the name
            if (!seen.insert(f).second) throw UsageError("duplicate family: " + f);
        }
        for (const auto& family : model_families()) {
            if (const auto* fam = v.find(family)) {
                if (!fam->is_object())
                    throw UsageError("config.models." + family + " must be an object");
                for (const auto& [key, value] : fam->items()) {
                    if (key == "grid") {
                        if (!value.is_object() || value.empty())
                            throw UsageError("config.models." + family +
                                             ".grid must be a non-empty object");
                        // Vet every axis name and value type before any training starts.
                        for (const auto& [axis, arr] : value.items()) {
                            if (!arr.is_array() || arr.empty())
                                throw UsageError("grid axis " + family + "." + axis +
                                                 " must be a non-empty array");
                            FamilyConfigs probe = cfg.configs;
                            for (const auto& cell_value : arr)
                                apply_family_override(probe, family, axis, cell_value);
                        }
                        cfg.grids[family] = value;
                    } else {
                        apply_family_override(cfg.configs, family, key, value);
                    }
                }
            }
        }
        v.done();
    }

    root.done();
    return cfg;
}

inline RunConfig load_run_config(const std::string& path) {
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw UsageError("cannot parse config file " + path + ": " + e.what());
    }
    return parse_run_config(j);
}

/// Canonical form of the config with every default filled in. Re-parsing the
/// echo reproduces the same RunConfig.
inline nlohmann::ordered_json run_config_to_json(const RunConfig& cfg) {
    nlohmann::ordered_json j;
    j["input"] = cfg.input;
    j["output_dir"] = cfg.output_dir;
    j["seed"] = cfg.seed;
    j["stats_bins"] = cfg.stats_bins;
    j["data"] = {{"interval_seconds", cfg.interval_seconds},
                 {"gap_policy", to_string(cfg.gap_policy)},
                 {"columns",
                  {{"timestamp", cfg.columns.timestamp},
                   {"open", cfg.columns.open},
                   {"high", cfg.columns.high},
                   {"low", cfg.columns.low},
                   {"close", cfg.columns.close},
                   {"volume_base", cfg.columns.volume_base},
                   {"volume_quote", cfg.columns.volume_quote}}}};
    j["features"] = {{"close_lags", cfg.features.close_lags},
                     {"sma_windows", cfg.features.sma_windows},
                     {"rsi_period", cfg.features.rsi_period},
                     {"macd_fast", cfg.features.macd_fast},
                     {"macd_slow", cfg.features.macd_slow},
                     {"macd_signal", cfg.features.macd_signal},
                     {"include_typical_price", cfg.features.include_typical_price},
                     {"include_liquidity", cfg.features.include_liquidity},
                     {"epsilon", cfg.features.epsilon},
                     {"vwap_window", cfg.features.vwap_window},
                     {"volume_source", to_string(cfg.features.volume_source)}};
    j["dataset"] = {{"train_fraction", cfg.split.train_fraction},
                    {"val_fraction", cfg.split.val_fraction},
                    {"scaler", to_string(cfg.scaler)},
                    {"lstm_window", cfg.lstm_window}};
    nlohmann::ordered_json models;
    models["families"] = cfg.families;
    models["linear"] = detail::config_to_json(FamilyConfig(cfg.configs.linear));
    models["rf"] = detail::config_to_json(FamilyConfig(cfg.configs.rf));
    models["xgb"] = detail::config_to_json(FamilyConfig(cfg.configs.xgb));
    models["lstm"] = detail::config_to_json(FamilyConfig(cfg.configs.lstm));
    for (const auto& [family, grid] : cfg.grids) models[family]["grid"] = grid;
    j["models"] = std::move(models);
    return j;
}

/// Hash of the canonical config with output_dir removed: where results land
/// does not change what the results are.
inline std::string config_hash(const RunConfig& cfg) {
    auto j = run_config_to_json(cfg);
    j.erase("output_dir");
    return hash_hex(j.dump());
}

} // namespace liqcast
