#pragma once

#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "liqcast/bundle.hpp"
#include "liqcast/evaluate.hpp"
#include "liqcast/features.hpp"
#include "liqcast/hash.hpp"
#include "liqcast/model.hpp"

namespace liqcast {

/// One family trained and evaluated on one feature set. Failures are captured
/// per run so a single family cannot take down a whole experiment.
struct FamilyRun {
    std::string family;
    bool liquidity = true;
    bool ok = false;
    std::string error;
    std::string bundle_hash;
    TrainedModel model;
    BlockEvaluation train, val, test;
    std::vector<double> train_loss_curve; // lstm: per epoch; xgb: per round
    std::vector<double> val_loss_curve;

    std::string display_name() const { return family_display_name(family); }
};

inline FamilyRun run_family(const std::string& family, const DatasetBundle& bundle,
                            const FamilyConfig& config, std::uint64_t seed, bool liquidity) {
    FamilyRun run;
    run.family = family;
    run.liquidity = liquidity;
    run.bundle_hash = bundle_manifest_hash(bundle);
    try {
        run.model = train_family(family, bundle, config, seed);
        if (family == "lstm") {
            const auto& p = std::get<LstmModel>(run.model.params);
            if (p.diverged)
                throw NumericError("lstm training diverged: " + p.note);
            run.train_loss_curve = p.train_mse_history;
            run.val_loss_curve = p.val_mse_history;
        } else if (family == "xgb") {
            const auto& p = std::get<BoostedModel>(run.model.params);
            run.train_loss_curve = p.train_mse_history;
            run.val_loss_curve = p.val_mse_history;
        }
        run.train = evaluate_block(run.model, bundle.train);
        run.val = evaluate_block(run.model, bundle.val);
        run.test = evaluate_block(run.model, bundle.test);
        run.ok = true;
    } catch (const std::exception& e) {
        run.ok = false;
        run.error = e.what();
    }
    return run;
}

/// Per-family hyperparameters, defaulted where not overridden.
struct FamilyConfigs {
    LinearConfig linear;
    ForestConfig rf;
    BoostConfig xgb;
    LstmConfig lstm;

    FamilyConfig get(const std::string& family) const {
        if (family == "linear") return linear;
        if (family == "rf") return rf;
        if (family == "xgb") return xgb;
        if (family == "lstm") return lstm;
        throw UsageError("unknown model family: " + family);
    }
};

struct ExperimentPlan {
    std::vector<std::string> families = model_families();
    FamilyConfigs configs;
    SplitSpec split;
    ScalerKind scaler = ScalerKind::MinMax;
    std::size_t lstm_window = 10;
    std::uint64_t seed = 42;
};

struct ExperimentResult {
    std::vector<FamilyRun> runs;
};

/// Train and evaluate every planned family on one feature matrix. Each family
/// derives its seed from the plan seed and its own name, so adding or
/// reordering families never changes another family's draw.
inline ExperimentResult run_experiment(const FeatureMatrix& features, const ExperimentPlan& plan,
                                       bool liquidity) {
    ExperimentResult result;
    for (const auto& family : plan.families) {
        const DatasetBundle bundle =
            build_dataset(features, family_window(family, plan.lstm_window), plan.split, plan.scaler);
        result.runs.push_back(
            run_family(family, bundle, plan.configs.get(family), plan.seed, liquidity));
    }
    return result;
}

struct AblationResult {
    std::vector<FamilyRun> runs; // for each family: with-liquidity run, then without
};

/// With/without-liquidity comparison. The without arm is the same feature
/// matrix with the liquidity columns projected out, so both arms see the same
/// rows (verified by fingerprint) and the same per-family seed; the features
/// are the only difference.
inline AblationResult run_ablation(const FeatureMatrix& with_liquidity, const ExperimentPlan& plan) {
    for (const auto& col : FeatureConfig::liquidity_columns())
        with_liquidity.column_index(col); // throws if the matrix lacks the liquidity features
    const FeatureMatrix without = with_liquidity.drop(FeatureConfig::liquidity_columns());

    AblationResult result;
    for (const auto& family : plan.families) {
        const std::size_t window = family_window(family, plan.lstm_window);
        const DatasetBundle on = build_dataset(with_liquidity, window, plan.split, plan.scaler);
        const DatasetBundle off = build_dataset(without, window, plan.split, plan.scaler);
        if (bundle_row_fingerprint(on) != bundle_row_fingerprint(off))
            throw NumericError("ablation arms disagree on the evaluation rows for family " +
                               family);
        result.runs.push_back(
            run_family(family, on, plan.configs.get(family), plan.seed, true));
        result.runs.push_back(
            run_family(family, off, plan.configs.get(family), plan.seed, false));
    }
    return result;
}

namespace detail {

inline std::string round6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

inline nlohmann::ordered_json metrics_to_json(const Metrics& m) {
    nlohmann::ordered_json j;
    j["mae"] = m.mae;
    j["mse"] = m.mse;
    if (m.r2) j["r2"] = *m.r2;
    else j["r2"] = nullptr;
    return j;
}

inline nlohmann::ordered_json run_to_json(const FamilyRun& run) {
    nlohmann::ordered_json j;
    j["model"] = run.display_name();
    j["family"] = run.family;
    j["liquidity_features"] = run.liquidity ? "Included" : "Not Included";
    j["bundle_hash"] = run.bundle_hash;
    j["ok"] = run.ok;
    if (!run.ok) {
        j["error"] = run.error;
        return j;
    }
    j["metrics"] = {{"train", metrics_to_json(run.train.metrics)},
                    {"val", metrics_to_json(run.val.metrics)},
                    {"test", metrics_to_json(run.test.metrics)}};
    j["test_samples"] = run.test.n_samples;
    if (run.family == "lstm") {
        const auto& p = std::get<LstmModel>(run.model.params);
        j["epochs_run"] = p.epochs_run;
        j["best_epoch"] = p.best_epoch;
    }
    if (run.family == "xgb") {
        const auto& p = std::get<BoostedModel>(run.model.params);
        j["best_round"] = p.best_round;
    }
    if (!run.train_loss_curve.empty()) {
        j["train_loss_curve"] = run.train_loss_curve;
        j["val_loss_curve"] = run.val_loss_curve;
    }
    return j;
}

} // namespace detail

/// Test-block comparison table, one row per (family, arm):
/// Model | Liquidity Features | MAE | MSE | R^2 Score.
inline std::string render_comparison_table(const std::vector<FamilyRun>& runs) {
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"Model", "Liquidity Features", "MAE", "MSE", "R^2 Score"});
    for (const auto& run : runs) {
        std::vector<std::string> row = {run.display_name(),
                                        run.liquidity ? "Included" : "Not Included"};
        if (run.ok) {
            row.push_back(detail::round6(run.test.metrics.mae));
            row.push_back(detail::round6(run.test.metrics.mse));
            row.push_back(run.test.metrics.r2 ? detail::round6(*run.test.metrics.r2)
                                              : "undefined");
        } else {
            row.insert(row.end(), {"failed", "failed", "failed"});
        }
        rows.push_back(std::move(row));
    }

    std::vector<std::size_t> widths(rows[0].size(), 0);
    for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], row[c].size());

    std::string out;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            if (c > 0) out += " | ";
            out += rows[r][c];
            out.append(widths[c] - rows[r][c].size(), ' ');
        }
        out += '\n';
        if (r == 0) {
            for (std::size_t c = 0; c < widths.size(); ++c) {
                if (c > 0) out += "-+-";
                out.append(widths[c], '-');
            }
            out += '\n';
        }
    }
    return out;
}

/// Deterministic report body for an ablation: the comparison rows, per-family
/// with-minus-without deltas on the test block, and full per-run detail.
inline nlohmann::ordered_json ablation_to_json(const AblationResult& result) {
    nlohmann::ordered_json j;
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& run : result.runs) {
        nlohmann::ordered_json row;
        row["model"] = run.display_name();
        row["liquidity_features"] = run.liquidity ? "Included" : "Not Included";
        if (run.ok) {
            row["mae"] = run.test.metrics.mae;
            row["mse"] = run.test.metrics.mse;
            row["r2"] = run.test.metrics.r2 ? nlohmann::ordered_json(*run.test.metrics.r2)
                                            : nlohmann::ordered_json(nullptr);
        } else {
            row["error"] = run.error;
        }
        j["rows"].push_back(std::move(row));
    }

    j["deltas"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i + 1 < result.runs.size(); i += 2) {
        const auto& on = result.runs[i];
        const auto& off = result.runs[i + 1];
        nlohmann::ordered_json d;
        d["model"] = on.display_name();
        if (on.ok && off.ok) {
            // Positive values mean the liquidity features helped.
            d["mae_improvement"] = off.test.metrics.mae - on.test.metrics.mae;
            d["mse_improvement"] = off.test.metrics.mse - on.test.metrics.mse;
            if (on.test.metrics.r2 && off.test.metrics.r2)
                d["r2_improvement"] = *on.test.metrics.r2 - *off.test.metrics.r2;
        } else {
            d["error"] = on.ok ? off.error : on.error;
        }
        j["deltas"].push_back(std::move(d));
    }

    j["runs"] = nlohmann::ordered_json::array();
    for (const auto& run : result.runs) j["runs"].push_back(detail::run_to_json(run));
    return j;
}

/// CSV of a loss history: one line per epoch or round.
inline std::string loss_curve_to_csv(const std::vector<double>& train,
                                     const std::vector<double>& val) {
    std::string out = "step,train_mse,val_mse\n";
    for (std::size_t i = 0; i < train.size(); ++i) {
        out += std::to_string(i + 1);
        out += ',';
        out += format_double(train[i]);
        out += ',';
        out += i < val.size() ? format_double(val[i]) : std::string();
        out += '\n';
    }
    return out;
}

} // namespace liqcast
