#include <cstdint>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "liqcast/liqcast.hpp"

namespace fs = std::filesystem;
using liqcast::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumeric = 3;

constexpr double kRightSkewThreshold = 1.0;

struct CliOverrides {
    std::string config_path;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> families;
    bool no_liquidity = false;
};

liqcast::RunConfig load_config(const CliOverrides& o) {
    if (o.config_path.empty()) throw liqcast::UsageError("--config is required");
    auto cfg = liqcast::load_run_config(o.config_path);
    if (!o.out.empty()) cfg.output_dir = o.out;
    if (o.seed) cfg.seed = *o.seed;
    if (!o.families.empty()) {
        std::set<std::string> seen;
        for (const auto& f : o.families) {
            liqcast::family_display_name(f);
            if (!seen.insert(f).second) throw liqcast::UsageError("duplicate family: " + f);
        }
        cfg.families = o.families;
    }
    if (o.no_liquidity) cfg.features.include_liquidity = false;
    if (cfg.input.empty()) throw liqcast::UsageError("config.input is required");
    return cfg;
}

/// Lock the output directory, write the manifest in its running state, run the
/// command body, then finalize the manifest. The body returns the list of
/// files it wrote.
int with_manifest(const fs::path& out_dir, liqcast::RunManifest manifest,
                  const std::function<std::vector<std::string>()>& body) {
    liqcast::DirLock lock(out_dir);
    manifest.started_at = liqcast::RunManifest::now();
    manifest.tool_version = liqcast::kVersion;
    manifest.write(out_dir);
    try {
        manifest.outputs = body();
    } catch (const std::exception& e) {
        manifest.status = "error";
        manifest.error = e.what();
        manifest.finished_at = liqcast::RunManifest::now();
        manifest.write(out_dir);
        throw;
    }
    manifest.status = "ok";
    manifest.finished_at = liqcast::RunManifest::now();
    manifest.write(out_dir);
    return kExitOk;
}

struct LoadedSeries {
    liqcast::CandleSeries series;
    liqcast::IngestReport ingest;
    liqcast::GapFillResult gaps;
};

LoadedSeries load_series(const liqcast::RunConfig& cfg) {
    LoadedSeries out;
    auto [series, report] = liqcast::load_candles(cfg.input, cfg.columns, cfg.interval_seconds);
    out.ingest = report;
    out.gaps = liqcast::fill_gaps(series, cfg.gap_policy);
    out.series = std::move(out.gaps.series);
    return out;
}

ordered_json ingest_report_json(const LoadedSeries& loaded) {
    const auto& r = loaded.ingest;
    ordered_json j;
    j["rows_read"] = r.rows_read;
    j["rows_kept"] = r.rows_kept;
    j["duplicates_dropped"] = r.duplicates_dropped;
    j["invalid_rows"] = r.invalid_rows;
    j["was_sorted"] = r.was_sorted;
    j["problems"] = r.problems;
    j["gaps_found"] = loaded.gaps.gaps_found;
    j["bars_inserted"] = loaded.gaps.bars_inserted;
    j["bars_total"] = loaded.series.size();
    if (!loaded.series.empty()) {
        j["first_timestamp"] = liqcast::format_timestamp(loaded.series.bars.front().timestamp);
        j["last_timestamp"] = liqcast::format_timestamp(loaded.series.bars.back().timestamp);
    }
    return j;
}

std::string write_json(const fs::path& out_dir, const std::string& name, const ordered_json& j) {
    liqcast::atomic_write(out_dir / name, j.dump(2) + "\n");
    return name;
}

std::string write_text(const fs::path& out_dir, const std::string& name, const std::string& text) {
    liqcast::atomic_write(out_dir / name, text);
    return name;
}

int cmd_ingest(const CliOverrides& o) {
    const auto cfg = load_config(o);
    const fs::path out_dir = cfg.output_dir;
    liqcast::RunManifest manifest;
    manifest.command = "ingest";
    manifest.config_hash = liqcast::config_hash(cfg);
    manifest.input_path = cfg.input;
    manifest.input_hash = liqcast::hash_file(cfg.input);
    return with_manifest(out_dir, manifest, [&]() {
        const auto loaded = load_series(cfg);
        std::vector<std::string> outputs;
        outputs.push_back(write_text(out_dir, "clean.csv", liqcast::to_canonical_csv(loaded.series)));
        outputs.push_back(write_json(out_dir, "ingest_report.json", ingest_report_json(loaded)));
        return outputs;
    });
}

ordered_json summary_json(const liqcast::SeriesSummary& s) {
    ordered_json j;
    j["bars"] = s.bars;
    j["first_timestamp"] = liqcast::format_timestamp(s.first_timestamp);
    j["last_timestamp"] = liqcast::format_timestamp(s.last_timestamp);
    j["zero_volume_bars"] = s.zero_volume_bars;
    j["close_fraction_in_quarter_to_half"] = s.fraction_in_range;
    j["fields"] = ordered_json::array();
    for (const auto& f : s.fields) {
        ordered_json fj;
        fj["name"] = f.name;
        fj["count"] = f.count;
        fj["min"] = f.min;
        fj["max"] = f.max;
        fj["mean"] = f.mean;
        fj["median"] = f.median;
        fj["stddev"] = f.stddev;
        fj["skewness"] = f.skewness;
        fj["right_skewed"] = f.skewness > kRightSkewThreshold;
        fj["histogram"] = {{"lo", f.histogram.lo}, {"hi", f.histogram.hi},
                           {"counts", f.histogram.counts}};
        j["fields"].push_back(std::move(fj));
    }
    return j;
}

int cmd_stats(const CliOverrides& o) {
    const auto cfg = load_config(o);
    const fs::path out_dir = cfg.output_dir;
    liqcast::RunManifest manifest;
    manifest.command = "stats";
    manifest.config_hash = liqcast::config_hash(cfg);
    manifest.input_path = cfg.input;
    manifest.input_hash = liqcast::hash_file(cfg.input);
    return with_manifest(out_dir, manifest, [&]() {
        const auto loaded = load_series(cfg);
        const auto summary = liqcast::summarize_series(loaded.series, cfg.stats_bins);
        return std::vector<std::string>{
            write_json(out_dir, "stats.json", summary_json(summary))};
    });
}

ordered_json features_meta_json(const liqcast::RunConfig& cfg, const liqcast::FeatureMatrix& m,
                                const std::string& csv) {
    ordered_json j;
    j["columns"] = m.columns;
    j["rows"] = m.rows();
    j["warmup_rows_dropped"] = m.warmup_rows_dropped;
    j["matrix_hash"] = liqcast::hash_hex(csv);
    j["feature_config"] = liqcast::run_config_to_json(cfg)["features"];
    return j;
}

int cmd_features(const CliOverrides& o) {
    const auto cfg = load_config(o);
    const fs::path out_dir = cfg.output_dir;
    liqcast::RunManifest manifest;
    manifest.command = "features";
    manifest.config_hash = liqcast::config_hash(cfg);
    manifest.input_path = cfg.input;
    manifest.input_hash = liqcast::hash_file(cfg.input);
    return with_manifest(out_dir, manifest, [&]() {
        const auto loaded = load_series(cfg);
        const auto matrix = liqcast::build_feature_matrix(loaded.series, cfg.features);
        const auto csv = liqcast::to_csv(matrix);
        std::vector<std::string> outputs;
        outputs.push_back(write_text(out_dir, "features.csv", csv));
        outputs.push_back(
            write_json(out_dir, "features_meta.json", features_meta_json(cfg, matrix, csv)));
        return outputs;
    });
}

/// Grid-search one family if the config declares a grid; returns the chosen
/// config and the per-cell record for the report.
std::pair<liqcast::FamilyConfig, ordered_json> resolve_family_config(
    const liqcast::RunConfig& cfg, const std::string& family,
    const liqcast::DatasetBundle& bundle) {
    const auto base = cfg.configs.get(family);
    const auto grid_it = cfg.grids.find(family);
    if (grid_it == cfg.grids.end()) return {base, ordered_json(nullptr)};

    const auto result = liqcast::grid_search(grid_it->second, [&](const ordered_json& cell) {
        liqcast::FamilyConfigs probe = cfg.configs;
        for (const auto& [key, value] : cell.items())
            liqcast::apply_family_override(probe, family, key, value);
        const auto run = liqcast::run_family(family, bundle, probe.get(family), cfg.seed, true);
        if (!run.ok) throw liqcast::NumericError(run.error);
        return run.val.metrics.mse;
    });

    liqcast::FamilyConfigs chosen = cfg.configs;
    for (const auto& [key, value] : result.best().params.items())
        liqcast::apply_family_override(chosen, family, key, value);

    ordered_json record;
    record["best_params"] = result.best().params;
    record["cells"] = ordered_json::array();
    for (const auto& cell : result.cells) {
        ordered_json cj;
        cj["params"] = cell.params;
        if (cell.val_mse) cj["val_mse"] = *cell.val_mse;
        else cj["error"] = cell.error;
        record["cells"].push_back(std::move(cj));
    }
    return {chosen.get(family), record};
}

/// Shared by train and ablate: write the artifacts for one family run.
std::vector<std::string> write_run_artifacts(const fs::path& out_dir, const liqcast::FamilyRun& run,
                                             const std::string& suffix) {
    std::vector<std::string> outputs;
    if (!run.ok) return outputs;
    outputs.push_back(write_text(out_dir, "predictions_" + run.family + suffix + "_test.csv",
                                 liqcast::predictions_to_csv(run.test)));
    if (!run.train_loss_curve.empty())
        outputs.push_back(
            write_text(out_dir, "loss_" + run.family + suffix + ".csv",
                       liqcast::loss_curve_to_csv(run.train_loss_curve, run.val_loss_curve)));
    return outputs;
}

void throw_if_any_failed(const std::vector<liqcast::FamilyRun>& runs) {
    std::string failures;
    for (const auto& run : runs) {
        if (run.ok) continue;
        if (!failures.empty()) failures += "; ";
        failures += run.family + (run.liquidity ? "" : " (no liquidity)") + ": " + run.error;
    }
    if (!failures.empty())
        throw liqcast::NumericError("family runs failed after reports were written: " + failures);
}

int cmd_train(const CliOverrides& o) {
    const auto cfg = load_config(o);
    const fs::path out_dir = cfg.output_dir;
    liqcast::RunManifest manifest;
    manifest.command = "train";
    manifest.config_hash = liqcast::config_hash(cfg);
    manifest.input_path = cfg.input;
    manifest.input_hash = liqcast::hash_file(cfg.input);
    return with_manifest(out_dir, manifest, [&]() {
        const auto loaded = load_series(cfg);
        const auto matrix = liqcast::build_feature_matrix(loaded.series, cfg.features);
        const auto plan = cfg.plan();

        std::vector<std::string> outputs;
        std::vector<liqcast::FamilyRun> runs;
        ordered_json report;
        report["config_hash"] = manifest.config_hash;
        report["input_hash"] = manifest.input_hash;
        report["liquidity_features"] = cfg.features.include_liquidity ? "Included" : "Not Included";
        report["families"] = ordered_json::array();

        for (const auto& family : cfg.families) {
            const auto bundle = liqcast::build_dataset(
                matrix, liqcast::family_window(family, cfg.lstm_window), cfg.split, cfg.scaler);
            auto [family_cfg, grid_record] = resolve_family_config(cfg, family, bundle);
            auto run = liqcast::run_family(family, bundle, family_cfg, cfg.seed,
                                           cfg.features.include_liquidity);
            ordered_json fj = liqcast::detail::run_to_json(run);
            fj["hyperparameters"] = liqcast::detail::config_to_json(family_cfg);
            if (!grid_record.is_null()) fj["grid_search"] = grid_record;
            report["families"].push_back(std::move(fj));

            if (run.ok) {
                const std::string model_file = "model_" + family + ".json";
                liqcast::save_model((out_dir / model_file).string(), run.model);
                outputs.push_back(model_file);
                const auto artifacts = write_run_artifacts(out_dir, run, "");
                outputs.insert(outputs.end(), artifacts.begin(), artifacts.end());
            }
            runs.push_back(std::move(run));
        }
        outputs.push_back(write_json(out_dir, "train_report.json", report));
        outputs.push_back(
            write_text(out_dir, "train_table.txt", liqcast::render_comparison_table(runs)));
        throw_if_any_failed(runs);
        return outputs;
    });
}

int cmd_evaluate(const CliOverrides& o, const std::string& model_path, const std::string& block) {
    const auto cfg = load_config(o);
    if (model_path.empty()) throw liqcast::UsageError("--model is required");
    if (block != "train" && block != "val" && block != "test")
        throw liqcast::UsageError("--block must be train, val, or test");
    const fs::path out_dir = cfg.output_dir;
    liqcast::RunManifest manifest;
    manifest.command = "evaluate";
    manifest.config_hash = liqcast::config_hash(cfg);
    manifest.input_path = cfg.input;
    manifest.input_hash = liqcast::hash_file(cfg.input);
    return with_manifest(out_dir, manifest, [&]() {
        const auto model = liqcast::load_model(model_path);
        const auto loaded = load_series(cfg);
        auto matrix = liqcast::build_feature_matrix(loaded.series, cfg.features);
        // An ablated model selects its own columns out of the full matrix.
        matrix = matrix.select(model.feature_columns);
        const auto bundle = liqcast::build_dataset(matrix, model.window, cfg.split, cfg.scaler);

        if (bundle.scaler.columns != model.scaler.columns)
            throw liqcast::DataError("model feature schema does not match this dataset");
        for (std::size_t c = 0; c < model.scaler.columns.size(); ++c) {
            const auto& a = bundle.scaler.feature_scales[c];
            const auto& b = model.scaler.feature_scales[c];
            if (a.offset != b.offset || a.denom != b.denom)
                throw liqcast::DataError(
                    "model was not fitted on this dataset (scaler mismatch on column " +
                    model.scaler.columns[c] + ")");
        }

        const auto ev = liqcast::evaluate_block(model, bundle.block(block));
        ordered_json report;
        report["config_hash"] = manifest.config_hash;
        report["input_hash"] = manifest.input_hash;
        report["model"] = liqcast::family_display_name(model.family);
        report["family"] = model.family;
        report["block"] = block;
        report["bundle_hash"] = liqcast::bundle_manifest_hash(bundle);
        report["n_samples"] = ev.n_samples;
        report["metrics"] = liqcast::detail::metrics_to_json(ev.metrics);
        return std::vector<std::string>{
            write_json(out_dir, "eval_report.json", report),
            write_text(out_dir, "eval_predictions.csv", liqcast::predictions_to_csv(ev))};
    });
}

int cmd_ablate(const CliOverrides& o) {
    const auto cfg = load_config(o);
    if (!cfg.features.include_liquidity)
        throw liqcast::UsageError(
            "ablate needs liquidity features enabled; drop the --no-liquidity flag");
    const fs::path out_dir = cfg.output_dir;
    liqcast::RunManifest manifest;
    manifest.command = "ablate";
    manifest.config_hash = liqcast::config_hash(cfg);
    manifest.input_path = cfg.input;
    manifest.input_hash = liqcast::hash_file(cfg.input);
    return with_manifest(out_dir, manifest, [&]() {
        const auto loaded = load_series(cfg);
        const auto matrix = liqcast::build_feature_matrix(loaded.series, cfg.features);
        const auto result = liqcast::run_ablation(matrix, cfg.plan());

        ordered_json report;
        report["config_hash"] = manifest.config_hash;
        report["input_hash"] = manifest.input_hash;
        auto body = liqcast::ablation_to_json(result);
        for (auto& [key, value] : body.items()) report[key] = std::move(value);

        std::vector<std::string> outputs;
        outputs.push_back(write_json(out_dir, "ablation_report.json", report));
        outputs.push_back(write_text(out_dir, "ablation_table.txt",
                                     liqcast::render_comparison_table(result.runs)));
        for (const auto& run : result.runs) {
            const auto artifacts =
                write_run_artifacts(out_dir, run, run.liquidity ? "_on" : "_off");
            outputs.insert(outputs.end(), artifacts.begin(), artifacts.end());
        }
        throw_if_any_failed(result.runs);
        return outputs;
    });
}

int cmd_predict(const std::string& model_path, const std::string& features_path,
                const std::string& out) {
    if (model_path.empty()) throw liqcast::UsageError("--model is required");
    if (features_path.empty()) throw liqcast::UsageError("--features is required");
    const fs::path out_dir = out.empty() ? "out" : out;
    liqcast::RunManifest manifest;
    manifest.command = "predict";
    manifest.config_hash = "";
    manifest.input_path = features_path;
    manifest.input_hash = liqcast::hash_file(features_path);
    return with_manifest(out_dir, manifest, [&]() {
        const auto model = liqcast::load_model(model_path);
        const auto full = liqcast::load_feature_csv(features_path);
        for (const auto& col : model.feature_columns)
            if (std::find(full.columns.begin(), full.columns.end(), col) == full.columns.end())
                throw liqcast::DataError("feature schema mismatch: file lacks column " + col);
        const auto matrix = full.select(model.feature_columns);
        if (matrix.rows() < model.window)
            throw liqcast::DataError("feature file has fewer rows than the model window");

        std::int64_t interval = 0;
        if (matrix.rows() > 1) {
            interval = matrix.timestamps[1] - matrix.timestamps[0];
            for (std::size_t r = 2; r < matrix.rows(); ++r)
                if (matrix.timestamps[r] - matrix.timestamps[r - 1] != interval)
                    throw liqcast::DataError("feature file timestamps are not evenly spaced");
        }

        liqcast::Scaler scaler = model.scaler;
        const auto scaled = scaler.transform(matrix);

        // One sample per window position; the last window predicts one bar
        // beyond the end of the file.
        liqcast::WindowedBlock block;
        block.window = model.window;
        block.n_features = matrix.cols();
        const std::size_t n = matrix.rows() - model.window + 1;
        for (std::size_t s = 0; s < n; ++s) {
            for (std::size_t t = 0; t < model.window; ++t)
                for (std::size_t f = 0; f < matrix.cols(); ++f)
                    block.x.push_back(scaled.at(s + t, f));
            const std::size_t last_row = s + model.window - 1;
            block.target_timestamps.push_back(matrix.timestamps[last_row] + interval);
            block.y.push_back(0.0);
            block.y_raw.push_back(0.0);
        }
        const auto predictions = model.predict_prices(block);

        std::string csv = "predicted_for,prediction,actual\n";
        for (std::size_t s = 0; s < n; ++s) {
            csv += liqcast::format_timestamp(block.target_timestamps[s]);
            csv += ',';
            csv += liqcast::format_double(predictions[s]);
            csv += ',';
            const std::size_t target_row = s + model.window;
            if (target_row < full.rows() && liqcast::is_defined(full.raw_close[target_row]))
                csv += liqcast::format_double(full.raw_close[target_row]);
            csv += '\n';
        }
        return std::vector<std::string>{write_text(out_dir, "predictions.csv", csv)};
    });
}

int cmd_export_plots(const CliOverrides& o) {
    const auto cfg = load_config(o);
    const fs::path out_dir = cfg.output_dir;
    liqcast::RunManifest manifest;
    manifest.command = "export-plots";
    manifest.config_hash = liqcast::config_hash(cfg);
    manifest.input_path = cfg.input;
    manifest.input_hash = liqcast::hash_file(cfg.input);
    return with_manifest(out_dir, manifest, [&]() {
        const auto loaded = load_series(cfg);
        const auto summary = liqcast::summarize_series(loaded.series, cfg.stats_bins);
        std::vector<std::string> outputs;

        for (const auto& field : summary.fields) {
            if (field.name != "close" && field.name != "volume_base") continue;
            std::string csv = "bin_lo,bin_hi,count\n";
            const double width = (field.histogram.hi - field.histogram.lo) /
                                 static_cast<double>(field.histogram.counts.size());
            for (std::size_t b = 0; b < field.histogram.counts.size(); ++b) {
                csv += liqcast::format_double(field.histogram.lo + width * static_cast<double>(b));
                csv += ',';
                csv += liqcast::format_double(field.histogram.lo +
                                              width * static_cast<double>(b + 1));
                csv += ',';
                csv += std::to_string(field.histogram.counts[b]);
                csv += '\n';
            }
            outputs.push_back(write_text(out_dir, "hist_" + field.name + ".csv", csv));
        }

        liqcast::FeatureConfig liq_cfg = cfg.features;
        liq_cfg.include_liquidity = true;
        const auto matrix = liqcast::build_feature_matrix(loaded.series, liq_cfg);
        const std::size_t vvr_col = matrix.column_index("vvr");
        const std::size_t vwap_col = matrix.column_index("vwap");
        std::string csv = "timestamp,close,vvr,vwap\n";
        for (std::size_t r = 0; r < matrix.rows(); ++r) {
            csv += liqcast::format_timestamp(matrix.timestamps[r]);
            csv += ',';
            csv += liqcast::format_double(matrix.raw_close[r]);
            csv += ',';
            csv += liqcast::format_double(matrix.at(r, vvr_col));
            csv += ',';
            csv += liqcast::format_double(matrix.at(r, vwap_col));
            csv += '\n';
        }
        outputs.push_back(write_text(out_dir, "liquidity_series.csv", csv));
        return outputs;
    });
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"liquidity-aware cryptocurrency price forecasting toolkit"};
    app.require_subcommand(1);

    CliOverrides o;
    std::string model_path, features_path, block = "test";

    const auto add_common = [&](CLI::App* cmd, bool needs_config) {
        if (needs_config)
            cmd->add_option("-c,--config", o.config_path, "JSON run configuration");
        cmd->add_option("--out", o.out, "output directory (overrides config)");
        return cmd;
    };
    const auto add_model_opts = [&](CLI::App* cmd) {
        cmd->add_option("--seed", [&o](const std::vector<std::string>& v) {
            try {
                o.seed = std::stoull(v[0]);
            } catch (...) {
                return false;
            }
            return true;
        }, "seed override");
        cmd->add_option("--families", o.families, "family subset (linear, rf, xgb, lstm)")
            ->delimiter(',');
        cmd->add_flag("--no-liquidity", o.no_liquidity, "drop the liquidity features");
    };

    auto* ingest = add_common(app.add_subcommand("ingest", "load, validate, and canonicalize bars"), true);
    auto* stats = add_common(app.add_subcommand("stats", "distribution summary of the bars"), true);
    auto* features = add_common(app.add_subcommand("features", "build the feature matrix"), true);
    add_model_opts(features);
    auto* train = add_common(app.add_subcommand("train", "train and evaluate the model families"), true);
    add_model_opts(train);
    auto* evaluate = add_common(app.add_subcommand("evaluate", "score a saved model on a block"), true);
    evaluate->add_option("--model", model_path, "saved model file");
    evaluate->add_option("--block", block, "train, val, or test");
    auto* ablate = add_common(app.add_subcommand("ablate", "with/without-liquidity comparison"), true);
    add_model_opts(ablate);
    auto* predict = app.add_subcommand("predict", "apply a saved model to a feature file");
    predict->add_option("--model", model_path, "saved model file");
    predict->add_option("--features", features_path, "feature CSV from the features command");
    predict->add_option("--out", o.out, "output directory");
    auto* export_plots =
        add_common(app.add_subcommand("export-plots", "plot-ready CSV exports"), true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (ingest->parsed()) return cmd_ingest(o);
        if (stats->parsed()) return cmd_stats(o);
        if (features->parsed()) return cmd_features(o);
        if (train->parsed()) return cmd_train(o);
        if (evaluate->parsed()) return cmd_evaluate(o, model_path, block);
        if (ablate->parsed()) return cmd_ablate(o);
        if (predict->parsed()) return cmd_predict(model_path, features_path, o.out);
        if (export_plots->parsed()) return cmd_export_plots(o);
        throw liqcast::UsageError("no subcommand given");
    } catch (const liqcast::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const liqcast::NumericError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const liqcast::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    }
}
