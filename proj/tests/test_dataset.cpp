#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "liqcast/liqcast.hpp"
#include "support/fixtures.hpp"

using namespace liqcast;

TEST_CASE("chronological split floors train and val and gives test the rest") {
    auto idx = split_chronological(100);
    CHECK(idx.train_size() == 70);
    CHECK(idx.val_size() == 15);
    CHECK(idx.test_size() == 15);

    idx = split_chronological(101);
    CHECK(idx.train_size() == 70);
    CHECK(idx.val_size() == 15);
    CHECK(idx.test_size() == 16);

    SplitSpec spec;
    spec.train_fraction = 0.6;
    spec.val_fraction = 0.25;
    idx = split_chronological(97, spec);
    CHECK(idx.train_size() == 58);
    CHECK(idx.val_size() == 24);
    CHECK(idx.test_size() == 15);

    SECTION("blocks partition the rows in order for any size") {
        for (std::size_t n : {10, 33, 97, 1460, 100000}) {
            auto s = split_chronological(n);
            CHECK(s.train_begin == 0);
            CHECK(s.train_end == s.val_begin);
            CHECK(s.val_end == s.test_begin);
            CHECK(s.test_end == n);
            CHECK(s.train_size() + s.val_size() + s.test_size() == n);
        }
    }

    SECTION("degenerate inputs are rejected") {
        CHECK_THROWS_AS(split_chronological(3), DataError);
        SplitSpec bad;
        bad.train_fraction = 0.9;
        bad.val_fraction = 0.2;
        CHECK_THROWS_AS(split_chronological(100, bad), UsageError);
        bad.train_fraction = 0.0;
        bad.val_fraction = 0.15;
        CHECK_THROWS_AS(split_chronological(100, bad), UsageError);
    }
}

TEST_CASE("column scales implement the two fit rules") {
    const std::vector<double> v = {4.0, 1.0, 3.0, 2.0, 100.0};

    SECTION("min-max over the fitted range only") {
        auto cs = fit_column(v, 0, 4, ScalerKind::MinMax);
        CHECK(cs.offset == 1.0);
        CHECK(cs.denom == 3.0);
        CHECK(cs.transform(1.0) == 0.0);
        CHECK(cs.transform(4.0) == 1.0);
        // out-of-range values are not clipped
        CHECK(cs.transform(100.0) == Catch::Approx(33.0));
        CHECK(cs.inverse(cs.transform(2.5)) == Catch::Approx(2.5).epsilon(1e-15));
    }

    SECTION("z-score uses mean and population stddev") {
        auto cs = fit_column(v, 0, 4, ScalerKind::ZScore);
        CHECK(cs.offset == Catch::Approx(2.5));
        CHECK(cs.denom == Catch::Approx(std::sqrt(1.25)).epsilon(1e-15));
        CHECK(cs.transform(2.5) == Catch::Approx(0.0).margin(1e-15));
        CHECK(cs.inverse(cs.transform(4.0)) == Catch::Approx(4.0).epsilon(1e-15));
    }

    SECTION("constant columns map to zero and invert to the constant") {
        const std::vector<double> flat = {5.0, 5.0, 5.0};
        for (auto kind : {ScalerKind::MinMax, ScalerKind::ZScore}) {
            auto cs = fit_column(flat, 0, 3, kind);
            CHECK(cs.denom == 0.0);
            CHECK(cs.transform(5.0) == 0.0);
            CHECK(cs.transform(7.0) == 0.0);
            CHECK(cs.inverse(0.0) == 5.0);
            CHECK(cs.inverse(123.0) == 5.0);
        }
    }

    SECTION("empty ranges cannot be fitted") {
        CHECK_THROWS_AS(fit_column(v, 2, 2, ScalerKind::MinMax), DataError);
    }
}

TEST_CASE("scaler parameters come from the training block alone") {
    const auto series = fixtures::random_series(300, 61);
    auto m = build_feature_matrix(series, FeatureConfig{});
    const auto split = split_chronological(m.rows());
    const auto scaler = Scaler::fit(m, split, ScalerKind::MinMax);

    SECTION("refitting on a copy with mangled val and test rows changes nothing") {
        auto mangled = m;
        for (std::size_t r = split.val_begin; r < mangled.rows(); ++r)
            for (std::size_t c = 0; c < mangled.cols(); ++c) mangled.at(r, c) *= 100.0;
        for (std::size_t r = split.val_begin; r < mangled.rows(); ++r)
            mangled.raw_close[r] *= 100.0;

        const auto refit = Scaler::fit(mangled, split, ScalerKind::MinMax);
        REQUIRE(refit.feature_scales.size() == scaler.feature_scales.size());
        for (std::size_t c = 0; c < scaler.feature_scales.size(); ++c) {
            CHECK(refit.feature_scales[c].offset == scaler.feature_scales[c].offset);
            CHECK(refit.feature_scales[c].denom == scaler.feature_scales[c].denom);
        }
        CHECK(refit.target_scale.offset == scaler.target_scale.offset);
        CHECK(refit.target_scale.denom == scaler.target_scale.denom);
    }

    SECTION("scaled training rows sit inside [0, 1] under min-max") {
        const auto scaled = scaler.transform(m);
        for (std::size_t r = 0; r < split.train_end; ++r)
            for (std::size_t c = 0; c < scaled.cols(); ++c) {
                CHECK(scaled.at(r, c) >= 0.0);
                CHECK(scaled.at(r, c) <= 1.0);
            }
    }

    SECTION("the target scale equals the close column scale") {
        // raw_close is the close column, so fitting both on the train block
        // must give identical parameters
        const auto close_scale = scaler.feature_scales[m.column_index("close")];
        CHECK(scaler.target_scale.offset == close_scale.offset);
        CHECK(scaler.target_scale.denom == close_scale.denom);
    }

    SECTION("column projections keep the matching parameters") {
        auto sub = scaler.select({"vvr", "close"});
        CHECK(sub.columns == std::vector<std::string>{"vvr", "close"});
        CHECK(sub.feature_scales[0].offset ==
              scaler.feature_scales[m.column_index("vvr")].offset);
        CHECK(sub.feature_scales[1].denom ==
              scaler.feature_scales[m.column_index("close")].denom);
        CHECK(sub.target_scale.offset == scaler.target_scale.offset);
        CHECK_THROWS_AS(scaler.select({"nope"}), UsageError);
    }

    SECTION("transforming a different column set is rejected") {
        auto dropped = m.drop({"vvr"});
        CHECK_THROWS_AS(scaler.transform(dropped), UsageError);
    }
}

TEST_CASE("windowing is causal and shaped as documented") {
    const auto series = fixtures::random_series(200, 67);
    auto m = build_feature_matrix(series, FeatureConfig{});
    const auto split = split_chronological(m.rows());
    const auto scaler = Scaler::fit(m, split, ScalerKind::MinMax);
    const auto scaled = scaler.transform(m);
    std::vector<double> targets(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        targets[r] = scaler.transform_target(m.raw_close[r]);

    SECTION("sample count, layout, and target alignment") {
        const std::size_t window = 10;
        auto b = make_windows(scaled, m, targets, split.train_begin, split.train_end, window,
                              "train");
        CHECK(b.window == window);
        CHECK(b.n_features == m.cols());
        CHECK(b.size() == split.train_size() - window);
        for (std::size_t s = 0; s < b.size(); ++s) {
            for (std::size_t t = 0; t < window; ++t)
                for (std::size_t f = 0; f < b.n_features; ++f)
                    REQUIRE(b.at(s, t, f) == scaled.at(split.train_begin + s + t, f));
            const std::size_t target_row = split.train_begin + s + window;
            CHECK(b.y[s] == targets[target_row]);
            CHECK(b.y_raw[s] == m.raw_close[target_row]);
            CHECK(b.target_timestamps[s] == m.timestamps[target_row]);
        }
    }

    SECTION("every input row predates the target for any window") {
        for (std::size_t window : {1, 3, 20}) {
            auto b = make_windows(scaled, m, targets, split.val_begin, split.val_end, window,
                                  "val");
            for (std::size_t s = 0; s < b.size(); ++s) {
                const std::size_t last_input_row = split.val_begin + s + window - 1;
                CHECK(m.timestamps[last_input_row] < b.target_timestamps[s]);
            }
        }
    }

    SECTION("raw targets are bit-identical to the source closes") {
        auto b = make_windows(scaled, m, targets, split.test_begin, split.test_end, 1, "test");
        for (std::size_t s = 0; s < b.size(); ++s)
            CHECK(b.y_raw[s] == m.raw_close[split.test_begin + s + 1]);
    }

    SECTION("blocks smaller than the window are an error naming the block") {
        CHECK_THROWS_MATCHES(
            make_windows(scaled, m, targets, 0, 5, 5, "train"), DataError,
            Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("train")));
        CHECK_THROWS_AS(make_windows(scaled, m, targets, 0, 10, 0, "train"), UsageError);
    }
}

TEST_CASE("dataset bundles keep the three blocks strictly ordered in time") {
    const auto series = fixtures::random_series(400, 71);
    auto m = build_feature_matrix(series, FeatureConfig{});

    for (std::size_t window : {std::size_t(1), std::size_t(10)}) {
        auto b = build_dataset(m, window);
        REQUIRE(b.train.size() > 0);
        REQUIRE(b.val.size() > 0);
        REQUIRE(b.test.size() > 0);
        CHECK(b.train.target_timestamps.back() < b.val.target_timestamps.front());
        CHECK(b.val.target_timestamps.back() < b.test.target_timestamps.front());
        CHECK(std::is_sorted(b.train.target_timestamps.begin(), b.train.target_timestamps.end()));
        CHECK(b.train.size() == b.split.train_size() - window);
        CHECK(b.val.size() == b.split.val_size() - window);
        CHECK(b.test.size() == b.split.test_size() - window);
    }
}

TEST_CASE("ablated bundles pose the identical prediction problem") {
    const auto series = fixtures::random_series(400, 73);
    auto m = build_feature_matrix(series, FeatureConfig{});

    auto on = build_dataset(m, 10);
    auto off = build_ablated_dataset(m, 10);

    CHECK(off.raw.cols() == on.raw.cols() - 2);
    CHECK(bundle_row_fingerprint(on) == bundle_row_fingerprint(off));
    CHECK(bundle_manifest_hash(on) != bundle_manifest_hash(off));

    // same targets row by row, bit for bit
    REQUIRE(on.test.size() == off.test.size());
    for (std::size_t s = 0; s < on.test.size(); ++s) {
        CHECK(on.test.y_raw[s] == off.test.y_raw[s]);
        CHECK(on.test.target_timestamps[s] == off.test.target_timestamps[s]);
    }

    // shared columns keep identical scale parameters because the split is identical
    for (const auto& col : off.raw.columns) {
        const auto& a = on.scaler.feature_scales[on.raw.column_index(col)];
        const auto& b = off.scaler.feature_scales[off.raw.column_index(col)];
        CHECK(a.offset == b.offset);
        CHECK(a.denom == b.denom);
    }

    auto different_window = build_dataset(m, 5);
    CHECK(bundle_row_fingerprint(on) != bundle_row_fingerprint(different_window));
}

TEST_CASE("fuzzed bundles never leak future information") {
    Rng rng(substream(83, "leakage-fuzz"));
    for (int round = 0; round < 10; ++round) {
        const std::size_t n = 150 + rng.below(150);
        const auto series = fixtures::random_series(n, 1000 + static_cast<std::uint64_t>(round));
        FeatureConfig cfg;
        cfg.sma_windows = {7};
        cfg.rsi_period = 7;
        cfg.macd_fast = 0;
        auto m = build_feature_matrix(series, cfg);
        const std::size_t window = 1 + rng.below(4);
        auto bundle = build_dataset(m, window,
                                    SplitSpec{}, round % 2 == 0 ? ScalerKind::MinMax
                                                                : ScalerKind::ZScore);
        INFO("round " << round << " n " << n << " window " << window);

        // split ordering
        CHECK(bundle.train.target_timestamps.back() < bundle.val.target_timestamps.front());
        CHECK(bundle.val.target_timestamps.back() < bundle.test.target_timestamps.front());

        // perturbing the last bar must leave train and val untouched
        auto edited = series;
        edited.bars.back().close = edited.bars.back().low +
                                   0.25 * (edited.bars.back().high - edited.bars.back().low);
        auto m2 = build_feature_matrix(edited, cfg);
        auto bundle2 = build_dataset(m2, window,
                                     SplitSpec{}, round % 2 == 0 ? ScalerKind::MinMax
                                                                 : ScalerKind::ZScore);
        CHECK(bundle2.train.x == bundle.train.x);
        CHECK(bundle2.train.y == bundle.train.y);
        CHECK(bundle2.val.x == bundle.val.x);
        CHECK(bundle2.test.y_raw.back() != bundle.test.y_raw.back());
    }
}
