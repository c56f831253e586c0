#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>
#include <vector>

#include "liqcast/liqcast.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace liqcast;

namespace {

/// Window-1 block straight from a plain design matrix, for model unit tests.
WindowedBlock flat_block(const std::vector<std::vector<double>>& rows,
                         const std::vector<double>& y) {
    WindowedBlock b;
    b.window = 1;
    b.n_features = rows.empty() ? 0 : rows[0].size();
    for (const auto& r : rows)
        for (double v : r) b.x.push_back(v);
    b.y = y;
    b.y_raw = y;
    b.target_timestamps.assign(y.size(), 0);
    return b;
}

std::vector<std::vector<double>> random_rows(std::size_t n, std::size_t d, Rng& rng) {
    std::vector<std::vector<double>> rows(n, std::vector<double>(d));
    for (auto& r : rows)
        for (auto& v : r) v = rng.uniform(-2.0, 2.0);
    return rows;
}

} // namespace

TEST_CASE("ols recovers planted coefficients on exact linear data") {
    Rng rng(substream(1, "ols-exact"));
    const std::vector<double> w = {2.0, -3.0, 0.5};
    const double intercept = 1.25;
    auto rows = random_rows(100, 3, rng);
    std::vector<double> y(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        y[i] = intercept;
        for (std::size_t j = 0; j < w.size(); ++j) y[i] += w[j] * rows[i][j];
    }

    auto model = train_linear(flat_block(rows, y));
    REQUIRE(model.weights.size() == 3);
    for (std::size_t j = 0; j < w.size(); ++j)
        CHECK(model.weights[j] == Catch::Approx(w[j]).epsilon(1e-9));
    CHECK(model.intercept == Catch::Approx(intercept).epsilon(1e-9));
}

TEST_CASE("normal equations agree with gradient descent on noisy data") {
    Rng rng(substream(2, "ols-gd"));
    auto rows = random_rows(60, 2, rng);
    std::vector<double> y(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        y[i] = 0.7 * rows[i][0] - 1.4 * rows[i][1] + 0.3 + rng.normal(0.0, 0.1);

    auto model = train_linear(flat_block(rows, y));
    auto gd = oracles::least_squares_descent(rows, y);
    CHECK(model.weights[0] == Catch::Approx(gd[0]).epsilon(1e-6));
    CHECK(model.weights[1] == Catch::Approx(gd[1]).epsilon(1e-6));
    CHECK(model.intercept == Catch::Approx(gd[2]).epsilon(1e-6));
}

TEST_CASE("ridge shrinks weights but never the intercept") {
    Rng rng(substream(3, "ridge"));
    auto rows = random_rows(80, 3, rng);
    std::vector<double> y(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        y[i] = 5.0 + rows[i][0] + rows[i][1] + rows[i][2] + rng.normal(0.0, 0.05);

    auto plain = train_linear(flat_block(rows, y));
    LinearConfig heavy;
    heavy.lambda = 1e4;
    auto ridged = train_linear(flat_block(rows, y), heavy);

    double norm_plain = 0.0, norm_ridged = 0.0;
    for (double v : plain.weights) norm_plain += v * v;
    for (double v : ridged.weights) norm_ridged += v * v;
    CHECK(norm_ridged < 0.01 * norm_plain);
    // with weights crushed, the unpenalized intercept absorbs the mean
    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= static_cast<double>(y.size());
    CHECK(ridged.intercept == Catch::Approx(mean).margin(0.05));

    LinearConfig bad;
    bad.lambda = -1.0;
    CHECK_THROWS_AS(train_linear(flat_block(rows, y), bad), UsageError);
}

TEST_CASE("an exactly collinear design demands a positive lambda") {
    Rng rng(substream(4, "collinear"));
    std::vector<std::vector<double>> rows(40, std::vector<double>(2));
    std::vector<double> y(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        rows[i][0] = rng.uniform(-1.0, 1.0);
        rows[i][1] = 2.0 * rows[i][0];
        y[i] = rows[i][0] + rng.normal(0.0, 0.01);
    }
    CHECK_THROWS_MATCHES(train_linear(flat_block(rows, y)), NumericError,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("positive ridge lambda")));
    LinearConfig tiny;
    tiny.lambda = 1e-8;
    CHECK_NOTHROW(train_linear(flat_block(rows, y), tiny));
}

TEST_CASE("a deep unrestricted tree memorizes distinct training rows") {
    Rng rng(substream(5, "tree-memorize"));
    auto rows = random_rows(64, 3, rng);
    std::vector<double> y(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        y[i] = static_cast<double>(i) * 0.01 + rng.uniform(0.0, 0.005);

    TreeConfig cfg;
    cfg.max_depth = 64;
    auto tree = train_tree(flat_block(rows, y), cfg);
    for (std::size_t i = 0; i < rows.size(); ++i)
        CHECK(tree.predict_one(rows[i].data()) == y[i]);
}

TEST_CASE("the root split is as good as exhaustive search finds") {
    Rng rng(substream(6, "tree-exhaustive"));
    for (int round = 0; round < 20; ++round) {
        auto rows = random_rows(12, 3, rng);
        std::vector<double> y(rows.size());
        for (auto& v : y) v = rng.uniform(-1.0, 1.0);

        TreeConfig cfg;
        cfg.max_depth = 1;
        auto tree = train_tree(flat_block(rows, y), cfg);
        REQUIRE(tree.nodes.size() == 3);
        const auto& root = tree.nodes[0];
        REQUIRE_FALSE(root.is_leaf);

        const auto oracle = oracles::exhaustive_best_split(rows, y);
        REQUIRE(oracle.found);
        const double achieved = oracles::side_sse(rows, y, root.feature, root.threshold, true) +
                                oracles::side_sse(rows, y, root.feature, root.threshold, false);
        INFO("round " << round << " picked feature " << root.feature << " at " << root.threshold);
        CHECK(achieved == Catch::Approx(oracle.total_sse).margin(1e-9));
    }
}

TEST_CASE("tree structure honors its limits") {
    Rng rng(substream(7, "tree-limits"));
    auto rows = random_rows(200, 4, rng);
    std::vector<double> y(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        y[i] = rows[i][0] + 0.5 * rows[i][1] + rng.normal(0.0, 0.1);

    SECTION("max_depth 0 yields a single leaf holding the mean") {
        TreeConfig cfg;
        cfg.max_depth = 0;
        auto tree = train_tree(flat_block(rows, y), cfg);
        REQUIRE(tree.nodes.size() == 1);
        double mean = 0.0;
        for (double v : y) mean += v;
        mean /= static_cast<double>(y.size());
        CHECK(tree.nodes[0].value == Catch::Approx(mean).epsilon(1e-12));
    }

    SECTION("leaf lambda shrinks leaf values toward zero") {
        TreeConfig cfg;
        cfg.max_depth = 0;
        cfg.leaf_lambda = 3.0;
        auto tree = train_tree(flat_block(rows, y), cfg);
        double sum = 0.0;
        for (double v : y) sum += v;
        CHECK(tree.nodes[0].value ==
              Catch::Approx(sum / (static_cast<double>(y.size()) + 3.0)).epsilon(1e-12));
    }

    SECTION("children of every split hold at least min_samples_leaf rows") {
        TreeConfig cfg;
        cfg.max_depth = 8;
        cfg.min_samples_leaf = 10;
        auto tree = train_tree(flat_block(rows, y), cfg);
        for (const auto& node : tree.nodes) {
            if (node.is_leaf) continue;
            CHECK(tree.nodes[static_cast<std::size_t>(node.left)].n_samples >= 10);
            CHECK(tree.nodes[static_cast<std::size_t>(node.right)].n_samples >= 10);
        }
    }

    SECTION("a constant target never splits") {
        std::vector<double> flat_y(rows.size(), 2.0);
        auto tree = train_tree(flat_block(rows, flat_y), TreeConfig{});
        REQUIRE(tree.nodes.size() == 1);
        CHECK(tree.nodes[0].value == 2.0);
    }
}

TEST_CASE("forests are deterministic in the seed and average their trees") {
    const auto series = fixtures::random_series(260, 91);
    auto bundle = build_dataset(build_feature_matrix(series, FeatureConfig{}), 1);

    ForestConfig cfg;
    cfg.n_trees = 20;
    cfg.max_depth = 6;
    auto a = train_forest(bundle.train, cfg, 42);
    auto b = train_forest(bundle.train, cfg, 42);
    auto c = train_forest(bundle.train, cfg, 43);

    const auto pa = a.predict(bundle.test);
    const auto pb = b.predict(bundle.test);
    const auto pc = c.predict(bundle.test);
    CHECK(pa == pb);
    CHECK(pa != pc);

    SECTION("prediction is exactly the mean over member trees") {
        for (std::size_t s = 0; s < bundle.test.size(); s += 7) {
            double sum = 0.0;
            for (const auto& t : a.trees) sum += t.predict_one(bundle.test.sample(s));
            CHECK(pa[s] == sum / static_cast<double>(a.trees.size()));
        }
    }

    SECTION("per-tree substreams decorrelate the members") {
        REQUIRE(a.trees.size() == 20);
        std::set<double> distinct;
        for (const auto& t : a.trees) distinct.insert(t.predict_one(bundle.test.sample(0)));
        CHECK(distinct.size() > 1);
    }

    SECTION("without bootstrap or feature sampling every tree is the same cart") {
        ForestConfig plain;
        plain.n_trees = 3;
        plain.max_depth = 6;
        plain.bootstrap = false;
        plain.max_features = bundle.train.n_features * bundle.train.window;
        auto forest = train_forest(bundle.train, plain, 7);

        TreeConfig solo_cfg;
        solo_cfg.max_depth = 6;
        auto solo = train_tree(bundle.train, solo_cfg);
        for (std::size_t s = 0; s < bundle.test.size(); s += 11)
            for (const auto& tree : forest.trees)
                CHECK(tree.predict_one(bundle.test.sample(s)) ==
                      solo.predict_one(bundle.test.sample(s)));
    }

    CHECK_THROWS_AS(train_forest(bundle.train, ForestConfig{.n_trees = 0}, 1), UsageError);
}

TEST_CASE("boosted training error never increases over fifty rounds") {
    for (std::uint64_t fixture = 0; fixture < 20; ++fixture) {
        const auto series = fixtures::random_series(160, 2000 + fixture);
        auto bundle = build_dataset(build_feature_matrix(series, FeatureConfig{}), 1);

        BoostConfig cfg;
        cfg.n_rounds = 50;
        cfg.learning_rate = 0.2;
        cfg.max_depth = 3;
        cfg.select_best_on_val = false;
        auto model = train_boosted(bundle.train, bundle.val, cfg, fixture);
        REQUIRE(model.train_mse_history.size() == 50);
        for (std::size_t r = 1; r < 50; ++r) {
            INFO("fixture " << fixture << " round " << r);
            CHECK(model.train_mse_history[r] <= model.train_mse_history[r - 1] + 1e-15);
        }
    }
}

TEST_CASE("boosting keeps the earliest validation optimum") {
    const auto series = fixtures::random_series(300, 97);
    auto bundle = build_dataset(build_feature_matrix(series, FeatureConfig{}), 1);

    BoostConfig cfg;
    cfg.n_rounds = 80;
    cfg.learning_rate = 0.3;
    cfg.max_depth = 4;
    auto model = train_boosted(bundle.train, bundle.val, cfg, 11);

    REQUIRE(model.best_round >= 1);
    REQUIRE(model.best_round <= 80);
    CHECK(model.trees.size() == model.best_round);
    const double best = model.val_mse_history[model.best_round - 1];
    for (std::size_t r = 0; r < model.val_mse_history.size(); ++r) {
        CHECK(model.val_mse_history[r] >= best);
        if (r + 1 < model.best_round) CHECK(model.val_mse_history[r] > best);
    }

    SECTION("disabling selection keeps every round") {
        cfg.select_best_on_val = false;
        auto full = train_boosted(bundle.train, bundle.val, cfg, 11);
        CHECK(full.trees.size() == 80);
        CHECK(full.best_round == 80);
    }

    SECTION("prediction composes base score and shrunken trees") {
        const double* row = bundle.test.sample(3);
        double expect = model.base_score;
        for (const auto& t : model.trees) expect += cfg.learning_rate * t.predict_one(row);
        CHECK(model.predict_one(row) == expect);
    }

    SECTION("selection without validation rows is a usage error") {
        WindowedBlock empty;
        empty.window = 1;
        empty.n_features = bundle.train.n_features;
        CHECK_THROWS_AS(train_boosted(bundle.train, empty, cfg, 11), UsageError);
    }

    SECTION("hyperparameters are validated") {
        auto broken = cfg;
        broken.n_rounds = 0;
        CHECK_THROWS_AS(train_boosted(bundle.train, bundle.val, broken, 1), UsageError);
        broken = cfg;
        broken.learning_rate = 0.0;
        CHECK_THROWS_AS(train_boosted(bundle.train, bundle.val, broken, 1), UsageError);
        broken = cfg;
        broken.subsample = 1.5;
        CHECK_THROWS_AS(train_boosted(bundle.train, bundle.val, broken, 1), UsageError);
        broken = cfg;
        broken.lambda = -0.5;
        CHECK_THROWS_AS(train_boosted(bundle.train, bundle.val, broken, 1), UsageError);
    }
}

TEST_CASE("boosting is deterministic in the seed even with subsampling") {
    const auto series = fixtures::random_series(200, 101);
    auto bundle = build_dataset(build_feature_matrix(series, FeatureConfig{}), 1);

    BoostConfig cfg;
    cfg.n_rounds = 30;
    cfg.subsample = 0.7;
    auto a = train_boosted(bundle.train, bundle.val, cfg, 5);
    auto b = train_boosted(bundle.train, bundle.val, cfg, 5);
    auto c = train_boosted(bundle.train, bundle.val, cfg, 6);
    CHECK(a.predict(bundle.test) == b.predict(bundle.test));
    CHECK(a.predict(bundle.test) != c.predict(bundle.test));
}

TEST_CASE("grid search enumerates axes in declared order, last axis fastest") {
    ordered_json grid;
    grid["a"] = {1, 2};
    grid["b"] = {10, 20, 30};

    std::vector<std::pair<int, int>> visited;
    auto result = grid_search(grid, [&](const ordered_json& p) {
        visited.emplace_back(p.at("a").get<int>(), p.at("b").get<int>());
        return 0.0;
    });

    REQUIRE(result.cells.size() == 6);
    CHECK(visited == std::vector<std::pair<int, int>>{
                         {1, 10}, {1, 20}, {1, 30}, {2, 10}, {2, 20}, {2, 30}});
    // all scores tie at 0, so the earliest cell wins
    CHECK(result.best_index == 0);
}

TEST_CASE("grid search finds the planted optimum and survives failing cells") {
    ordered_json grid;
    grid["depth"] = {1, 2, 3};
    grid["lr"] = {0.1, 0.3};

    SECTION("unique minimum is selected") {
        auto result = grid_search(grid, [](const ordered_json& p) {
            const double d = p.at("depth").get<double>();
            const double lr = p.at("lr").get<double>();
            return (d - 2.0) * (d - 2.0) + (lr - 0.3) * (lr - 0.3);
        });
        CHECK(result.best().params.at("depth") == 2);
        CHECK(result.best().params.at("lr") == 0.3);
        CHECK(*result.best().val_mse == 0.0);
    }

    SECTION("failing cells record their error and are skipped") {
        auto result = grid_search(grid, [](const ordered_json& p) -> double {
            if (p.at("depth").get<int>() == 1) throw NumericError("diverged");
            return p.at("depth").get<double>();
        });
        CHECK(result.cells[0].error == "diverged");
        CHECK_FALSE(result.cells[0].val_mse.has_value());
        CHECK(result.best().params.at("depth") == 2);
    }

    SECTION("a grid where every cell fails is an error") {
        CHECK_THROWS_AS(
            grid_search(grid, [](const ordered_json&) -> double { throw DataError("nope"); }),
            NumericError);
    }

    SECTION("malformed grids are rejected") {
        CHECK_THROWS_AS(grid_search(ordered_json::object(),
                                    [](const ordered_json&) { return 0.0; }),
                        UsageError);
        ordered_json empty_axis;
        empty_axis["a"] = ordered_json::array();
        CHECK_THROWS_AS(grid_search(empty_axis, [](const ordered_json&) { return 0.0; }),
                        UsageError);
    }
}

TEST_CASE("grid search on real training data picks the planted depth") {
    // Interaction target: stumps cannot express x0*x1, depth-3 trees can.
    Rng rng(substream(8, "grid-plant"));
    auto rows = random_rows(400, 2, rng);
    std::vector<double> y(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        y[i] = rows[i][0] * rows[i][1] + rng.normal(0.0, 0.02);

    auto all = flat_block(rows, y);
    WindowedBlock train = all, val = all;
    const std::size_t cut = 300;
    train.x.resize(cut * all.n_features);
    train.y.resize(cut);
    train.y_raw.resize(cut);
    train.target_timestamps.resize(cut);
    val.x.erase(val.x.begin(), val.x.begin() + static_cast<std::ptrdiff_t>(cut * all.n_features));
    val.y.erase(val.y.begin(), val.y.begin() + cut);
    val.y_raw.erase(val.y_raw.begin(), val.y_raw.begin() + cut);
    val.target_timestamps.erase(val.target_timestamps.begin(),
                                val.target_timestamps.begin() + cut);

    ordered_json grid;
    grid["max_depth"] = {1, 3};
    auto result = grid_search(grid, [&](const ordered_json& p) {
        BoostConfig cfg;
        cfg.n_rounds = 60;
        cfg.learning_rate = 0.2;
        cfg.max_depth = p.at("max_depth").get<std::size_t>();
        auto model = train_boosted(train, val, cfg, 3);
        return mse_of(val.y, model.predict(val));
    });
    CHECK(result.best().params.at("max_depth") == 3);
}
