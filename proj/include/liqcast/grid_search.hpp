#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "liqcast/errors.hpp"

namespace liqcast {

/// One evaluated grid cell. A cell that failed to train keeps its error text
/// and no score.
struct GridCell {
    nlohmann::ordered_json params;
    std::optional<double> val_mse;
    std::string error;
};

struct GridResult {
    std::vector<GridCell> cells;
    std::size_t best_index = 0;
    const GridCell& best() const { return cells[best_index]; }
};

/// Exhaustive search over a grid given as {"param": [values...], ...}. Axes
/// expand in declared order with the last axis varying fastest, and the lowest
/// validation MSE wins, earliest cell on ties. Throws only if every cell fails.
inline GridResult grid_search(const nlohmann::ordered_json& grid,
                              const std::function<double(const nlohmann::ordered_json&)>& evaluate) {
    if (!grid.is_object() || grid.empty())
        throw UsageError("grid must be a non-empty object of parameter arrays");
    std::vector<std::string> axes;
    std::vector<std::vector<nlohmann::ordered_json>> values;
    for (const auto& [key, arr] : grid.items()) {
        if (!arr.is_array() || arr.empty())
            throw UsageError("grid axis '" + key + "' must be a non-empty array");
        axes.push_back(key);
        values.emplace_back(arr.begin(), arr.end());
    }

    GridResult result;
    std::vector<std::size_t> cursor(axes.size(), 0);
    bool done = false;
    while (!done) {
        GridCell cell;
        for (std::size_t a = 0; a < axes.size(); ++a) cell.params[axes[a]] = values[a][cursor[a]];
        try {
            cell.val_mse = evaluate(cell.params);
        } catch (const std::exception& e) {
            cell.error = e.what();
        }
        result.cells.push_back(std::move(cell));

        for (std::size_t a = axes.size(); a-- > 0;) {
            if (++cursor[a] < values[a].size()) break;
            cursor[a] = 0;
            if (a == 0) done = true;
        }
    }

    bool found = false;
    for (std::size_t i = 0; i < result.cells.size(); ++i) {
        const auto& c = result.cells[i];
        if (!c.val_mse) continue;
        if (!found || *c.val_mse < *result.cells[result.best_index].val_mse) {
            result.best_index = i;
            found = true;
        }
    }
    if (!found) throw NumericError("every grid cell failed; see per-cell errors");
    return result;
}

} // namespace liqcast
