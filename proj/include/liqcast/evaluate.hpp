#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "liqcast/metrics.hpp"
#include "liqcast/model.hpp"
#include "liqcast/windows.hpp"

namespace liqcast {

/// Predictions and metrics for one block, in price units. Actual values are
/// the block's raw closes, untouched by the scaler; only predictions pass
/// through the inverse transform.
struct BlockEvaluation {
    std::size_t n_samples = 0;
    Metrics metrics;
    std::vector<std::int64_t> timestamps;
    std::vector<double> actual;
    std::vector<double> predicted;
};

inline BlockEvaluation evaluate_block(const TrainedModel& model, const WindowedBlock& block) {
    BlockEvaluation ev;
    ev.n_samples = block.size();
    ev.timestamps = block.target_timestamps;
    ev.actual = block.y_raw;
    ev.predicted = model.predict_prices(block);
    ev.metrics = compute_metrics(ev.actual, ev.predicted);
    return ev;
}

/// CSV of one evaluated block: timestamp, actual close, predicted close.
inline std::string predictions_to_csv(const BlockEvaluation& ev) {
    std::string out = "timestamp,actual,predicted\n";
    for (std::size_t i = 0; i < ev.n_samples; ++i) {
        out += format_timestamp(ev.timestamps[i]);
        out += ',';
        out += format_double(ev.actual[i]);
        out += ',';
        out += format_double(ev.predicted[i]);
        out += '\n';
    }
    return out;
}

} // namespace liqcast
