#pragma once

#include "liqcast/boosting.hpp"
#include "liqcast/bundle.hpp"
#include "liqcast/candle.hpp"
#include "liqcast/errors.hpp"
#include "liqcast/evaluate.hpp"
#include "liqcast/experiment.hpp"
#include "liqcast/features.hpp"
#include "liqcast/forest.hpp"
#include "liqcast/gaps.hpp"
#include "liqcast/grid_search.hpp"
#include "liqcast/hash.hpp"
#include "liqcast/indicators.hpp"
#include "liqcast/ingest.hpp"
#include "liqcast/io_util.hpp"
#include "liqcast/linear.hpp"
#include "liqcast/liquidity.hpp"
#include "liqcast/lstm.hpp"
#include "liqcast/manifest.hpp"
#include "liqcast/metrics.hpp"
#include "liqcast/model.hpp"
#include "liqcast/model_io.hpp"
#include "liqcast/rng.hpp"
#include "liqcast/run_config.hpp"
#include "liqcast/scaler.hpp"
#include "liqcast/split.hpp"
#include "liqcast/summary.hpp"
#include "liqcast/time_util.hpp"
#include "liqcast/windows.hpp"

namespace liqcast {

inline constexpr const char* kVersion = "0.1.0";

}
