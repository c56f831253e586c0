#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "liqcast/errors.hpp"
#include "liqcast/features.hpp"
#include "liqcast/split.hpp"

namespace liqcast {

enum class ScalerKind { MinMax, ZScore };

inline ScalerKind scaler_kind_from_string(const std::string& s) {
    if (s == "min-max") return ScalerKind::MinMax;
    if (s == "z-score") return ScalerKind::ZScore;
    throw UsageError("unknown scaler '" + s + "' (expected min-max or z-score)");
}

inline std::string to_string(ScalerKind k) {
    return k == ScalerKind::MinMax ? "min-max" : "z-score";
}

/// Per-column affine transform (x - offset) / denom. MinMax stores offset=min,
/// denom=max-min; ZScore stores offset=mean, denom=population stddev. A
/// constant column has denom 0: it transforms to 0 and inverts back to offset.
struct ColumnScale {
    double offset = 0.0;
    double denom = 0.0;

    double transform(double x) const { return denom != 0.0 ? (x - offset) / denom : 0.0; }
    double inverse(double x) const { return denom != 0.0 ? x * denom + offset : offset; }
};

inline ColumnScale fit_column(const std::vector<double>& values, std::size_t begin,
                              std::size_t end, ScalerKind kind) {
    if (begin >= end) throw DataError("cannot fit scaler on an empty range");
    ColumnScale cs;
    if (kind == ScalerKind::MinMax) {
        double lo = values[begin], hi = values[begin];
        for (std::size_t i = begin; i < end; ++i) {
            lo = std::min(lo, values[i]);
            hi = std::max(hi, values[i]);
        }
        cs.offset = lo;
        cs.denom = hi - lo;
    } else {
        const double n = static_cast<double>(end - begin);
        double sum = 0.0;
        for (std::size_t i = begin; i < end; ++i) sum += values[i];
        const double mean = sum / n;
        double ss = 0.0;
        for (std::size_t i = begin; i < end; ++i) {
            const double d = values[i] - mean;
            ss += d * d;
        }
        cs.offset = mean;
        cs.denom = std::sqrt(ss / n);
    }
    return cs;
}

/// Column scaling fitted on the training block only. Values outside the fit
/// range are not clipped, so val/test features can leave [0, 1] under MinMax.
struct Scaler {
    ScalerKind kind = ScalerKind::MinMax;
    std::vector<std::string> columns;
    std::vector<ColumnScale> feature_scales; // aligned with columns
    ColumnScale target_scale;                // fitted on train-block closes

    static Scaler fit(const FeatureMatrix& m, const SplitIndices& split, ScalerKind kind) {
        Scaler s;
        s.kind = kind;
        s.columns = m.columns;
        s.feature_scales.reserve(m.cols());
        for (std::size_t c = 0; c < m.cols(); ++c)
            s.feature_scales.push_back(fit_column(m.column(c), split.train_begin, split.train_end, kind));
        s.target_scale = fit_column(m.raw_close, split.train_begin, split.train_end, kind);
        return s;
    }

    /// Scaled copy of the whole matrix using train-fitted parameters.
    FeatureMatrix transform(const FeatureMatrix& m) const {
        if (m.columns != columns)
            throw UsageError("scaler was fitted on a different column set");
        FeatureMatrix out = m;
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c)
                out.at(r, c) = feature_scales[c].transform(m.at(r, c));
        return out;
    }

    double transform_target(double close) const { return target_scale.transform(close); }
    double inverse_target(double scaled) const { return target_scale.inverse(scaled); }

    /// Restriction of this scaler to a column subset, for ablated models.
    Scaler select(const std::vector<std::string>& names) const {
        Scaler out;
        out.kind = kind;
        out.columns = names;
        out.target_scale = target_scale;
        for (const auto& n : names) {
            std::size_t i = 0;
            while (i < columns.size() && columns[i] != n) ++i;
            if (i == columns.size()) throw UsageError("unknown scaler column: " + n);
            out.feature_scales.push_back(feature_scales[i]);
        }
        return out;
    }
};

} // namespace liqcast
