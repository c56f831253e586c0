#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "liqcast/errors.hpp"
#include "liqcast/hash.hpp"
#include "liqcast/rng.hpp"
#include "liqcast/windows.hpp"

namespace liqcast {

struct LstmConfig {
    std::size_t layers = 1;
    std::size_t hidden = 32;
    double dropout = 0.2;
    std::size_t epochs = 25;
    std::size_t batch_size = 32;
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double adam_epsilon = 1e-8;
    std::size_t patience = 5; // epochs without val improvement before stopping; 0 disables

    void validate() const {
        if (layers == 0 || hidden == 0) throw UsageError("lstm needs layers >= 1 and hidden >= 1");
        if (!(dropout >= 0.0) || dropout >= 1.0) throw UsageError("dropout must be in [0, 1)");
        if (epochs == 0 || batch_size == 0)
            throw UsageError("lstm needs epochs >= 1 and batch_size >= 1");
        if (!(learning_rate > 0.0)) throw UsageError("learning rate must be positive");
        if (!(beta1 >= 0.0 && beta1 < 1.0 && beta2 >= 0.0 && beta2 < 1.0))
            throw UsageError("adam betas must be in [0, 1)");
        if (!(adam_epsilon > 0.0)) throw UsageError("adam epsilon must be positive");
    }
};

/// Stacked LSTM with a scalar regression head. Gates are stored in row blocks
/// [input, forget, cell, output] of each 4H-row matrix. All parameters live in
/// one flat vector so the optimizer, the gradient check, and persistence see
/// the same layout: per layer Wx (4H x F_in, column-major), then Wh (4H x H),
/// then bias (4H); after all layers the head weights (H) and bias (1).
struct LstmModel {
    std::size_t layers = 1;
    std::size_t hidden = 0;
    std::size_t input_size = 0;
    std::size_t window = 0;
    double dropout = 0.0; // train-time rate; prediction always runs without
    std::vector<double> theta;

    std::vector<double> train_mse_history;
    std::vector<double> val_mse_history;
    std::size_t best_epoch = 0; // 1-based epoch whose weights the model keeps
    std::size_t epochs_run = 0;
    bool diverged = false;
    std::string note;

    std::size_t layer_input(std::size_t l) const { return l == 0 ? input_size : hidden; }
    std::size_t wx_offset(std::size_t l) const {
        std::size_t off = 0;
        for (std::size_t k = 0; k < l; ++k)
            off += 4 * hidden * (layer_input(k) + hidden) + 4 * hidden;
        return off;
    }
    std::size_t wh_offset(std::size_t l) const { return wx_offset(l) + 4 * hidden * layer_input(l); }
    std::size_t b_offset(std::size_t l) const { return wh_offset(l) + 4 * hidden * hidden; }
    std::size_t wy_offset() const { return wx_offset(layers); }
    std::size_t by_offset() const { return wy_offset() + hidden; }
    std::size_t param_count() const { return by_offset() + 1; }

    std::vector<double> predict(const WindowedBlock& block) const;
};

namespace detail {

using Mat = Eigen::MatrixXd;
using CMap = Eigen::Map<const Mat>;
using MMap = Eigen::Map<Mat>;

inline Mat sigmoid(const Mat& z) { return (1.0 / (1.0 + (-z.array()).exp())).matrix(); }

/// Forward/backward workspace for one mini-batch.
struct LstmTape {
    // [layer][time], each H x B (inputs and their masks are F_in x B)
    std::vector<std::vector<Mat>> input, mask, gate_i, gate_f, gate_g, gate_o, cell, tanh_cell, h;
    Mat head_input;       // post-dropout top h at the last step, H x B
    Mat head_mask;        // only meaningful when dropped
    bool dropped = false; // whether the mask matrices were drawn
    Eigen::RowVectorXd y; // predictions, 1 x B
};

inline const double* param(const std::vector<double>& theta, std::size_t off) {
    return theta.data() + off;
}

/// Runs the batch forward. In training mode, fresh inverted-dropout masks are
/// drawn from rng for every non-recurrent connection: each layer's input at
/// each step and the top hidden state entering the head.
inline void lstm_forward(const LstmModel& m, const std::vector<Mat>& x_steps, LstmTape& tape,
                         bool train_mode, double dropout, Rng* rng) {
    const std::size_t hid = m.hidden, w = m.window;
    const auto b_cols = static_cast<Eigen::Index>(x_steps[0].cols());
    const auto hid_i = static_cast<Eigen::Index>(hid);
    const double keep = 1.0 - dropout;
    tape.dropped = train_mode && dropout > 0.0;

    // Inverted dropout: entries are 0 or 1/keep, drawn fresh per use.
    const auto draw_mask = [&](Eigen::Index rows, Eigen::Index cols) {
        Mat mask(rows, cols);
        for (Eigen::Index c = 0; c < cols; ++c)
            for (Eigen::Index r = 0; r < rows; ++r)
                mask(r, c) = rng->uniform01() < keep ? 1.0 / keep : 0.0;
        return mask;
    };

    const auto alloc = [&](std::vector<std::vector<Mat>>& store) {
        store.assign(m.layers, std::vector<Mat>(w));
    };
    alloc(tape.input);
    alloc(tape.mask);
    alloc(tape.gate_i);
    alloc(tape.gate_f);
    alloc(tape.gate_g);
    alloc(tape.gate_o);
    alloc(tape.cell);
    alloc(tape.tanh_cell);
    alloc(tape.h);

    for (std::size_t l = 0; l < m.layers; ++l) {
        const auto f_in = static_cast<Eigen::Index>(m.layer_input(l));
        CMap wx(param(m.theta, m.wx_offset(l)), 4 * hid_i, f_in);
        CMap wh(param(m.theta, m.wh_offset(l)), 4 * hid_i, hid_i);
        CMap bias(param(m.theta, m.b_offset(l)), 4 * hid_i, 1);

        Mat h_prev = Mat::Zero(hid_i, b_cols);
        Mat c_prev = Mat::Zero(hid_i, b_cols);
        for (std::size_t t = 0; t < w; ++t) {
            const Mat& raw_in = l == 0 ? x_steps[t] : tape.h[l - 1][t];
            if (tape.dropped) {
                tape.mask[l][t] = draw_mask(raw_in.rows(), raw_in.cols());
                tape.input[l][t] = raw_in.cwiseProduct(tape.mask[l][t]);
            } else {
                tape.input[l][t] = raw_in;
            }
            Mat z = wx * tape.input[l][t] + wh * h_prev;
            z.colwise() += bias.col(0);
            tape.gate_i[l][t] = sigmoid(z.topRows(hid_i));
            tape.gate_f[l][t] = sigmoid(z.middleRows(hid_i, hid_i));
            tape.gate_g[l][t] = z.middleRows(2 * hid_i, hid_i).array().tanh().matrix();
            tape.gate_o[l][t] = sigmoid(z.bottomRows(hid_i));
            tape.cell[l][t] = tape.gate_f[l][t].cwiseProduct(c_prev) +
                              tape.gate_i[l][t].cwiseProduct(tape.gate_g[l][t]);
            tape.tanh_cell[l][t] = tape.cell[l][t].array().tanh().matrix();
            tape.h[l][t] = tape.gate_o[l][t].cwiseProduct(tape.tanh_cell[l][t]);
            h_prev = tape.h[l][t];
            c_prev = tape.cell[l][t];
        }
    }

    if (tape.dropped) {
        tape.head_mask = draw_mask(hid_i, b_cols);
        tape.head_input = tape.h[m.layers - 1][w - 1].cwiseProduct(tape.head_mask);
    } else {
        tape.head_input = tape.h[m.layers - 1][w - 1];
    }
    CMap wy(param(m.theta, m.wy_offset()), hid_i, 1);
    tape.y = wy.col(0).transpose() * tape.head_input;
    tape.y.array() += m.theta[m.by_offset()];
}

/// Backpropagation through time over the taped batch. Returns the gradient of
/// the batch MSE in the flat parameter layout.
inline void lstm_backward(const LstmModel& m, const std::vector<Mat>& x_steps, const LstmTape& tape,
                          const Eigen::RowVectorXd& targets, std::vector<double>& grad) {
    const std::size_t hid = m.hidden, w = m.window;
    const auto hid_i = static_cast<Eigen::Index>(hid);
    const auto b_cols = static_cast<Eigen::Index>(x_steps[0].cols());
    grad.assign(m.param_count(), 0.0);

    const Eigen::RowVectorXd dy =
        (tape.y - targets) * (2.0 / static_cast<double>(b_cols)); // d(mse)/dy

    MMap g_wy(grad.data() + m.wy_offset(), hid_i, 1);
    g_wy.col(0) = tape.head_input * dy.transpose();
    grad[m.by_offset()] = dy.sum();

    CMap wy(param(m.theta, m.wy_offset()), hid_i, 1);
    // Gradient w.r.t. each layer's hidden output at each step, injected either
    // by the head (top layer, last step) or by the layer above.
    std::vector<std::vector<Mat>> dh_above(m.layers, std::vector<Mat>(w));
    for (std::size_t l = 0; l < m.layers; ++l)
        for (std::size_t t = 0; t < w; ++t) dh_above[l][t] = Mat::Zero(hid_i, b_cols);
    {
        Mat dh_head = wy.col(0) * dy;
        if (tape.dropped) dh_head = dh_head.cwiseProduct(tape.head_mask);
        dh_above[m.layers - 1][w - 1] = dh_head;
    }

    for (std::size_t lp = m.layers; lp-- > 0;) {
        const std::size_t l = lp;
        const auto f_in = static_cast<Eigen::Index>(m.layer_input(l));
        CMap wx(param(m.theta, m.wx_offset(l)), 4 * hid_i, f_in);
        CMap wh(param(m.theta, m.wh_offset(l)), 4 * hid_i, hid_i);
        MMap g_wx(grad.data() + m.wx_offset(l), 4 * hid_i, f_in);
        MMap g_wh(grad.data() + m.wh_offset(l), 4 * hid_i, hid_i);
        MMap g_b(grad.data() + m.b_offset(l), 4 * hid_i, 1);

        Mat dh_next = Mat::Zero(hid_i, b_cols);
        Mat dc_next = Mat::Zero(hid_i, b_cols);
        for (std::size_t t = w; t-- > 0;) {
            const Mat dh = dh_above[l][t] + dh_next;
            const Mat& gi = tape.gate_i[l][t];
            const Mat& gf = tape.gate_f[l][t];
            const Mat& gg = tape.gate_g[l][t];
            const Mat& go = tape.gate_o[l][t];
            const Mat& tc = tape.tanh_cell[l][t];
            const Mat c_prev = t > 0 ? tape.cell[l][t - 1] : Mat::Zero(hid_i, b_cols);

            const Mat dc =
                dh.cwiseProduct(go).cwiseProduct((1.0 - tc.array().square()).matrix()) + dc_next;
            Mat dz(4 * hid_i, b_cols);
            dz.topRows(hid_i) = dc.cwiseProduct(gg).cwiseProduct(gi).cwiseProduct(
                (1.0 - gi.array()).matrix());
            dz.middleRows(hid_i, hid_i) =
                dc.cwiseProduct(c_prev).cwiseProduct(gf).cwiseProduct((1.0 - gf.array()).matrix());
            dz.middleRows(2 * hid_i, hid_i) =
                dc.cwiseProduct(gi).cwiseProduct((1.0 - gg.array().square()).matrix());
            dz.bottomRows(hid_i) =
                dh.cwiseProduct(tc).cwiseProduct(go).cwiseProduct((1.0 - go.array()).matrix());

            g_wx += dz * tape.input[l][t].transpose();
            if (t > 0) g_wh += dz * tape.h[l][t - 1].transpose();
            g_b.col(0) += dz.rowwise().sum();

            dh_next = wh.transpose() * dz;
            dc_next = dc.cwiseProduct(gf);

            if (l > 0) {
                Mat d_in = wx.transpose() * dz; // gradient at the post-dropout input
                if (tape.dropped) d_in = d_in.cwiseProduct(tape.mask[l][t]);
                dh_above[l - 1][t] += d_in;
            }
        }
    }
}

inline std::vector<Mat> batch_inputs(const WindowedBlock& block,
                                     const std::vector<std::size_t>& samples,
                                     std::size_t window) {
    std::vector<Mat> x(window);
    const auto f = static_cast<Eigen::Index>(block.n_features);
    const auto b = static_cast<Eigen::Index>(samples.size());
    for (std::size_t t = 0; t < window; ++t) {
        x[t].resize(f, b);
        for (Eigen::Index j = 0; j < b; ++j)
            for (Eigen::Index i = 0; i < f; ++i)
                x[t](i, j) = block.at(samples[static_cast<std::size_t>(j)], t,
                                      static_cast<std::size_t>(i));
    }
    return x;
}

} // namespace detail

inline std::vector<double> LstmModel::predict(const WindowedBlock& block) const {
    if (block.n_features != input_size || block.window != window)
        throw UsageError("lstm expects windows of " + std::to_string(window) + " x " +
                         std::to_string(input_size) + " features");
    std::vector<std::size_t> all(block.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    detail::LstmTape tape;
    const auto x = detail::batch_inputs(block, all, window);
    detail::lstm_forward(*this, x, tape, false, 0.0, nullptr);
    return {tape.y.data(), tape.y.data() + tape.y.size()};
}

/// Batch MSE and its analytic gradient, computed without dropout so the value
/// is a deterministic function of the parameters.
struct LstmGradients {
    double loss = 0.0;
    std::vector<double> grad;
};

inline LstmGradients compute_gradients(const LstmModel& m, const WindowedBlock& block,
                                       const std::vector<std::size_t>& samples) {
    detail::LstmTape tape;
    const auto x = detail::batch_inputs(block, samples, m.window);
    detail::lstm_forward(m, x, tape, false, 0.0, nullptr);
    Eigen::RowVectorXd targets(samples.size());
    for (std::size_t j = 0; j < samples.size(); ++j)
        targets(static_cast<Eigen::Index>(j)) = block.y[samples[j]];
    LstmGradients out;
    out.loss = (tape.y - targets).squaredNorm() / static_cast<double>(samples.size());
    detail::lstm_backward(m, x, tape, targets, out.grad);
    return out;
}

/// Central-difference gradient of the same batch loss, for verifying the
/// analytic backward pass.
inline std::vector<double> numeric_gradients(const LstmModel& m, const WindowedBlock& block,
                                             const std::vector<std::size_t>& samples,
                                             double step = 1e-5) {
    LstmModel probe = m;
    Eigen::RowVectorXd targets(samples.size());
    for (std::size_t j = 0; j < samples.size(); ++j)
        targets(static_cast<Eigen::Index>(j)) = block.y[samples[j]];
    const auto x = detail::batch_inputs(block, samples, m.window);
    const auto loss_at = [&]() {
        detail::LstmTape tape;
        detail::lstm_forward(probe, x, tape, false, 0.0, nullptr);
        return (tape.y - targets).squaredNorm() / static_cast<double>(samples.size());
    };
    std::vector<double> grad(m.param_count());
    for (std::size_t p = 0; p < grad.size(); ++p) {
        const double saved = probe.theta[p];
        probe.theta[p] = saved + step;
        const double up = loss_at();
        probe.theta[p] = saved - step;
        const double down = loss_at();
        probe.theta[p] = saved;
        grad[p] = (up - down) / (2.0 * step);
    }
    return grad;
}

/// Fresh network with weights uniform in (-1/sqrt(hidden), 1/sqrt(hidden)),
/// biases zero except the forget gates, which start at 1.
inline LstmModel init_lstm(const LstmConfig& cfg, std::size_t input_size, std::size_t window,
                           std::uint64_t seed) {
    cfg.validate();
    LstmModel m;
    m.layers = cfg.layers;
    m.hidden = cfg.hidden;
    m.input_size = input_size;
    m.window = window;
    m.dropout = cfg.dropout;
    m.theta.assign(m.param_count(), 0.0);

    Rng rng(substream(seed, "lstm-init"));
    const double bound = 1.0 / std::sqrt(static_cast<double>(cfg.hidden));
    const auto fill = [&](std::size_t off, std::size_t count) {
        for (std::size_t i = 0; i < count; ++i) m.theta[off + i] = rng.uniform(-bound, bound);
    };
    for (std::size_t l = 0; l < cfg.layers; ++l) {
        fill(m.wx_offset(l), 4 * cfg.hidden * m.layer_input(l));
        fill(m.wh_offset(l), 4 * cfg.hidden * cfg.hidden);
        for (std::size_t i = 0; i < cfg.hidden; ++i)
            m.theta[m.b_offset(l) + cfg.hidden + i] = 1.0;
    }
    fill(m.wy_offset(), cfg.hidden);
    return m;
}

/// Mini-batch BPTT with Adam. Samples are visited in a freshly shuffled order
/// each epoch; after every epoch the full train and validation MSE are
/// recorded without dropout. Training stops early once validation MSE has not
/// improved for `patience` epochs, and the best-epoch weights are restored.
/// A non-finite loss stops training immediately and flags the model instead
/// of throwing, so callers can report the partial history.
inline LstmModel train_lstm(const WindowedBlock& train, const WindowedBlock& val,
                            const LstmConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    if (train.size() == 0 || val.size() == 0)
        throw DataError("lstm training needs non-empty train and validation blocks");

    LstmModel m = init_lstm(cfg, train.n_features, train.window, seed);
    Rng rng(substream(seed, "lstm-train"));

    std::vector<double> adam_m(m.param_count(), 0.0), adam_v(m.param_count(), 0.0);
    std::size_t adam_t = 0;
    std::vector<double> grad;

    const auto block_mse = [&](const WindowedBlock& block) {
        const auto pred = m.predict(block);
        double ss = 0.0;
        for (std::size_t i = 0; i < pred.size(); ++i) {
            const double e = pred[i] - block.y[i];
            ss += e * e;
        }
        return ss / static_cast<double>(pred.size());
    };

    std::vector<double> best_theta = m.theta;
    double best_val = std::numeric_limits<double>::infinity();
    std::size_t stale_epochs = 0;

    std::vector<std::size_t> order(train.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    for (std::size_t epoch = 1; epoch <= cfg.epochs && !m.diverged; ++epoch) {
        const auto perm = rng.permutation(order.size());
        for (std::size_t batch_start = 0; batch_start < order.size();
             batch_start += cfg.batch_size) {
            const std::size_t batch_end = std::min(order.size(), batch_start + cfg.batch_size);
            std::vector<std::size_t> samples;
            samples.reserve(batch_end - batch_start);
            for (std::size_t i = batch_start; i < batch_end; ++i) samples.push_back(perm[i]);

            detail::LstmTape tape;
            const auto x = detail::batch_inputs(train, samples, m.window);
            detail::lstm_forward(m, x, tape, true, cfg.dropout, &rng);
            Eigen::RowVectorXd targets(samples.size());
            for (std::size_t j = 0; j < samples.size(); ++j)
                targets(static_cast<Eigen::Index>(j)) = train.y[samples[j]];
            const double loss =
                (tape.y - targets).squaredNorm() / static_cast<double>(samples.size());
            if (!std::isfinite(loss)) {
                m.diverged = true;
                m.note = "non-finite batch loss at epoch " + std::to_string(epoch) + ", batch " +
                         std::to_string(batch_start / cfg.batch_size);
                break;
            }
            detail::lstm_backward(m, x, tape, targets, grad);

            ++adam_t;
            const double corr1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(adam_t));
            const double corr2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(adam_t));
            for (std::size_t p = 0; p < m.theta.size(); ++p) {
                adam_m[p] = cfg.beta1 * adam_m[p] + (1.0 - cfg.beta1) * grad[p];
                adam_v[p] = cfg.beta2 * adam_v[p] + (1.0 - cfg.beta2) * grad[p] * grad[p];
                m.theta[p] -= cfg.learning_rate * (adam_m[p] / corr1) /
                              (std::sqrt(adam_v[p] / corr2) + cfg.adam_epsilon);
            }
        }
        if (m.diverged) break;

        const double train_mse = block_mse(train);
        const double val_mse = block_mse(val);
        m.train_mse_history.push_back(train_mse);
        m.val_mse_history.push_back(val_mse);
        m.epochs_run = epoch;
        if (!std::isfinite(train_mse) || !std::isfinite(val_mse)) {
            m.diverged = true;
            m.note = "non-finite epoch loss at epoch " + std::to_string(epoch);
            break;
        }

        if (val_mse < best_val) {
            best_val = val_mse;
            best_theta = m.theta;
            m.best_epoch = epoch;
            stale_epochs = 0;
        } else if (++stale_epochs >= cfg.patience && cfg.patience > 0) {
            break;
        }
    }

    // Diverging before the first epoch completes leaves best_theta at the
    // initial weights, which is still the best state seen.
    m.theta = best_theta;
    return m;
}

} // namespace liqcast
