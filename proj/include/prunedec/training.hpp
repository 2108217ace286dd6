#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "prunedec/channel.hpp"
#include "prunedec/codec.hpp"
#include "prunedec/mlp.hpp"

namespace prunedec {

struct training_diverged_error : std::runtime_error {
    long step;
    explicit training_diverged_error(long step_)
        : std::runtime_error("training diverged (loss not finite) at step " + std::to_string(step_)),
          step(step_) {}
};

struct HistoryRow {
    long step = 0;
    double train_loss = 0.0;    // mean batch loss since the previous evaluation
    double val_loss = 0.0;
    double val_accuracy = 0.0;  // codeword-exact fraction on the validation set
};

struct TrainResult {
    MaskedMlp checkpoint;
    long steps_run = 0;
    double best_val_loss = 0.0;
    std::vector<HistoryRow> history;
};

namespace detail {

struct ValMetrics {
    double loss = 0.0;
    double accuracy = 0.0;
};

inline ValMetrics evaluate_validation(const MaskedMlp& net, const Batch& val, MlpWorkspace& ws) {
    const int n = val.n;
    const int total = static_cast<int>(val.codewords.size());
    double loss_sum = 0.0;
    long correct = 0;
    constexpr int chunk = 2048;
    for (int at = 0; at < total; at += chunk) {
        const int count = std::min(chunk, total - at);
        forward_batch(net, val.received.data() + static_cast<std::size_t>(at) * n, count, ws);
        const std::vector<double>& probs = ws.act.back();
        for (int w = 0; w < count; ++w) {
            const double* p = probs.data() + static_cast<std::size_t>(w) * n;
            const Bits& c = val.codewords[at + w];
            loss_sum += bce_loss(std::span<const double>(p, n), c);
            bool all = true;
            for (int i = 0; i < n; ++i)
                if ((p[i] >= 0.5 ? 1 : 0) != c[i]) {
                    all = false;
                    break;
                }
            correct += all;
        }
    }
    return {loss_sum / total, static_cast<double>(correct) / total};
}

}  // namespace detail

// One full training run: on-the-fly channel batches, Adam steps on unmasked
// parameters, early stopping on a fixed held-out validation batch evaluated
// every kEvalEvery steps, best-validation parameters restored at the end.
// Deterministic given (net, cfg, spec).
inline TrainResult train(MaskedMlp net, const CodeSpec& spec, const TrainConfig& cfg) {
    if (net.input_dim() != spec.n)
        throw std::invalid_argument("train: network width " + std::to_string(net.input_dim()) +
                                    " does not match code n=" + std::to_string(spec.n));
    if (cfg.learning_rate <= 0.0) throw std::invalid_argument("train: learning_rate must be > 0");
    if (cfg.patience < 1) throw std::invalid_argument("train: patience must be >= 1");
    if (cfg.batch_size < 1 || cfg.val_batch < 1 || cfg.max_steps < 1)
        throw std::invalid_argument("train: batch_size, val_batch, max_steps must be >= 1");

    const ChannelParams params(cfg.train_ebn0_db, spec.rate);
    SplitRng train_rng(cfg.seed, /*stream=*/2);
    SplitRng val_rng(cfg.seed, /*stream=*/3);
    const Batch val = sample_batch(spec, params, cfg.val_batch, val_rng);

    AdamState adam(net);
    Gradients grads;
    MlpWorkspace ws, val_ws;

    TrainResult result;
    double best_val = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> best_w, best_b;
    int stall = 0;
    double window_sum = 0.0;
    int window_n = 0;
    long step = 0;

    while (step < cfg.max_steps) {
        ++step;
        Batch batch = sample_batch(spec, params, cfg.batch_size, train_rng);
        forward_batch(net, batch.received.data(), cfg.batch_size, ws);
        const double loss = backward_batch(net, ws, batch.codewords, cfg.batch_size, grads);
        if (!std::isfinite(loss)) throw training_diverged_error(step);
        optimizer_step(net, grads, adam, cfg.learning_rate);
        window_sum += loss;
        ++window_n;

        if (step % kEvalEvery == 0 || step == cfg.max_steps) {
            const auto vm = detail::evaluate_validation(net, val, val_ws);
            if (!std::isfinite(vm.loss)) throw training_diverged_error(step);
            result.history.push_back({step, window_sum / window_n, vm.loss, vm.accuracy});
            window_sum = 0.0;
            window_n = 0;
            if (vm.loss < best_val) {
                best_val = vm.loss;
                best_w.clear();
                best_b.clear();
                for (const Layer& l : net.layers) {
                    best_w.push_back(l.w);
                    best_b.push_back(l.b);
                }
                stall = 0;
            } else {
                ++stall;
            }
            if (stall >= cfg.patience) break;
            if (step == cfg.max_steps) break;
        }
    }

    if (!best_w.empty()) {
        for (std::size_t l = 0; l < net.layers.size(); ++l) {
            net.layers[l].w = best_w[l];
            net.layers[l].b = best_b[l];
        }
        net.sync_effective();
    }
    result.checkpoint = std::move(net);
    result.steps_run = step;
    result.best_val_loss = best_val;
    return result;
}

}  // namespace prunedec
