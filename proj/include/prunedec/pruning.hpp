#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "prunedec/evaluation.hpp"
#include "prunedec/mlp.hpp"
#include "prunedec/ticket.hpp"
#include "prunedec/training.hpp"

namespace prunedec {

struct degenerate_layer_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PruneSchedule {
    enum class Mode { OneShot, IterativeLth };

    Mode mode = Mode::IterativeLth;
    // Fraction of *remaining* weights pruned per round (iterative) or the
    // total fraction (one-shot).
    double per_round_rate = 0.2;
    // Total trajectory records, including the dense round 0. rounds=1 runs
    // the dense baseline only.
    int rounds = 1;
    // The final layer is pruned at per_round_rate * this scale.
    double output_layer_rate_scale = 0.5;
};

// Fraction of weights masked out, over all layers, biases excluded.
inline double global_pruned_fraction(const MaskedMlp& net) {
    const std::size_t total = net.total_weights();
    return total == 0 ? 0.0 : 1.0 - static_cast<double>(net.active_weights()) / static_cast<double>(total);
}

// Layer-wise magnitude pruning: in each layer, of the still-unmasked
// weights, the floor(rate * remaining) smallest in |value| get masked.
// Ties break by ascending flat (row-major) index. Already-masked entries
// stay masked.
inline void magnitude_prune(MaskedMlp& net, double rate, double output_layer_rate_scale = 0.5) {
    if (!(rate > 0.0) || rate >= 1.0) throw std::invalid_argument("magnitude_prune: rate must be in (0,1)");
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        Layer& layer = net.layers[l];
        const bool is_output = l + 1 == net.layers.size();
        const double layer_rate = rate * (is_output ? output_layer_rate_scale : 1.0);
        std::vector<std::size_t> alive;
        alive.reserve(layer.w.size());
        for (std::size_t j = 0; j < layer.w.size(); ++j)
            if (layer.mask[j]) alive.push_back(j);
        const std::size_t count =
            std::min(alive.size(), static_cast<std::size_t>(std::floor(layer_rate * static_cast<double>(alive.size()))));
        if (count == alive.size())
            throw degenerate_layer_error("magnitude_prune: layer " + std::to_string(l) +
                                         " would be left with zero unmasked weights");
        std::sort(alive.begin(), alive.end(), [&](std::size_t a, std::size_t b) {
            const double ma = std::fabs(layer.w[a]), mb = std::fabs(layer.w[b]);
            return ma != mb ? ma < mb : a < b;
        });
        for (std::size_t i = 0; i < count; ++i) {
            layer.mask[alive[i]] = 0;
            layer.w_eff[alive[i]] = 0.0;
        }
    }
}

// Winning-ticket reset: surviving weights back to their initial values,
// biases back to theirs, masks untouched.
inline void reset_to_init(MaskedMlp& net) {
    for (Layer& layer : net.layers) {
        for (std::size_t j = 0; j < layer.w.size(); ++j)
            if (layer.mask[j]) layer.w[j] = layer.w_init[j];
        layer.b = layer.b_init;
    }
    net.sync_effective();
}

struct LthOptions {
    long long eval_words = 100000;       // words for the per-round accuracy estimate
    double eval_ebn0_db = std::numeric_limits<double>::quiet_NaN();  // NaN = train SNR
    std::function<void(const TicketRecord&)> on_round;               // fires after each record
};

namespace detail {

inline double round_accuracy(const MaskedMlp& net, const CodeSpec& spec, const TrainConfig& cfg,
                             const LthOptions& opts, int round) {
    const double snr = std::isnan(opts.eval_ebn0_db) ? cfg.train_ebn0_db : opts.eval_ebn0_db;
    const ChannelParams params(snr, spec.rate);
    SplitRng eval_rng(cfg.seed, /*stream=*/4);
    return measure_ber(Decoder::hard(net), spec, params, opts.eval_words, eval_rng.split(round)).acc_word;
}

inline TicketRecord make_record(int round, TrainResult&& res, const CodeSpec& spec, const TrainConfig& cfg,
                                const LthOptions& opts) {
    TicketRecord rec;
    rec.round = round;
    rec.pruned_fraction_global = global_pruned_fraction(res.checkpoint);
    rec.accuracy = round_accuracy(res.checkpoint, spec, cfg, opts, round);
    rec.val_loss = res.best_val_loss;
    rec.checkpoint = std::move(res.checkpoint);
    return rec;
}

}  // namespace detail

// The iterative prune-reset-retrain loop. Round 0 trains the dense network;
// every later round masks the smallest surviving weights, resets survivors
// to their initial values and retrains with the same config and data seeds.
// Stops at schedule.rounds, or earlier if a layer would go degenerate.
// Passing `resume` continues an existing trajectory to schedule.rounds.
inline TicketTrajectory run_lth(const CodeSpec& spec, const std::vector<int>& dims, const TrainConfig& cfg,
                                const PruneSchedule& schedule, const LthOptions& opts = {},
                                const TicketTrajectory* resume = nullptr) {
    if (schedule.mode != PruneSchedule::Mode::IterativeLth)
        throw std::invalid_argument("run_lth: schedule.mode must be IterativeLth");
    if (schedule.rounds < 1) throw std::invalid_argument("run_lth: rounds must be >= 1");

    TicketTrajectory traj;
    if (resume != nullptr) traj = *resume;

    if (traj.records.empty()) {
        MaskedMlp net = init_network(dims, cfg.seed);
        TicketRecord rec = detail::make_record(0, train(std::move(net), spec, cfg), spec, cfg, opts);
        if (opts.on_round) opts.on_round(rec);
        traj.records.push_back(std::move(rec));
    }

    for (int round = static_cast<int>(traj.records.size()); round < schedule.rounds; ++round) {
        MaskedMlp net = traj.records.back().checkpoint;
        try {
            magnitude_prune(net, schedule.per_round_rate, schedule.output_layer_rate_scale);
        } catch (const degenerate_layer_error&) {
            break;
        }
        reset_to_init(net);
        TicketRecord rec = detail::make_record(round, train(std::move(net), spec, cfg), spec, cfg, opts);
        if (opts.on_round) opts.on_round(rec);
        traj.records.push_back(std::move(rec));
    }
    return traj;
}

// One-shot pruning: train dense, prune once at total_rate, reset survivors,
// retrain once. Returns a two-record trajectory (dense, pruned). A known
// dense record can be supplied to skip retraining the baseline.
inline TicketTrajectory run_oneshot(const CodeSpec& spec, const std::vector<int>& dims, const TrainConfig& cfg,
                                    double total_rate, double output_layer_rate_scale = 0.5,
                                    const LthOptions& opts = {}, const TicketRecord* dense = nullptr) {
    if (!(total_rate > 0.0) || total_rate >= 1.0)
        throw std::invalid_argument("run_oneshot: total_rate must be in (0,1)");

    TicketTrajectory traj;
    if (dense != nullptr) {
        traj.records.push_back(*dense);
    } else {
        MaskedMlp net = init_network(dims, cfg.seed);
        TicketRecord rec = detail::make_record(0, train(std::move(net), spec, cfg), spec, cfg, opts);
        if (opts.on_round) opts.on_round(rec);
        traj.records.push_back(std::move(rec));
    }

    MaskedMlp net = traj.records.back().checkpoint;
    magnitude_prune(net, total_rate, output_layer_rate_scale);
    reset_to_init(net);
    TicketRecord rec = detail::make_record(1, train(std::move(net), spec, cfg), spec, cfg, opts);
    if (opts.on_round) opts.on_round(rec);
    traj.records.push_back(std::move(rec));
    return traj;
}

// The one-shot rate whose realized global pruned fraction matches `target`
// under the per-layer scaling policy (floor rounding aside).
inline double oneshot_rate_for_global(const std::vector<int>& dims, double target_global,
                                      double output_layer_rate_scale = 0.5) {
    double total = 0.0, weighted = 0.0;
    for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
        const double sz = static_cast<double>(dims[l]) * dims[l + 1];
        const bool is_output = l + 2 == dims.size();
        total += sz;
        weighted += sz * (is_output ? output_layer_rate_scale : 1.0);
    }
    return target_global * total / weighted;
}

}  // namespace prunedec
