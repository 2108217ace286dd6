#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "prunedec/bits.hpp"
#include "prunedec/rng.hpp"

namespace prunedec {

// Training hyperparameters. Learning rate / batch size / Adam constants are
// the usual defaults for this kind of model; the SNR is the training channel.
struct TrainConfig {
    double learning_rate = 1e-3;
    int batch_size = 256;
    int max_steps = 50000;
    int patience = 10;       // early-stop window, in validation evaluations
    int val_batch = 10000;   // held-out validation words
    double train_ebn0_db = 0.0;
    std::uint64_t seed = 1;
};

// Validation cadence for early stopping (steps between evaluations).
inline constexpr int kEvalEvery = 500;

struct Layer {
    int in = 0;
    int out = 0;
    std::vector<double> w;          // out x in, row-major
    std::vector<double> b;
    std::vector<std::uint8_t> mask; // 1 = active; masked entries contribute 0
    std::vector<double> w_eff;      // w * mask, kept in sync for fast kernels
    std::vector<double> w_init;     // snapshot at construction
    std::vector<double> b_init;
};

// Multilayer perceptron with element-wise weight masks: ReLU hidden layers,
// sigmoid output, n inputs and n outputs. Biases are never masked.
struct MaskedMlp {
    std::vector<int> layer_dims;  // [n, N1, ..., NH, n]
    std::vector<Layer> layers;

    int input_dim() const { return layer_dims.front(); }
    int output_dim() const { return layer_dims.back(); }

    std::size_t total_weights() const {
        std::size_t s = 0;
        for (const auto& l : layers) s += l.w.size();
        return s;
    }

    std::size_t total_biases() const {
        std::size_t s = 0;
        for (const auto& l : layers) s += l.b.size();
        return s;
    }

    std::size_t active_weights() const {
        std::size_t s = 0;
        for (const auto& l : layers)
            for (std::uint8_t m : l.mask) s += m;
        return s;
    }

    void sync_effective() {
        for (auto& l : layers)
            for (std::size_t j = 0; j < l.w.size(); ++j) l.w_eff[j] = l.mask[j] ? l.w[j] : 0.0;
    }
};

inline double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

// Weights from U(-sqrt(6/fan_in), +sqrt(6/fan_in)), biases zero, masks all
// ones, init snapshots taken. Deterministic given seed.
inline MaskedMlp init_network(const std::vector<int>& layer_dims, std::uint64_t seed) {
    if (layer_dims.size() < 2) throw std::invalid_argument("init_network: need at least input and output layers");
    for (int d : layer_dims)
        if (d < 1) throw std::invalid_argument("init_network: layer dims must be positive");
    if (layer_dims.front() != layer_dims.back())
        throw std::invalid_argument("init_network: input and output layers must both have n neurons");

    MaskedMlp net;
    net.layer_dims = layer_dims;
    SplitRng rng(seed, /*stream=*/1);
    for (std::size_t l = 0; l + 1 < layer_dims.size(); ++l) {
        Layer layer;
        layer.in = layer_dims[l];
        layer.out = layer_dims[l + 1];
        const std::size_t nw = static_cast<std::size_t>(layer.in) * layer.out;
        layer.w.resize(nw);
        const double bound = std::sqrt(6.0 / layer.in);
        for (double& x : layer.w) x = (2.0 * rng.next_unit() - 1.0) * bound;
        layer.b.assign(layer.out, 0.0);
        layer.mask.assign(nw, 1);
        layer.w_eff = layer.w;
        layer.w_init = layer.w;
        layer.b_init = layer.b;
        net.layers.push_back(std::move(layer));
    }
    return net;
}

// Scratch buffers for batched passes; reusable across steps.
struct MlpWorkspace {
    std::vector<std::vector<double>> act;  // act[0] = input, act[L] = output probs
    std::vector<double> delta_a, delta_b;

    void prepare(const MaskedMlp& net, int count) {
        act.resize(net.layers.size() + 1);
        std::size_t max_dim = 0;
        for (std::size_t l = 0; l < net.layer_dims.size(); ++l) {
            act[l].resize(static_cast<std::size_t>(count) * net.layer_dims[l]);
            max_dim = std::max(max_dim, static_cast<std::size_t>(net.layer_dims[l]));
        }
        delta_a.resize(static_cast<std::size_t>(count) * max_dim);
        delta_b.resize(static_cast<std::size_t>(count) * max_dim);
    }
};

// Batched forward pass over `count` rows of x (row-major count x n).
// Final activations land in ws.act.back(). Each output row is produced by
// exactly one thread, so results are identical for any thread count.
inline void forward_batch(const MaskedMlp& net, const double* x, int count, MlpWorkspace& ws) {
    ws.prepare(net, count);
    std::copy(x, x + static_cast<std::size_t>(count) * net.input_dim(), ws.act[0].begin());
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        const Layer& layer = net.layers[l];
        const bool last = l + 1 == net.layers.size();
        const double* in = ws.act[l].data();
        double* out = ws.act[l + 1].data();
        const int ni = layer.in, no = layer.out;
#pragma omp parallel for schedule(static)
        for (int bt = 0; bt < count; ++bt) {
            const double* xi = in + static_cast<std::size_t>(bt) * ni;
            double* yo = out + static_cast<std::size_t>(bt) * no;
            for (int o = 0; o < no; ++o) {
                const double* wr = layer.w_eff.data() + static_cast<std::size_t>(o) * ni;
                double acc = layer.b[o];
                for (int i = 0; i < ni; ++i) acc += wr[i] * xi[i];
                yo[o] = last ? sigmoid(acc) : (acc > 0.0 ? acc : 0.0);
            }
        }
    }
}

// Single-word forward pass; outputs are per-bit probabilities in (0,1).
inline std::vector<double> forward(const MaskedMlp& net, std::span<const double> r) {
    if (r.size() != static_cast<std::size_t>(net.input_dim()))
        throw std::invalid_argument("forward: input length mismatch");
    std::vector<double> cur(r.begin(), r.end());
    std::vector<double> next;
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        const Layer& layer = net.layers[l];
        const bool last = l + 1 == net.layers.size();
        next.assign(layer.out, 0.0);
        for (int o = 0; o < layer.out; ++o) {
            const double* wr = layer.w_eff.data() + static_cast<std::size_t>(o) * layer.in;
            double acc = layer.b[o];
            for (int i = 0; i < layer.in; ++i) acc += wr[i] * cur[i];
            next[o] = last ? sigmoid(acc) : (acc > 0.0 ? acc : 0.0);
        }
        cur.swap(next);
    }
    return cur;
}

// Mean binary cross entropy over positions, probabilities clamped at 1e-12.
inline double bce_loss(std::span<const double> p, const Bits& target) {
    if (p.size() != target.size()) throw std::invalid_argument("bce_loss: length mismatch");
    constexpr double eps = 1e-12;
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double pi = std::min(std::max(p[i], eps), 1.0 - eps);
        sum += target[i] ? -std::log(pi) : -std::log(1.0 - pi);
    }
    return sum / static_cast<double>(p.size());
}

struct Gradients {
    std::vector<std::vector<double>> w;
    std::vector<std::vector<double>> b;

    void resize_like(const MaskedMlp& net) {
        w.resize(net.layers.size());
        b.resize(net.layers.size());
        for (std::size_t l = 0; l < net.layers.size(); ++l) {
            w[l].assign(net.layers[l].w.size(), 0.0);
            b[l].assign(net.layers[l].b.size(), 0.0);
        }
    }
};

// Backpropagation for the batch most recently run through forward_batch.
// Gradients are of the mean (over batch and positions) BCE loss; entries at
// masked weights are forced to zero. Returns that mean loss.
inline double backward_batch(const MaskedMlp& net, MlpWorkspace& ws, const std::vector<Bits>& targets,
                             int count, Gradients& grads) {
    grads.resize_like(net);
    const int n_out = net.output_dim();
    const std::vector<double>& probs = ws.act.back();

    double loss = 0.0;
    for (int bt = 0; bt < count; ++bt)
        loss += bce_loss(std::span<const double>(probs.data() + static_cast<std::size_t>(bt) * n_out, n_out),
                         targets[bt]);
    loss /= count;

    // d(loss)/d(pre-sigmoid z) = (p - t) / (n_out * count)
    double* delta = ws.delta_a.data();
    double* scratch = ws.delta_b.data();
    const double inv = 1.0 / (static_cast<double>(n_out) * count);
    for (int bt = 0; bt < count; ++bt)
        for (int o = 0; o < n_out; ++o) {
            const std::size_t j = static_cast<std::size_t>(bt) * n_out + o;
            delta[j] = (probs[j] - static_cast<double>(targets[bt][o])) * inv;
        }

    for (int l = static_cast<int>(net.layers.size()) - 1; l >= 0; --l) {
        const Layer& layer = net.layers[l];
        const int ni = layer.in, no = layer.out;
        const double* in_act = ws.act[l].data();
        std::vector<double>& gw = grads.w[l];
        std::vector<double>& gb = grads.b[l];

#pragma omp parallel for schedule(static)
        for (int o = 0; o < no; ++o) {
            double* gw_row = gw.data() + static_cast<std::size_t>(o) * ni;
            double gb_acc = 0.0;
            for (int bt = 0; bt < count; ++bt) {
                const double d = delta[static_cast<std::size_t>(bt) * no + o];
                gb_acc += d;
                if (d != 0.0) {
                    const double* xi = in_act + static_cast<std::size_t>(bt) * ni;
                    for (int i = 0; i < ni; ++i) gw_row[i] += d * xi[i];
                }
            }
            gb[o] = gb_acc;
            const std::uint8_t* mr = layer.mask.data() + static_cast<std::size_t>(o) * ni;
            for (int i = 0; i < ni; ++i)
                if (!mr[i]) gw_row[i] = 0.0;
        }

        if (l > 0) {
            // Propagate through the ReLU of layer l-1's output (== act[l]).
#pragma omp parallel for schedule(static)
            for (int bt = 0; bt < count; ++bt) {
                double* dp = scratch + static_cast<std::size_t>(bt) * ni;
                const double* dl = delta + static_cast<std::size_t>(bt) * no;
                for (int i = 0; i < ni; ++i) dp[i] = 0.0;
                for (int o = 0; o < no; ++o) {
                    const double d = dl[o];
                    if (d == 0.0) continue;
                    const double* wr = layer.w_eff.data() + static_cast<std::size_t>(o) * ni;
                    for (int i = 0; i < ni; ++i) dp[i] += d * wr[i];
                }
                const double* a = in_act + static_cast<std::size_t>(bt) * ni;
                for (int i = 0; i < ni; ++i)
                    if (a[i] <= 0.0) dp[i] = 0.0;
            }
            std::swap(delta, scratch);
        }
    }
    return loss;
}

// Single-sample gradients (used by the finite-difference checks).
inline Gradients backward(const MaskedMlp& net, std::span<const double> r, const Bits& target) {
    MlpWorkspace ws;
    forward_batch(net, r.data(), 1, ws);
    Gradients g;
    backward_batch(net, ws, {target}, 1, g);
    return g;
}

struct AdamState {
    std::vector<std::vector<double>> mw, vw, mb, vb;
    long t = 0;

    explicit AdamState(const MaskedMlp& net) {
        mw.resize(net.layers.size());
        vw.resize(net.layers.size());
        mb.resize(net.layers.size());
        vb.resize(net.layers.size());
        for (std::size_t l = 0; l < net.layers.size(); ++l) {
            mw[l].assign(net.layers[l].w.size(), 0.0);
            vw[l].assign(net.layers[l].w.size(), 0.0);
            mb[l].assign(net.layers[l].b.size(), 0.0);
            vb[l].assign(net.layers[l].b.size(), 0.0);
        }
    }
};

// Adam (beta1=0.9, beta2=0.999, eps=1e-8) on unmasked parameters only.
// Masked weights are skipped entirely: value, moments and all.
inline void optimizer_step(MaskedMlp& net, const Gradients& grads, AdamState& state, double lr) {
    constexpr double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
    state.t += 1;
    const double c1 = 1.0 - std::pow(beta1, static_cast<double>(state.t));
    const double c2 = 1.0 - std::pow(beta2, static_cast<double>(state.t));
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        Layer& layer = net.layers[l];
        const std::vector<double>& gw = grads.w[l];
        const std::vector<double>& gb = grads.b[l];
        const std::ptrdiff_t nw = static_cast<std::ptrdiff_t>(layer.w.size());
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t j = 0; j < nw; ++j) {
            if (!layer.mask[j]) continue;
            const double g = gw[j];
            double& m = state.mw[l][j];
            double& v = state.vw[l][j];
            m = beta1 * m + (1.0 - beta1) * g;
            v = beta2 * v + (1.0 - beta2) * g * g;
            layer.w[j] -= lr * (m / c1) / (std::sqrt(v / c2) + eps);
            layer.w_eff[j] = layer.w[j];
        }
        for (std::size_t o = 0; o < layer.b.size(); ++o) {
            const double g = gb[o];
            double& m = state.mb[l][o];
            double& v = state.vb[l][o];
            m = beta1 * m + (1.0 - beta1) * g;
            v = beta2 * v + (1.0 - beta2) * g * g;
            layer.b[o] -= lr * (m / c1) / (std::sqrt(v / c2) + eps);
        }
    }
}

}  // namespace prunedec
