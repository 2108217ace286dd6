#pragma once

#include <bit>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "prunedec/mlp.hpp"

namespace prunedec {

// Versioned checkpoint container: structured-text header, then all arrays as
// little-endian 64-bit floats in row-major order. Round trips bit-exactly.
//
//   prunedec checkpoint 1
//   layer_dims = 7 64 64 7
//   seed = 42
//   train_ebn0_db = 0
//   steps_run = 9500
//   code = hamming74
//   end
//   <binary payload: per layer w, b, mask, w_init, b_init>

struct CheckpointMeta {
    std::uint64_t seed = 0;
    double train_ebn0_db = 0.0;
    long steps_run = 0;
    std::string code = "none";
};

namespace detail {

inline void put_f64_le(std::ostream& os, double x) {
    const std::uint64_t u = std::bit_cast<std::uint64_t>(x);
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((u >> (8 * i)) & 0xff);
    os.write(b, 8);
}

inline double get_f64_le(std::istream& is) {
    char b[8];
    is.read(b, 8);
    if (!is) throw std::runtime_error("checkpoint: truncated payload");
    std::uint64_t u = 0;
    for (int i = 0; i < 8; ++i) u |= static_cast<std::uint64_t>(static_cast<unsigned char>(b[i])) << (8 * i);
    return std::bit_cast<double>(u);
}

inline void put_array(std::ostream& os, const std::vector<double>& v) {
    for (double x : v) put_f64_le(os, x);
}

inline void get_array(std::istream& is, std::vector<double>& v) {
    for (double& x : v) x = get_f64_le(is);
}

}  // namespace detail

inline void save_checkpoint(const std::string& path, const MaskedMlp& net, const CheckpointMeta& meta) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("checkpoint: cannot open for writing: " + path);
    os << "prunedec checkpoint 1\n";
    os << "layer_dims =";
    for (int d : net.layer_dims) os << ' ' << d;
    os << '\n';
    os << "seed = " << meta.seed << '\n';
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", meta.train_ebn0_db);
    os << "train_ebn0_db = " << buf << '\n';
    os << "steps_run = " << meta.steps_run << '\n';
    os << "code = " << meta.code << '\n';
    os << "end\n";
    for (const Layer& l : net.layers) {
        detail::put_array(os, l.w);
        detail::put_array(os, l.b);
        std::vector<double> mask(l.mask.begin(), l.mask.end());
        detail::put_array(os, mask);
        detail::put_array(os, l.w_init);
        detail::put_array(os, l.b_init);
    }
    if (!os) throw std::runtime_error("checkpoint: write failed: " + path);
}

struct LoadedCheckpoint {
    MaskedMlp net;
    CheckpointMeta meta;
};

inline LoadedCheckpoint load_checkpoint(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("checkpoint: cannot open: " + path);
    std::string line;
    if (!std::getline(is, line) || line != "prunedec checkpoint 1")
        throw std::runtime_error("checkpoint: bad magic in " + path);

    LoadedCheckpoint out;
    std::vector<int> dims;
    while (std::getline(is, line)) {
        if (line == "end") break;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw std::runtime_error("checkpoint: malformed header line: " + line);
        std::string key = line.substr(0, eq);
        std::string val = line.substr(eq + 1);
        const auto trim = [](std::string& s) {
            s.erase(0, s.find_first_not_of(" \t"));
            s.erase(s.find_last_not_of(" \t") + 1);
        };
        trim(key);
        trim(val);
        if (key == "layer_dims") {
            std::istringstream ss(val);
            int d;
            while (ss >> d) dims.push_back(d);
        } else if (key == "seed") {
            out.meta.seed = std::stoull(val);
        } else if (key == "train_ebn0_db") {
            out.meta.train_ebn0_db = std::stod(val);
        } else if (key == "steps_run") {
            out.meta.steps_run = std::stol(val);
        } else if (key == "code") {
            out.meta.code = val;
        }
        // Unknown keys are ignored for forward compatibility.
    }
    if (dims.size() < 2) throw std::runtime_error("checkpoint: missing layer_dims in " + path);

    MaskedMlp& net = out.net;
    net.layer_dims = dims;
    for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
        Layer layer;
        layer.in = dims[l];
        layer.out = dims[l + 1];
        const std::size_t nw = static_cast<std::size_t>(layer.in) * layer.out;
        layer.w.resize(nw);
        layer.b.resize(layer.out);
        layer.w_init.resize(nw);
        layer.b_init.resize(layer.out);
        detail::get_array(is, layer.w);
        detail::get_array(is, layer.b);
        std::vector<double> mask(nw);
        detail::get_array(is, mask);
        layer.mask.resize(nw);
        for (std::size_t j = 0; j < nw; ++j) layer.mask[j] = mask[j] != 0.0 ? 1 : 0;
        detail::get_array(is, layer.w_init);
        detail::get_array(is, layer.b_init);
        layer.w_eff.resize(nw);
        net.layers.push_back(std::move(layer));
    }
    net.sync_effective();
    return out;
}

}  // namespace prunedec
