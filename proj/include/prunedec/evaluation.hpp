#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "prunedec/channel.hpp"
#include "prunedec/codec.hpp"
#include "prunedec/decoding.hpp"
#include "prunedec/mlp.hpp"
#include "prunedec/ticket.hpp"

namespace prunedec {

// A decoder under measurement. Custom is a hook for test oracles (it also
// receives the transmitted codeword, e.g. for a perfect-decoder baseline).
struct Decoder {
    enum class Kind { Hard, SemiSoft, Ml, Custom };

    Kind kind = Kind::Ml;
    int b = 0;
    const MaskedMlp* net = nullptr;
    std::string custom_id;
    std::function<Bits(std::span<const double>, const Bits&)> custom;

    static Decoder hard(const MaskedMlp& net) { return {Kind::Hard, 0, &net, {}, {}}; }
    static Decoder semisoft(const MaskedMlp& net, int b) { return {Kind::SemiSoft, b, &net, {}, {}}; }
    static Decoder ml() { return {Kind::Ml, 0, nullptr, {}, {}}; }
    static Decoder custom_fn(std::string id, std::function<Bits(std::span<const double>, const Bits&)> fn) {
        Decoder d;
        d.kind = Kind::Custom;
        d.custom_id = std::move(id);
        d.custom = std::move(fn);
        return d;
    }

    std::string id() const {
        switch (kind) {
            case Kind::Hard: return "hard";
            case Kind::SemiSoft: return "semisoft:" + std::to_string(b);
            case Kind::Ml: return "ml";
            case Kind::Custom: return custom_id;
        }
        return "?";
    }
};

// One measured point. Error counts are exact integers; ber and the CI are
// derived from them. For Hamming74 `ber` counts message-bit errors, for
// Polar168 codeword-bit errors. acc_word / acc_bit are always codeword-level.
struct EvalRow {
    double ebn0_db = 0.0;
    std::string decoder;
    std::optional<double> pruned_fraction;
    std::optional<int> b;
    double ber = 0.0;
    double ber_ci95 = 0.0;
    double acc_word = 0.0;
    double acc_bit = 0.0;
    long long samples = 0;      // words
    long long bit_errors = 0;   // errors behind `ber`
    long long total_bits = 0;   // denominator behind `ber`
};

using EvalReport = std::vector<EvalRow>;

// How many words a BER point spends: fixed n_words, or adaptive
// (keep sampling until min_errors bit errors or max_words).
struct SamplePolicy {
    long long n_words = 0;
    long long min_errors = 100;
    long long max_words = 10'000'000;

    bool adaptive() const { return n_words <= 0; }
    static SamplePolicy fixed(long long words) { return {words, 0, 0}; }
};

namespace detail {

inline constexpr int kEvalBlockWords = 4096;

struct ErrorCounts {
    long long ber_errors = 0;      // message bits (Hamming) or codeword bits (Polar)
    long long cw_bit_errors = 0;   // codeword bits, both codes
    long long words_correct = 0;
    long long words = 0;
};

// Evaluates blocks [block_begin, block_end) of `block_words`-sized blocks,
// clipped to n_words_total words overall. Block j draws from rng.split(j),
// so the measurement is independent of thread count and resumable.
inline ErrorCounts run_blocks(const Decoder& dec, const CodeSpec& spec, const ChannelParams& params,
                              long long block_begin, long long block_end, long long n_words_total,
                              const SplitRng& rng) {
    ErrorCounts totals;
    const bool is_hamming = spec.name == CodeName::Hamming74;
    long long ber_errors = 0, cw_bit_errors = 0, words_correct = 0, words = 0;

#pragma omp parallel for schedule(static) reduction(+ : ber_errors, cw_bit_errors, words_correct, words)
    for (long long blk = block_begin; blk < block_end; ++blk) {
        const long long word_at = blk * kEvalBlockWords;
        const int count = static_cast<int>(std::min<long long>(kEvalBlockWords, n_words_total - word_at));
        if (count <= 0) continue;
        SplitRng blk_rng = rng.split(static_cast<std::uint64_t>(blk));
        const Batch batch = sample_batch(spec, params, count, blk_rng);

        MlpWorkspace ws;
        const std::vector<double>* probs = nullptr;
        if (dec.kind == Decoder::Kind::Hard || dec.kind == Decoder::Kind::SemiSoft) {
            forward_batch(*dec.net, batch.received.data(), count, ws);
            probs = &ws.act.back();
        }

        for (int w = 0; w < count; ++w) {
            Bits decoded;
            switch (dec.kind) {
                case Decoder::Kind::Hard:
                    decoded = hard_decide(std::span<const double>(probs->data() + static_cast<std::size_t>(w) * spec.n,
                                                                  spec.n));
                    break;
                case Decoder::Kind::SemiSoft:
                    decoded = semi_soft_decode(std::span<const double>(probs->data() + static_cast<std::size_t>(w) * spec.n,
                                                                       spec.n),
                                               spec, {dec.b});
                    break;
                case Decoder::Kind::Ml:
                    decoded = ml_decode(std::span<const double>(batch.word(w), spec.n), spec);
                    break;
                case Decoder::Kind::Custom:
                    decoded = dec.custom(std::span<const double>(batch.word(w), spec.n), batch.codewords[w]);
                    break;
            }
            const Bits& sent = batch.codewords[w];
            int cw_errs = 0;
            for (int i = 0; i < spec.n; ++i) cw_errs += decoded[i] != sent[i];
            cw_bit_errors += cw_errs;
            words_correct += cw_errs == 0;
            if (is_hamming) {
                // Message-bit errors; invalid decoder outputs fall back to
                // comparing the systematic prefix directly.
                const Bits msg = is_codeword(spec, decoded) ? extract_message(spec, decoded)
                                                            : Bits(decoded.begin(), decoded.begin() + spec.k);
                for (int i = 0; i < spec.k; ++i) ber_errors += msg[i] != batch.messages[w][i];
            } else {
                ber_errors += cw_errs;
            }
            ++words;
        }
    }
    totals.ber_errors = ber_errors;
    totals.cw_bit_errors = cw_bit_errors;
    totals.words_correct = words_correct;
    totals.words = words;
    return totals;
}

inline EvalRow finish_row(const Decoder& dec, const CodeSpec& spec, const ChannelParams& params,
                          const ErrorCounts& c) {
    const bool is_hamming = spec.name == CodeName::Hamming74;
    EvalRow row;
    row.ebn0_db = params.ebn0_db;
    row.decoder = dec.id();
    if (dec.kind == Decoder::Kind::SemiSoft) row.b = dec.b;
    row.samples = c.words;
    row.bit_errors = c.ber_errors;
    row.total_bits = c.words * (is_hamming ? spec.k : spec.n);
    row.ber = static_cast<double>(c.ber_errors) / static_cast<double>(row.total_bits);
    row.ber_ci95 = 1.96 * std::sqrt(row.ber * (1.0 - row.ber) / static_cast<double>(row.total_bits));
    row.acc_word = static_cast<double>(c.words_correct) / static_cast<double>(c.words);
    row.acc_bit = 1.0 - static_cast<double>(c.cw_bit_errors) / (static_cast<double>(c.words) * spec.n);
    return row;
}

}  // namespace detail

// Monte Carlo BER / accuracy over n_words transmissions. Deterministic given
// rng and independent of worker count.
inline EvalRow measure_ber(const Decoder& dec, const CodeSpec& spec, const ChannelParams& params,
                           long long n_words, const SplitRng& rng) {
    if (n_words < 1) throw std::invalid_argument("measure_ber: n_words must be >= 1");
    if ((dec.kind == Decoder::Kind::Hard || dec.kind == Decoder::Kind::SemiSoft) && dec.net == nullptr)
        throw std::invalid_argument("measure_ber: decoder needs a network");
    const long long blocks = (n_words + detail::kEvalBlockWords - 1) / detail::kEvalBlockWords;
    const auto counts = detail::run_blocks(dec, spec, params, 0, blocks, n_words, rng);
    return detail::finish_row(dec, spec, params, counts);
}

// Adaptive variant: whole blocks are added until at least min_errors bit
// errors have accumulated (checked at chunk boundaries) or max_words is hit.
inline EvalRow measure_ber_adaptive(const Decoder& dec, const CodeSpec& spec, const ChannelParams& params,
                                    const SamplePolicy& policy, const SplitRng& rng) {
    if (!policy.adaptive()) return measure_ber(dec, spec, params, policy.n_words, rng);
    const long long max_blocks =
        std::max<long long>(1, (policy.max_words + detail::kEvalBlockWords - 1) / detail::kEvalBlockWords);
    constexpr long long chunk_blocks = 4;  // stop-condition granularity
    detail::ErrorCounts counts;
    long long done = 0;
    while (done < max_blocks) {
        const long long next = std::min(done + chunk_blocks, max_blocks);
        const auto part = detail::run_blocks(dec, spec, params, done, next,
                                             max_blocks * detail::kEvalBlockWords, rng);
        counts.ber_errors += part.ber_errors;
        counts.cw_bit_errors += part.cw_bit_errors;
        counts.words_correct += part.words_correct;
        counts.words += part.words;
        done = next;
        if (counts.ber_errors >= policy.min_errors) break;
    }
    return detail::finish_row(dec, spec, params, counts);
}

// One row per SNR; point i draws from rng.split(i), so noise is independent
// across points and the single-point sweep equals measure_ber directly.
inline EvalReport sweep_snr(const Decoder& dec, const CodeSpec& spec, const std::vector<double>& snr_db,
                            const SamplePolicy& policy, const SplitRng& rng) {
    if (snr_db.empty()) throw std::invalid_argument("sweep_snr: empty SNR list");
    EvalReport report;
    for (std::size_t i = 0; i < snr_db.size(); ++i) {
        const ChannelParams params(snr_db[i], spec.rate);
        report.push_back(measure_ber_adaptive(dec, spec, params, policy, rng.split(i)));
    }
    return report;
}

struct PruningAccuracyRow {
    int round = 0;
    double pruned_fraction = 0.0;
    double acc_word = 0.0;
    double acc_bit = 0.0;
};

// Hard-decision accuracy of every trajectory round at the test SNR.
inline std::vector<PruningAccuracyRow> accuracy_vs_pruning(const TicketTrajectory& traj, const CodeSpec& spec,
                                                           const ChannelParams& params, long long n_words,
                                                           const SplitRng& rng) {
    if (traj.records.empty()) throw std::invalid_argument("accuracy_vs_pruning: empty trajectory");
    std::vector<PruningAccuracyRow> rows;
    for (std::size_t i = 0; i < traj.records.size(); ++i) {
        const TicketRecord& rec = traj.records[i];
        const EvalRow r = measure_ber(Decoder::hard(rec.checkpoint), spec, params, n_words, rng.split(i));
        rows.push_back({rec.round, rec.pruned_fraction_global, r.acc_word, r.acc_bit});
    }
    return rows;
}

}  // namespace prunedec
