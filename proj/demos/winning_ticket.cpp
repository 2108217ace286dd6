// Minimal end-to-end demo: train a Hamming (7,4) decoder, prune it down
// with the iterative lottery-ticket loop, then compare hard and semi-soft
// decoding of the sparsest ticket against exhaustive ML decoding.
//
// Takes a few minutes; pass a round count as argv[1] to shorten.

#include <cstdio>
#include <cstdlib>

#include "prunedec/prunedec.hpp"

using namespace prunedec;

int main(int argc, char** argv) {
    const CodeSpec spec = build_codebook(CodeName::Hamming74);

    TrainConfig cfg;
    cfg.train_ebn0_db = 0.0;
    cfg.seed = 1;

    PruneSchedule sched;
    sched.per_round_rate = 0.2;
    sched.rounds = argc > 1 ? std::atoi(argv[1]) : 9;

    LthOptions opts;
    opts.eval_words = 50000;
    opts.on_round = [](const TicketRecord& rec) {
        std::printf("round %2d: %5.1f%% pruned, accuracy %.4f\n", rec.round,
                    100.0 * rec.pruned_fraction_global, rec.accuracy);
    };

    std::printf("iterative pruning of a [7,64,64,7] decoder at 0 dB:\n");
    const TicketTrajectory traj = run_lth(spec, {7, 64, 64, 7}, cfg, sched, opts);
    const MaskedMlp& ticket = traj.records.back().checkpoint;

    std::printf("\nBER of the final ticket vs ML decoding:\n");
    std::printf("%8s %12s %12s %12s %12s\n", "Eb/N0", "hard", "semisoft:2", "semisoft:3", "ml");
    for (double snr : {0.0, 1.0, 2.0, 3.0, 4.0}) {
        const ChannelParams params(snr, spec.rate);
        const SplitRng rng(42 + static_cast<int>(snr));
        const double hard = measure_ber(Decoder::hard(ticket), spec, params, 100000, rng).ber;
        const double ss2 = measure_ber(Decoder::semisoft(ticket, 2), spec, params, 100000, rng).ber;
        const double ss3 = measure_ber(Decoder::semisoft(ticket, 3), spec, params, 100000, rng).ber;
        const double ml = measure_ber(Decoder::ml(), spec, params, 100000, rng).ber;
        std::printf("%6.1f dB %12.5g %12.5g %12.5g %12.5g\n", snr, hard, ss2, ss3, ml);
    }
    return 0;
}
