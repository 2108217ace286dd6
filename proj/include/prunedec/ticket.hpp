#pragma once

#include <vector>

#include "prunedec/mlp.hpp"

namespace prunedec {

// One row of a prune-reset-retrain trajectory. Round 0 is the dense
// baseline; pruned_fraction_global counts weights only (biases excluded).
struct TicketRecord {
    int round = 0;
    double pruned_fraction_global = 0.0;
    MaskedMlp checkpoint;
    double accuracy = 0.0;  // codeword-exact accuracy at the evaluation SNR
    double val_loss = 0.0;
};

struct TicketTrajectory {
    std::vector<TicketRecord> records;
};

}  // namespace prunedec
