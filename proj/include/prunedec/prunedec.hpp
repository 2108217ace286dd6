#pragma once

// Umbrella header: neural decoders for short block codes, magnitude
// pruning, semi-soft decision decoding, and Monte Carlo BER evaluation.

#include "prunedec/bits.hpp"
#include "prunedec/channel.hpp"
#include "prunedec/checkpoint.hpp"
#include "prunedec/codec.hpp"
#include "prunedec/csv.hpp"
#include "prunedec/decoding.hpp"
#include "prunedec/evaluation.hpp"
#include "prunedec/mlp.hpp"
#include "prunedec/pruning.hpp"
#include "prunedec/rng.hpp"
#include "prunedec/svg.hpp"
#include "prunedec/ticket.hpp"
#include "prunedec/training.hpp"
