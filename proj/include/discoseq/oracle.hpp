#pragma once

// Static oracles: gold tree -> transition sequence whose strict execution
// over the tree's sentence rebuilds the tree, child order included.
//
// Discontinuous oracles follow the order in which the tree's leaves are
// met when walking children in stored order (for canonically ordered
// trees, canonical_order). Each word is moved to the stack when its turn
// comes: Shift#k picks it directly from buffer index k; the Swap oracle
// shifts the k words in front of it, shifts it, and swaps those k words
// back to the buffer.

#include <vector>

#include "discoseq/transition.hpp"
#include "discoseq/tree.hpp"

namespace discoseq {

using TransitionSeq = std::vector<Transition>;

// Requires the tree's leaves, read in stored order, to be in sentence
// order (a continuous tree with sorted children). Throws PreconditionError.
TransitionSeq oracle_continuous(const ConstituentTree& tree, BaseSystem base);

// base must be TopDown or InOrder.
TransitionSeq oracle_swap(const ConstituentTree& tree, BaseSystem base);
TransitionSeq oracle_shiftk(const ConstituentTree& tree, BaseSystem base);

// Replaces each maximal run of r Swap transitions with Swap#r.
TransitionSeq compress_swaps(const TransitionSeq& transitions);

// Dispatch on spec.disc: None, Swap, SwapK (compressed Swap oracle), ShiftK.
TransitionSeq oracle(const ConstituentTree& tree, const SystemSpec& spec);

}  // namespace discoseq
