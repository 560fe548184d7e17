#pragma once

#include <cstdint>

#include "discoseq/tree.hpp"

namespace discoseq {

struct RandomTreeParams {
  std::size_t n_words = 10;
  std::size_t max_arity = 3;
  double discontinuity_rate = 0.0;  // probability of scrambling the word order
  std::size_t max_gap_degree = 2;
  // 0 gives every word a distinct surface form; otherwise words are drawn
  // from a vocabulary of this size, so surfaces repeat.
  std::size_t vocab_size = 0;
};

// Deterministic for a fixed (seed, params). Children are stored in
// canonical order. With discontinuity_rate == 0 the tree is continuous.
ConstituentTree random_tree(std::uint64_t seed, const RandomTreeParams& params);

}  // namespace discoseq
