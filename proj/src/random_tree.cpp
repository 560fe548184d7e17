#include "discoseq/random_tree.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <string>

#include "discoseq/error.hpp"

namespace discoseq {

namespace {

constexpr std::array<const char*, 12> kLabels = {"S",    "NP",   "VP",   "PP", "ADJP", "ADVP",
                                                  "SBAR", "WHNP", "NP-SBJ", "QP", "PRN",  "X"};
constexpr int kBlockMoveAttempts = 32;

// Distribution helpers on top of the raw engine so output does not depend on
// the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::size_t below(std::size_t bound) { return bound <= 1 ? 0 : engine_() % bound; }
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
  bool chance(double p) {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53 < p;
  }

 private:
  std::mt19937_64 engine_;
};

class Generator {
 public:
  Generator(Rng& rng, std::size_t max_arity) : rng_(rng), max_arity_(std::max<std::size_t>(max_arity, 2)) {}

  Node constituent(std::size_t lo, std::size_t hi) {
    Node node = Node::internal(label(), body(lo, hi));
    // Occasional unary chain above the node.
    while (rng_.chance(0.08)) node = Node::internal(label(), {std::move(node)});
    return node;
  }

 private:
  std::vector<Node> body(std::size_t lo, std::size_t hi) {
    const std::size_t len = hi - lo;
    if (len == 1) return {Node::leaf(lo)};
    const std::size_t arity = rng_.between(2, std::min(max_arity_, len));
    // Choose arity-1 distinct cut points in (lo, hi).
    std::vector<std::size_t> cuts;
    std::vector<std::size_t> candidates;
    for (std::size_t c = lo + 1; c < hi; ++c) candidates.push_back(c);
    for (std::size_t i = 0; i + 1 < arity; ++i) {
      const std::size_t pick = i + rng_.below(candidates.size() - i);
      std::swap(candidates[i], candidates[pick]);
      cuts.push_back(candidates[i]);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.insert(cuts.begin(), lo);
    cuts.push_back(hi);
    std::vector<Node> children;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const std::size_t a = cuts[i], b = cuts[i + 1];
      if (b - a == 1 && rng_.chance(0.6))
        children.push_back(Node::leaf(a));
      else
        children.push_back(constituent(a, b));
    }
    return children;
  }

  std::string label() { return kLabels[rng_.below(kLabels.size())]; }

  Rng& rng_;
  std::size_t max_arity_;
};

void relabel(Node& node, const std::vector<Position>& position_of_slot) {
  if (node.is_leaf()) {
    node = Node::leaf(position_of_slot[node.position()]);
    return;
  }
  for (Node& child : node.mutable_children()) relabel(child, position_of_slot);
}

void sort_canonical(Node& node) {
  if (node.is_leaf()) return;
  for (Node& child : node.mutable_children()) sort_canonical(child);
  std::stable_sort(node.mutable_children().begin(), node.mutable_children().end(),
                   [](const Node& a, const Node& b) { return a.min_position() < b.min_position(); });
}

std::size_t max_gaps(const Node& node) {
  if (node.is_leaf()) return 0;
  std::size_t best = gap_degree(node.yield());
  for (const Node& child : node.children()) best = std::max(best, max_gaps(child));
  return best;
}

// Moves a random block of slots to a random insertion point, one or two times.
std::vector<Position> block_moves(Rng& rng, std::size_t n) {
  std::vector<Position> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  const std::size_t moves = rng.between(1, 2);
  for (std::size_t m = 0; m < moves; ++m) {
    const std::size_t a = rng.below(n);
    const std::size_t b = rng.between(a + 1, std::min(n, a + 1 + rng.below(4)));
    std::vector<Position> block(order.begin() + a, order.begin() + b);
    order.erase(order.begin() + a, order.begin() + b);
    const std::size_t at = rng.below(order.size() + 1);
    order.insert(order.begin() + at, block.begin(), block.end());
  }
  return order;
}

}  // namespace

ConstituentTree random_tree(std::uint64_t seed, const RandomTreeParams& params) {
  if (params.n_words < 1) throw PreconditionError("random_tree needs n_words >= 1");
  if (params.max_arity < 1) throw PreconditionError("random_tree needs max_arity >= 1");
  Rng rng(seed);
  const std::size_t n = params.n_words;
  Generator gen(rng, params.max_arity);
  // The root always covers every slot; tree leaves are slots until relabeled.
  Node root = gen.constituent(0, n);

  if (n > 2 && params.max_gap_degree > 0 && rng.chance(params.discontinuity_rate)) {
    for (int attempt = 0; attempt < kBlockMoveAttempts; ++attempt) {
      // order[i] = slot placed at sentence position i
      const auto order = block_moves(rng, n);
      std::vector<Position> position_of_slot(n);
      for (std::size_t i = 0; i < n; ++i) position_of_slot[order[i]] = i;
      Node candidate = root;
      relabel(candidate, position_of_slot);
      const std::size_t gaps = max_gaps(candidate);
      if (gaps > 0 && gaps <= params.max_gap_degree) {
        root = std::move(candidate);
        break;
      }
    }
  }
  sort_canonical(root);

  std::vector<std::string> words(n);
  for (std::size_t i = 0; i < n; ++i)
    words[i] = params.vocab_size == 0 ? "w" + std::to_string(i)
                                      : "v" + std::to_string(rng.below(params.vocab_size));
  return ConstituentTree(Sentence(std::move(words)), std::move(root));
}

}  // namespace discoseq
