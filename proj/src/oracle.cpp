#include "discoseq/oracle.hpp"

#include <algorithm>

#include "discoseq/error.hpp"

namespace discoseq {

namespace {

// Emits the continuous derivation of `node`, calling `shift(position)` for
// every leaf in stored order.
template <typename ShiftFn>
void derive(const Node& node, BaseSystem base, ShiftFn& shift, TransitionSeq& out) {
  if (node.is_leaf()) {
    shift(node.position(), out);
    return;
  }
  const auto& children = node.children();
  switch (base) {
    case BaseSystem::TopDown:
      out.push_back(Transition::non_terminal(node.label()));
      for (const Node& child : children) derive(child, base, shift, out);
      out.push_back(Transition::reduce());
      break;
    case BaseSystem::BottomUp:
      for (const Node& child : children) derive(child, base, shift, out);
      out.push_back(Transition::reduce_k(children.size(), node.label()));
      break;
    case BaseSystem::InOrder:
      derive(children.front(), base, shift, out);
      out.push_back(Transition::non_terminal(node.label()));
      for (std::size_t i = 1; i < children.size(); ++i) derive(children[i], base, shift, out);
      out.push_back(Transition::reduce());
      break;
  }
}

// Tracks the buffer (always in sentence order) while words are consumed
// out of order.
class BufferTracker {
 public:
  explicit BufferTracker(std::size_t n) : buffer_(n) {
    for (std::size_t i = 0; i < n; ++i) buffer_[i] = i;
  }

  std::size_t take(Position p) {
    auto it = std::lower_bound(buffer_.begin(), buffer_.end(), p);
    const auto index = static_cast<std::size_t>(it - buffer_.begin());
    buffer_.erase(it);
    return index;
  }

 private:
  std::vector<Position> buffer_;
};

void require_discontinuous_base(BaseSystem base) {
  if (base == BaseSystem::BottomUp)
    throw PreconditionError("discontinuous oracles support top-down and in-order only");
}

}  // namespace

TransitionSeq oracle_continuous(const ConstituentTree& tree, BaseSystem base) {
  const auto order = tree.leaf_order();
  for (std::size_t i = 0; i < order.size(); ++i)
    if (order[i] != i)
      throw PreconditionError(
          "continuous oracle needs a continuous tree with children in sentence order");
  auto shift = [](Position, TransitionSeq& out) { out.push_back(Transition::shift()); };
  TransitionSeq out;
  derive(tree.root(), base, shift, out);
  return out;
}

TransitionSeq oracle_shiftk(const ConstituentTree& tree, BaseSystem base) {
  require_discontinuous_base(base);
  BufferTracker buffer(tree.size());
  auto shift = [&](Position p, TransitionSeq& out) {
    out.push_back(Transition::shift_k(buffer.take(p)));
  };
  TransitionSeq out;
  derive(tree.root(), base, shift, out);
  return out;
}

TransitionSeq oracle_swap(const ConstituentTree& tree, BaseSystem base) {
  require_discontinuous_base(base);
  BufferTracker buffer(tree.size());
  auto shift = [&](Position p, TransitionSeq& out) {
    const std::size_t k = buffer.take(p);
    for (std::size_t i = 0; i <= k; ++i) out.push_back(Transition::shift());
    for (std::size_t i = 0; i < k; ++i) out.push_back(Transition::swap());
  };
  TransitionSeq out;
  derive(tree.root(), base, shift, out);
  return out;
}

TransitionSeq compress_swaps(const TransitionSeq& transitions) {
  TransitionSeq out;
  out.reserve(transitions.size());
  for (std::size_t i = 0; i < transitions.size();) {
    if (transitions[i].action != Action::Swap) {
      out.push_back(transitions[i++]);
      continue;
    }
    std::size_t run = 0;
    while (i < transitions.size() && transitions[i].action == Action::Swap) {
      ++run;
      ++i;
    }
    out.push_back(Transition::swap_k(run));
  }
  return out;
}

TransitionSeq oracle(const ConstituentTree& tree, const SystemSpec& spec) {
  if (!spec.valid()) throw PreconditionError("bottom-up has no discontinuous extension");
  switch (spec.disc) {
    case DiscMechanism::None: return oracle_continuous(tree, spec.base);
    case DiscMechanism::Swap: return oracle_swap(tree, spec.base);
    case DiscMechanism::SwapK: return compress_swaps(oracle_swap(tree, spec.base));
    case DiscMechanism::ShiftK: return oracle_shiftk(tree, spec.base);
  }
  return {};
}

}  // namespace discoseq
