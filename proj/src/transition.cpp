#include "discoseq/transition.hpp"

#include <algorithm>

#include "discoseq/bracketed.hpp"
#include "discoseq/error.hpp"

namespace discoseq {

namespace {

using Kind = StackItem::Kind;

// Index of the topmost open non-terminal, if any.
std::optional<std::size_t> nearest_open(const std::vector<StackItem>& stack) {
  for (std::size_t i = stack.size(); i-- > 0;)
    if (stack[i].kind == Kind::OpenNT) return i;
  return std::nullopt;
}

std::optional<std::string> swap_reason(const ParserState& state, std::size_t k) {
  if (k < 1) return "Swap#k needs k >= 1";
  if (state.stack.size() < k + 1)
    return "swapping " + std::to_string(k) + " item(s) needs " + std::to_string(k + 1) +
           " stack items, have " + std::to_string(state.stack.size());
  if (!state.stack.back().completed()) return "Swap with an open non-terminal on top";
  for (std::size_t i = 0; i < k; ++i)
    if (state.stack[state.stack.size() - 2 - i].kind != Kind::Word)
      return "Swap can only return words to the buffer";
  return std::nullopt;
}

void do_shift(ParserState& state, std::size_t k) {
  const Position p = state.buffer[k];
  state.buffer.erase(state.buffer.begin() + static_cast<std::ptrdiff_t>(k));
  state.stack.push_back(StackItem::word(p));
}

void do_swap(ParserState& state) {
  auto second = state.stack.end() - 2;
  state.buffer.insert(state.buffer.begin(), second->position);
  state.stack.erase(second);
}

// Pops stack[from..] into a new constituent.
void do_group(ParserState& state, std::size_t from, std::string label) {
  std::vector<Node> children;
  children.reserve(state.stack.size() - from);
  for (std::size_t i = from; i < state.stack.size(); ++i)
    if (state.stack[i].completed()) children.push_back(state.stack[i].to_node());
  state.stack.erase(state.stack.begin() + static_cast<std::ptrdiff_t>(from), state.stack.end());
  state.stack.push_back(StackItem::subtree(Node::internal(std::move(label), std::move(children))));
}

void do_reduce(ParserState& state) {
  const std::size_t open = *nearest_open(state.stack);
  StackItem marker = std::move(state.stack[open]);
  state.stack.erase(state.stack.begin() + static_cast<std::ptrdiff_t>(open));
  // Stack now holds [.. first_child?, items-above..]; the marker slot is gone.
  const std::size_t from = marker.adopts_first_child ? open - 1 : open;
  do_group(state, from, std::move(marker.label));
}

}  // namespace

bool semantically_equal(const Transition& a, const Transition& b) {
  auto normalize = [](Transition t) {
    if (t.action == Action::ShiftK && t.k == 0) return Transition::shift();
    if (t.action == Action::SwapK && t.k == 1) return Transition::swap();
    return t;
  };
  return normalize(a) == normalize(b);
}

std::string debug_string(const Transition& t) {
  switch (t.action) {
    case Action::Shift: return "Shift";
    case Action::ShiftK: return "Shift#" + std::to_string(t.k);
    case Action::NonTerminal: return "NT-" + t.label;
    case Action::Reduce: return "Reduce";
    case Action::ReduceK: return "Reduce#" + std::to_string(t.k) + "-" + t.label;
    case Action::Swap: return "Swap";
    case Action::SwapK: return "Swap#" + std::to_string(t.k);
  }
  return "?";
}

bool SystemSpec::permits(const Transition& t) const {
  const bool bottom_up = base == BaseSystem::BottomUp;
  switch (t.action) {
    case Action::Shift: return true;
    case Action::ShiftK: return disc == DiscMechanism::ShiftK;
    case Action::NonTerminal:
    case Action::Reduce: return !bottom_up;
    case Action::ReduceK: return bottom_up;
    case Action::Swap: return disc == DiscMechanism::Swap || disc == DiscMechanism::SwapK;
    case Action::SwapK: return disc == DiscMechanism::SwapK;
  }
  return false;
}

Node StackItem::to_node() const {
  if (kind == Kind::Word) return Node::leaf(position);
  if (kind == Kind::Subtree) return *tree;
  throw PreconditionError("open non-terminal is not a completed item");
}

ParserState ParserState::initial(std::size_t n) {
  ParserState s;
  s.buffer.resize(n);
  for (std::size_t i = 0; i < n; ++i) s.buffer[i] = i;
  return s;
}

bool ParserState::terminal() const {
  return buffer.empty() && stack.size() == 1 && stack.front().kind == Kind::Subtree;
}

std::optional<std::string> illegal_reason(const ParserState& state, const Transition& t,
                                          const SystemSpec& spec) {
  if (!spec.valid()) return "bottom-up has no discontinuous extension";
  if (!spec.permits(t)) return debug_string(t) + " is not part of this transition system";
  switch (t.action) {
    case Action::Shift:
      if (state.buffer.empty()) return "Shift on an empty buffer";
      return std::nullopt;
    case Action::ShiftK:
      if (t.k >= state.buffer.size())
        return "Shift#" + std::to_string(t.k) + " with a buffer of " +
               std::to_string(state.buffer.size());
      return std::nullopt;
    case Action::NonTerminal:
      if (t.label.empty()) return "non-terminal without a label";
      if (spec.base == BaseSystem::InOrder &&
          (state.stack.empty() || !state.stack.back().completed()))
        return "in-order non-terminal needs its first child on top of the stack";
      return std::nullopt;
    case Action::Reduce: {
      const auto open = nearest_open(state.stack);
      if (!open) return "Reduce without an open non-terminal";
      const StackItem& marker = state.stack[*open];
      if (marker.adopts_first_child) {
        if (*open == 0 || !state.stack[*open - 1].completed())
          return "in-order Reduce without a first child below the non-terminal";
      } else if (*open + 1 == state.stack.size()) {
        return "Reduce would build an empty constituent";
      }
      return std::nullopt;
    }
    case Action::ReduceK: {
      if (t.k < 1) return "Reduce#k needs k >= 1";
      if (t.label.empty()) return "Reduce#k without a label";
      if (state.stack.size() < t.k)
        return "Reduce#" + std::to_string(t.k) + " with " + std::to_string(state.stack.size()) +
               " stack items";
      for (std::size_t i = state.stack.size() - t.k; i < state.stack.size(); ++i)
        if (!state.stack[i].completed()) return "Reduce#k over an open non-terminal";
      return std::nullopt;
    }
    case Action::Swap: return swap_reason(state, 1);
    case Action::SwapK: return swap_reason(state, t.k);
  }
  return "unknown action";
}

void apply_in_place(ParserState& state, const Transition& t, const SystemSpec& spec) {
  if (auto reason = illegal_reason(state, t, spec)) throw IllegalTransition(0, *reason);
  switch (t.action) {
    case Action::Shift: do_shift(state, 0); break;
    case Action::ShiftK: do_shift(state, t.k); break;
    case Action::NonTerminal:
      state.stack.push_back(StackItem::open(t.label, spec.base == BaseSystem::InOrder));
      break;
    case Action::Reduce: do_reduce(state); break;
    case Action::ReduceK: do_group(state, state.stack.size() - t.k, t.label); break;
    case Action::Swap: do_swap(state); break;
    case Action::SwapK:
      for (std::size_t i = 0; i < t.k; ++i) do_swap(state);
      break;
  }
}

ParserState apply(const ParserState& state, const Transition& t, const SystemSpec& spec) {
  ParserState next = state;
  apply_in_place(next, t, spec);
  return next;
}

namespace {

ConstituentTree execute_strict(const Sentence& sentence, std::span<const Transition> transitions,
                               const SystemSpec& spec) {
  ParserState state = ParserState::initial(sentence.size());
  for (std::size_t i = 0; i < transitions.size(); ++i) {
    if (auto reason = illegal_reason(state, transitions[i], spec))
      throw IllegalTransition(i, debug_string(transitions[i]) + ": " + *reason);
    apply_in_place(state, transitions[i], spec);
  }
  if (!state.terminal())
    throw NonTerminalState("sequence ends with " + std::to_string(state.stack.size()) +
                           " stack item(s) and " + std::to_string(state.buffer.size()) +
                           " buffered word(s)");
  return ConstituentTree(sentence, *state.stack.front().tree);
}

}  // namespace

void repair_step(ParserState& state, const Transition& t, const SystemSpec& spec) {
  if (!spec.permits(t)) return;
  switch (t.action) {
    case Action::Shift:
      if (!state.buffer.empty()) do_shift(state, 0);
      return;
    case Action::ShiftK:
      if (!state.buffer.empty()) do_shift(state, std::min(t.k, state.buffer.size() - 1));
      return;
    case Action::NonTerminal:
      if (t.label.empty()) return;
      if (spec.base == BaseSystem::InOrder &&
          (state.stack.empty() || !state.stack.back().completed())) {
        state.stack.push_back(StackItem::open(t.label, false));
        return;
      }
      break;
    default:
      break;
  }
  if (legal(state, t, spec)) apply_in_place(state, t, spec);
}

namespace {

ConstituentTree execute_repair(const Sentence& sentence, std::span<const Transition> transitions,
                               const SystemSpec& spec) {
  ParserState state = ParserState::initial(sentence.size());
  for (const Transition& t : transitions) repair_step(state, t, spec);

  while (!state.buffer.empty()) do_shift(state, 0);
  while (auto open = nearest_open(state.stack)) {
    const StackItem& marker = state.stack[*open];
    const bool empty = !marker.adopts_first_child && *open + 1 == state.stack.size();
    if (empty)
      state.stack.erase(state.stack.begin() + static_cast<std::ptrdiff_t>(*open));
    else
      do_reduce(state);
  }
  if (!state.terminal()) do_group(state, 0, std::string(kSyntheticRoot));
  return ConstituentTree(sentence, *state.stack.front().tree);
}

}  // namespace

ConstituentTree execute(const Sentence& sentence, std::span<const Transition> transitions,
                        const SystemSpec& spec, ExecMode mode) {
  if (!spec.valid()) throw PreconditionError("bottom-up has no discontinuous extension");
  return mode == ExecMode::Strict ? execute_strict(sentence, transitions, spec)
                                  : execute_repair(sentence, transitions, spec);
}

}  // namespace discoseq
