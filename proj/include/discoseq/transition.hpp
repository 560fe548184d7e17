#pragma once

// Operational semantics of the top-down, bottom-up and in-order transition
// systems and their discontinuous extensions (Swap, Swap#k, Shift#k).
//
// A state is a stack of items plus a buffer of word positions. Items are
// words, completed subtrees, or open non-terminal markers. Markers carry no
// yield; a constituent only materializes when it is reduced.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "discoseq/tree.hpp"

namespace discoseq {

enum class Action { Shift, ShiftK, NonTerminal, Reduce, ReduceK, Swap, SwapK };

struct Transition {
  Action action = Action::Shift;
  std::size_t k = 0;  // ShiftK buffer index, ReduceK pop count, SwapK count
  std::string label;  // NonTerminal and ReduceK

  static Transition shift() { return {Action::Shift, 0, {}}; }
  static Transition shift_k(std::size_t k) { return {Action::ShiftK, k, {}}; }
  static Transition non_terminal(std::string label) { return {Action::NonTerminal, 0, std::move(label)}; }
  static Transition reduce() { return {Action::Reduce, 0, {}}; }
  static Transition reduce_k(std::size_t k, std::string label) { return {Action::ReduceK, k, std::move(label)}; }
  static Transition swap() { return {Action::Swap, 0, {}}; }
  static Transition swap_k(std::size_t k) { return {Action::SwapK, k, {}}; }

  bool is_shift() const { return action == Action::Shift || action == Action::ShiftK; }
  bool is_swap() const { return action == Action::Swap || action == Action::SwapK; }

  // Structural equality: ShiftK(0) != Shift here; see semantically_equal.
  friend bool operator==(const Transition&, const Transition&) = default;
};

// ShiftK(0) ~ Shift and SwapK(1) ~ Swap.
bool semantically_equal(const Transition& a, const Transition& b);

std::string debug_string(const Transition& t);

enum class BaseSystem { TopDown, BottomUp, InOrder };
enum class DiscMechanism { None, Swap, SwapK, ShiftK };

struct SystemSpec {
  BaseSystem base = BaseSystem::TopDown;
  DiscMechanism disc = DiscMechanism::None;

  // Bottom-up has no discontinuous extension.
  bool valid() const { return base != BaseSystem::BottomUp || disc == DiscMechanism::None; }
  // Whether the action belongs to this system's action set. Shift is
  // always permitted; Swap is permitted alongside Swap#k.
  bool permits(const Transition& t) const;

  friend bool operator==(const SystemSpec&, const SystemSpec&) = default;
};

struct StackItem {
  enum class Kind { Word, Subtree, OpenNT };

  Kind kind = Kind::Word;
  Position position = 0;      // Word
  std::optional<Node> tree;   // Subtree
  std::string label;          // OpenNT
  // OpenNT only: the marker adopts the item below it as first child when
  // reduced (in-order). Markers pushed top-down style, including in-order
  // markers pushed by repair, do not.
  bool adopts_first_child = false;

  static StackItem word(Position p) { return {Kind::Word, p, std::nullopt, {}, false}; }
  static StackItem subtree(Node n) { return {Kind::Subtree, 0, std::move(n), {}, false}; }
  static StackItem open(std::string label, bool adopts) {
    return {Kind::OpenNT, 0, std::nullopt, std::move(label), adopts};
  }

  bool completed() const { return kind != Kind::OpenNT; }
  Node to_node() const;  // Word or Subtree

  friend bool operator==(const StackItem&, const StackItem&) = default;
};

struct ParserState {
  std::vector<StackItem> stack;
  std::vector<Position> buffer;  // front = index 0

  static ParserState initial(std::size_t n);
  bool terminal() const;

  friend bool operator==(const ParserState&, const ParserState&) = default;
};

// Reason the transition cannot be applied, or nullopt if it is legal.
std::optional<std::string> illegal_reason(const ParserState& state, const Transition& t,
                                          const SystemSpec& spec);

inline bool legal(const ParserState& state, const Transition& t, const SystemSpec& spec) {
  return !illegal_reason(state, t, spec).has_value();
}

// Applies a legal transition in place. Throws IllegalTransition (step 0)
// if it is not legal.
void apply_in_place(ParserState& state, const Transition& t, const SystemSpec& spec);

// Value-returning form of apply_in_place.
ParserState apply(const ParserState& state, const Transition& t, const SystemSpec& spec);

enum class ExecMode { Strict, Repair };

// One repair-mode step: actions outside the system are ignored, illegal
// Reduce/Reduce#k/Swap/Swap#k are skipped, Shift on an empty buffer is
// skipped, Shift#k past the buffer end takes the last word, and an in-order
// non-terminal without a first child is pushed top-down style.
void repair_step(ParserState& state, const Transition& t, const SystemSpec& spec);

// Strict: every transition must be legal and the final state terminal
// (throws IllegalTransition with the step index, or NonTerminalState).
// Repair: always returns a valid tree; illegal actions are skipped or
// patched locally and the final state is completed.
ConstituentTree execute(const Sentence& sentence, std::span<const Transition> transitions,
                        const SystemSpec& spec, ExecMode mode);

}  // namespace discoseq
