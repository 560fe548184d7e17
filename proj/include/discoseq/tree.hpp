#pragma once

// Continuous and discontinuous constituent trees.
//
// A tree owns its sentence and a hierarchy of labeled nodes whose leaves
// point at word positions. Positions are zero-based indices into the
// sentence; a constituent's yield is the set of positions below it. Child
// order is part of a tree's identity: two trees with the same constituents
// but different child order compare unequal.

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace discoseq {

using Position = std::size_t;
using Yield = std::vector<Position>;  // sorted ascending, no duplicates

class Sentence {
 public:
  Sentence() = default;
  // Throws PreconditionError if empty or if any word is empty or contains
  // whitespace.
  explicit Sentence(std::vector<std::string> words);

  std::size_t size() const { return words_.size(); }
  const std::string& operator[](Position i) const { return words_[i]; }
  const std::vector<std::string>& words() const { return words_; }
  std::string joined() const;

  friend bool operator==(const Sentence&, const Sentence&) = default;

 private:
  std::vector<std::string> words_;
};

class Node {
 public:
  static Node leaf(Position position);
  static Node internal(std::string label, std::vector<Node> children);

  bool is_leaf() const { return leaf_; }
  Position position() const { return position_; }
  const std::string& label() const { return label_; }
  const std::vector<Node>& children() const { return children_; }
  std::vector<Node>& mutable_children() { return children_; }

  // Set by readers on tag nodes (only child is a terminal, in a source where
  // every terminal is tagged). Consumed by strip_preterminals; not part of
  // equality.
  bool preterminal() const { return preterminal_; }
  void set_preterminal(bool value) { preterminal_ = value; }

  Yield yield() const;
  Position min_position() const;
  std::size_t num_internal() const;

  friend bool operator==(const Node& a, const Node& b);

 private:
  bool leaf_ = true;
  bool preterminal_ = false;
  Position position_ = 0;
  std::string label_;
  std::vector<Node> children_;
};

struct Constituent {
  std::string label;
  Yield yield;

  bool continuous() const;
  friend bool operator==(const Constituent&, const Constituent&) = default;
  friend auto operator<=>(const Constituent&, const Constituent&) = default;
};

class ConstituentTree {
 public:
  // Validates every tree invariant: internal root, each position 0..n-1
  // exactly once, no childless internal nodes, non-empty labels without
  // whitespace or brackets. Throws PreconditionError.
  ConstituentTree(Sentence sentence, Node root);

  const Sentence& sentence() const { return sentence_; }
  const Node& root() const { return root_; }
  std::size_t size() const { return sentence_.size(); }

  // Constituents in preorder.
  std::vector<Constituent> constituents() const;
  // Positions in the order leaves are met by a left-to-right traversal of
  // the stored child order.
  std::vector<Position> leaf_order() const;

  friend bool operator==(const ConstituentTree& a, const ConstituentTree& b) {
    return a.sentence_ == b.sentence_ && a.root_ == b.root_;
  }

 private:
  Sentence sentence_;
  Node root_;
};

// Throws PreconditionError if the node hierarchy violates a tree invariant
// for a sentence of n words.
void validate_tree(const Node& root, std::size_t n);

bool is_contiguous(const Yield& yield);
// Number of maximal gaps in a sorted yield.
std::size_t gap_degree(const Yield& yield);

bool is_continuous(const ConstituentTree& tree);

// Permutation obtained by sorting every node's children by minimum yield
// position and reading the leaves left to right. perm[i] is the original
// position of the word placed at slot i.
std::vector<Position> canonical_order(const ConstituentTree& tree);

// The tree over the canonically reordered sentence: continuous, with
// children sorted and leaves numbered left to right.
ConstituentTree canonicalize(const ConstituentTree& tree);

// Reorders the sentence by `perm` (as returned by canonical_order) and
// renumbers the leaves so the tree describes the permuted sentence.
ConstituentTree permute(const ConstituentTree& tree, const std::vector<Position>& perm);

// Removes every non-root node flagged as preterminal, attaching its leaf to
// the parent. The result carries no preterminal flags.
ConstituentTree strip_preterminals(const ConstituentTree& tree);

class PunctuationPolicy {
 public:
  enum class Mode { None, TokenSet };

  static PunctuationPolicy none();
  // . , : `` '' -LRB- -RRB- ? !
  static PunctuationPolicy default_set();
  static PunctuationPolicy tokens(std::set<std::string> tokens);

  Mode mode() const { return mode_; }
  const std::set<std::string>& token_set() const { return tokens_; }
  bool is_punct(std::string_view word) const;

 private:
  Mode mode_ = Mode::None;
  std::set<std::string> tokens_;
};

}  // namespace discoseq
