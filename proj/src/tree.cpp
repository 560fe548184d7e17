#include "discoseq/tree.hpp"

#include <algorithm>
#include <cctype>

#include "discoseq/error.hpp"

namespace discoseq {

namespace {

bool has_space(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

void collect_yield(const Node& node, Yield& out) {
  if (node.is_leaf()) {
    out.push_back(node.position());
    return;
  }
  for (const Node& child : node.children()) collect_yield(child, out);
}

void collect_constituents(const Node& node, std::vector<Constituent>& out) {
  if (node.is_leaf()) return;
  out.push_back({node.label(), node.yield()});
  for (const Node& child : node.children()) collect_constituents(child, out);
}

void check_node(const Node& node, std::size_t n, std::vector<bool>& seen) {
  if (node.is_leaf()) {
    if (node.position() >= n)
      throw PreconditionError("leaf position " + std::to_string(node.position()) +
                              " outside sentence of " + std::to_string(n) + " words");
    if (seen[node.position()])
      throw PreconditionError("leaf position " + std::to_string(node.position()) +
                              " appears twice");
    seen[node.position()] = true;
    return;
  }
  if (node.label().empty()) throw PreconditionError("empty constituent label");
  if (has_space(node.label()) || node.label().find_first_of("()") != std::string::npos)
    throw PreconditionError("invalid constituent label '" + node.label() + "'");
  if (node.children().empty())
    throw PreconditionError("constituent '" + node.label() + "' has no children");
  for (const Node& child : node.children()) check_node(child, n, seen);
}

void sort_children(Node& node) {
  if (node.is_leaf()) return;
  auto& children = node.mutable_children();
  for (Node& child : children) sort_children(child);
  std::stable_sort(children.begin(), children.end(), [](const Node& a, const Node& b) {
    return a.min_position() < b.min_position();
  });
}

void renumber(Node& node, const std::vector<Position>& slot_of) {
  if (node.is_leaf()) {
    node = Node::leaf(slot_of[node.position()]);
    return;
  }
  for (Node& child : node.mutable_children()) renumber(child, slot_of);
}

// Returns the stripped copy of `node`.
Node strip(const Node& node, bool is_root) {
  if (node.is_leaf()) return node;
  if (!is_root && node.preterminal() && node.children().size() == 1 &&
      node.children().front().is_leaf())
    return node.children().front();
  std::vector<Node> children;
  children.reserve(node.children().size());
  for (const Node& child : node.children()) children.push_back(strip(child, false));
  return Node::internal(node.label(), std::move(children));
}

}  // namespace

Sentence::Sentence(std::vector<std::string> words) : words_(std::move(words)) {
  if (words_.empty()) throw PreconditionError("sentence has no words");
  for (const auto& w : words_) {
    if (w.empty()) throw PreconditionError("empty word");
    if (has_space(w)) throw PreconditionError("word contains whitespace: '" + w + "'");
  }
}

std::string Sentence::joined() const {
  std::string out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (i) out += ' ';
    out += words_[i];
  }
  return out;
}

Node Node::leaf(Position position) {
  Node n;
  n.leaf_ = true;
  n.position_ = position;
  return n;
}

Node Node::internal(std::string label, std::vector<Node> children) {
  Node n;
  n.leaf_ = false;
  n.label_ = std::move(label);
  n.children_ = std::move(children);
  return n;
}

Yield Node::yield() const {
  Yield y;
  collect_yield(*this, y);
  std::sort(y.begin(), y.end());
  return y;
}

Position Node::min_position() const {
  if (leaf_) return position_;
  Position best = children_.front().min_position();
  for (std::size_t i = 1; i < children_.size(); ++i)
    best = std::min(best, children_[i].min_position());
  return best;
}

std::size_t Node::num_internal() const {
  if (leaf_) return 0;
  std::size_t count = 1;
  for (const Node& child : children_) count += child.num_internal();
  return count;
}

bool operator==(const Node& a, const Node& b) {
  if (a.leaf_ != b.leaf_) return false;
  if (a.leaf_) return a.position_ == b.position_;
  return a.label_ == b.label_ && a.children_ == b.children_;
}

bool Constituent::continuous() const { return is_contiguous(yield); }

void validate_tree(const Node& root, std::size_t n) {
  if (root.is_leaf()) throw PreconditionError("tree root must be a constituent");
  std::vector<bool> seen(n, false);
  check_node(root, n, seen);
  for (std::size_t i = 0; i < n; ++i)
    if (!seen[i]) throw PreconditionError("word position " + std::to_string(i) + " missing");
}

ConstituentTree::ConstituentTree(Sentence sentence, Node root)
    : sentence_(std::move(sentence)), root_(std::move(root)) {
  validate_tree(root_, sentence_.size());
}

std::vector<Constituent> ConstituentTree::constituents() const {
  std::vector<Constituent> out;
  collect_constituents(root_, out);
  return out;
}

std::vector<Position> ConstituentTree::leaf_order() const {
  std::vector<Position> order;
  order.reserve(size());
  collect_yield(root_, order);
  return order;
}

bool is_contiguous(const Yield& yield) {
  return yield.empty() || yield.back() - yield.front() + 1 == yield.size();
}

std::size_t gap_degree(const Yield& yield) {
  std::size_t gaps = 0;
  for (std::size_t i = 1; i < yield.size(); ++i)
    if (yield[i] != yield[i - 1] + 1) ++gaps;
  return gaps;
}

bool is_continuous(const ConstituentTree& tree) {
  for (const auto& c : tree.constituents())
    if (!c.continuous()) return false;
  return true;
}

std::vector<Position> canonical_order(const ConstituentTree& tree) {
  Node root = tree.root();
  sort_children(root);
  return ConstituentTree(tree.sentence(), std::move(root)).leaf_order();
}

ConstituentTree canonicalize(const ConstituentTree& tree) {
  Node root = tree.root();
  sort_children(root);
  const ConstituentTree sorted(tree.sentence(), std::move(root));
  return permute(sorted, sorted.leaf_order());
}

ConstituentTree permute(const ConstituentTree& tree, const std::vector<Position>& perm) {
  const std::size_t n = tree.size();
  if (perm.size() != n) throw PreconditionError("permutation size differs from sentence length");
  std::vector<Position> slot_of(n, n);
  std::vector<std::string> words(n);
  for (std::size_t slot = 0; slot < n; ++slot) {
    if (perm[slot] >= n || slot_of[perm[slot]] != n)
      throw PreconditionError("not a permutation");
    slot_of[perm[slot]] = slot;
    words[slot] = tree.sentence()[perm[slot]];
  }
  Node root = tree.root();
  renumber(root, slot_of);
  return ConstituentTree(Sentence(std::move(words)), std::move(root));
}

ConstituentTree strip_preterminals(const ConstituentTree& tree) {
  return ConstituentTree(tree.sentence(), strip(tree.root(), true));
}

PunctuationPolicy PunctuationPolicy::none() { return {}; }

PunctuationPolicy PunctuationPolicy::default_set() {
  return tokens({".", ",", ":", "``", "''", "-LRB-", "-RRB-", "?", "!"});
}

PunctuationPolicy PunctuationPolicy::tokens(std::set<std::string> tokens) {
  PunctuationPolicy p;
  p.mode_ = Mode::TokenSet;
  p.tokens_ = std::move(tokens);
  return p;
}

bool PunctuationPolicy::is_punct(std::string_view word) const {
  return mode_ == Mode::TokenSet && tokens_.count(std::string(word)) > 0;
}

}  // namespace discoseq
