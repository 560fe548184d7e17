#include "discoseq/bracketed.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>

#include "discoseq/error.hpp"

namespace discoseq {

namespace {

struct Token {
  enum Kind { Open, Close, Atom } kind;
  std::string_view text;
  std::size_t line;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '(') {
      out.push_back({Token::Open, text.substr(i, 1), line});
      ++i;
    } else if (c == ')') {
      out.push_back({Token::Close, text.substr(i, 1), line});
      ++i;
    } else {
      std::size_t j = i;
      while (j < text.size() && text[j] != '(' && text[j] != ')' &&
             !std::isspace(static_cast<unsigned char>(text[j])))
        ++j;
      out.push_back({Token::Atom, text.substr(i, j - i), line});
      i = j;
    }
  }
  return out;
}

// Intermediate tree with terminals still in surface form.
struct RawNode {
  std::string label;
  std::string terminal;  // non-empty for terminals
  std::vector<RawNode> children;
  std::size_t line = 0;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  bool done() const { return pos_ >= tokens_.size(); }

  RawNode parse_node() {
    const Token& open = next("'('");
    if (open.kind != Token::Open)
      throw FormatError("line " + std::to_string(open.line) + ": expected '(' but found '" +
                        std::string(open.text) + "'");
    RawNode node;
    node.line = open.line;
    if (peek() && peek()->kind == Token::Atom) node.label = std::string(next("label").text);
    for (;;) {
      const Token* t = peek();
      if (!t)
        throw FormatError("line " + std::to_string(open.line) + ": unbalanced brackets");
      if (t->kind == Token::Close) {
        ++pos_;
        break;
      }
      if (t->kind == Token::Open) {
        node.children.push_back(parse_node());
      } else {
        RawNode leaf;
        leaf.terminal = std::string(t->text);
        leaf.line = t->line;
        node.children.push_back(std::move(leaf));
        ++pos_;
      }
    }
    if (node.children.empty())
      throw FormatError("line " + std::to_string(open.line) + ": empty constituent '" +
                        node.label + "'");
    return node;
  }

  const Token* peek() const { return done() ? nullptr : &tokens_[pos_]; }

 private:
  const Token& next(const char* what) {
    if (done()) throw FormatError(std::string("unexpected end of input, expected ") + what);
    return tokens_[pos_++];
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

// True when every terminal is the only child of its parent, i.e. the
// source carries a tag layer above the words.
bool tagged(const RawNode& node) {
  for (const RawNode& child : node.children) {
    if (!child.terminal.empty()) {
      if (node.children.size() != 1) return false;
    } else if (!tagged(child)) {
      return false;
    }
  }
  return true;
}

struct Builder {
  TreeFormat format;
  bool tagged = false;
  std::vector<std::optional<std::string>> words;  // indexed by position
  std::size_t next_ptb = 0;

  Node build(const RawNode& raw) {
    if (!raw.terminal.empty()) return Node::leaf(terminal(raw));
    if (raw.label.empty())
      throw FormatError("line " + std::to_string(raw.line) + ": constituent without a label");
    std::vector<Node> children;
    children.reserve(raw.children.size());
    for (const RawNode& child : raw.children) children.push_back(build(child));
    Node node = Node::internal(raw.label, std::move(children));
    node.set_preterminal(tagged && raw.children.size() == 1 && !raw.children.front().terminal.empty());
    return node;
  }

  Position terminal(const RawNode& raw) {
    if (format == TreeFormat::Ptb) {
      place(next_ptb, raw.terminal, raw.line);
      return next_ptb++;
    }
    const std::string& text = raw.terminal;
    const auto eq = text.find('=');
    Position index = 0;
    if (eq == std::string::npos || eq == 0 || eq + 1 == text.size() ||
        std::from_chars(text.data(), text.data() + eq, index).ptr != text.data() + eq)
      throw FormatError("line " + std::to_string(raw.line) + ": terminal '" + text +
                        "' is not of the form INDEX=WORD");
    place(index, text.substr(eq + 1), raw.line);
    return index;
  }

  void place(Position index, std::string word, std::size_t line) {
    if (index >= words.size()) words.resize(index + 1);
    if (words[index])
      throw FormatError("line " + std::to_string(line) + ": duplicate position " +
                        std::to_string(index));
    words[index] = std::move(word);
  }
};

void write_node(const Node& node, const Sentence& sentence, TreeFormat format, std::string& out) {
  if (node.is_leaf()) {
    if (format == TreeFormat::Discbracket) out += std::to_string(node.position()) + "=";
    out += sentence[node.position()];
    return;
  }
  out += '(';
  out += node.label();
  for (const Node& child : node.children()) {
    out += ' ';
    write_node(child, sentence, format, out);
  }
  out += ')';
}

}  // namespace

std::vector<SourceTree> split_bracketed(std::string_view text) {
  std::vector<SourceTree> out;
  std::size_t line = 1;
  std::size_t depth = 0;
  std::size_t start = 0;
  std::size_t start_line = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '\n') ++line;
    if (c == '(') {
      if (depth == 0) {
        start = i;
        start_line = line;
      }
      ++depth;
    } else if (c == ')') {
      if (depth == 0)
        throw FormatError("line " + std::to_string(line) + ": unbalanced ')'");
      if (--depth == 0)
        out.push_back({start_line, std::string(text.substr(start, i + 1 - start))});
    } else if (depth == 0 && !std::isspace(static_cast<unsigned char>(c))) {
      throw FormatError("line " + std::to_string(line) + ": text outside brackets");
    }
  }
  if (depth != 0) throw FormatError("line " + std::to_string(start_line) + ": unbalanced '('");
  return out;
}

ConstituentTree parse_bracketed(std::string_view text, TreeFormat format) {
  if (format == TreeFormat::Export)
    throw PreconditionError("export format is not bracketed");
  Parser parser(tokenize(text));
  if (parser.done()) throw FormatError("empty input");
  RawNode raw = parser.parse_node();
  if (!parser.done()) throw FormatError("trailing text after tree");

  // "( (S ...) )" wrapper with an empty label.
  if (raw.label.empty()) {
    const bool single_subtree = raw.children.size() == 1 && raw.children.front().terminal.empty();
    if (single_subtree) {
      RawNode inner = std::move(raw.children.front());
      raw = std::move(inner);
    } else {
      raw.label = std::string(kSyntheticRoot);
    }
  }
  if (!raw.terminal.empty()) throw FormatError("tree is a bare terminal");

  Builder builder{format, tagged(raw), {}, 0};
  Node root = builder.build(raw);
  std::vector<std::string> words;
  words.reserve(builder.words.size());
  for (std::size_t i = 0; i < builder.words.size(); ++i) {
    if (!builder.words[i]) throw FormatError("missing position " + std::to_string(i));
    words.push_back(std::move(*builder.words[i]));
  }
  try {
    return ConstituentTree(Sentence(std::move(words)), std::move(root));
  } catch (const PreconditionError& e) {
    throw FormatError(e.what());
  }
}

std::string write_bracketed(const ConstituentTree& tree, TreeFormat format) {
  if (format == TreeFormat::Export)
    throw PreconditionError("export format is read-only");
  if (format == TreeFormat::Ptb) {
    const auto order = tree.leaf_order();
    for (std::size_t i = 0; i < order.size(); ++i)
      if (order[i] != i)
        throw PreconditionError(
            "ptb output requires a continuous tree with children in sentence order");
  }
  std::string out;
  write_node(tree.root(), tree.sentence(), format, out);
  return out;
}

}  // namespace discoseq
