#include "discoseq/treebank.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <optional>

#include "discoseq/error.hpp"

namespace discoseq {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

int to_int(std::string_view s, std::size_t line) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw FormatError("line " + std::to_string(line) + ": expected an integer, found '" +
                      std::string(s) + "'");
  return value;
}

struct ExportNode {
  std::string label;
  int parent = 0;
  std::vector<int> children;  // >= 0 word positions, < 0 encodes -(node id)
};

class ExportSentence {
 public:
  ExportSentence(std::string id, std::size_t line) : id_(std::move(id)), line_(line) {}

  void add_word(std::string word, int parent) {
    words_.push_back(std::move(word));
    word_parent_.push_back(parent);
  }

  void add_node(int id, std::string label, int parent, std::size_t line) {
    if (!nodes_.emplace(id, ExportNode{std::move(label), parent, {}}).second)
      throw FormatError("line " + std::to_string(line) + ": duplicate node #" +
                        std::to_string(id));
  }

  TreebankEntry finish() {
    if (words_.empty()) throw FormatError(where() + "sentence without words");
    std::vector<int> top;
    for (std::size_t i = 0; i < words_.size(); ++i)
      attach(static_cast<int>(i), word_parent_[i], top);
    for (auto& [id, node] : nodes_) attach(-id, node.parent, top);

    Node root;
    if (top.size() == 1 && top.front() < 0) {
      root = build(-top.front(), 0);
    } else {
      std::vector<Node> children;
      for (int child : top) children.push_back(build_child(child, 0));
      root = Node::internal(std::string(kSyntheticRoot), std::move(children));
    }
    sort(root);
    try {
      return {id_, ConstituentTree(Sentence(std::move(words_)), std::move(root))};
    } catch (const PreconditionError& e) {
      throw FormatError(where() + e.what());
    }
  }

 private:
  std::string where() const {
    return "sentence " + id_ + " (line " + std::to_string(line_) + "): ";
  }

  void attach(int child, int parent, std::vector<int>& top) {
    if (parent == 0) {
      top.push_back(child);
      return;
    }
    auto it = nodes_.find(parent);
    if (it == nodes_.end())
      throw FormatError(where() + "unknown parent #" + std::to_string(parent));
    it->second.children.push_back(child);
  }

  Node build_child(int child, std::size_t depth) {
    return child >= 0 ? Node::leaf(static_cast<Position>(child)) : build(-child, depth + 1);
  }

  Node build(int id, std::size_t depth) {
    if (depth > nodes_.size()) throw FormatError(where() + "cycle in parent links");
    const ExportNode& node = nodes_.at(id);
    if (node.children.empty())
      throw FormatError(where() + "node #" + std::to_string(id) + " has no children");
    std::vector<Node> children;
    for (int child : node.children) children.push_back(build_child(child, depth));
    return Node::internal(node.label, std::move(children));
  }

  static void sort(Node& node) {
    if (node.is_leaf()) return;
    for (Node& child : node.mutable_children()) sort(child);
    std::stable_sort(node.mutable_children().begin(), node.mutable_children().end(),
                     [](const Node& a, const Node& b) {
                       return a.min_position() < b.min_position();
                     });
  }

  std::string id_;
  std::size_t line_;
  std::vector<std::string> words_;
  std::vector<int> word_parent_;
  std::map<int, ExportNode> nodes_;
};

bool is_node_line(std::string_view field) {
  return field.size() > 1 && field[0] == '#' &&
         std::all_of(field.begin() + 1, field.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

Treebank read_treebank(std::string_view text, const ReadOptions& options) {
  if (options.format == TreeFormat::Export) {
    Treebank tb = read_export(text);
    return tb;
  }
  Treebank out;
  const auto sources = split_bracketed(text);
  out.reserve(sources.size());
  for (std::size_t i = 0; i < sources.size(); ++i) {
    try {
      ConstituentTree tree = parse_bracketed(sources[i].text, options.format);
      if (options.strip_preterminals) tree = strip_preterminals(tree);
      out.push_back({std::to_string(i + 1), std::move(tree)});
    } catch (const FormatError& e) {
      throw FormatError("tree " + std::to_string(i + 1) + " (line " +
                        std::to_string(sources[i].line) + "): " + e.what());
    }
  }
  return out;
}

Treebank read_export(std::string_view text) {
  Treebank out;
  std::optional<ExportSentence> current;
  bool in_table = false;  // #BOT ... #EOT header tables
  int format = 3;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    const auto fields = split_fields(line);
    if (fields.empty() || line.substr(0, 2) == "%%") {
      if (end == text.size()) break;
      continue;
    }
    const std::string_view head = fields[0];
    const auto where = [&] { return "line " + std::to_string(line_no) + ": "; };

    if (in_table) {
      if (head == "#EOT") in_table = false;
    } else if (head == "#BOT") {
      in_table = true;
    } else if (head == "#FORMAT") {
      if (fields.size() < 2) throw FormatError(where() + "#FORMAT without a version");
      format = to_int(fields[1], line_no);
      if (format != 3 && format != 4)
        throw FormatError(where() + "unsupported export format " + std::to_string(format));
    } else if (head == "#BOS") {
      if (current) throw FormatError(where() + "#BOS inside an open sentence");
      if (fields.size() < 2) throw FormatError(where() + "#BOS without a sentence id");
      current.emplace(std::string(fields[1]), line_no);
    } else if (head == "#EOS") {
      if (!current) throw FormatError(where() + "#EOS without #BOS");
      out.push_back(current->finish());
      current.reset();
    } else {
      if (!current) throw FormatError(where() + "content outside #BOS/#EOS");
      // Parent is the column after the edge label: 5th (format 3) or 6th (format 4).
      const std::size_t parent_col = format == 4 ? 5 : 4;
      const std::size_t label_col = format == 4 ? 2 : 1;
      if (fields.size() <= parent_col)
        throw FormatError(where() + "expected at least " + std::to_string(parent_col + 1) +
                          " columns");
      const int parent = to_int(fields[parent_col], line_no);
      if (is_node_line(head)) {
        const int id = to_int(head.substr(1), line_no);
        if (id == 0) throw FormatError(where() + "node id 0 is reserved for the root");
        current->add_node(id, std::string(fields[label_col]), parent, line_no);
      } else {
        current->add_word(std::string(head), parent);
      }
    }
    if (end == text.size()) break;
  }
  if (current) throw FormatError("unterminated sentence at end of input");
  return out;
}

std::string write_treebank(const Treebank& treebank, TreeFormat format) {
  std::string out;
  for (const auto& entry : treebank) {
    out += write_bracketed(entry.tree, format);
    out += '\n';
  }
  return out;
}

}  // namespace discoseq
