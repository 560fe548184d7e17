#include "discoseq/evalsuite.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <unordered_map>

#include <json.hpp>

#include "discoseq/error.hpp"

namespace discoseq {

namespace {

void collect(const Node& node, bool is_root, bool exclude_root,
             const std::vector<std::optional<Position>>& reindex, BracketMultiset& out) {
  if (node.is_leaf()) return;
  if (!(is_root && exclude_root)) {
    Yield yield;
    for (Position p : node.yield())
      if (reindex[p]) yield.push_back(*reindex[p]);
    if (!yield.empty()) out.push_back({node.label(), std::move(yield)});
  }
  for (const Node& child : node.children()) collect(child, false, exclude_root, reindex, out);
}

BracketMultiset only_discontinuous(const BracketMultiset& all) {
  BracketMultiset out;
  std::copy_if(all.begin(), all.end(), std::back_inserter(out),
               [](const Bracket& b) { return b.discontinuous(); });
  return out;
}

struct Pair {
  const TreebankEntry* gold;
  const TreebankEntry* pred;
};

std::vector<Pair> align(const Treebank& gold, const Treebank& pred) {
  if (gold.size() != pred.size())
    throw MismatchError("gold has " + std::to_string(gold.size()) + " trees, prediction has " +
                        std::to_string(pred.size()));
  std::unordered_map<std::string, const TreebankEntry*> by_id;
  for (const auto& e : pred)
    if (!by_id.emplace(e.id, &e).second) throw MismatchError("duplicate prediction id " + e.id);
  std::vector<Pair> out;
  out.reserve(gold.size());
  for (const auto& g : gold) {
    auto it = by_id.find(g.id);
    if (it == by_id.end()) throw MismatchError("no prediction for id " + g.id);
    if (g.tree.sentence() != it->second->tree.sentence())
      throw MismatchError("words differ for id " + g.id);
    out.push_back({&g, it->second});
  }
  return out;
}

std::string bucket_name(const std::vector<std::size_t>& lows, std::size_t i) {
  if (i + 1 == lows.size()) return ">=" + std::to_string(lows[i]);
  const std::size_t hi = lows[i + 1] - 1;
  if (hi == lows[i]) return std::to_string(hi);
  return std::to_string(lows[i]) + "-" + std::to_string(hi);
}

// Index of the bucket containing `value`, or npos below the first edge.
std::size_t bucket_of(const std::vector<std::size_t>& lows, std::size_t value) {
  std::size_t found = std::string::npos;
  for (std::size_t i = 0; i < lows.size(); ++i)
    if (value >= lows[i]) found = i;
  return found;
}

nlohmann::ordered_json counts_json(const Counts& c) {
  return {{"precision", c.precision()}, {"recall", c.recall()}, {"f1", c.f1()},
          {"matched", c.matched},       {"gold", c.gold},       {"pred", c.pred}};
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string opt_fixed(const std::optional<double>& v) { return v ? fixed(*v) : "-"; }

nlohmann::ordered_json opt_json(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string rpad(const std::string& s, std::size_t width) {
  return s.size() < width ? std::string(width - s.size(), ' ') + s : s;
}

}  // namespace

BracketMultiset brackets(const ConstituentTree& tree, const PunctuationPolicy& policy,
                         bool exclude_root) {
  std::vector<std::optional<Position>> reindex(tree.size());
  Position next = 0;
  for (Position i = 0; i < tree.size(); ++i)
    if (!policy.is_punct(tree.sentence()[i])) reindex[i] = next++;
  BracketMultiset out;
  collect(tree.root(), true, exclude_root, reindex, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t matched_count(const BracketMultiset& gold, const BracketMultiset& pred) {
  std::size_t matched = 0;
  auto g = gold.begin();
  auto p = pred.begin();
  while (g != gold.end() && p != pred.end()) {
    if (*g < *p) {
      ++g;
    } else if (*p < *g) {
      ++p;
    } else {
      ++matched;
      ++g;
      ++p;
    }
  }
  return matched;
}

double Counts::precision() const { return pred == 0 ? 0.0 : 100.0 * matched / pred; }
double Counts::recall() const { return gold == 0 ? 0.0 : 100.0 * matched / gold; }
double Counts::f1() const {
  const double p = precision(), r = recall();
  return p + r == 0 ? 0.0 : 2 * p * r / (p + r);
}

EvalReport make_report(const Counts& all, const Counts& disco, std::size_t exact,
                       std::size_t n_sentences) {
  EvalReport r;
  r.all = all;
  r.disco = disco;
  r.precision = all.precision();
  r.recall = all.recall();
  r.f1 = all.f1();
  if (disco.gold > 0) {
    r.disco_precision = disco.precision();
    r.disco_recall = disco.recall();
    r.disco_f1 = disco.f1();
  }
  r.n_sentences = n_sentences;
  r.exact_match = n_sentences == 0 ? 0.0 : 100.0 * exact / n_sentences;
  return r;
}

EvalReport score(const Treebank& gold, const Treebank& pred, const EvalOptions& options) {
  Counts all, disco;
  std::size_t exact = 0;
  for (const Pair& pair : align(gold, pred)) {
    const auto g = brackets(pair.gold->tree, options.punctuation, options.exclude_root);
    const auto p = brackets(pair.pred->tree, options.punctuation, options.exclude_root);
    const std::size_t m = matched_count(g, p);
    all += {m, g.size(), p.size()};
    const auto gd = only_discontinuous(g);
    const auto pd = only_discontinuous(p);
    disco += {matched_count(gd, pd), gd.size(), pd.size()};
    if (g == p) ++exact;
  }
  return make_report(all, disco, exact, gold.size());
}

BreakdownReport breakdown(const Treebank& gold, const Treebank& pred, const EvalOptions& options,
                          const BucketEdges& edges) {
  std::vector<Counts> span(edges.span_length.size());
  std::vector<Counts> sent(edges.sentence_length.size());
  std::map<std::string, Counts> labels;
  std::map<std::string, std::size_t> gold_span_total;

  for (const Pair& pair : align(gold, pred)) {
    const auto g = brackets(pair.gold->tree, options.punctuation, options.exclude_root);
    const auto p = brackets(pair.pred->tree, options.punctuation, options.exclude_root);
    const std::size_t m = matched_count(g, p);
    if (auto b = bucket_of(edges.sentence_length, pair.gold->tree.size()); b != std::string::npos)
      sent[b] += {m, g.size(), p.size()};

    // Group by span length and by label; matched pairs share both keys.
    std::map<std::size_t, std::pair<BracketMultiset, BracketMultiset>> by_len;
    std::map<std::string, std::pair<BracketMultiset, BracketMultiset>> by_label;
    for (const auto& b : g) {
      by_len[b.yield.size()].first.push_back(b);
      by_label[b.label].first.push_back(b);
      gold_span_total[b.label] += b.yield.size();
    }
    for (const auto& b : p) {
      by_len[b.yield.size()].second.push_back(b);
      by_label[b.label].second.push_back(b);
    }
    for (const auto& [len, sides] : by_len) {
      const auto b = bucket_of(edges.span_length, len);
      if (b == std::string::npos) continue;
      span[b] += {matched_count(sides.first, sides.second), sides.first.size(), sides.second.size()};
    }
    for (const auto& [label, sides] : by_label)
      labels[label] += {matched_count(sides.first, sides.second), sides.first.size(),
                        sides.second.size()};
  }

  BreakdownReport out;
  for (std::size_t i = 0; i < span.size(); ++i)
    if (span[i].gold + span[i].pred > 0)
      out.span_length.push_back({bucket_name(edges.span_length, i), span[i]});
  for (std::size_t i = 0; i < sent.size(); ++i)
    if (sent[i].gold + sent[i].pred > 0)
      out.sentence_length.push_back({bucket_name(edges.sentence_length, i), sent[i]});
  for (const auto& [label, counts] : labels) {
    const double mean =
        counts.gold == 0 ? 0.0 : static_cast<double>(gold_span_total[label]) / counts.gold;
    out.labels.push_back({label, counts, mean});
  }
  std::stable_sort(out.labels.begin(), out.labels.end(), [](const LabelRow& a, const LabelRow& b) {
    return a.counts.gold > b.counts.gold;
  });
  return out;
}

std::string report_json(const EvalReport& r) {
  nlohmann::ordered_json j = {
      {"precision", r.precision},
      {"recall", r.recall},
      {"f1", r.f1},
      {"disco_precision", opt_json(r.disco_precision)},
      {"disco_recall", opt_json(r.disco_recall)},
      {"disco_f1", opt_json(r.disco_f1)},
      {"exact_match", r.exact_match},
      {"n_sentences", r.n_sentences},
      {"counts", {{"all", counts_json(r.all)}, {"disco", counts_json(r.disco)}}},
  };
  return j.dump();
}

std::string report_text(const EvalReport& r) {
  std::string out;
  auto line = [&](const std::string& name, const std::string& value) {
    out += pad(name, 18) + rpad(value, 8) + "\n";
  };
  line("n_sentences", std::to_string(r.n_sentences));
  line("precision", fixed(r.precision));
  line("recall", fixed(r.recall));
  line("f1", fixed(r.f1));
  line("disco_precision", opt_fixed(r.disco_precision));
  line("disco_recall", opt_fixed(r.disco_recall));
  line("disco_f1", opt_fixed(r.disco_f1));
  line("exact_match", fixed(r.exact_match));
  return out;
}

std::string breakdown_json(const BreakdownReport& r) {
  nlohmann::ordered_json j;
  auto buckets = [](const std::vector<BucketRow>& rows) {
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
      auto o = counts_json(row.counts);
      o["bucket"] = row.name;
      a.push_back(std::move(o));
    }
    return a;
  };
  j["span_length"] = buckets(r.span_length);
  j["sentence_length"] = buckets(r.sentence_length);
  j["labels"] = nlohmann::ordered_json::array();
  for (const auto& row : r.labels) {
    auto o = counts_json(row.counts);
    o["label"] = row.label;
    o["mean_gold_span"] = row.mean_gold_span;
    j["labels"].push_back(std::move(o));
  }
  return j.dump();
}

std::string breakdown_text(const BreakdownReport& r) {
  std::string out;
  auto header = [&](const std::string& title, const std::string& key) {
    out += title + "\n";
    out += pad(key, 12) + rpad("gold", 8) + rpad("pred", 8) + rpad("P", 8) + rpad("R", 8) +
           rpad("F1", 8) + "\n";
  };
  auto row = [&](const std::string& key, const Counts& c, const std::string& extra = "") {
    out += pad(key, 12) + rpad(std::to_string(c.gold), 8) + rpad(std::to_string(c.pred), 8) +
           rpad(fixed(c.precision()), 8) + rpad(fixed(c.recall()), 8) + rpad(fixed(c.f1()), 8) +
           extra + "\n";
  };
  header("span length", "bucket");
  for (const auto& b : r.span_length) row(b.name, b.counts);
  out += "\n";
  header("sentence length", "bucket");
  for (const auto& b : r.sentence_length) row(b.name, b.counts);
  out += "\n";
  header("label", "label");
  for (const auto& l : r.labels) row(l.label, l.counts, "  (" + fixed(l.mean_gold_span) + ")");
  return out;
}

}  // namespace discoseq
