#pragma once

// Bracket scoring in the EVALB / disco-dop style: labeled brackets are
// (label, yield) pairs compared as multisets after punctuation removal and
// root exclusion, micro-averaged over the corpus. The discontinuous scores
// (DF1) restrict both sides to brackets whose yield has a gap.

#include <optional>
#include <string>
#include <vector>

#include "discoseq/tree.hpp"
#include "discoseq/treebank.hpp"

namespace discoseq {

struct Bracket {
  std::string label;
  Yield yield;  // re-indexed over the non-punctuation words

  bool discontinuous() const { return !is_contiguous(yield); }
  friend auto operator<=>(const Bracket&, const Bracket&) = default;
};

// Sorted; duplicates are kept.
using BracketMultiset = std::vector<Bracket>;

struct EvalOptions {
  PunctuationPolicy punctuation = PunctuationPolicy::default_set();
  bool exclude_root = true;
};

BracketMultiset brackets(const ConstituentTree& tree, const PunctuationPolicy& policy,
                         bool exclude_root);

// Size of the multiset intersection of two sorted bracket multisets.
std::size_t matched_count(const BracketMultiset& gold, const BracketMultiset& pred);

struct Counts {
  std::size_t matched = 0;
  std::size_t gold = 0;
  std::size_t pred = 0;

  // Percentages; an empty denominator gives 0.
  double precision() const;
  double recall() const;
  double f1() const;

  Counts& operator+=(const Counts& o) {
    matched += o.matched;
    gold += o.gold;
    pred += o.pred;
    return *this;
  }
};

struct EvalReport {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  // Absent when the gold side has no discontinuous bracket.
  std::optional<double> disco_precision;
  std::optional<double> disco_recall;
  std::optional<double> disco_f1;
  double exact_match = 0;
  std::size_t n_sentences = 0;

  Counts all;
  Counts disco;
};

// Joins gold and pred on id. Throws MismatchError if the id sets differ or
// a pair's words differ.
EvalReport score(const Treebank& gold, const Treebank& pred, const EvalOptions& options);

// Builds a report from summed counts.
EvalReport make_report(const Counts& all, const Counts& disco, std::size_t exact,
                       std::size_t n_sentences);

struct BucketEdges {
  // Lower bounds of consecutive buckets; the last bucket is open-ended.
  std::vector<std::size_t> span_length = {1, 3, 5, 10, 20};
  std::vector<std::size_t> sentence_length = {1, 11, 21, 31, 41, 51};
};

struct BucketRow {
  std::string name;  // "3-4", ">=20"
  Counts counts;
};

struct LabelRow {
  std::string label;
  Counts counts;
  double mean_gold_span = 0;
};

struct BreakdownReport {
  std::vector<BucketRow> span_length;      // by bracket yield size
  std::vector<BucketRow> sentence_length;  // by number of words
  std::vector<LabelRow> labels;            // gold frequency desc, then label
};

// Buckets with no gold and no predicted bracket are left out.
BreakdownReport breakdown(const Treebank& gold, const Treebank& pred, const EvalOptions& options,
                          const BucketEdges& edges = {});

std::string report_json(const EvalReport& report);
std::string report_text(const EvalReport& report);
std::string breakdown_json(const BreakdownReport& report);
std::string breakdown_text(const BreakdownReport& report);

}  // namespace discoseq
