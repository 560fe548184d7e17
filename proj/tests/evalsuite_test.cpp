#include <gtest/gtest.h>

#include <random>

#include <json.hpp>

#include "discoseq/error.hpp"
#include "test_util.hpp"

using namespace discoseq;
using namespace testutil;

namespace {

ConstituentTree flat_pred() {
  return parse_bracketed("(SBARQ (SQ (WHNP 0=What) 1=should 2=I 3=do) 4=?)", TreeFormat::Discbracket);
}

Treebank bank(std::initializer_list<ConstituentTree> trees) {
  Treebank tb;
  for (const auto& t : trees) tb.push_back({std::to_string(tb.size() + 1), t});
  return tb;
}

ConstituentTree ptb(const char* s) { return parse_bracketed(s, TreeFormat::Ptb); }

}  // namespace

TEST(Brackets, QuestionDefaultPolicy) {
  const auto b = brackets(question(), PunctuationPolicy::default_set(), true);
  const BracketMultiset expected{{"SQ", {0, 1, 2, 3}}, {"VP", {0, 3}}, {"WHNP", {0}}};
  EXPECT_EQ(b, expected);
  EXPECT_TRUE(b[1].discontinuous());
}

TEST(Brackets, EveryNodeWithoutPolicies) {
  EXPECT_EQ(brackets(question(), PunctuationPolicy::none(), false).size(), 4u);
}

TEST(Brackets, SingleLeafTree) { EXPECT_TRUE(brackets(ptb("(X w)"), PunctuationPolicy::none(), true).empty()); }

TEST(Brackets, PunctuationReindexesAndDropsEmpty) {
  const auto t = ptb("(S (P ,) (NP a) (VP , b))");
  const auto b = brackets(t, PunctuationPolicy::default_set(), false);
  const BracketMultiset expected{{"NP", {0}}, {"S", {0, 1}}, {"VP", {1}}};
  EXPECT_EQ(b, expected);
}

TEST(Brackets, UnaryChainsAreDistinctMembers) {
  const auto b = brackets(ptb("(S (X (Y a)) b)"), PunctuationPolicy::none(), true);
  EXPECT_EQ(b.size(), 2u);
  EXPECT_EQ(matched_count(b, b), 2u);
  const auto dup = brackets(ptb("(S (X (X a)) b)"), PunctuationPolicy::none(), true);
  const BracketMultiset single{{"X", {0}}};
  EXPECT_EQ(matched_count(dup, single), 1u);
}

TEST(Score, IdenticalCorpora) {
  const auto tb = bank({question(), ptb("(S (NP a) (VP b c))")});
  const auto r = score(tb, tb, {});
  EXPECT_DOUBLE_EQ(r.f1, 100.0);
  EXPECT_DOUBLE_EQ(r.exact_match, 100.0);
  EXPECT_EQ(r.n_sentences, 2u);
}

TEST(Score, HandCountedExample) {
  const auto r = score(bank({question()}), bank({flat_pred()}), {});
  EXPECT_DOUBLE_EQ(r.precision, 100.0);
  EXPECT_NEAR(r.recall, 66.7, 0.05);
  EXPECT_DOUBLE_EQ(r.recall, 200.0 / 3.0);
  EXPECT_DOUBLE_EQ(r.f1, 80.0);
  ASSERT_TRUE(r.disco_f1.has_value());
  EXPECT_DOUBLE_EQ(*r.disco_f1, 0.0);
  EXPECT_DOUBLE_EQ(r.exact_match, 0.0);
}

TEST(Score, ZeroPredictedBrackets) {
  const auto r = score(bank({ptb("(S (NP a) (VP b c))")}), bank({ptb("(S a b c)")}), {});
  EXPECT_DOUBLE_EQ(r.precision, 0.0);
  EXPECT_DOUBLE_EQ(r.recall, 0.0);
  EXPECT_DOUBLE_EQ(r.f1, 0.0);
}

TEST(Score, ContinuousCorpusHasNoDiscoScore) {
  const auto tb = bank({ptb("(S (NP a) (VP b c))")});
  const auto r = score(tb, tb, {});
  EXPECT_FALSE(r.disco_f1.has_value());
  EXPECT_FALSE(r.disco_precision.has_value());
  EXPECT_FALSE(r.disco_recall.has_value());
  EXPECT_NE(report_json(r).find("\"disco_f1\":null"), std::string::npos);
}

TEST(Score, AlignsById) {
  Treebank gold{{"a", ptb("(S (NP x) y)")}, {"b", ptb("(S z (VP w))")}};
  Treebank pred{{"b", ptb("(S z (VP w))")}, {"a", ptb("(S (NP x) y)")}};
  EXPECT_DOUBLE_EQ(score(gold, pred, {}).f1, 100.0);
}

TEST(Score, Mismatches) {
  Treebank gold{{"a", ptb("(S x y)")}};
  EXPECT_THROW(score(gold, {}, {}), MismatchError);
  EXPECT_THROW(score(gold, {{"b", ptb("(S x y)")}}, {}), MismatchError);
  EXPECT_THROW(score(gold, {{"a", ptb("(S x z)")}}, {}), MismatchError);
  Treebank two{{"a", ptb("(S x y)")}, {"b", ptb("(S x y)")}};
  EXPECT_THROW(score(two, {{"a", ptb("(S x y)")}, {"a", ptb("(S x y)")}}, {}), MismatchError);
}

TEST(Score, RootPolicy) {
  const auto tb = bank({ptb("(S (NP a) b)")});
  EXPECT_EQ(score(tb, tb, {PunctuationPolicy::none(), true}).all.gold, 1u);
  EXPECT_EQ(score(tb, tb, {PunctuationPolicy::none(), false}).all.gold, 2u);
}

TEST(Report, JsonFieldsAndText) {
  const auto r = score(bank({question()}), bank({flat_pred()}), {});
  const auto j = nlohmann::json::parse(report_json(r));
  for (const char* k : {"precision", "recall", "f1", "disco_precision", "disco_recall", "disco_f1", "exact_match"})
    EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_DOUBLE_EQ(j["f1"].get<double>(), 80.0);
  const auto text = report_text(r);
  EXPECT_NE(text.find("80.00"), std::string::npos) << text;
  EXPECT_NE(text.find("66.67"), std::string::npos) << text;
}

TEST(Breakdown, IdenticalCorporaAllPerfect) {
  const auto tb = bank({question(), ptb("(S (NP a b c) (VP d (NP e f g h i j k l)))")});
  const auto r = breakdown(tb, tb, {});
  for (const auto& rows : {r.span_length, r.sentence_length})
    for (const auto& row : rows) EXPECT_DOUBLE_EQ(row.counts.f1(), 100.0) << row.name;
  for (const auto& row : r.labels) EXPECT_DOUBLE_EQ(row.counts.f1(), 100.0) << row.label;
}

TEST(Breakdown, BucketNamesAndAbsentBuckets) {
  const auto tb = bank({ptb("(S (NP a b c) (VP d (NP e f g h i j k l)))")});
  const auto r = breakdown(tb, tb, {});
  std::vector<std::string> names;
  for (const auto& row : r.span_length) names.push_back(row.name);
  EXPECT_EQ(names, (std::vector<std::string>{"3-4", "5-9"}));
  ASSERT_EQ(r.sentence_length.size(), 1u);
  EXPECT_EQ(r.sentence_length[0].name, "11-20");
  EXPECT_EQ(r.labels.front().label, "NP");
  EXPECT_DOUBLE_EQ(r.labels.front().mean_gold_span, (3.0 + 8.0) / 2.0);
}

TEST(Breakdown, HalfCorrectSingleBracketCorpus) {
  // Each sentence has one scored bracket; half the predictions drop it.
  Treebank gold, pred;
  const char* golds[] = {"(S (X a b) c)", "(S (X a b c d) e)", "(S (X a b c d e f) g)", "(S (Y a b) c d)"};
  const char* flats[] = {"(S a b c)", "(S a b c d e)", "(S a b c d e f g)", "(S a b c d)"};
  for (int i = 0; i < 8; ++i) {
    const auto id = std::to_string(i);
    gold.push_back({id, ptb(golds[i % 4])});
    pred.push_back({id, i < 4 ? ptb(golds[i % 4]) : ptb(flats[i % 4])});
  }
  const auto r = breakdown(gold, pred, {});
  for (const auto& rows : {r.span_length, r.sentence_length})
    for (const auto& row : rows) {
      EXPECT_NEAR(row.counts.f1(), 66.7, 0.05) << row.name;
      EXPECT_DOUBLE_EQ(row.counts.precision(), 100.0);
      EXPECT_DOUBLE_EQ(row.counts.recall(), 50.0);
    }
  const auto s = score(gold, pred, {});
  EXPECT_NEAR(s.f1, 66.7, 0.05);
  const auto j = nlohmann::json::parse(breakdown_json(r));
  EXPECT_EQ(j["span_length"].size(), r.span_length.size());
  EXPECT_FALSE(breakdown_text(r).empty());
}

TEST(Breakdown, CustomEdges) {
  const auto tb = bank({ptb("(S (NP a b c) (VP d (NP e f g h i j k l)))")});
  BucketEdges edges;
  edges.span_length = {1, 100};
  edges.sentence_length = {20};
  const auto r = breakdown(tb, tb, {}, edges);
  ASSERT_EQ(r.span_length.size(), 1u);
  EXPECT_EQ(r.span_length[0].name, "1-99");
  EXPECT_TRUE(r.sentence_length.empty());
}

TEST(EvalProperties, MatchesBruteForce) {
  std::mt19937_64 rng(4242);
  const std::set<std::string> punct{".", ",", ":", "``", "''", "-LRB-", "-RRB-", "?", "!"};
  for (int trial = 0; trial < 300; ++trial) {
    Treebank gold, pred;
    const std::size_t size = 1 + rng() % 6;
    for (std::size_t i = 0; i < size; ++i) {
      RandomTreeParams p{1 + rng() % 15, 2 + rng() % 3, 0.5, 2, 3};
      const auto raw = random_tree(rng(), p);
      std::vector<std::string> words = raw.sentence().words();
      for (auto& w : words)
        if (rng() % 4 == 0) w = rng() % 2 ? "," : "?";
      const ConstituentTree g(Sentence(words), raw.root());
      // Same words, different structure.
      const ConstituentTree pq(g.sentence(), random_tree(rng(), p).root());
      gold.push_back({std::to_string(i), g});
      pred.push_back({std::to_string(i), rng() % 4 == 0 ? g : pq});
    }
    for (bool exclude_root : {true, false}) {
      const auto r = score(gold, pred, {PunctuationPolicy::default_set(), exclude_root});
      const auto n = naive_score(gold, pred, punct, exclude_root);
      EXPECT_NEAR(r.precision, n.p, 1e-9);
      EXPECT_NEAR(r.recall, n.r, 1e-9);
      EXPECT_NEAR(r.f1, n.f, 1e-9);
      EXPECT_EQ(r.disco_f1.has_value(), n.has_disco);
      if (n.has_disco) {
        EXPECT_NEAR(*r.disco_precision, n.dp, 1e-9);
        EXPECT_NEAR(*r.disco_recall, n.dr, 1e-9);
        EXPECT_NEAR(*r.disco_f1, n.df, 1e-9);
      }
    }
  }
}

TEST(EvalProperties, SymmetryAndMonotonicity) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    RandomTreeParams p{2 + rng() % 12, 3, 0.3, 2, 0};
    const auto g = random_tree(rng(), p);
    const ConstituentTree q(g.sentence(), random_tree(rng(), p).root());
    const auto gb = brackets(g, PunctuationPolicy::none(), true);
    const auto qb = brackets(q, PunctuationPolicy::none(), true);
    const Treebank G{{"1", g}}, Q{{"1", q}};
    const auto ab = score(G, Q, {PunctuationPolicy::none(), true});
    const auto ba = score(Q, G, {PunctuationPolicy::none(), true});
    EXPECT_NEAR(ab.precision, ba.recall, 1e-9);
    EXPECT_NEAR(ab.recall, ba.precision, 1e-9);
    EXPECT_NEAR(ab.f1, ba.f1, 1e-9);

    // Add one gold bracket the prediction lacks, then one bogus bracket.
    Counts base{matched_count(gb, qb), gb.size(), qb.size()};
    if (base.matched < gb.size()) {
      Counts plus = base;
      ++plus.matched;
      ++plus.pred;
      EXPECT_GE(plus.f1(), base.f1() - 1e-12);
    }
    Counts bogus = base;
    ++bogus.pred;
    EXPECT_LE(bogus.precision(), base.precision() + 1e-12);
  }
}

TEST(EvalProperties, MetricsWithinBounds) {
  for (std::size_t m = 0; m <= 5; ++m)
    for (std::size_t g = m; g <= 6; ++g)
      for (std::size_t p = m; p <= 6; ++p) {
        const Counts c{m, g, p};
        for (double v : {c.precision(), c.recall(), c.f1()}) {
          EXPECT_GE(v, 0.0);
          EXPECT_LE(v, 100.0);
        }
      }
}
