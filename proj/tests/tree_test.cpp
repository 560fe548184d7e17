#include <gtest/gtest.h>

#include <numeric>

#include "discoseq/bracketed.hpp"
#include "discoseq/error.hpp"
#include "discoseq/random_tree.hpp"
#include "discoseq/treebank.hpp"
#include "test_util.hpp"

using namespace discoseq;
using testutil::question;

namespace {

std::vector<Constituent> sorted_constituents(const ConstituentTree& t) {
  auto c = t.constituents();
  std::sort(c.begin(), c.end());
  return c;
}

}  // namespace

TEST(Sentence, RejectsEmptyAndSpacedWords) {
  EXPECT_THROW(Sentence(std::vector<std::string>{}), PreconditionError);
  EXPECT_THROW(Sentence({"a", ""}), PreconditionError);
  EXPECT_THROW(Sentence({"a b"}), PreconditionError);
  EXPECT_EQ(Sentence({"a", "b"}).joined(), "a b");
}

TEST(ConstituentTree, ValidatesPositions) {
  Sentence s({"a", "b"});
  EXPECT_THROW(ConstituentTree(s, Node::internal("S", {Node::leaf(0), Node::leaf(0)})), PreconditionError);
  EXPECT_THROW(ConstituentTree(s, Node::internal("S", {Node::leaf(0)})), PreconditionError);
  EXPECT_THROW(ConstituentTree(s, Node::internal("S", {Node::leaf(0), Node::leaf(2)})), PreconditionError);
  EXPECT_THROW(ConstituentTree(s, Node::leaf(0)), PreconditionError);
  EXPECT_THROW(ConstituentTree(s, Node::internal("", {Node::leaf(0), Node::leaf(1)})), PreconditionError);
  EXPECT_THROW(ConstituentTree(s, Node::internal("S", {Node::leaf(0), Node::leaf(1), Node::internal("X", {})})),
               PreconditionError);
  EXPECT_NO_THROW(ConstituentTree(s, Node::internal("S", {Node::leaf(1), Node::leaf(0)})));
}

TEST(ParseBracketed, QuestionDiscbracket) {
  const auto t = question();
  EXPECT_EQ(t.sentence().words(), (std::vector<std::string>{"What", "should", "I", "do", "?"}));
  const std::vector<Constituent> expected{
      {"SBARQ", {0, 1, 2, 3, 4}}, {"SQ", {0, 1, 2, 3}}, {"VP", {0, 3}}, {"WHNP", {0}}};
  EXPECT_EQ(t.constituents(), expected);
}

TEST(ParseBracketed, MinimalPtbTree) {
  const auto t = parse_bracketed("(X w)", TreeFormat::Ptb);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t.root().label(), "X");
  ASSERT_EQ(t.root().children().size(), 1u);
  EXPECT_TRUE(t.root().children()[0].is_leaf());
}

TEST(ParseBracketed, PtbPositionsLeftToRight) {
  const auto t = parse_bracketed("(S (NP w0) (VP w1 w2))", TreeFormat::Ptb);
  const std::vector<Constituent> expected{{"NP", {0}}, {"S", {0, 1, 2}}, {"VP", {1, 2}}};
  EXPECT_EQ(sorted_constituents(t), expected);
}

TEST(ParseBracketed, Errors) {
  EXPECT_THROW(parse_bracketed("(S (NP a) (VP b)", TreeFormat::Ptb), FormatError);
  EXPECT_THROW(parse_bracketed("(S (NP a)) (VP b))", TreeFormat::Ptb), FormatError);
  EXPECT_THROW(parse_bracketed("(S (NP) a)", TreeFormat::Ptb), FormatError);
  EXPECT_THROW(parse_bracketed("(S 0=a 0=b)", TreeFormat::Discbracket), FormatError);
  EXPECT_THROW(parse_bracketed("(S 0=a 2=b)", TreeFormat::Discbracket), FormatError);
  EXPECT_THROW(parse_bracketed("(S a b)", TreeFormat::Discbracket), FormatError);
  EXPECT_THROW(parse_bracketed("", TreeFormat::Ptb), FormatError);
}

TEST(ParseBracketed, WrapperBrackets) {
  const auto t = parse_bracketed("( (S (NP a) (VP b)) )", TreeFormat::Ptb);
  EXPECT_EQ(t.root().label(), "S");
  const auto multi = parse_bracketed("( (S a) (T b) )", TreeFormat::Ptb);
  EXPECT_EQ(multi.root().label(), kSyntheticRoot);
  EXPECT_EQ(multi.root().children().size(), 2u);
}

TEST(ParseBracketed, WordWithEqualsSignInDiscbracket) {
  const auto t = parse_bracketed("(S 0=a=b 1=c)", TreeFormat::Discbracket);
  EXPECT_EQ(t.sentence()[0], "a=b");
}

TEST(WriteBracketed, ContinuousPtb) {
  const auto t = parse_bracketed("(S (NP w0) (VP w1 w2))", TreeFormat::Ptb);
  EXPECT_EQ(write_bracketed(t, TreeFormat::Ptb), "(S (NP w0) (VP w1 w2))");
  EXPECT_EQ(write_bracketed(t, TreeFormat::Discbracket), "(S (NP 0=w0) (VP 1=w1 2=w2))");
}

TEST(WriteBracketed, QuestionRoundTrip) {
  const auto t = question();
  const auto text = write_bracketed(t, TreeFormat::Discbracket);
  EXPECT_EQ(text, testutil::kQuestion);
  EXPECT_EQ(parse_bracketed(text, TreeFormat::Discbracket), t);
}

TEST(WriteBracketed, DiscontinuousPtbIsAnError) {
  EXPECT_THROW(write_bracketed(question(), TreeFormat::Ptb), PreconditionError);
}

TEST(StripPreterminals, TagOverWord) {
  const auto t = strip_preterminals(parse_bracketed("(WHNP (WP What))", TreeFormat::Ptb));
  ASSERT_EQ(t.root().children().size(), 1u);
  EXPECT_EQ(t.root().label(), "WHNP");
  EXPECT_TRUE(t.root().children()[0].is_leaf());
}

TEST(StripPreterminals, TaggedSentence) {
  const auto t = strip_preterminals(
      parse_bracketed("(S (NP (DT the) (NN cat)) (VP (VB ran)))", TreeFormat::Ptb));
  EXPECT_EQ(write_bracketed(t, TreeFormat::Ptb), "(S (NP the cat) (VP ran))");
}

TEST(StripPreterminals, UntaggedTreeUnchanged) {
  // WHNP here is a phrase over a bare word, not a tag: other words carry no tag.
  const auto t = question();
  EXPECT_EQ(write_bracketed(strip_preterminals(t), TreeFormat::Discbracket), testutil::kQuestion);
}

TEST(StripPreterminals, Idempotent) {
  const auto once = strip_preterminals(
      parse_bracketed("(S (NP (DT the) (NN cat)) (VP (VB ran)))", TreeFormat::Ptb));
  const auto twice = strip_preterminals(once);
  EXPECT_EQ(write_bracketed(once, TreeFormat::Ptb), write_bracketed(twice, TreeFormat::Ptb));
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto t = random_tree(seed, {8, 3, 0.3, 2, 0});
    EXPECT_EQ(strip_preterminals(t), t);
    EXPECT_EQ(strip_preterminals(strip_preterminals(t)), strip_preterminals(t));
  }
}

TEST(Continuity, Examples) {
  EXPECT_FALSE(is_continuous(question()));
  EXPECT_TRUE(is_continuous(parse_bracketed("(S (NP w0) (VP w1 w2))", TreeFormat::Ptb)));
  EXPECT_TRUE(is_continuous(parse_bracketed("(X w)", TreeFormat::Ptb)));
  EXPECT_EQ(gap_degree({0, 3}), 1u);
  EXPECT_EQ(gap_degree({0, 2, 4}), 2u);
  EXPECT_EQ(gap_degree({1, 2, 3}), 0u);
  EXPECT_TRUE(is_contiguous({4}));
}

TEST(CanonicalOrder, Question) {
  EXPECT_EQ(canonical_order(question()), (std::vector<Position>{0, 3, 1, 2, 4}));
}

TEST(CanonicalOrder, ContinuousIsIdentity) {
  EXPECT_EQ(canonical_order(parse_bracketed("(S (NP w0) (VP w1 w2))", TreeFormat::Ptb)),
            (std::vector<Position>{0, 1, 2}));
}

TEST(CanonicalOrder, SortsChildrenByMinimumYield) {
  const ConstituentTree t(Sentence({"b", "a"}), Node::internal("X", {Node::leaf(1), Node::leaf(0)}));
  EXPECT_EQ(canonical_order(t), (std::vector<Position>{0, 1}));
  EXPECT_EQ(t.leaf_order(), (std::vector<Position>{1, 0}));
}

TEST(CanonicalOrder, PermutedTreeIsContinuous) {
  const auto t = question();
  const auto c = canonicalize(t);
  EXPECT_TRUE(is_continuous(c));
  EXPECT_EQ(c.sentence().words(), (std::vector<std::string>{"What", "do", "should", "I", "?"}));
  EXPECT_EQ(write_bracketed(c, TreeFormat::Ptb), "(SBARQ (SQ (VP (WHNP What) do) should I) ?)");
}

TEST(CanonicalOrder, PermuteRejectsNonPermutations) {
  EXPECT_THROW(permute(question(), {0, 0, 1, 2, 3}), PreconditionError);
  EXPECT_THROW(permute(question(), {0, 1}), PreconditionError);
}

TEST(RandomTree, SingleWord) {
  const auto t = random_tree(7, {1, 3, 0.0, 2, 0});
  ASSERT_EQ(t.size(), 1u);
  EXPECT_FALSE(t.root().is_leaf());
  EXPECT_EQ(t.constituents().front().yield, (Yield{0}));
}

TEST(RandomTree, Deterministic) {
  for (std::uint64_t seed : {1u, 7u, 99u}) {
    RandomTreeParams p{25, 4, 0.5, 2, 5};
    EXPECT_EQ(random_tree(seed, p), random_tree(seed, p));
  }
}

TEST(RandomTree, ZeroRateIsContinuous) {
  for (std::uint64_t seed = 0; seed < 300; ++seed)
    EXPECT_TRUE(is_continuous(random_tree(seed, {1 + seed % 30, 3, 0.0, 2, 0})));
}

TEST(RandomTree, GapDegreeBounded) {
  std::size_t discontinuous = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    for (std::size_t max_gap : {1u, 2u, 3u}) {
      const auto t = random_tree(seed, {3 + seed % 30, 3, 1.0, max_gap, 0});
      if (!is_continuous(t)) ++discontinuous;
      for (const auto& c : t.constituents()) EXPECT_LE(gap_degree(c.yield), max_gap);
    }
  }
  EXPECT_GT(discontinuous, 500u);
}

TEST(RandomTree, Vocabulary) {
  const auto t = random_tree(3, {30, 3, 0.0, 2, 2});
  std::set<std::string> words(t.sentence().words().begin(), t.sentence().words().end());
  EXPECT_LE(words.size(), 2u);
}

// Generated-tree properties of the tree module.
TEST(TreeProperties, WriteParseRoundTrip) {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto t = random_tree(seed, {1 + seed % 40, 2 + seed % 4, 0.4, 1 + seed % 3, seed % 3 ? 0u : 4u});
    EXPECT_EQ(parse_bracketed(write_bracketed(t, TreeFormat::Discbracket), TreeFormat::Discbracket), t);
    if (is_continuous(t))
      EXPECT_EQ(parse_bracketed(write_bracketed(t, TreeFormat::Ptb), TreeFormat::Ptb), t);
  }
}

TEST(TreeProperties, CanonicalOrderContinuity) {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto t = random_tree(seed, {1 + seed % 40, 3, 0.5, 2, 0});
    const auto perm = canonical_order(t);
    std::vector<Position> identity(t.size());
    std::iota(identity.begin(), identity.end(), 0);
    EXPECT_EQ(is_continuous(t), perm == identity) << write_bracketed(t, TreeFormat::Discbracket);
    EXPECT_TRUE(is_continuous(canonicalize(t)));
  }
}

TEST(PunctuationPolicy, DefaultSet) {
  const auto p = PunctuationPolicy::default_set();
  for (const char* w : {".", ",", ":", "``", "''", "-LRB-", "-RRB-", "?", "!"}) EXPECT_TRUE(p.is_punct(w));
  EXPECT_FALSE(p.is_punct(";"));
  EXPECT_FALSE(PunctuationPolicy::none().is_punct("."));
  EXPECT_TRUE(PunctuationPolicy::tokens({";"}).is_punct(";"));
}

TEST(Treebank, ReadsOneTreePerBracket) {
  const auto tb = read_treebank("(S (NP 0=a) 1=b)\n\n(T 0=c)\n", {TreeFormat::Discbracket, true});
  ASSERT_EQ(tb.size(), 2u);
  EXPECT_EQ(tb[0].id, "1");
  EXPECT_EQ(tb[1].id, "2");
  EXPECT_EQ(write_treebank(tb, TreeFormat::Discbracket), "(S (NP 0=a) 1=b)\n(T 0=c)\n");
}

TEST(Treebank, EmptyInput) {
  EXPECT_TRUE(read_treebank("", {}).empty());
  EXPECT_TRUE(read_treebank("  \n", {}).empty());
}

TEST(Treebank, ErrorNamesTreeAndLine) {
  try {
    read_treebank("(S 0=a)\n(S 0=a 0=b)\n", {});
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("tree 2 (line 2)"), std::string::npos) << e.what();
  }
}

TEST(Treebank, StripsTagsByDefault) {
  const auto tagged = "(S (NP (DT the) (NN cat)) (VP (VB ran)))";
  EXPECT_EQ(write_bracketed(read_treebank(tagged, {TreeFormat::Ptb, true})[0].tree, TreeFormat::Ptb),
            "(S (NP the cat) (VP ran))");
  EXPECT_EQ(write_bracketed(read_treebank(tagged, {TreeFormat::Ptb, false})[0].tree, TreeFormat::Ptb),
            tagged);
}

TEST(ExportReader, Format3) {
  const char* text =
      "%% a comment\n"
      "#BOS 17\n"
      "What\tPWS\t--\t--\t500\n"
      "should\tVMFIN\t--\t--\t502\n"
      "I\tPPER\t--\t--\t502\n"
      "do\tVVINF\t--\t--\t501\n"
      "?\t$.\t--\t--\t503\n"
      "#500\tWHNP\t--\t--\t501\n"
      "#501\tVP\t--\t--\t502\n"
      "#502\tSQ\t--\t--\t503\n"
      "#503\tSBARQ\t--\t--\t0\n"
      "#EOS 17\n";
  const auto tb = read_treebank(text, {TreeFormat::Export, true});
  ASSERT_EQ(tb.size(), 1u);
  EXPECT_EQ(tb[0].id, "17");
  EXPECT_EQ(tb[0].tree, question());
}

TEST(ExportReader, Format4WithRootAttachedPunctuation) {
  const char* text =
      "#FORMAT 4\n"
      "#BOT ORIGIN\n0 x\n#EOT ORIGIN\n"
      "#BOS 1 2 3\n"
      "Er\ter\tPPER\t--\tSB\t500\n"
      "kam\tkommen\tVVFIN\t--\tHD\t500\n"
      ".\t--\t$.\t--\t--\t0\n"
      "#500\t--\tS\t--\t--\t0\n"
      "#EOS 1\n";
  const auto tb = read_export(text);
  ASSERT_EQ(tb.size(), 1u);
  EXPECT_EQ(write_bracketed(tb[0].tree, TreeFormat::Discbracket), "(ROOT (S 0=Er 1=kam) 2=.)");
}

TEST(ExportReader, Errors) {
  EXPECT_THROW(read_export("#BOS 1\na\tX\t--\t--\t500\n#EOS 1\n"), FormatError);
  EXPECT_THROW(read_export("#BOS 1\na\tX\t--\t--\t0\n"), FormatError);
  EXPECT_THROW(read_export("a\tX\t--\t--\t0\n"), FormatError);
  EXPECT_THROW(read_export("#BOS 1\na\tX\t--\t--\tzz\n#EOS 1\n"), FormatError);
  EXPECT_THROW(read_export("#BOS 1\na\tX\t--\t--\t0\n#500\tS\t--\t--\t0\n#EOS 1\n"), FormatError);
}
