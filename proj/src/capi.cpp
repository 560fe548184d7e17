#include "discoseq/discoseq.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <set>
#include <string>
#include <vector>

#include "discoseq/bracketed.hpp"
#include "discoseq/error.hpp"
#include "discoseq/evalsuite.hpp"
#include "discoseq/lineariz.hpp"
#include "discoseq/random_tree.hpp"
#include "discoseq/treebank.hpp"

struct ds_tree {
  discoseq::ConstituentTree tree;
};

struct ds_treebank {
  std::vector<std::string> ids;
  std::vector<ds_tree> trees;

  discoseq::Treebank entries() const {
    discoseq::Treebank out;
    out.reserve(trees.size());
    for (std::size_t i = 0; i < trees.size(); ++i) out.push_back({ids[i], trees[i].tree});
    return out;
  }
};

struct ds_punct {
  discoseq::PunctuationPolicy policy;
};

struct ds_report {
  discoseq::EvalReport report;
};

struct ds_vocab {
  discoseq::Vocab vocab;
};

namespace {

using namespace discoseq;

thread_local std::string g_last_error;

ds_status fail(ds_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Runs `body`, translating library exceptions into status codes.
template <typename Body>
ds_status guarded(Body&& body) {
  try {
    body();
    return DS_OK;
  } catch (const FormatError& e) {
    return fail(DS_ERR_FORMAT, e.what());
  } catch (const IllegalTransition& e) {
    return fail(DS_ERR_ILLEGAL_TRANSITION, e.what());
  } catch (const NonTerminalState& e) {
    return fail(DS_ERR_NON_TERMINAL, e.what());
  } catch (const UnknownToken& e) {
    return fail(DS_ERR_UNKNOWN_TOKEN, e.what());
  } catch (const WordNotInBuffer& e) {
    return fail(DS_ERR_WORD_NOT_IN_BUFFER, e.what());
  } catch (const MismatchError& e) {
    return fail(DS_ERR_MISMATCH, e.what());
  } catch (const PreconditionError& e) {
    return fail(DS_ERR_PRECONDITION, e.what());
  } catch (const std::bad_alloc&) {
    return fail(DS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(DS_ERR_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

bool valid_format(ds_format f) { return f >= DS_FORMAT_PTB && f <= DS_FORMAT_EXPORT; }

TreeFormat to_format(ds_format f) {
  switch (f) {
    case DS_FORMAT_PTB: return TreeFormat::Ptb;
    case DS_FORMAT_DISCBRACKET: return TreeFormat::Discbracket;
    case DS_FORMAT_EXPORT: return TreeFormat::Export;
  }
  return TreeFormat::Discbracket;
}

bool to_spec(const ds_spec* in, LinearizationSpec& out) {
  if (!in) return false;
  if (in->base < DS_BASE_TOPDOWN || in->base > DS_BASE_INORDER) return false;
  if (in->disc < DS_DISC_NONE || in->disc > DS_DISC_SHIFTK) return false;
  static constexpr BaseSystem bases[] = {BaseSystem::TopDown, BaseSystem::BottomUp,
                                         BaseSystem::InOrder};
  static constexpr DiscMechanism discs[] = {DiscMechanism::None, DiscMechanism::Swap,
                                            DiscMechanism::SwapK, DiscMechanism::ShiftK};
  out.system = {bases[in->base], discs[in->disc]};
  out.lexicalized = in->lexicalized != 0;
  return out.system.valid();
}

EvalOptions to_options(const ds_eval_options* in) {
  EvalOptions out;
  if (in) {
    if (in->punct) out.punctuation = in->punct->policy;
    out.exclude_root = in->exclude_root != 0;
  }
  return out;
}

#define DS_REQUIRE(cond, what) \
  if (!(cond)) return fail(DS_ERR_ARGUMENT, what)

}  // namespace

extern "C" {

const char* ds_version(void) { return "1.0.0"; }

const char* ds_last_error(void) { return g_last_error.c_str(); }

const char* ds_status_name(ds_status status) {
  switch (status) {
    case DS_OK: return "ok";
    case DS_ERR_ARGUMENT: return "invalid argument";
    case DS_ERR_FORMAT: return "format error";
    case DS_ERR_PRECONDITION: return "precondition violated";
    case DS_ERR_ILLEGAL_TRANSITION: return "illegal transition";
    case DS_ERR_NON_TERMINAL: return "non-terminal final state";
    case DS_ERR_UNKNOWN_TOKEN: return "unknown token";
    case DS_ERR_WORD_NOT_IN_BUFFER: return "word not in buffer";
    case DS_ERR_MISMATCH: return "corpus mismatch";
    case DS_ERR_IO: return "I/O error";
    case DS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void ds_string_free(char* s) { std::free(s); }

ds_status ds_tree_parse(const char* text, ds_format format, int strip_preterminals, ds_tree** out) {
  DS_REQUIRE(text && out, "null argument");
  DS_REQUIRE(valid_format(format), "invalid format");
  DS_REQUIRE(format != DS_FORMAT_EXPORT, "use ds_treebank_read for export text");
  return guarded([&] {
    ConstituentTree tree = parse_bracketed(text, to_format(format));
    if (strip_preterminals) tree = discoseq::strip_preterminals(tree);
    *out = new ds_tree{std::move(tree)};
  });
}

ds_status ds_tree_write(const ds_tree* tree, ds_format format, char** out) {
  DS_REQUIRE(tree && out, "null argument");
  DS_REQUIRE(valid_format(format), "invalid format");
  return guarded([&] { *out = dup_string(write_bracketed(tree->tree, to_format(format))); });
}

ds_status ds_tree_random(uint64_t seed, const ds_random_params* params, ds_tree** out) {
  DS_REQUIRE(params && out, "null argument");
  return guarded([&] {
    RandomTreeParams p{params->n_words, params->max_arity, params->discontinuity_rate,
                       params->max_gap_degree, params->vocab_size};
    *out = new ds_tree{random_tree(seed, p)};
  });
}

ds_status ds_tree_strip_preterminals(const ds_tree* tree, ds_tree** out) {
  DS_REQUIRE(tree && out, "null argument");
  return guarded([&] { *out = new ds_tree{discoseq::strip_preterminals(tree->tree)}; });
}

void ds_tree_free(ds_tree* tree) { delete tree; }

size_t ds_tree_num_words(const ds_tree* tree) { return tree ? tree->tree.size() : 0; }

const char* ds_tree_word(const ds_tree* tree, size_t index) {
  if (!tree || index >= tree->tree.size()) return nullptr;
  return tree->tree.sentence()[index].c_str();
}

int ds_tree_is_continuous(const ds_tree* tree) {
  return tree && discoseq::is_continuous(tree->tree) ? 1 : 0;
}

int ds_tree_equal(const ds_tree* a, const ds_tree* b) {
  return a && b && a->tree == b->tree ? 1 : 0;
}

ds_status ds_tree_canonical_order(const ds_tree* tree, size_t* perm, size_t capacity) {
  DS_REQUIRE(tree && perm, "null argument");
  DS_REQUIRE(capacity >= tree->tree.size(), "permutation buffer too small");
  return guarded([&] {
    const auto order = canonical_order(tree->tree);
    for (std::size_t i = 0; i < order.size(); ++i) perm[i] = order[i];
  });
}

ds_status ds_linearize(const ds_tree* tree, const ds_spec* spec, char** tokens) {
  LinearizationSpec s;
  DS_REQUIRE(tree && tokens, "null argument");
  DS_REQUIRE(to_spec(spec, s), "invalid linearization spec");
  return guarded([&] { *tokens = dup_string(join_tokens(linearize(tree->tree, s))); });
}

ds_status ds_delinearize(const char* words, const char* tokens, const ds_spec* spec, ds_mode mode,
                         ds_tree** out) {
  LinearizationSpec s;
  DS_REQUIRE(words && tokens && out, "null argument");
  DS_REQUIRE(to_spec(spec, s), "invalid linearization spec");
  DS_REQUIRE(mode == DS_MODE_STRICT || mode == DS_MODE_REPAIR, "invalid mode");
  return guarded([&] {
    const Sentence sentence(split_tokens(words));
    const ExecMode m = mode == DS_MODE_STRICT ? ExecMode::Strict : ExecMode::Repair;
    *out = new ds_tree{delinearize(split_tokens(tokens), sentence, s, m)};
  });
}

ds_treebank* ds_treebank_new(void) { return new (std::nothrow) ds_treebank{}; }

ds_status ds_treebank_read(const char* text, ds_format format, int strip_preterminals,
                           ds_treebank** out) {
  DS_REQUIRE(text && out, "null argument");
  DS_REQUIRE(valid_format(format), "invalid format");
  return guarded([&] {
    ReadOptions options{to_format(format), strip_preterminals != 0};
    auto* tb = new ds_treebank{};
    for (auto& entry : read_treebank(text, options)) {
      tb->ids.push_back(std::move(entry.id));
      tb->trees.push_back(ds_tree{std::move(entry.tree)});
    }
    *out = tb;
  });
}

ds_status ds_treebank_append(ds_treebank* treebank, const char* id, const ds_tree* tree) {
  DS_REQUIRE(treebank && id && tree, "null argument");
  return guarded([&] {
    treebank->ids.emplace_back(id);
    treebank->trees.push_back(*tree);
  });
}

size_t ds_treebank_size(const ds_treebank* treebank) {
  return treebank ? treebank->trees.size() : 0;
}

const char* ds_treebank_id(const ds_treebank* treebank, size_t index) {
  if (!treebank || index >= treebank->ids.size()) return nullptr;
  return treebank->ids[index].c_str();
}

const ds_tree* ds_treebank_tree(const ds_treebank* treebank, size_t index) {
  if (!treebank || index >= treebank->trees.size()) return nullptr;
  return &treebank->trees[index];
}

ds_status ds_treebank_write(const ds_treebank* treebank, ds_format format, char** out) {
  DS_REQUIRE(treebank && out, "null argument");
  DS_REQUIRE(valid_format(format), "invalid format");
  return guarded([&] { *out = dup_string(write_treebank(treebank->entries(), to_format(format))); });
}

void ds_treebank_free(ds_treebank* treebank) { delete treebank; }

ds_punct* ds_punct_default(void) {
  return new (std::nothrow) ds_punct{PunctuationPolicy::default_set()};
}

ds_punct* ds_punct_none(void) { return new (std::nothrow) ds_punct{PunctuationPolicy::none()}; }

ds_status ds_punct_from_tokens(const char* const* tokens, size_t count, ds_punct** out) {
  DS_REQUIRE(out && (tokens || count == 0), "null argument");
  return guarded([&] {
    std::set<std::string> set;
    for (size_t i = 0; i < count; ++i) {
      if (!tokens[i]) throw PreconditionError("null punctuation token");
      set.insert(tokens[i]);
    }
    *out = new ds_punct{PunctuationPolicy::tokens(std::move(set))};
  });
}

void ds_punct_free(ds_punct* punct) { delete punct; }

ds_status ds_score(const ds_treebank* gold, const ds_treebank* pred,
                   const ds_eval_options* options, ds_report** out) {
  DS_REQUIRE(gold && pred && out, "null argument");
  return guarded([&] {
    *out = new ds_report{score(gold->entries(), pred->entries(), to_options(options))};
  });
}

ds_status ds_lossiness(const ds_treebank* gold, const ds_spec* spec, const ds_eval_options* options,
                       ds_report** out) {
  LinearizationSpec s;
  DS_REQUIRE(gold && out, "null argument");
  DS_REQUIRE(to_spec(spec, s), "invalid linearization spec");
  return guarded([&] {
    *out = new ds_report{lossiness_report(gold->entries(), s, to_options(options))};
  });
}

int ds_report_metric(const ds_report* report, ds_metric metric, double* value) {
  if (!report || !value) return 0;
  const EvalReport& r = report->report;
  std::optional<double> v;
  switch (metric) {
    case DS_METRIC_PRECISION: v = r.precision; break;
    case DS_METRIC_RECALL: v = r.recall; break;
    case DS_METRIC_F1: v = r.f1; break;
    case DS_METRIC_DISCO_PRECISION: v = r.disco_precision; break;
    case DS_METRIC_DISCO_RECALL: v = r.disco_recall; break;
    case DS_METRIC_DISCO_F1: v = r.disco_f1; break;
    case DS_METRIC_EXACT_MATCH: v = r.exact_match; break;
  }
  if (!v) return 0;
  *value = *v;
  return 1;
}

size_t ds_report_num_sentences(const ds_report* report) {
  return report ? report->report.n_sentences : 0;
}

ds_status ds_report_json(const ds_report* report, char** out) {
  DS_REQUIRE(report && out, "null argument");
  return guarded([&] { *out = dup_string(report_json(report->report)); });
}

ds_status ds_report_text(const ds_report* report, char** out) {
  DS_REQUIRE(report && out, "null argument");
  return guarded([&] { *out = dup_string(report_text(report->report)); });
}

void ds_report_free(ds_report* report) { delete report; }

ds_status ds_breakdown(const ds_treebank* gold, const ds_treebank* pred,
                       const ds_eval_options* options, const size_t* span_edges,
                       size_t n_span_edges, const size_t* sentence_edges, size_t n_sentence_edges,
                       char** json, char** text) {
  DS_REQUIRE(gold && pred, "null argument");
  DS_REQUIRE(span_edges || n_span_edges == 0, "null span edges");
  DS_REQUIRE(sentence_edges || n_sentence_edges == 0, "null sentence edges");
  return guarded([&] {
    BucketEdges edges;
    auto take = [](const size_t* e, size_t n, std::vector<std::size_t>& dst) {
      if (n == 0) return;
      dst.assign(e, e + n);
      for (size_t i = 1; i < n; ++i)
        if (dst[i] <= dst[i - 1]) throw PreconditionError("bucket edges must increase");
    };
    take(span_edges, n_span_edges, edges.span_length);
    take(sentence_edges, n_sentence_edges, edges.sentence_length);
    const auto report = breakdown(gold->entries(), pred->entries(), to_options(options), edges);
    if (json) *json = dup_string(breakdown_json(report));
    if (text) *text = dup_string(breakdown_text(report));
  });
}

ds_status ds_vocab_build(const char* const* sequences, size_t count, const ds_spec* spec,
                         ds_vocab** out) {
  LinearizationSpec s;
  DS_REQUIRE(out && (sequences || count == 0), "null argument");
  DS_REQUIRE(to_spec(spec, s), "invalid linearization spec");
  return guarded([&] {
    std::vector<TokenSequence> corpus;
    corpus.reserve(count);
    for (size_t i = 0; i < count; ++i) corpus.push_back(split_tokens(sequences[i] ? sequences[i] : ""));
    *out = new ds_vocab{build_vocab(corpus, s)};
  });
}

size_t ds_vocab_size(const ds_vocab* vocab) { return vocab ? vocab->vocab.size() : 0; }

const char* ds_vocab_token(const ds_vocab* vocab, size_t index) {
  if (!vocab || index >= vocab->vocab.size()) return nullptr;
  return vocab->vocab.entries()[index].first.c_str();
}

size_t ds_vocab_count(const ds_vocab* vocab, size_t index) {
  if (!vocab || index >= vocab->vocab.size()) return 0;
  return vocab->vocab.entries()[index].second;
}

void ds_vocab_free(ds_vocab* vocab) { delete vocab; }

ds_status ds_record_parse(const char* line, char** id, char** words, char** tokens) {
  DS_REQUIRE(line && id && words && tokens, "null argument");
  return guarded([&] {
    const CorpusRecord r = parse_record(line);
    *id = dup_string(r.id);
    *words = dup_string(r.words);
    *tokens = dup_string(r.tokens);
  });
}

ds_status ds_record_write(const char* id, const char* words, const char* tokens, char** out) {
  DS_REQUIRE(id && words && tokens && out, "null argument");
  return guarded([&] { *out = dup_string(write_record({id, words, tokens})); });
}

}  // extern "C"
