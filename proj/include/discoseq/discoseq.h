#ifndef DISCOSEQ_DISCOSEQ_H
#define DISCOSEQ_DISCOSEQ_H

/*
 * C interface of the discoseq shared library.
 *
 * Objects are opaque handles created by ds_*_new / ds_*_read / ds_*_parse
 * and released by the matching ds_*_free. Strings returned through char**
 * out-parameters are owned by the caller and released with ds_string_free;
 * const char* results borrow from the handle they were read from.
 *
 * Every fallible call returns a ds_status. On failure ds_last_error()
 * describes the problem; the message is per thread and valid until the next
 * failing call on that thread. All functions are safe to call concurrently
 * on distinct handles, and on the same handle for read-only calls.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(DISCOSEQ_BUILDING)
#    define DISCOSEQ_API __declspec(dllexport)
#  else
#    define DISCOSEQ_API __declspec(dllimport)
#  endif
#else
#  define DISCOSEQ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ds_status {
  DS_OK = 0,
  DS_ERR_ARGUMENT = 1,        /* null handle, out-of-range enum or index */
  DS_ERR_FORMAT = 2,          /* malformed treebank text or record */
  DS_ERR_PRECONDITION = 3,    /* operation outside its contract */
  DS_ERR_ILLEGAL_TRANSITION = 4,
  DS_ERR_NON_TERMINAL = 5,    /* sequence ended before a single tree was built */
  DS_ERR_UNKNOWN_TOKEN = 6,
  DS_ERR_WORD_NOT_IN_BUFFER = 7,
  DS_ERR_MISMATCH = 8,        /* gold/pred ids or words differ */
  DS_ERR_IO = 9,
  DS_ERR_INTERNAL = 10
} ds_status;

typedef enum ds_format { DS_FORMAT_PTB = 0, DS_FORMAT_DISCBRACKET = 1, DS_FORMAT_EXPORT = 2 } ds_format;
typedef enum ds_base { DS_BASE_TOPDOWN = 0, DS_BASE_BOTTOMUP = 1, DS_BASE_INORDER = 2 } ds_base;
typedef enum ds_disc { DS_DISC_NONE = 0, DS_DISC_SWAP = 1, DS_DISC_SWAPK = 2, DS_DISC_SHIFTK = 3 } ds_disc;
typedef enum ds_mode { DS_MODE_STRICT = 0, DS_MODE_REPAIR = 1 } ds_mode;

typedef enum ds_metric {
  DS_METRIC_PRECISION = 0,
  DS_METRIC_RECALL,
  DS_METRIC_F1,
  DS_METRIC_DISCO_PRECISION,
  DS_METRIC_DISCO_RECALL,
  DS_METRIC_DISCO_F1,
  DS_METRIC_EXACT_MATCH
} ds_metric;

typedef struct ds_spec {
  ds_base base;
  ds_disc disc;
  int lexicalized;
} ds_spec;

typedef struct ds_random_params {
  size_t n_words;
  size_t max_arity;
  double discontinuity_rate;
  size_t max_gap_degree;
  size_t vocab_size; /* 0: distinct words */
} ds_random_params;

typedef struct ds_tree ds_tree;
typedef struct ds_treebank ds_treebank;
typedef struct ds_punct ds_punct;
typedef struct ds_report ds_report;
typedef struct ds_vocab ds_vocab;

typedef struct ds_eval_options {
  const ds_punct* punct; /* NULL: default punctuation set */
  int exclude_root;
} ds_eval_options;

DISCOSEQ_API const char* ds_version(void);
DISCOSEQ_API const char* ds_last_error(void);
DISCOSEQ_API const char* ds_status_name(ds_status status);
DISCOSEQ_API void ds_string_free(char* s);

/* Trees */
DISCOSEQ_API ds_status ds_tree_parse(const char* text, ds_format format, int strip_preterminals,
                                     ds_tree** out);
DISCOSEQ_API ds_status ds_tree_write(const ds_tree* tree, ds_format format, char** out);
DISCOSEQ_API ds_status ds_tree_random(uint64_t seed, const ds_random_params* params, ds_tree** out);
DISCOSEQ_API ds_status ds_tree_strip_preterminals(const ds_tree* tree, ds_tree** out);
DISCOSEQ_API void ds_tree_free(ds_tree* tree);
DISCOSEQ_API size_t ds_tree_num_words(const ds_tree* tree);
DISCOSEQ_API const char* ds_tree_word(const ds_tree* tree, size_t index);
DISCOSEQ_API int ds_tree_is_continuous(const ds_tree* tree);
DISCOSEQ_API int ds_tree_equal(const ds_tree* a, const ds_tree* b);
/* Writes ds_tree_num_words() positions into perm. */
DISCOSEQ_API ds_status ds_tree_canonical_order(const ds_tree* tree, size_t* perm, size_t capacity);

/* Linearization. Token and word strings are single-space separated. */
DISCOSEQ_API ds_status ds_linearize(const ds_tree* tree, const ds_spec* spec, char** tokens);
DISCOSEQ_API ds_status ds_delinearize(const char* words, const char* tokens, const ds_spec* spec,
                                      ds_mode mode, ds_tree** out);

/* Treebanks */
DISCOSEQ_API ds_treebank* ds_treebank_new(void);
DISCOSEQ_API ds_status ds_treebank_read(const char* text, ds_format format, int strip_preterminals,
                                        ds_treebank** out);
DISCOSEQ_API ds_status ds_treebank_append(ds_treebank* treebank, const char* id, const ds_tree* tree);
DISCOSEQ_API size_t ds_treebank_size(const ds_treebank* treebank);
DISCOSEQ_API const char* ds_treebank_id(const ds_treebank* treebank, size_t index);
DISCOSEQ_API const ds_tree* ds_treebank_tree(const ds_treebank* treebank, size_t index);
DISCOSEQ_API ds_status ds_treebank_write(const ds_treebank* treebank, ds_format format, char** out);
DISCOSEQ_API void ds_treebank_free(ds_treebank* treebank);

/* Punctuation policies */
DISCOSEQ_API ds_punct* ds_punct_default(void);
DISCOSEQ_API ds_punct* ds_punct_none(void);
DISCOSEQ_API ds_status ds_punct_from_tokens(const char* const* tokens, size_t count, ds_punct** out);
DISCOSEQ_API void ds_punct_free(ds_punct* punct);

/* Evaluation */
DISCOSEQ_API ds_status ds_score(const ds_treebank* gold, const ds_treebank* pred,
                                const ds_eval_options* options, ds_report** out);
DISCOSEQ_API ds_status ds_lossiness(const ds_treebank* gold, const ds_spec* spec,
                                    const ds_eval_options* options, ds_report** out);
/* Returns 1 and stores the value if the metric is present, 0 if absent. */
DISCOSEQ_API int ds_report_metric(const ds_report* report, ds_metric metric, double* value);
DISCOSEQ_API size_t ds_report_num_sentences(const ds_report* report);
DISCOSEQ_API ds_status ds_report_json(const ds_report* report, char** out);
DISCOSEQ_API ds_status ds_report_text(const ds_report* report, char** out);
DISCOSEQ_API void ds_report_free(ds_report* report);

/* Span/sentence-length and per-label tables. Edge arrays hold bucket lower
 * bounds; pass NULL/0 for the defaults. */
DISCOSEQ_API ds_status ds_breakdown(const ds_treebank* gold, const ds_treebank* pred,
                                    const ds_eval_options* options, const size_t* span_edges,
                                    size_t n_span_edges, const size_t* sentence_edges,
                                    size_t n_sentence_edges, char** json, char** text);

/* Vocabulary over token sequences (one space-joined sequence per entry). */
DISCOSEQ_API ds_status ds_vocab_build(const char* const* sequences, size_t count, const ds_spec* spec,
                                      ds_vocab** out);
DISCOSEQ_API size_t ds_vocab_size(const ds_vocab* vocab);
DISCOSEQ_API const char* ds_vocab_token(const ds_vocab* vocab, size_t index);
DISCOSEQ_API size_t ds_vocab_count(const ds_vocab* vocab, size_t index);
DISCOSEQ_API void ds_vocab_free(ds_vocab* vocab);

/* Linearized corpus records: one JSON object per line with string fields
 * "id", "words", "tokens". Missing words/tokens read as empty strings. */
DISCOSEQ_API ds_status ds_record_parse(const char* line, char** id, char** words, char** tokens);
DISCOSEQ_API ds_status ds_record_write(const char* id, const char* words, const char* tokens,
                                       char** out);

#ifdef __cplusplus
}
#endif

#endif /* DISCOSEQ_DISCOSEQ_H */
