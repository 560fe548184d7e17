#pragma once

// Transition sequences <-> surface token sequences.
//
//   Shift      SH         Reduce       RE
//   Shift#k    SH#k       Reduce#k-X   RE#k-X
//   NT-X       NT-X       Swap / #k    SW / SW#k
//
// Lexicalized linearizations write every Shift and Shift#k as the word it
// moves. Decoding resolves a word token to its first occurrence in the
// current buffer, which is lossy when a Shift#k targets a repeated word.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "discoseq/evalsuite.hpp"
#include "discoseq/oracle.hpp"
#include "discoseq/transition.hpp"
#include "discoseq/treebank.hpp"

namespace discoseq {

using TokenSequence = std::vector<std::string>;

struct LinearizationSpec {
  SystemSpec system;
  bool lexicalized = false;
};

std::string action_token(const Transition& t);
// Parses an action token; nullopt for anything else (including words).
std::optional<Transition> parse_action_token(std::string_view token);

// Throws IllegalTransition if the sequence cannot be executed strictly on
// the sentence (the final state need not be terminal).
TokenSequence to_tokens(const TransitionSeq& transitions, const LinearizationSpec& spec,
                        const Sentence& sentence);

// Strict mode throws UnknownToken, WordNotInBuffer, or (lexicalized only,
// where decoding simulates the parser) IllegalTransition. Repair mode never
// throws: unrecognized tokens are dropped, except that in lexicalized mode a
// token that does not look like an action becomes a Shift of the buffer
// front.
TransitionSeq from_tokens(const TokenSequence& tokens, const Sentence& sentence,
                          const LinearizationSpec& spec, ExecMode mode);

TokenSequence split_tokens(std::string_view text);
std::string join_tokens(const TokenSequence& tokens);

// Gold tree -> tokens (oracle + to_tokens).
TokenSequence linearize(const ConstituentTree& tree, const LinearizationSpec& spec);

// Tokens -> tree. Strict decoding and execution; in repair mode both steps
// are total.
ConstituentTree delinearize(const TokenSequence& tokens, const Sentence& sentence,
                            const LinearizationSpec& spec, ExecMode mode);

class Vocab {
 public:
  // Frequency descending, then lexicographic.
  const std::vector<std::pair<std::string, std::size_t>>& entries() const { return entries_; }
  std::vector<std::string> action_tokens() const;
  std::size_t size() const { return entries_.size(); }
  bool contains(std::string_view token) const;

 private:
  friend Vocab build_vocab(const std::vector<TokenSequence>&, const LinearizationSpec&);
  std::vector<std::pair<std::string, std::size_t>> entries_;
};

// Counts every action token. Word tokens of lexicalized sequences are not
// part of the vocabulary.
Vocab build_vocab(const std::vector<TokenSequence>& corpus, const LinearizationSpec& spec);

// Upper bound on F1 reachable through the encoding: oracle, tokens,
// decoding and execution, scored against the gold trees. Falls back to
// repair decoding when strict decoding fails.
EvalReport lossiness_report(const Treebank& gold, const LinearizationSpec& spec,
                            const EvalOptions& options);

// One line of a linearized corpus file: {"id", "words", "tokens"}.
struct CorpusRecord {
  std::string id;
  std::string words;   // space-joined
  std::string tokens;  // space-joined
};

std::string write_record(const CorpusRecord& record);  // no trailing newline
// Throws FormatError.
CorpusRecord parse_record(std::string_view line);

}  // namespace discoseq
