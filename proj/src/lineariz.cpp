#include "discoseq/lineariz.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>

#include <json.hpp>

#include "discoseq/error.hpp"

namespace discoseq {

namespace {

// Non-negative decimal without leading zeros, so every action has exactly
// one surface form.
std::optional<std::size_t> parse_count(std::string_view s) {
  if (s.empty() || (s.size() > 1 && s[0] == '0')) return std::nullopt;
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

// Tokens that claim to be parameterized actions but failed to parse.
bool looks_like_action(std::string_view token) {
  return starts_with(token, "SH#") || starts_with(token, "SW#") || starts_with(token, "RE#") ||
         starts_with(token, "NT-");
}

std::optional<std::size_t> first_in_buffer(const ParserState& state, const Sentence& sentence,
                                           std::string_view word) {
  for (std::size_t i = 0; i < state.buffer.size(); ++i)
    if (sentence[state.buffer[i]] == word) return i;
  return std::nullopt;
}

}  // namespace

std::string action_token(const Transition& t) {
  switch (t.action) {
    case Action::Shift: return "SH";
    case Action::ShiftK: return "SH#" + std::to_string(t.k);
    case Action::NonTerminal: return "NT-" + t.label;
    case Action::Reduce: return "RE";
    case Action::ReduceK: return "RE#" + std::to_string(t.k) + "-" + t.label;
    case Action::Swap: return "SW";
    case Action::SwapK: return "SW#" + std::to_string(t.k);
  }
  return {};
}

std::optional<Transition> parse_action_token(std::string_view token) {
  if (token == "SH") return Transition::shift();
  if (token == "RE") return Transition::reduce();
  if (token == "SW") return Transition::swap();
  if (starts_with(token, "NT-")) {
    if (token.size() == 3) return std::nullopt;
    return Transition::non_terminal(std::string(token.substr(3)));
  }
  if (starts_with(token, "SH#")) {
    if (auto k = parse_count(token.substr(3))) return Transition::shift_k(*k);
    return std::nullopt;
  }
  if (starts_with(token, "SW#")) {
    auto k = parse_count(token.substr(3));
    if (k && *k >= 1) return Transition::swap_k(*k);
    return std::nullopt;
  }
  if (starts_with(token, "RE#")) {
    const auto rest = token.substr(3);
    const auto dash = rest.find('-');
    if (dash == std::string_view::npos || dash + 1 == rest.size()) return std::nullopt;
    auto k = parse_count(rest.substr(0, dash));
    if (!k || *k < 1) return std::nullopt;
    return Transition::reduce_k(*k, std::string(rest.substr(dash + 1)));
  }
  return std::nullopt;
}

TokenSequence to_tokens(const TransitionSeq& transitions, const LinearizationSpec& spec,
                        const Sentence& sentence) {
  TokenSequence out;
  out.reserve(transitions.size());
  ParserState state = ParserState::initial(sentence.size());
  for (std::size_t i = 0; i < transitions.size(); ++i) {
    const Transition& t = transitions[i];
    if (auto reason = illegal_reason(state, t, spec.system))
      throw IllegalTransition(i, debug_string(t) + ": " + *reason);
    if (spec.lexicalized && t.is_shift())
      out.push_back(sentence[state.buffer[t.action == Action::Shift ? 0 : t.k]]);
    else
      out.push_back(action_token(t));
    apply_in_place(state, t, spec.system);
  }
  return out;
}

TransitionSeq from_tokens(const TokenSequence& tokens, const Sentence& sentence,
                          const LinearizationSpec& spec, ExecMode mode) {
  const bool strict = mode == ExecMode::Strict;
  TransitionSeq out;
  out.reserve(tokens.size());

  if (!spec.lexicalized) {
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (auto t = parse_action_token(tokens[i]))
        out.push_back(std::move(*t));
      else if (strict)
        throw UnknownToken(i, tokens[i]);
    }
    return out;
  }

  // Lexicalized: word tokens are resolved against the simulated buffer.
  ParserState state = ParserState::initial(sentence.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& token = tokens[i];
    std::optional<Transition> t = parse_action_token(token);
    if (!t) {
      if (looks_like_action(token)) {
        if (strict) throw UnknownToken(i, token);
        continue;
      }
      const auto k = first_in_buffer(state, sentence, token);
      if (!k && strict) throw WordNotInBuffer(i, token);
      if (!k || *k == 0)
        t = Transition::shift();
      else if (!strict && spec.system.disc != DiscMechanism::ShiftK)
        t = Transition::shift();
      else
        t = Transition::shift_k(*k);
    }
    if (strict) {
      if (auto reason = illegal_reason(state, *t, spec.system))
        throw IllegalTransition(i, debug_string(*t) + ": " + *reason);
      apply_in_place(state, *t, spec.system);
    } else {
      repair_step(state, *t, spec.system);
    }
    out.push_back(std::move(*t));
  }
  return out;
}

TokenSequence split_tokens(std::string_view text) {
  TokenSequence out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) out.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string join_tokens(const TokenSequence& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

TokenSequence linearize(const ConstituentTree& tree, const LinearizationSpec& spec) {
  return to_tokens(oracle(tree, spec.system), spec, tree.sentence());
}

ConstituentTree delinearize(const TokenSequence& tokens, const Sentence& sentence,
                            const LinearizationSpec& spec, ExecMode mode) {
  const auto transitions = from_tokens(tokens, sentence, spec, mode);
  return execute(sentence, transitions, spec.system, mode);
}

std::vector<std::string> Vocab::action_tokens() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [token, count] : entries_) out.push_back(token);
  return out;
}

bool Vocab::contains(std::string_view token) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const auto& e) { return e.first == token; });
}

Vocab build_vocab(const std::vector<TokenSequence>& corpus, const LinearizationSpec&) {
  std::map<std::string, std::size_t> counts;
  for (const auto& seq : corpus)
    for (const auto& token : seq)
      if (parse_action_token(token)) ++counts[token];
  Vocab v;
  v.entries_.assign(counts.begin(), counts.end());
  std::stable_sort(v.entries_.begin(), v.entries_.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  return v;
}

EvalReport lossiness_report(const Treebank& gold, const LinearizationSpec& spec,
                            const EvalOptions& options) {
  Treebank decoded;
  decoded.reserve(gold.size());
  for (const auto& entry : gold) {
    const auto tokens = linearize(entry.tree, spec);
    const Sentence& sentence = entry.tree.sentence();
    std::optional<ConstituentTree> tree;
    try {
      tree = delinearize(tokens, sentence, spec, ExecMode::Strict);
    } catch (const Error&) {
      tree = delinearize(tokens, sentence, spec, ExecMode::Repair);
    }
    decoded.push_back({entry.id, std::move(*tree)});
  }
  return score(gold, decoded, options);
}

std::string write_record(const CorpusRecord& record) {
  nlohmann::ordered_json j;
  j["id"] = record.id;
  j["words"] = record.words;
  j["tokens"] = record.tokens;
  return j.dump();
}

CorpusRecord parse_record(std::string_view line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("invalid JSON record: ") + e.what());
  }
  if (!j.is_object()) throw FormatError("record is not a JSON object");
  CorpusRecord r;
  auto field = [&](const char* name, bool required) -> std::string {
    auto it = j.find(name);
    if (it == j.end()) {
      if (required) throw FormatError(std::string("record lacks field '") + name + "'");
      return {};
    }
    if (it->is_number_integer()) return std::to_string(it->get<long long>());
    if (!it->is_string()) throw FormatError(std::string("field '") + name + "' is not a string");
    return it->get<std::string>();
  };
  r.id = field("id", true);
  r.words = field("words", false);
  r.tokens = field("tokens", false);
  return r;
}

}  // namespace discoseq
