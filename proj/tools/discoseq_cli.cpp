// discoseq command-line front end. Talks to the library only through the C
// API in discoseq.h.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "discoseq/discoseq.h"

namespace {

enum Exit { kOk = 0, kUsage = 1, kFormat = 2, kSemantic = 3 };

// Thrown to unwind to main with an exit code; the message is already printed
// unless `message` is non-empty.
struct Failure {
  int code;
  std::string message;
};

int exit_code(ds_status status) {
  switch (status) {
    case DS_OK: return kOk;
    case DS_ERR_ARGUMENT: return kUsage;
    case DS_ERR_FORMAT:
    case DS_ERR_IO: return kFormat;
    default: return kSemantic;
  }
}

void check(ds_status status, const std::string& context = "") {
  if (status == DS_OK) return;
  std::string msg = ds_last_error();
  if (!context.empty()) msg = context + ": " + msg;
  throw Failure{exit_code(status), msg};
}

// Owning wrappers for C handles and strings.
struct StringDeleter {
  void operator()(char* s) const { ds_string_free(s); }
};
struct TreeDeleter {
  void operator()(ds_tree* t) const { ds_tree_free(t); }
};
struct TreebankDeleter {
  void operator()(ds_treebank* t) const { ds_treebank_free(t); }
};
struct PunctDeleter {
  void operator()(ds_punct* p) const { ds_punct_free(p); }
};
struct ReportDeleter {
  void operator()(ds_report* r) const { ds_report_free(r); }
};
struct VocabDeleter {
  void operator()(ds_vocab* v) const { ds_vocab_free(v); }
};
using TreePtr = std::unique_ptr<ds_tree, TreeDeleter>;
using TreebankPtr = std::unique_ptr<ds_treebank, TreebankDeleter>;
using PunctPtr = std::unique_ptr<ds_punct, PunctDeleter>;
using ReportPtr = std::unique_ptr<ds_report, ReportDeleter>;
using VocabPtr = std::unique_ptr<ds_vocab, VocabDeleter>;

std::string take(char* s) {
  std::unique_ptr<char, StringDeleter> owned(s);
  return s ? std::string(s) : std::string();
}

// "-" reads stdin.
std::string read_file(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kFormat, "cannot read " + path};
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> read_lines(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

// Writes to a file or stdout ("-" or empty).
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) throw Failure{kFormat, "cannot write " + path};
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  void finish() {
    stream().flush();
    if (!stream()) throw Failure{kFormat, "write failed"};
  }

 private:
  std::ofstream file_;
};

// Runs fn(i) for i in [0, n) on up to `jobs` threads. Callers store results
// by index, so output order never depends on scheduling.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < jobs; ++j)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) fn(i);
    });
  for (auto& t : pool) t.join();
}

struct SpecFlags {
  std::string system = "inorder";
  std::string disc = "shiftk";
  bool lexicalized = false;

  ds_spec get() const {
    static const std::map<std::string, ds_base> bases{
        {"topdown", DS_BASE_TOPDOWN}, {"bottomup", DS_BASE_BOTTOMUP}, {"inorder", DS_BASE_INORDER}};
    static const std::map<std::string, ds_disc> discs{{"none", DS_DISC_NONE},
                                                      {"swap", DS_DISC_SWAP},
                                                      {"swapk", DS_DISC_SWAPK},
                                                      {"shiftk", DS_DISC_SHIFTK}};
    ds_spec s{bases.at(system), discs.at(disc), lexicalized ? 1 : 0};
    if (s.base == DS_BASE_BOTTOMUP && s.disc != DS_DISC_NONE)
      throw Failure{kUsage, "--system bottomup supports only --disc none"};
    return s;
  }

  // Lexicalized Shift#k decoding resolves repeated words to their first
  // buffer occurrence and cannot be inverted in general.
  bool lossless() const { return !(lexicalized && disc == "shiftk"); }

  void add(CLI::App* app) {
    app->add_option("--system", system, "Base transition system")
        ->check(CLI::IsMember({"topdown", "bottomup", "inorder"}))
        ->capture_default_str();
    app->add_option("--disc", disc, "Discontinuity mechanism")
        ->check(CLI::IsMember({"none", "swap", "swapk", "shiftk"}))
        ->capture_default_str();
    app->add_flag("--lexicalized", lexicalized, "Write shifts as the words they move");
  }
};

struct FormatFlags {
  std::string format = "discbracket";
  bool keep_preterminals = false;

  ds_format get() const {
    if (format == "ptb") return DS_FORMAT_PTB;
    if (format == "export") return DS_FORMAT_EXPORT;
    return DS_FORMAT_DISCBRACKET;
  }

  void add(CLI::App* app, bool reading = true) {
    app->add_option("--format", format, "Treebank format")
        ->check(CLI::IsMember({"ptb", "discbracket", "export"}))
        ->capture_default_str();
    if (reading)
      app->add_flag("--keep-preterminals", keep_preterminals,
                    "Keep the tag layer above the words when reading");
  }
};

struct EvalFlags {
  std::string punct = "default";
  bool keep_root = false;
  bool json = false;

  void add(CLI::App* app) {
    app->add_option("--punct", punct, "Punctuation policy: default, none or file:PATH")
        ->capture_default_str();
    app->add_flag("--keep-root", keep_root, "Score the root bracket");
    app->add_flag("--json", json, "Print the report as JSON");
  }

  PunctPtr policy() const {
    if (punct == "default") return PunctPtr(ds_punct_default());
    if (punct == "none") return PunctPtr(ds_punct_none());
    if (punct.rfind("file:", 0) == 0) {
      std::istringstream in(read_file(punct.substr(5)));
      std::vector<std::string> tokens;
      for (std::string t; in >> t;) tokens.push_back(t);
      std::vector<const char*> ptrs;
      for (const auto& t : tokens) ptrs.push_back(t.c_str());
      ds_punct* p = nullptr;
      check(ds_punct_from_tokens(ptrs.data(), ptrs.size(), &p), "--punct");
      return PunctPtr(p);
    }
    throw Failure{kUsage, "--punct must be default, none or file:PATH"};
  }
};

TreebankPtr load_treebank(const std::string& path, const FormatFlags& fmt) {
  const std::string text = read_file(path);
  ds_treebank* tb = nullptr;
  check(ds_treebank_read(text.c_str(), fmt.get(), fmt.keep_preterminals ? 0 : 1, &tb), path);
  return TreebankPtr(tb);
}

std::string join(const std::vector<std::string>& words) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) out += ' ';
    out += words[i];
  }
  return out;
}

std::string tree_words(const ds_tree* tree) {
  std::vector<std::string> words;
  for (std::size_t i = 0; i < ds_tree_num_words(tree); ++i) words.emplace_back(ds_tree_word(tree, i));
  return join(words);
}

struct Outcome {
  ds_status status = DS_OK;
  std::string text;
  std::string error;
};

// ---------------------------------------------------------------- commands

struct LinearizeCmd {
  std::string input, output = "-";
  SpecFlags spec;
  FormatFlags fmt;
  unsigned jobs = 1;

  int run() {
    const ds_spec s = spec.get();
    auto tb = load_treebank(input, fmt);
    const std::size_t n = ds_treebank_size(tb.get());
    std::vector<Outcome> results(n);
    parallel_for(n, jobs, [&](std::size_t i) {
      const ds_tree* tree = ds_treebank_tree(tb.get(), i);
      char* tokens = nullptr;
      Outcome& r = results[i];
      r.status = ds_linearize(tree, &s, &tokens);
      if (r.status != DS_OK) {
        r.error = ds_last_error();
        return;
      }
      const std::string tok = take(tokens);
      const std::string words = tree_words(tree);
      char* line = nullptr;
      r.status = ds_record_write(ds_treebank_id(tb.get(), i), words.c_str(), tok.c_str(), &line);
      if (r.status != DS_OK) r.error = ds_last_error();
      r.text = take(line);
    });

    int failed = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (results[i].status != DS_OK) {
        std::cerr << "tree " << ds_treebank_id(tb.get(), i) << ": " << results[i].error << "\n";
        ++failed;
      }
    if (failed) {
      std::cerr << failed << " of " << n << " trees could not be linearized\n";
      return kSemantic;
    }
    Output out(output);
    for (const auto& r : results) out.stream() << r.text << "\n";
    out.finish();
    return kOk;
  }
};

struct DelinearizeCmd {
  std::string predictions, sentences, output = "-";
  SpecFlags spec;
  std::string mode = "strict";
  std::string out_format = "discbracket";
  unsigned jobs = 1;

  int run() {
    const ds_spec s = spec.get();
    const ds_mode m = mode == "repair" ? DS_MODE_REPAIR : DS_MODE_STRICT;
    const ds_format f = out_format == "ptb" ? DS_FORMAT_PTB : DS_FORMAT_DISCBRACKET;

    std::unordered_map<std::string, std::string> words_by_id;
    if (!sentences.empty()) {
      const auto lines = read_lines(sentences);
      for (std::size_t i = 0; i < lines.size(); ++i) {
        if (blank(lines[i])) continue;
        char *id = nullptr, *words = nullptr, *tokens = nullptr;
        check(ds_record_parse(lines[i].c_str(), &id, &words, &tokens),
              sentences + ":" + std::to_string(i + 1));
        take(tokens);
        words_by_id[take(id)] = take(words);
      }
    }

    struct Item {
      std::size_t line;
      std::string id, words, tokens;
    };
    std::vector<Item> items;
    const auto lines = read_lines(predictions);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (blank(lines[i])) continue;
      char *id = nullptr, *words = nullptr, *tokens = nullptr;
      check(ds_record_parse(lines[i].c_str(), &id, &words, &tokens),
            predictions + ":" + std::to_string(i + 1));
      Item item{i + 1, take(id), take(words), take(tokens)};
      if (!sentences.empty()) {
        auto it = words_by_id.find(item.id);
        if (it != words_by_id.end()) item.words = it->second;
      }
      items.push_back(std::move(item));
    }

    std::vector<Outcome> results(items.size());
    parallel_for(items.size(), jobs, [&](std::size_t i) {
      const Item& item = items[i];
      Outcome& r = results[i];
      if (blank(item.words)) {
        r.status = DS_ERR_MISMATCH;
        r.error = "no words for id " + item.id;
        return;
      }
      ds_tree* tree = nullptr;
      r.status = ds_delinearize(item.words.c_str(), item.tokens.c_str(), &s, m, &tree);
      if (r.status != DS_OK) {
        r.error = ds_last_error();
        return;
      }
      TreePtr owned(tree);
      char* text = nullptr;
      r.status = ds_tree_write(tree, f, &text);
      if (r.status != DS_OK) r.error = ds_last_error();
      r.text = take(text);
    });

    int failed = 0;
    int code = kOk;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (results[i].status == DS_OK) continue;
      ++failed;
      code = std::max(code, exit_code(results[i].status));
      std::cerr << predictions << ":" << items[i].line << " (id " << items[i].id
                << "): " << results[i].error << "\n";
    }
    Output out(output);
    for (const auto& r : results)
      if (r.status == DS_OK) out.stream() << r.text << "\n";
    out.finish();
    if (failed) std::cerr << failed << " of " << items.size() << " records failed\n";
    return code;
  }
};

struct RoundtripCmd {
  std::string input;
  SpecFlags spec;
  FormatFlags fmt;
  unsigned jobs = 1;
  bool quiet = false;

  int run() {
    const ds_spec s = spec.get();
    auto tb = load_treebank(input, fmt);
    const std::size_t n = ds_treebank_size(tb.get());
    std::vector<std::string> verdicts(n);
    std::vector<char> ok(n, 0);
    parallel_for(n, jobs, [&](std::size_t i) {
      const ds_tree* gold = ds_treebank_tree(tb.get(), i);
      char* tokens = nullptr;
      if (ds_linearize(gold, &s, &tokens) != DS_OK) {
        verdicts[i] = std::string("FAIL encode: ") + ds_last_error();
        return;
      }
      const std::string tok = take(tokens);
      const std::string words = tree_words(gold);
      ds_tree* decoded = nullptr;
      if (ds_delinearize(words.c_str(), tok.c_str(), &s, DS_MODE_STRICT, &decoded) != DS_OK) {
        verdicts[i] = std::string("FAIL decode: ") + ds_last_error();
        return;
      }
      TreePtr owned(decoded);
      ok[i] = ds_tree_equal(gold, decoded) ? 1 : 0;
      verdicts[i] = ok[i] ? "OK" : "FAIL differs";
    });

    const auto good = static_cast<std::size_t>(std::count(ok.begin(), ok.end(), 1));
    if (!quiet)
      for (std::size_t i = 0; i < n; ++i)
        std::cout << ds_treebank_id(tb.get(), i) << "\t" << verdicts[i] << "\n";
    const double pct = n == 0 ? 100.0 : 100.0 * static_cast<double>(good) / static_cast<double>(n);
    std::printf("%zu/%zu trees reproduced (%.2f%%)\n", good, n, pct);
    return good == n || !spec.lossless() ? kOk : kSemantic;
  }
};

void print_report(const ds_report* report, bool json) {
  char* text = nullptr;
  check(json ? ds_report_json(report, &text) : ds_report_text(report, &text));
  std::string s = take(text);
  std::cout << s;
  if (json) std::cout << "\n";
}

ds_eval_options eval_options(const EvalFlags& flags, const ds_punct* punct) {
  return ds_eval_options{punct, flags.keep_root ? 0 : 1};
}

struct EvalCmd {
  std::string gold, pred;
  FormatFlags fmt;
  std::string pred_format;
  EvalFlags eval;

  int run() {
    auto g = load_treebank(gold, fmt);
    FormatFlags pf = fmt;
    if (!pred_format.empty()) pf.format = pred_format;
    auto p = load_treebank(pred, pf);
    auto punct = eval.policy();
    const ds_eval_options opts = eval_options(eval, punct.get());
    ds_report* report = nullptr;
    check(ds_score(g.get(), p.get(), &opts, &report));
    ReportPtr owned(report);
    print_report(report, eval.json);
    return kOk;
  }
};

struct LossinessCmd {
  std::string gold;
  FormatFlags fmt;
  SpecFlags spec;
  EvalFlags eval;

  int run() {
    const ds_spec s = spec.get();
    auto g = load_treebank(gold, fmt);
    auto punct = eval.policy();
    const ds_eval_options opts = eval_options(eval, punct.get());
    ds_report* report = nullptr;
    check(ds_lossiness(g.get(), &s, &opts, &report));
    ReportPtr owned(report);
    print_report(report, eval.json);
    return kOk;
  }
};

struct AnalyzeCmd {
  std::string gold, pred;
  FormatFlags fmt;
  std::string pred_format;
  EvalFlags eval;
  std::vector<std::size_t> span_edges, sentence_edges;

  int run() {
    auto g = load_treebank(gold, fmt);
    FormatFlags pf = fmt;
    if (!pred_format.empty()) pf.format = pred_format;
    auto p = load_treebank(pred, pf);
    auto punct = eval.policy();
    const ds_eval_options opts = eval_options(eval, punct.get());
    char *json = nullptr, *text = nullptr;
    check(ds_breakdown(g.get(), p.get(), &opts, span_edges.empty() ? nullptr : span_edges.data(),
                       span_edges.size(), sentence_edges.empty() ? nullptr : sentence_edges.data(),
                       sentence_edges.size(), &json, &text));
    const std::string j = take(json), t = take(text);
    if (eval.json)
      std::cout << j << "\n";
    else
      std::cout << t;
    return kOk;
  }
};

struct SynthCmd {
  std::uint64_t seed = 0;
  std::size_t count = 100, min_words = 1, max_words = 40, max_arity = 3, max_gap = 2, vocab = 0;
  double disc_rate = 0.0;
  std::string output = "-";
  std::string format = "discbracket";

  int run() {
    if (min_words < 1 || max_words < min_words)
      throw Failure{kUsage, "need 1 <= --min-words <= --max-words"};
    const ds_format f = format == "ptb" ? DS_FORMAT_PTB : DS_FORMAT_DISCBRACKET;
    std::mt19937_64 rng(seed);
    TreebankPtr tb(ds_treebank_new());
    for (std::size_t i = 0; i < count; ++i) {
      ds_random_params params{min_words + static_cast<std::size_t>(rng() % (max_words - min_words + 1)),
                              max_arity, disc_rate, max_gap, vocab};
      ds_tree* tree = nullptr;
      check(ds_tree_random(rng(), &params, &tree));
      TreePtr owned(tree);
      check(ds_treebank_append(tb.get(), std::to_string(i + 1).c_str(), tree));
    }
    char* text = nullptr;
    check(ds_treebank_write(tb.get(), f, &text));
    const std::string s = take(text);
    Output out(output);
    out.stream() << s;
    out.finish();
    return kOk;
  }
};

struct VocabCmd {
  std::string corpus;
  SpecFlags spec;

  int run() {
    const ds_spec s = spec.get();
    std::vector<std::string> seqs;
    const auto lines = read_lines(corpus);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (blank(lines[i])) continue;
      char *id = nullptr, *words = nullptr, *tokens = nullptr;
      check(ds_record_parse(lines[i].c_str(), &id, &words, &tokens),
            corpus + ":" + std::to_string(i + 1));
      take(id);
      take(words);
      seqs.push_back(take(tokens));
    }
    std::vector<const char*> ptrs;
    for (const auto& q : seqs) ptrs.push_back(q.c_str());
    ds_vocab* v = nullptr;
    check(ds_vocab_build(ptrs.data(), ptrs.size(), &s, &v));
    VocabPtr owned(v);
    for (std::size_t i = 0; i < ds_vocab_size(v); ++i)
      std::cout << ds_vocab_token(v, i) << "\t" << ds_vocab_count(v, i) << "\n";
    return kOk;
  }
};

// Mean and sample standard deviation of each metric across JSON reports.
struct MergeCmd {
  std::vector<std::string> reports;
  bool json = false;

  int run() {
    static const char* const kMetrics[] = {"precision",    "recall",          "f1",
                                           "disco_precision", "disco_recall", "disco_f1",
                                           "exact_match"};
    std::map<std::string, std::vector<double>> values;
    for (const auto& path : reports) {
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(read_file(path));
      } catch (const nlohmann::json::exception& e) {
        throw Failure{kFormat, path + ": " + e.what()};
      }
      if (!j.is_object()) throw Failure{kFormat, path + ": not a report object"};
      for (const char* m : kMetrics) {
        auto it = j.find(m);
        if (it != j.end() && it->is_number()) values[m].push_back(it->get<double>());
      }
    }

    nlohmann::ordered_json out;
    out["n_reports"] = reports.size();
    std::string text = "metric              mean     std    n\n";
    for (const char* m : kMetrics) {
      const auto& v = values[m];
      if (v.empty()) {
        out[m] = nullptr;
        char buf[96];
        std::snprintf(buf, sizeof buf, "%-16s%8s%8s%5d\n", m, "-", "-", 0);
        text += buf;
        continue;
      }
      double mean = 0;
      for (double x : v) mean += x;
      mean /= static_cast<double>(v.size());
      double ss = 0;
      for (double x : v) ss += (x - mean) * (x - mean);
      const double sd = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
      out[m] = {{"mean", mean}, {"std", sd}, {"n", v.size()}};
      char buf[96];
      std::snprintf(buf, sizeof buf, "%-16s%8.2f%8.2f%5zu\n", m, mean, sd, v.size());
      text += buf;
    }
    if (json)
      std::cout << out.dump() << "\n";
    else
      std::cout << text;
    return kOk;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linearize constituent trees to transition tokens and back; score parses."};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ds_version()));

  LinearizeCmd lin;
  auto* c_lin = app.add_subcommand("linearize", "Treebank -> linearized corpus (JSON lines)");
  c_lin->add_option("input", lin.input, "Treebank file")->required();
  c_lin->add_option("-o,--output", lin.output, "Output file (default stdout)");
  lin.spec.add(c_lin);
  lin.fmt.add(c_lin);
  c_lin->add_option("--jobs", lin.jobs, "Worker threads")->check(CLI::PositiveNumber);

  DelinearizeCmd del;
  auto* c_del = app.add_subcommand("delinearize", "Token predictions -> treebank");
  c_del->add_option("predictions", del.predictions, "JSON lines with id, tokens and optionally words")
      ->required();
  c_del->add_option("--sentences", del.sentences, "JSON lines with id and words, joined on id");
  c_del->add_option("-o,--output", del.output, "Output file (default stdout)");
  del.spec.add(c_del);
  c_del->add_option("--mode", del.mode, "Decoding mode")
      ->check(CLI::IsMember({"strict", "repair"}))
      ->capture_default_str();
  c_del->add_option("--format,--out-format", del.out_format, "Output treebank format")
      ->check(CLI::IsMember({"ptb", "discbracket"}))
      ->capture_default_str();
  c_del->add_option("--jobs", del.jobs, "Worker threads")->check(CLI::PositiveNumber);

  RoundtripCmd rt;
  auto* c_rt = app.add_subcommand("roundtrip", "Check encode -> decode -> execute on a treebank");
  c_rt->add_option("input", rt.input, "Treebank file")->required();
  rt.spec.add(c_rt);
  rt.fmt.add(c_rt);
  c_rt->add_option("--jobs", rt.jobs, "Worker threads")->check(CLI::PositiveNumber);
  c_rt->add_flag("-q,--quiet", rt.quiet, "Print only the summary");

  EvalCmd ev;
  auto* c_ev = app.add_subcommand("eval", "Bracket precision, recall and F1");
  c_ev->add_option("gold", ev.gold, "Gold treebank")->required();
  c_ev->add_option("pred", ev.pred, "Predicted treebank")->required();
  ev.fmt.add(c_ev);
  c_ev->add_option("--pred-format", ev.pred_format, "Format of the predictions (default: --format)")
      ->check(CLI::IsMember({"ptb", "discbracket", "export"}));
  ev.eval.add(c_ev);

  LossinessCmd lo;
  auto* c_lo = app.add_subcommand("lossiness", "Best F1 reachable through a linearization");
  c_lo->add_option("gold", lo.gold, "Gold treebank")->required();
  lo.fmt.add(c_lo);
  lo.spec.add(c_lo);
  lo.eval.add(c_lo);

  AnalyzeCmd an;
  auto* c_an = app.add_subcommand("analyze", "Scores by span length, sentence length and label");
  c_an->add_option("gold", an.gold, "Gold treebank")->required();
  c_an->add_option("pred", an.pred, "Predicted treebank")->required();
  an.fmt.add(c_an);
  c_an->add_option("--pred-format", an.pred_format, "Format of the predictions (default: --format)")
      ->check(CLI::IsMember({"ptb", "discbracket", "export"}));
  an.eval.add(c_an);
  c_an->add_option("--span-edges", an.span_edges, "Span-length bucket lower bounds")->delimiter(',');
  c_an->add_option("--sentence-edges", an.sentence_edges, "Sentence-length bucket lower bounds")
      ->delimiter(',');

  SynthCmd sy;
  auto* c_sy = app.add_subcommand("synth", "Generate a seeded synthetic treebank");
  c_sy->add_option("--seed", sy.seed, "Random seed")->capture_default_str();
  c_sy->add_option("--count", sy.count, "Number of trees")->capture_default_str();
  c_sy->add_option("--min-words", sy.min_words, "Minimum sentence length")->capture_default_str();
  c_sy->add_option("--max-words", sy.max_words, "Maximum sentence length")->capture_default_str();
  c_sy->add_option("--max-arity", sy.max_arity, "Maximum branching")->capture_default_str();
  c_sy->add_option("--disc-rate", sy.disc_rate, "Probability of a discontinuous tree")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  c_sy->add_option("--max-gap", sy.max_gap, "Maximum gap degree")->capture_default_str();
  c_sy->add_option("--vocab", sy.vocab, "Vocabulary size (0: distinct words)")->capture_default_str();
  c_sy->add_option("--format", sy.format, "Output format")
      ->check(CLI::IsMember({"ptb", "discbracket"}))
      ->capture_default_str();
  c_sy->add_option("-o,--output", sy.output, "Output file (default stdout)");

  VocabCmd vo;
  auto* c_vo = app.add_subcommand("vocab", "Action-token counts of a linearized corpus");
  c_vo->add_option("corpus", vo.corpus, "Linearized corpus (JSON lines)")->required();
  vo.spec.add(c_vo);

  MergeCmd me;
  auto* c_me = app.add_subcommand("merge-reports", "Mean and std of JSON reports across runs");
  c_me->add_option("reports", me.reports, "JSON report files")->required();
  c_me->add_flag("--json", me.json, "Print JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (c_lin->parsed()) return lin.run();
    if (c_del->parsed()) return del.run();
    if (c_rt->parsed()) return rt.run();
    if (c_ev->parsed()) return ev.run();
    if (c_lo->parsed()) return lo.run();
    if (c_an->parsed()) return an.run();
    if (c_sy->parsed()) return sy.run();
    if (c_vo->parsed()) return vo.run();
    if (c_me->parsed()) return me.run();
  } catch (const Failure& f) {
    if (!f.message.empty()) std::cerr << "error: " << f.message << "\n";
    return f.code;
  }
  return kUsage;
}
