#pragma once

// Whole-file treebank I/O. Bracketed files hold one tree per top-level
// bracket (normally one per line) and are identified by 1-based index;
// export files are identified by their #BOS number.

#include <string>
#include <string_view>
#include <vector>

#include "discoseq/bracketed.hpp"
#include "discoseq/tree.hpp"

namespace discoseq {

struct TreebankEntry {
  std::string id;
  ConstituentTree tree;
};

using Treebank = std::vector<TreebankEntry>;

struct ReadOptions {
  TreeFormat format = TreeFormat::Discbracket;
  bool strip_preterminals = true;
};

// Throws FormatError naming the offending line.
Treebank read_treebank(std::string_view text, const ReadOptions& options);

// NEGRA/TIGER export (formats 3 and 4). Tags, morphology, edge labels and
// secondary edges are dropped. Words attached to the virtual root, or more
// than one top-level constituent, are grouped under ROOT.
Treebank read_export(std::string_view text);

// One tree per line, newline-terminated.
std::string write_treebank(const Treebank& treebank, TreeFormat format);

}  // namespace discoseq
