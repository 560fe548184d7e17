#pragma once

// LISP-style bracketed trees.
//
//   ptb          (S (NP w0) (VP w1 w2))
//   discbracket  (S (VP 0=What 3=do) 1=should 2=I)
//
// In ptb text leaves are numbered left to right; in discbracket text every
// terminal carries its zero-based position. A bracket with an empty label
// wrapping the tree, as in "( (S ...) )", is unwrapped; if it wraps more
// than one tree they are grouped under a synthetic ROOT.

#include <string>
#include <string_view>
#include <vector>

#include "discoseq/tree.hpp"

namespace discoseq {

enum class TreeFormat { Ptb, Discbracket, Export };

inline constexpr std::string_view kSyntheticRoot = "ROOT";

// Parses exactly one tree. Throws FormatError.
ConstituentTree parse_bracketed(std::string_view text, TreeFormat format);

// Throws PreconditionError for ptb output of a tree whose leaves are not in
// sentence order (discontinuous, or children not sorted by position).
std::string write_bracketed(const ConstituentTree& tree, TreeFormat format);

struct SourceTree {
  std::size_t line = 0;  // 1-based line where the tree starts
  std::string text;
};

// Splits text into top-level bracketed trees without interpreting them.
// Throws FormatError on unbalanced brackets or stray atoms.
std::vector<SourceTree> split_bracketed(std::string_view text);

}  // namespace discoseq
