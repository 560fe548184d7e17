#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace discoseq {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (brackets, export columns, corpus records).
class FormatError : public Error {
 public:
  using Error::Error;
};

// An operation was called outside its contract (e.g. ptb output for a
// discontinuous tree, continuous oracle on a discontinuous tree).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class IllegalTransition : public Error {
 public:
  IllegalTransition(std::size_t step, const std::string& reason)
      : Error("illegal transition at step " + std::to_string(step) + ": " + reason),
        step_(step),
        reason_(reason) {}

  std::size_t step() const { return step_; }
  const std::string& reason() const { return reason_; }

 private:
  std::size_t step_;
  std::string reason_;
};

class NonTerminalState : public Error {
 public:
  using Error::Error;
};

class UnknownToken : public Error {
 public:
  UnknownToken(std::size_t position, const std::string& token)
      : Error("unknown token '" + token + "' at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class WordNotInBuffer : public Error {
 public:
  WordNotInBuffer(std::size_t position, const std::string& word)
      : Error("word '" + word + "' at token position " + std::to_string(position) +
              " is not in the buffer"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Gold and predicted corpora do not line up (ids or words differ).
class MismatchError : public Error {
 public:
  using Error::Error;
};

}  // namespace discoseq
