#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hsforge {

  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  class InvalidArgument : public Error {
   public:
    using Error::Error;
  };

  class RankMismatch : public Error {
   public:
    RankMismatch(unsigned lhs, unsigned rhs)
        : Error("rank mismatch: " + std::to_string(lhs) + " vs "
                + std::to_string(rhs)) {}
  };

  /// Thrown by try_complete when the folded graph lacks a transition.
  class InfiniteIndex : public Error {
   public:
    InfiniteIndex(std::size_t vertex, std::string letter)
        : Error("subgroup has infinite index: vertex "
                + std::to_string(vertex) + " has no edge labelled "
                + letter),
          vertex_(vertex) {}

    std::size_t vertex() const noexcept {
      return vertex_;
    }

   private:
    std::size_t vertex_;
  };

  /// An enumeration (group closure, normal core) outgrew its cap.
  class CapExceeded : public Error {
   public:
    explicit CapExceeded(std::size_t cap, std::string const& what = "group")
        : Error(what + " enumeration exceeded cap " + std::to_string(cap)),
          cap_(cap) {}

    std::size_t cap() const noexcept {
      return cap_;
    }

   private:
    std::size_t cap_;
  };

  class StateCapExceeded : public CapExceeded {
   public:
    explicit StateCapExceeded(std::size_t cap)
        : CapExceeded(cap, "product automaton") {}
  };

  class EmptyWord : public Error {
   public:
    EmptyWord() : Error("word must be nonempty") {}
  };

  class NotAPartition : public Error {
   public:
    using Error::Error;
  };

  /// A residue-class family that does not partition the integers.
  class InvalidZPartition : public Error {
   public:
    using Error::Error;
  };

  class SpacingViolation : public Error {
   public:
    using Error::Error;
  };

  class CountViolation : public Error {
   public:
    using Error::Error;
  };

  class ParseError : public Error {
   public:
    ParseError(std::size_t line, std::string const& msg)
        : Error(line == 0 ? msg : "line " + std::to_string(line) + ": " + msg),
          line_(line),
          message_(msg) {}

    std::size_t line() const noexcept {
      return line_;
    }

    /// The message without the line prefix.
    std::string const& message() const noexcept {
      return message_;
    }

   private:
    std::size_t line_;
    std::string message_;
  };

}  // namespace hsforge
