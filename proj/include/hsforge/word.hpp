#pragma once

// Freely reduced words over x_1, ..., x_n and their inverses.
//
// Text syntax: lowercase 'a'..'z' are the generators 1..26, uppercase is the
// inverse of the same generator. "" and "1" both spell the identity.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace hsforge {

  /// A signed generator x_g^{+1} or x_g^{-1}.
  struct Letter {
    std::uint32_t generator = 1;  // 1-based
    bool inverted = false;

    constexpr Letter inverse() const noexcept {
      return Letter{generator, !inverted};
    }

    /// Position in the fixed alphabet order a < A < b < B < ...
    constexpr std::size_t index() const noexcept {
      return 2 * (generator - 1) + (inverted ? 1 : 0);
    }

    static constexpr Letter from_index(std::size_t i) noexcept {
      return Letter{static_cast<std::uint32_t>(i / 2 + 1), (i % 2) == 1};
    }

    constexpr bool cancels(Letter other) const noexcept {
      return generator == other.generator && inverted != other.inverted;
    }

    constexpr auto operator<=>(Letter const&) const = default;
  };

  /// Index of the inverse letter in the alphabet order.
  constexpr std::size_t inverse_index(std::size_t i) noexcept {
    return i ^ std::size_t(1);
  }

  inline char letter_char(Letter l) {
    if (l.generator > 26) {
      throw InvalidArgument("generator "
                            + std::to_string(l.generator)
                            + " has no single-character name");
    }
    char c = static_cast<char>('a' + (l.generator - 1));
    return l.inverted ? static_cast<char>(c - 'a' + 'A') : c;
  }

  class Word {
   public:
    explicit Word(unsigned rank = 1) : rank_(rank) {
      if (rank == 0) {
        throw InvalidArgument("rank must be at least 1");
      }
    }

    /// Freely reduces \p letters with a single left-to-right stack pass.
    Word(unsigned rank, std::span<Letter const> letters) : Word(rank) {
      letters_.reserve(letters.size());
      for (Letter l : letters) {
        push_back(l);
      }
    }

    Word(unsigned rank, std::initializer_list<Letter> letters)
        : Word(rank, std::span<Letter const>(letters.begin(), letters.size())) {}

    unsigned rank() const noexcept {
      return rank_;
    }

    std::size_t length() const noexcept {
      return letters_.size();
    }

    bool empty() const noexcept {
      return letters_.empty();
    }

    std::span<Letter const> letters() const noexcept {
      return letters_;
    }

    Letter operator[](std::size_t i) const {
      return letters_[i];
    }

    /// Appends \p l, cancelling against the last letter when possible.
    void push_back(Letter l) {
      if (l.generator == 0 || l.generator > rank_) {
        throw InvalidArgument("generator " + std::to_string(l.generator)
                              + " exceeds rank " + std::to_string(rank_));
      }
      if (!letters_.empty() && letters_.back().cancels(l)) {
        letters_.pop_back();
      } else {
        letters_.push_back(l);
      }
    }

    bool operator==(Word const&) const = default;

    auto operator<=>(Word const& other) const {
      if (auto c = rank_ <=> other.rank_; c != 0) {
        return c;
      }
      if (auto c = letters_.size() <=> other.letters_.size(); c != 0) {
        return c;
      }
      return letters_ <=> other.letters_;
    }

   private:
    unsigned            rank_;
    std::vector<Letter> letters_;
  };

  inline Word multiply(Word const& u, Word const& v) {
    if (u.rank() != v.rank()) {
      throw RankMismatch(u.rank(), v.rank());
    }
    Word result = u;
    for (Letter l : v.letters()) {
      result.push_back(l);
    }
    return result;
  }

  inline Word operator*(Word const& u, Word const& v) {
    return multiply(u, v);
  }

  inline Word inverse(Word const& w) {
    Word result(w.rank());
    auto letters = w.letters();
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
      result.push_back(it->inverse());
    }
    return result;
  }

  inline Word power(Word const& w, std::size_t k) {
    Word result(w.rank());
    for (std::size_t i = 0; i < k; ++i) {
      result = multiply(result, w);
    }
    return result;
  }

  /// w = conjugator * core * conjugator^-1 with core cyclically reduced.
  struct CyclicReduction {
    Word conjugator;
    Word core;
  };

  inline CyclicReduction cyclic_reduce(Word const& w) {
    auto        letters = w.letters();
    std::size_t lo = 0, hi = letters.size();
    while (hi - lo >= 2 && letters[lo].cancels(letters[hi - 1])) {
      ++lo;
      --hi;
    }
    return CyclicReduction{Word(w.rank(), letters.subspan(0, lo)),
                           Word(w.rank(), letters.subspan(lo, hi - lo))};
  }

  inline Word generator_word(unsigned rank, std::uint32_t g, bool inv = false) {
    return Word(rank, {Letter{g, inv}});
  }

  inline Word letter_word(unsigned rank, std::size_t letter_index) {
    return Word(rank, {Letter::from_index(letter_index)});
  }

  inline Word parse_word(unsigned rank, std::string_view text) {
    if (rank > 26) {
      throw InvalidArgument("text syntax supports ranks up to 26");
    }
    Word result(rank);
    if (text == "1") {
      return result;
    }
    for (char c : text) {
      Letter l;
      if (c >= 'a' && c <= 'z') {
        l = Letter{static_cast<std::uint32_t>(c - 'a' + 1), false};
      } else if (c >= 'A' && c <= 'Z') {
        l = Letter{static_cast<std::uint32_t>(c - 'A' + 1), true};
      } else {
        throw InvalidArgument(std::string("invalid character '") + c
                              + "' in word \"" + std::string(text) + "\"");
      }
      if (l.generator > rank) {
        throw InvalidArgument(std::string("letter '") + c + "' exceeds rank "
                              + std::to_string(rank) + " in word \""
                              + std::string(text) + "\"");
      }
      result.push_back(l);
    }
    return result;
  }

  /// The empty word prints as "".
  inline std::string to_string(Word const& w) {
    std::string s;
    s.reserve(w.length());
    for (Letter l : w.letters()) {
      s.push_back(letter_char(l));
    }
    return s;
  }

  /// Like to_string, but the identity prints as "1".
  inline std::string display(Word const& w) {
    return w.empty() ? std::string("1") : to_string(w);
  }

}  // namespace hsforge

template <>
struct std::hash<hsforge::Word> {
  std::size_t operator()(hsforge::Word const& w) const noexcept {
    std::size_t h = w.rank();
    for (auto l : w.letters()) {
      h = h * 1000003u ^ l.index();
    }
    return h;
  }
};
