#pragma once

// Residue-class families o*Z + r and exact covers of the integers.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace hsforge {

  struct ResidueClass {
    std::uint64_t modulus = 1;
    std::uint64_t residue = 0;

    bool contains(std::int64_t x) const noexcept {
      auto m = static_cast<std::int64_t>(modulus);
      return ((x % m) + m) % m == static_cast<std::int64_t>(residue);
    }

    bool operator==(ResidueClass const&) const = default;
    auto operator<=>(ResidueClass const&) const = default;
  };

  class ZPartition {
   public:
    ZPartition() = default;

    explicit ZPartition(std::vector<ResidueClass> classes)
        : classes_(std::move(classes)) {
      for (auto& c : classes_) {
        if (c.modulus == 0) {
          throw InvalidArgument("modulus must be positive");
        }
        if (c.residue >= c.modulus) {
          throw InvalidArgument("residue must lie in [0, modulus)");
        }
      }
    }

    std::span<ResidueClass const> classes() const noexcept {
      return classes_;
    }
    std::size_t size() const noexcept {
      return classes_.size();
    }
    ResidueClass const& operator[](std::size_t i) const {
      return classes_[i];
    }

    /// lcm of the moduli.
    std::uint64_t period() const {
      std::uint64_t l = 1;
      for (auto const& c : classes_) {
        l = std::lcm(l, c.modulus);
      }
      return l;
    }

    bool operator==(ZPartition const&) const = default;

   private:
    std::vector<ResidueClass> classes_;
  };

  inline constexpr std::uint64_t max_z_period = 100'000'000;

  struct ZValidation {
    bool                        valid;
    std::optional<std::int64_t> witness;  // first integer covered != 1 times
  };

  /// Exhaustive check over one period.
  inline ZValidation validate_z(ZPartition const& z) {
    if (z.size() == 0) {
      return {false, 0};
    }
    auto const L = z.period();
    if (L > max_z_period) {
      throw InvalidArgument("period " + std::to_string(L) + " too large");
    }
    std::vector<std::uint32_t> hits(L, 0);
    for (auto const& c : z.classes()) {
      for (std::uint64_t x = c.residue; x < L; x += c.modulus) {
        ++hits[x];
      }
    }
    for (std::uint64_t x = 0; x < L; ++x) {
      if (hits[x] != 1) {
        return {false, static_cast<std::int64_t>(x)};
      }
    }
    return {true, std::nullopt};
  }

  inline std::uint64_t smallest_prime_divisor(std::uint64_t n) {
    if (n < 2) {
      return 1;
    }
    for (std::uint64_t p = 2; p * p <= n; ++p) {
      if (n % p == 0) {
        return p;
      }
    }
    return n;
  }

  inline bool is_prime(std::uint64_t n) {
    return n >= 2 && smallest_prime_divisor(n) == n;
  }

  /// The four structural properties every exact cover of Z must have.
  struct StructReport {
    bool          trivial;  // the single class Z; all checks hold vacuously
    bool          not_pairwise_coprime;
    bool          max_repeats_p_times;
    bool          every_modulus_divides_another;
    bool          maximal_moduli_repeat;
    std::uint64_t o_max;
    std::uint64_t p;  // smallest prime dividing o_max (1 when o_max == 1)
    std::size_t   o_max_count;

    bool all_hold() const noexcept {
      return not_pairwise_coprime && max_repeats_p_times
             && every_modulus_divides_another && maximal_moduli_repeat;
    }
  };

  inline StructReport erdos_checks(ZPartition const& z) {
    if (auto v = validate_z(z); !v.valid) {
      throw InvalidZPartition("not an exact cover of Z, witness "
                              + std::to_string(v.witness.value_or(0)));
    }
    auto const mods = [&] {
      std::vector<std::uint64_t> m;
      for (auto const& c : z.classes()) {
        m.push_back(c.modulus);
      }
      return m;
    }();
    StructReport r{};
    r.o_max       = *std::max_element(mods.begin(), mods.end());
    r.p           = smallest_prime_divisor(r.o_max);
    r.o_max_count = static_cast<std::size_t>(
        std::count(mods.begin(), mods.end(), r.o_max));
    if (mods.size() == 1) {
      r.trivial = true;
      r.not_pairwise_coprime = r.max_repeats_p_times
          = r.every_modulus_divides_another = r.maximal_moduli_repeat = true;
      return r;
    }
    std::size_t const t = mods.size();
    for (std::size_t i = 0; i < t && !r.not_pairwise_coprime; ++i) {
      for (std::size_t j = i + 1; j < t; ++j) {
        if (std::gcd(mods[i], mods[j]) > 1) {
          r.not_pairwise_coprime = true;
          break;
        }
      }
    }
    r.max_repeats_p_times = r.o_max_count >= r.p;
    r.every_modulus_divides_another = true;
    r.maximal_moduli_repeat          = true;
    for (std::size_t l = 0; l < t; ++l) {
      bool divides_other = false, properly_divides = false;
      for (std::size_t k = 0; k < t; ++k) {
        if (k == l || mods[k] % mods[l] != 0) {
          continue;
        }
        divides_other = true;
        properly_divides |= mods[k] != mods[l];
      }
      r.every_modulus_divides_another &= divides_other;
      if (!properly_divides
          && std::count(mods.begin(), mods.end(), mods[l]) < 2) {
        r.maximal_moduli_repeat = false;
      }
    }
    return r;
  }

  /// Reads residues off a colored cycle: class i gets modulus moduli[i] and
  /// residue equal to the first position of color i. Colors are listed in
  /// ascending color order.
  inline ZPartition from_colored_loop(
      std::size_t length, std::span<std::size_t const> colors,
      std::map<std::size_t, std::uint64_t> const& moduli) {
    if (colors.size() != length || length == 0) {
      throw CountViolation("color sequence length differs from loop length");
    }
    std::map<std::size_t, std::vector<std::size_t>> positions;
    for (std::size_t i = 0; i < length; ++i) {
      positions[colors[i]].push_back(i);
    }
    std::uint64_t             total = 0;
    std::vector<ResidueClass> classes;
    for (auto const& [color, pos] : positions) {
      auto it = moduli.find(color);
      if (it == moduli.end() || it->second == 0 || length % it->second != 0) {
        throw CountViolation("missing or non-dividing modulus for color "
                             + std::to_string(color));
      }
      auto const o = it->second;
      if (pos.size() != length / o) {
        throw CountViolation("color " + std::to_string(color) + " has "
                             + std::to_string(pos.size()) + " vertices, expected "
                             + std::to_string(length / o));
      }
      for (std::size_t j = 0; j < pos.size(); ++j) {
        std::size_t next = (j + 1 < pos.size()) ? pos[j + 1] : pos[0] + length;
        if (next - pos[j] != o) {
          throw SpacingViolation("color " + std::to_string(color)
                                 + " is not spaced by " + std::to_string(o));
        }
      }
      total += length / o;
      classes.push_back(ResidueClass{o, pos.front() % o});
    }
    if (total != length) {
      throw CountViolation("contributions do not sum to the loop length");
    }
    return ZPartition(std::move(classes));
  }

  /// Replaces class \p which by its q sub-classes (q*o, r + j*o).
  inline ZPartition split_class(ZPartition const& z, std::size_t which,
                                std::uint64_t q) {
    if (which >= z.size()) {
      throw InvalidArgument("class index out of range");
    }
    if (!is_prime(q)) {
      throw InvalidArgument(std::to_string(q) + " is not prime");
    }
    std::vector<ResidueClass> out;
    for (std::size_t i = 0; i < z.size(); ++i) {
      auto const c = z[i];
      if (i != which) {
        out.push_back(c);
        continue;
      }
      for (std::uint64_t j = 0; j < q; ++j) {
        out.push_back(ResidueClass{q * c.modulus, c.residue + j * c.modulus});
      }
    }
    return ZPartition(std::move(out));
  }

  /// "o:r,o:r,..."
  inline ZPartition parse_z_partition(std::string_view text) {
    std::vector<ResidueClass> classes;
    std::size_t               pos = 0;
    auto                      parse_uint = [&](std::string_view s) {
      if (s.empty()) {
        throw ParseError(0, "expected a number in \"" + std::string(text) + "\"");
      }
      std::uint64_t v = 0;
      for (char c : s) {
        if (c < '0' || c > '9') {
          throw ParseError(0, "invalid number \"" + std::string(s) + "\"");
        }
        v = v * 10 + static_cast<std::uint64_t>(c - '0');
      }
      return v;
    };
    auto trim = [](std::string_view s) {
      while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
      while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
      return s;
    };
    while (pos <= text.size()) {
      auto end   = std::min(text.find(',', pos), text.size());
      auto item  = trim(text.substr(pos, end - pos));
      auto colon = item.find(':');
      if (colon == std::string_view::npos) {
        throw ParseError(0, "expected o:r, got \"" + std::string(item) + "\"");
      }
      auto o = parse_uint(trim(item.substr(0, colon)));
      auto r = parse_uint(trim(item.substr(colon + 1)));
      if (o == 0 || r >= o) {
        throw ParseError(0, "residue class \"" + std::string(item)
                                + "\" needs 0 <= r < o");
      }
      classes.push_back(ResidueClass{o, r});
      pos = end + 1;
    }
    return ZPartition(std::move(classes));
  }

  inline std::string to_string(ZPartition const& z) {
    std::string s;
    for (std::size_t i = 0; i < z.size(); ++i) {
      s += (i ? "," : "") + std::to_string(z[i].modulus) + ":"
           + std::to_string(z[i].residue);
    }
    return s;
  }

}  // namespace hsforge
