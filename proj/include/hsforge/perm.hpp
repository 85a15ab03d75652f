#pragma once

// Permutations of coset vertices and the transition groups they generate.
//
// Permutations act on the right: (p * q)(v) = q(p(v)), so that evaluating a
// word left to right matches the right action Hg -> Hga on cosets.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "errors.hpp"
#include "schreier.hpp"
#include "word.hpp"

namespace hsforge {

  class Permutation {
   public:
    Permutation() = default;

    explicit Permutation(std::vector<Vertex> images)
        : images_(std::move(images)) {
      std::vector<bool> hit(images_.size(), false);
      for (Vertex v : images_) {
        if (v >= images_.size() || hit[v]) {
          throw InvalidArgument("image list is not a bijection");
        }
        hit[v] = true;
      }
    }

    static Permutation identity(std::size_t degree) {
      std::vector<Vertex> id(degree);
      std::iota(id.begin(), id.end(), Vertex(0));
      Permutation p;
      p.images_ = std::move(id);
      return p;
    }

    /// Builds a permutation of the given degree from disjoint cycles.
    static Permutation from_cycles(std::size_t degree,
                                   std::vector<std::vector<Vertex>> const& cycles) {
      auto images = identity(degree).images_;
      for (auto const& c : cycles) {
        for (std::size_t i = 0; i < c.size(); ++i) {
          images.at(c[i]) = c[(i + 1) % c.size()];
        }
      }
      return Permutation(std::move(images));
    }

    std::size_t degree() const noexcept {
      return images_.size();
    }

    Vertex operator[](Vertex v) const {
      return images_[v];
    }

    std::span<Vertex const> images() const noexcept {
      return images_;
    }

    bool is_identity() const noexcept {
      for (std::size_t i = 0; i < images_.size(); ++i) {
        if (images_[i] != i) {
          return false;
        }
      }
      return true;
    }

    /// this, then other.
    Permutation operator*(Permutation const& other) const {
      if (other.degree() != degree()) {
        throw InvalidArgument("degree mismatch in composition");
      }
      Permutation out;
      out.images_.resize(degree());
      for (std::size_t v = 0; v < degree(); ++v) {
        out.images_[v] = other.images_[images_[v]];
      }
      return out;
    }

    Permutation inverse() const {
      Permutation out;
      out.images_.resize(degree());
      for (std::size_t v = 0; v < degree(); ++v) {
        out.images_[images_[v]] = static_cast<Vertex>(v);
      }
      return out;
    }

    /// Disjoint cycles including fixed points, each starting at its least
    /// point.
    std::vector<std::vector<Vertex>> cycles() const {
      std::vector<std::vector<Vertex>> out;
      std::vector<bool>                seen(degree(), false);
      for (Vertex v = 0; v < degree(); ++v) {
        if (seen[v]) {
          continue;
        }
        auto& c = out.emplace_back();
        for (Vertex u = v; !seen[u]; u = images_[u]) {
          seen[u] = true;
          c.push_back(u);
        }
      }
      return out;
    }

    std::size_t cycle_length_at(Vertex v) const {
      std::size_t k = 1;
      for (Vertex u = images_[v]; u != v; u = images_[u]) {
        ++k;
      }
      return k;
    }

    /// Cycle lengths in descending order, fixed points included.
    std::vector<std::size_t> cycle_type() const {
      std::vector<std::size_t> t;
      for (auto const& c : cycles()) {
        t.push_back(c.size());
      }
      std::sort(t.rbegin(), t.rend());
      return t;
    }

    std::size_t max_cycle() const {
      std::size_t k = degree() == 0 ? 0 : 1;
      for (auto const& c : cycles()) {
        k = std::max(k, c.size());
      }
      return k;
    }

    /// Permutation order: lcm of the cycle lengths.
    std::size_t order() const {
      std::size_t o = 1;
      for (auto const& c : cycles()) {
        o = std::lcm(o, c.size());
      }
      return o;
    }

    bool operator==(Permutation const&) const = default;
    auto operator<=>(Permutation const&) const = default;

   private:
    std::vector<Vertex> images_;
  };

  /// Cycle notation with fixed points omitted; the identity prints as "()".
  inline std::string to_string(Permutation const& p) {
    std::string s;
    for (auto const& c : p.cycles()) {
      if (c.size() == 1) {
        continue;
      }
      s += '(';
      for (std::size_t i = 0; i < c.size(); ++i) {
        s += (i ? " " : "") + std::to_string(c[i]);
      }
      s += ')';
    }
    return s.empty() ? "()" : s;
  }

}  // namespace hsforge

template <>
struct std::hash<hsforge::Permutation> {
  std::size_t operator()(hsforge::Permutation const& p) const noexcept {
    std::size_t h = p.degree();
    for (auto v : p.images()) {
      h = h * 0x9E3779B97F4A7C15ull + v;
    }
    return h ^ (h >> 29);
  }
};

namespace hsforge {

  inline constexpr std::size_t default_cap = 1'000'000;

  /// Permutation group given by one generator per free generator, with an
  /// optional enumerated closure. Element 0 of the closure is the identity.
  class PermGroup {
   public:
    PermGroup(std::size_t degree, std::vector<Permutation> generators)
        : degree_(degree), generators_(std::move(generators)) {
      if (generators_.empty()) {
        throw InvalidArgument("a transition group needs at least one generator");
      }
      for (auto const& g : generators_) {
        if (g.degree() != degree_) {
          throw InvalidArgument("generator degree mismatch");
        }
      }
    }

    std::size_t degree() const noexcept {
      return degree_;
    }
    /// Rank of the free group mapping onto this group.
    unsigned rank() const noexcept {
      return static_cast<unsigned>(generators_.size());
    }
    std::span<Permutation const> generators() const noexcept {
      return generators_;
    }

    bool enumerated() const noexcept {
      return !elements_.empty();
    }
    std::size_t order() const {
      require_enumerated();
      return elements_.size();
    }
    std::span<Permutation const> elements() const {
      require_enumerated();
      return elements_;
    }
    /// Shortest-in-BFS word evaluating to elements()[i].
    Word const& witness(std::size_t i) const {
      require_enumerated();
      return words_[i];
    }
    std::optional<std::size_t> index_of(Permutation const& p) const {
      require_enumerated();
      auto it = lookup_.find(p);
      if (it == lookup_.end()) {
        return std::nullopt;
      }
      return it->second;
    }

    /// Image of a word under the epimorphism x_j -> generators()[j-1].
    Permutation eval(Word const& w) const {
      if (w.rank() != rank()) {
        throw RankMismatch(rank(), w.rank());
      }
      auto p = Permutation::identity(degree_);
      for (Letter l : w.letters()) {
        auto const& g = generators_[l.generator - 1];
        p             = p * (l.inverted ? g.inverse() : g);
      }
      return p;
    }

    /// Returns a copy holding the full closure; throws CapExceeded when the
    /// group has more than \p cap elements.
    PermGroup enumerate(std::size_t cap = default_cap) const {
      if (cap == 0) {
        throw InvalidArgument("cap must be at least 1");
      }
      if (enumerated()) {
        if (elements_.size() > cap) {
          throw CapExceeded(cap);
        }
        return *this;
      }
      PermGroup out = *this;
      std::vector<Permutation> letters;
      for (auto const& g : generators_) {
        letters.push_back(g);
        letters.push_back(g.inverse());
      }
      out.add(Permutation::identity(degree_), Word(rank()), cap);
      for (std::size_t head = 0; head < out.elements_.size(); ++head) {
        for (std::size_t x = 0; x < letters.size(); ++x) {
          auto next = out.elements_[head] * letters[x];
          if (out.lookup_.contains(next)) {
            continue;
          }
          Word w = out.words_[head];
          w.push_back(Letter::from_index(x));
          out.add(std::move(next), std::move(w), cap);
        }
      }
      return out;
    }

   private:
    void require_enumerated() const {
      if (!enumerated()) {
        throw InvalidArgument("permutation group has not been enumerated");
      }
    }

    void add(Permutation p, Word w, std::size_t cap) {
      if (elements_.size() >= cap) {
        throw CapExceeded(cap);
      }
      lookup_.emplace(p, elements_.size());
      elements_.push_back(std::move(p));
      words_.push_back(std::move(w));
    }

    std::size_t                                  degree_;
    std::vector<Permutation>                     generators_;
    std::vector<Permutation>                     elements_;
    std::vector<Word>                            words_;
    std::unordered_map<Permutation, std::size_t> lookup_;
  };

  /// T: generator j acts by v -> delta(v, x_j).
  inline PermGroup transition_group(CosetTable const& t) {
    std::vector<Permutation> gens;
    for (std::uint32_t g = 1; g <= t.rank(); ++g) {
      std::vector<Vertex> images(t.index());
      for (Vertex v = 0; v < t.index(); ++v) {
        images[v] = t.target(v, Letter{g, false}.index());
      }
      gens.emplace_back(std::move(images));
    }
    return PermGroup(t.index(), std::move(gens));
  }

  inline PermGroup enumerate(PermGroup const& g, std::size_t cap = default_cap) {
    return g.enumerate(cap);
  }

  inline Permutation eval(PermGroup const& g, Word const& w) {
    return g.eval(w);
  }

  struct CycleWitness {
    std::size_t k;
    Word        witness;
  };

  /// Longest cycle over all elements, with the first (BFS) element realising
  /// it.
  inline CycleWitness max_cycle_length(PermGroup const& g,
                                       std::size_t      cap = default_cap) {
    auto const   closed = g.enumerate(cap);
    CycleWitness best{0, Word(g.rank())};
    for (std::size_t i = 0; i < closed.order(); ++i) {
      auto k = closed.elements()[i].max_cycle();
      if (k > best.k) {
        best = CycleWitness{k, closed.witness(i)};
      }
    }
    return best;
  }

  /// Some element with a k-cycle through \p point, or nullopt if the whole
  /// closure has none.
  inline std::optional<Word> has_k_cycle_at(PermGroup const& g, std::size_t k,
                                            Vertex      point,
                                            std::size_t cap = default_cap) {
    if (k == 0 || k > g.degree() || point >= g.degree()) {
      throw InvalidArgument("cycle length or point out of range");
    }
    auto const closed = g.enumerate(cap);
    for (std::size_t i = 0; i < closed.order(); ++i) {
      if (closed.elements()[i].cycle_length_at(point) == k) {
        return closed.witness(i);
      }
    }
    return std::nullopt;
  }

  struct CycleTypeEntry {
    std::vector<std::size_t> type;  // descending, fixed points included
    std::size_t              count;
    Word                     witness;
  };

  /// Every cycle type occurring in the group, with a multiplicity and the
  /// first element (in BFS order) having that type.
  inline std::vector<CycleTypeEntry> cycle_type_report(
      PermGroup const& g, std::size_t cap = default_cap) {
    auto const closed = g.enumerate(cap);
    std::map<std::vector<std::size_t>, std::size_t> slot;
    std::vector<CycleTypeEntry>                     out;
    for (std::size_t i = 0; i < closed.order(); ++i) {
      auto type       = closed.elements()[i].cycle_type();
      auto [it, isnew] = slot.emplace(type, out.size());
      if (isnew) {
        out.push_back(CycleTypeEntry{std::move(type), 0, closed.witness(i)});
      }
      ++out[it->second].count;
    }
    std::sort(out.begin(), out.end(), [](auto const& a, auto const& b) {
      return a.type > b.type;
    });
    return out;
  }

}  // namespace hsforge
