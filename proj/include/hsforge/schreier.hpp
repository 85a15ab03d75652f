#pragma once

// Stallings folding and Schreier coset tables of subgroups of F_n.
//
// Every CosetTable is stored in canonical form: vertices are numbered in
// breadth-first order from the basepoint, exploring letters in the order
// a < A < b < B < ...  Two tables therefore compare equal iff they describe
// the same subgroup.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "errors.hpp"
#include "word.hpp"

namespace hsforge {

  using Vertex = std::uint32_t;

  inline constexpr Vertex no_vertex = std::numeric_limits<Vertex>::max();

  namespace detail {
    // BFS relabelling of a (possibly partial) inverse-closed transition
    // function. Returns old -> new; unreachable vertices map to no_vertex.
    inline std::vector<Vertex> bfs_order(std::span<Vertex const> delta,
                                         std::size_t             vertices,
                                         std::size_t             letters,
                                         Vertex                  root = 0) {
      std::vector<Vertex> relabel(vertices, no_vertex);
      std::vector<Vertex> queue;
      queue.reserve(vertices);
      relabel[root] = 0;
      queue.push_back(root);
      for (std::size_t head = 0; head < queue.size(); ++head) {
        Vertex v = queue[head];
        for (std::size_t x = 0; x < letters; ++x) {
          Vertex u = delta[v * letters + x];
          if (u != no_vertex && relabel[u] == no_vertex) {
            relabel[u] = static_cast<Vertex>(queue.size());
            queue.push_back(u);
          }
        }
      }
      return relabel;
    }

    inline std::vector<Vertex> apply_relabel(std::span<Vertex const> delta,
                                             std::span<Vertex const> relabel,
                                             std::size_t             kept,
                                             std::size_t             letters) {
      std::vector<Vertex> out(kept * letters, no_vertex);
      for (std::size_t v = 0; v < relabel.size(); ++v) {
        if (relabel[v] == no_vertex) {
          continue;
        }
        for (std::size_t x = 0; x < letters; ++x) {
          Vertex u = delta[v * letters + x];
          out[relabel[v] * letters + x] = (u == no_vertex ? no_vertex
                                                          : relabel[u]);
        }
      }
      return out;
    }

    // Minimal-length words reaching each vertex, ties broken by letter order.
    inline std::vector<Word> bfs_words(std::span<Vertex const> delta,
                                       std::size_t             vertices,
                                       unsigned                rank) {
      std::size_t const  letters = 2 * rank;
      std::vector<Word>  words(vertices, Word(rank));
      std::vector<bool>  seen(vertices, false);
      std::deque<Vertex> queue{0};
      seen[0] = true;
      while (!queue.empty()) {
        Vertex v = queue.front();
        queue.pop_front();
        for (std::size_t x = 0; x < letters; ++x) {
          Vertex u = delta[v * letters + x];
          if (u != no_vertex && !seen[u]) {
            seen[u]  = true;
            words[u] = words[v];
            words[u].push_back(Letter::from_index(x));
            queue.push_back(u);
          }
        }
      }
      return words;
    }
  }  // namespace detail

  /// A folded (bi-deterministic) based graph, possibly missing transitions.
  class StallingsGraph {
   public:
    StallingsGraph(unsigned rank, std::size_t vertices,
                   std::vector<Vertex> delta)
        : rank_(rank), vertices_(vertices), delta_(std::move(delta)) {}

    unsigned rank() const noexcept {
      return rank_;
    }
    std::size_t vertex_count() const noexcept {
      return vertices_;
    }
    std::size_t alphabet_size() const noexcept {
      return 2 * std::size_t(rank_);
    }
    /// no_vertex when the transition is absent.
    Vertex target(Vertex v, std::size_t letter) const {
      return delta_[v * alphabet_size() + letter];
    }
    std::span<Vertex const> transitions() const noexcept {
      return delta_;
    }

    bool is_complete() const noexcept {
      return std::find(delta_.begin(), delta_.end(), no_vertex)
             == delta_.end();
    }

    /// Endpoint of the path labelled w from start, or no_vertex if the path
    /// leaves the graph.
    Vertex trace(Vertex start, Word const& w) const {
      Vertex v = start;
      for (Letter l : w.letters()) {
        v = target(v, l.index());
        if (v == no_vertex) {
          return no_vertex;
        }
      }
      return v;
    }

    bool accepts(Word const& w) const {
      return trace(0, w) == 0;
    }

    bool operator==(StallingsGraph const&) const = default;

   private:
    unsigned            rank_;
    std::size_t         vertices_;
    std::vector<Vertex> delta_;
  };

  namespace detail {
    // Union-find folding. Targets may be stale and are resolved through
    // find() on every read; merging moves the loser's edges onto the root
    // and queues any clash as a further merge.
    class Folder {
     public:
      explicit Folder(unsigned rank) : letters_(2 * std::size_t(rank)) {
        add_vertex();
      }

      Vertex add_vertex() {
        Vertex v = static_cast<Vertex>(parent_.size());
        parent_.push_back(v);
        delta_.resize(delta_.size() + letters_, no_vertex);
        return v;
      }

      void add_edge(Vertex u, std::size_t x, Vertex v) {
        attach(find(u), x, find(v));
        attach(find(v), inverse_index(x), find(u));
        drain();
      }

      Vertex find(Vertex v) {
        while (parent_[v] != v) {
          parent_[v] = parent_[parent_[v]];
          v          = parent_[v];
        }
        return v;
      }

      StallingsGraph result(unsigned rank) {
        std::size_t const   n = parent_.size();
        std::vector<Vertex> resolved(n * letters_, no_vertex);
        for (Vertex v = 0; v < n; ++v) {
          if (find(v) != v) {
            continue;
          }
          for (std::size_t x = 0; x < letters_; ++x) {
            Vertex u = delta_[v * letters_ + x];
            if (u != no_vertex) {
              resolved[v * letters_ + x] = find(u);
            }
          }
        }
        auto relabel = bfs_order(resolved, n, letters_, find(0));
        auto kept = static_cast<std::size_t>(
            std::count_if(relabel.begin(), relabel.end(), [](Vertex r) {
              return r != no_vertex;
            }));
        return StallingsGraph(
            rank, kept, apply_relabel(resolved, relabel, kept, letters_));
      }

     private:
      void attach(Vertex u, std::size_t x, Vertex v) {
        Vertex& slot = delta_[u * letters_ + x];
        if (slot == no_vertex) {
          slot = v;
        } else if (find(slot) != v) {
          pending_.emplace_back(find(slot), v);
        }
      }

      void drain() {
        while (!pending_.empty()) {
          auto [a, b] = pending_.back();
          pending_.pop_back();
          a = find(a);
          b = find(b);
          if (a == b) {
            continue;
          }
          if (a > b) {
            std::swap(a, b);
          }
          parent_[b] = a;
          for (std::size_t x = 0; x < letters_; ++x) {
            Vertex t = delta_[b * letters_ + x];
            if (t != no_vertex) {
              attach(a, x, find(t));
            }
          }
        }
      }

      std::size_t                            letters_;
      std::vector<Vertex>                    parent_;
      std::vector<Vertex>                    delta_;
      std::vector<std::pair<Vertex, Vertex>> pending_;
    };
  }  // namespace detail

  /// Folds the wedge of loops spelled by \p gens at the basepoint.
  inline StallingsGraph fold_from_generators(unsigned                rank,
                                             std::span<Word const> gens) {
    detail::Folder folder(rank);
    for (Word const& g : gens) {
      if (g.rank() != rank) {
        throw RankMismatch(rank, g.rank());
      }
      if (g.empty()) {
        continue;
      }
      Vertex v = 0;
      for (std::size_t i = 0; i < g.length(); ++i) {
        Vertex next = (i + 1 == g.length()) ? 0 : folder.add_vertex();
        folder.add_edge(v, g[i].index(), next);
        v = next;
      }
    }
    return folder.result(rank);
  }

  inline StallingsGraph fold_from_generators(unsigned                    rank,
                                             std::initializer_list<Word> gens) {
    return fold_from_generators(rank,
                                std::span<Word const>(gens.begin(), gens.size()));
  }

  /// Complete, inverse-consistent, connected based graph on d vertices: the
  /// Schreier graph of a finite-index subgroup. Always canonical.
  class CosetTable {
   public:
    /// \p delta is row-major: delta[v * 2n + letter]. Throws InvalidArgument
    /// unless the table is complete, inverse-consistent and connected.
    CosetTable(unsigned rank, std::size_t index, std::vector<Vertex> delta)
        : rank_(rank), index_(index) {
      std::size_t const letters = alphabet_size();
      if (rank == 0 || index == 0) {
        throw InvalidArgument("coset table needs rank >= 1 and index >= 1");
      }
      if (delta.size() != index * letters) {
        throw InvalidArgument("coset table has wrong size");
      }
      for (std::size_t v = 0; v < index; ++v) {
        for (std::size_t x = 0; x < letters; ++x) {
          Vertex u = delta[v * letters + x];
          if (u == no_vertex || u >= index) {
            throw InvalidArgument("coset table is not complete at vertex "
                                  + std::to_string(v));
          }
          if (delta[u * letters + inverse_index(x)] != v) {
            throw InvalidArgument(
                "coset table is not inverse-consistent at vertex "
                + std::to_string(v));
          }
        }
      }
      auto relabel = detail::bfs_order(delta, index, letters);
      if (std::find(relabel.begin(), relabel.end(), no_vertex)
          != relabel.end()) {
        throw InvalidArgument("coset table is not connected");
      }
      delta_ = detail::apply_relabel(delta, relabel, index, letters);
    }

    /// The table of F_n itself.
    static CosetTable whole_group(unsigned rank) {
      return CosetTable(rank, 1, std::vector<Vertex>(2 * std::size_t(rank), 0));
    }

    /// Builds a table from one permutation image list per generator;
    /// images[g][v] is the target of vertex v under x_{g+1}.
    static CosetTable from_generator_images(
        std::span<std::vector<Vertex> const> images) {
      if (images.empty()) {
        throw InvalidArgument("need at least one generator");
      }
      auto const  rank    = static_cast<unsigned>(images.size());
      std::size_t d       = images.front().size();
      std::size_t letters = 2 * std::size_t(rank);
      std::vector<Vertex> delta(d * letters, no_vertex);
      for (std::size_t g = 0; g < rank; ++g) {
        if (images[g].size() != d) {
          throw InvalidArgument("generator images have different degrees");
        }
        for (std::size_t v = 0; v < d; ++v) {
          Vertex u = images[g][v];
          if (u >= d || delta[u * letters + 2 * g + 1] != no_vertex) {
            throw InvalidArgument("generator image is not a permutation");
          }
          delta[v * letters + 2 * g]     = u;
          delta[u * letters + 2 * g + 1] = static_cast<Vertex>(v);
        }
      }
      return CosetTable(rank, d, std::move(delta));
    }

    unsigned rank() const noexcept {
      return rank_;
    }
    std::size_t index() const noexcept {
      return index_;
    }
    std::size_t alphabet_size() const noexcept {
      return 2 * std::size_t(rank_);
    }
    Vertex target(Vertex v, std::size_t letter) const {
      return delta_[v * alphabet_size() + letter];
    }
    /// Canonical encoding of the transition function.
    std::span<Vertex const> transitions() const noexcept {
      return delta_;
    }

    Vertex trace(Vertex start, Word const& w) const {
      if (w.rank() != rank_) {
        throw RankMismatch(rank_, w.rank());
      }
      Vertex v = start;
      for (Letter l : w.letters()) {
        v = target(v, l.index());
      }
      return v;
    }

    /// The vertex Hw; 0 iff w is in H.
    Vertex coset_of(Word const& w) const {
      return trace(0, w);
    }

    bool contains(Word const& w) const {
      return coset_of(w) == 0;
    }

    bool operator==(CosetTable const&) const = default;

    /// Orders by index, then lexicographically by the canonical encoding.
    std::strong_ordering operator<=>(CosetTable const& other) const {
      if (auto c = rank_ <=> other.rank_; c != 0) {
        return c;
      }
      if (auto c = index_ <=> other.index_; c != 0) {
        return c;
      }
      return std::lexicographical_compare_three_way(delta_.begin(),
                                                    delta_.end(),
                                                    other.delta_.begin(),
                                                    other.delta_.end());
    }

   private:
    unsigned            rank_;
    std::size_t         index_;
    std::vector<Vertex> delta_;
  };

  /// Returns the coset table of the folded graph, or throws InfiniteIndex.
  inline CosetTable try_complete(StallingsGraph const& g) {
    std::size_t const letters = g.alphabet_size();
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      for (std::size_t x = 0; x < letters; ++x) {
        if (g.target(v, x) == no_vertex) {
          throw InfiniteIndex(v, std::string(1, letter_char(Letter::from_index(x))));
        }
      }
    }
    return CosetTable(g.rank(), g.vertex_count(),
                      std::vector<Vertex>(g.transitions().begin(),
                                          g.transitions().end()));
  }

  /// Shortcut for try_complete(fold_from_generators(rank, gens)).
  inline CosetTable subgroup_table(unsigned rank, std::span<Word const> gens) {
    return try_complete(fold_from_generators(rank, gens));
  }

  inline CosetTable subgroup_table(unsigned rank, std::initializer_list<Word> gens) {
    return subgroup_table(rank, std::span<Word const>(gens.begin(), gens.size()));
  }

  using Transversal = std::vector<Word>;

  /// t_i for every vertex i: BFS-minimal words, t_0 empty.
  inline Transversal transversal(CosetTable const& t) {
    return detail::bfs_words(t.transitions(), t.index(), t.rank());
  }

  inline Transversal transversal(StallingsGraph const& g) {
    return detail::bfs_words(g.transitions(), g.vertex_count(), g.rank());
  }

  /// Free generators t_v x t_{vx}^{-1} for each non-tree edge.
  inline std::vector<Word> schreier_generators(CosetTable const& t) {
    auto              tv = transversal(t);
    std::vector<Word> gens;
    for (Vertex v = 0; v < t.index(); ++v) {
      for (std::uint32_t g = 1; g <= t.rank(); ++g) {
        Letter x{g, false};
        Vertex u = t.target(v, x.index());
        Word   w = tv[v];
        w.push_back(x);
        w = multiply(w, inverse(tv[u]));
        if (!w.empty()) {
          gens.push_back(std::move(w));
        }
      }
    }
    return gens;
  }

  /// o(w, i): least k >= 1 with w^k a loop at vertex i.
  inline std::size_t order_at(CosetTable const& t, Word const& w, Vertex i) {
    std::size_t k = 1;
    for (Vertex v = t.trace(i, w); v != i; v = t.trace(v, w)) {
      ++k;
    }
    return k;
  }

  /// V_{w,i}, sorted ascending.
  inline std::vector<Vertex> visited_set(CosetTable const& t, Word const& w,
                                         Vertex i) {
    std::vector<Vertex> out{i};
    for (Vertex v = t.trace(i, w); v != i; v = t.trace(v, w)) {
      out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// The w-steps of a coset table: next(v) = v . w.
  class WFunctionalGraph {
   public:
    WFunctionalGraph(Word w, std::vector<Vertex> next)
        : w_(std::move(w)), next_(std::move(next)) {}

    Word const& word() const noexcept {
      return w_;
    }
    std::size_t size() const noexcept {
      return next_.size();
    }
    Vertex next(Vertex v) const {
      return next_[v];
    }
    std::span<Vertex const> steps() const noexcept {
      return next_;
    }

    /// Cycles of the w-step permutation, each starting at its least vertex,
    /// listed by that vertex.
    std::vector<std::vector<Vertex>> cycles() const {
      std::vector<std::vector<Vertex>> out;
      std::vector<bool>                seen(next_.size(), false);
      for (Vertex v = 0; v < next_.size(); ++v) {
        if (seen[v]) {
          continue;
        }
        auto& c = out.emplace_back();
        for (Vertex u = v; !seen[u]; u = next_[u]) {
          seen[u] = true;
          c.push_back(u);
        }
      }
      return out;
    }

   private:
    Word                w_;
    std::vector<Vertex> next_;
  };

  inline WFunctionalGraph w_graph(CosetTable const& t, Word const& w) {
    std::vector<Vertex> next(t.index());
    for (Vertex v = 0; v < t.index(); ++v) {
      next[v] = t.trace(v, w);
    }
    return WFunctionalGraph(w, std::move(next));
  }

}  // namespace hsforge
