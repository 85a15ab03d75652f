#pragma once

// The HS-colored graph of a coset partition along a word w: the Schreier
// graph of N (the intersection of all normal cores) with each coset Ng
// colored by the unique block H_i a_i containing it, read along w-steps.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <vector>

#include "errors.hpp"
#include "partition.hpp"
#include "perm.hpp"
#include "schreier.hpp"
#include "z_cover.hpp"

namespace hsforge {

  /// How one block shows up in a loop.
  struct LoopParticipant {
    std::size_t block;
    std::size_t count;    // vertices of this color in the loop
    std::size_t spacing;  // distance between consecutive ones (loop length if
                          // count == 1); 0 if not uniform
    std::size_t first;    // position of the first one from the loop origin
  };

  struct HSLoop {
    std::vector<Vertex>          vertices;  // starts at the least vertex
    std::vector<LoopParticipant> participants;  // ascending block

    std::size_t length() const noexcept {
      return vertices.size();
    }
    bool has_block(std::size_t b) const {
      return std::any_of(participants.begin(), participants.end(),
                         [b](auto const& q) { return q.block == b; });
    }
  };

  /// o_N(w): the order of w modulo N, from the transition groups alone.
  inline std::size_t order_mod_N(CosetPartition const& p, Word const& w) {
    std::size_t o = 1;
    for (auto const& c : p.blocks()) {
      o = std::lcm(o, transition_group(c.table).eval(w).order());
    }
    return o;
  }

  class HSColoredGraph {
   public:
    static HSColoredGraph build(CosetPartition const& p, Word const& w,
                                Caps caps = {}) {
      require_validated(p);
      HSColoredGraph g(big_N(p, caps), w);
      auto const     tv = transversal(g.n_table_);
      g.color_.resize(g.m());
      for (Vertex v = 0; v < g.m(); ++v) {
        std::size_t hits = 0;
        for (std::size_t i = 0; i < p.size(); ++i) {
          if (p[i].table.coset_of(tv[v]) == p[i].marked) {
            g.color_[v] = i;
            ++hits;
          }
        }
        if (hits != 1) {
          throw NotAPartition("coset N" + display(tv[v]) + " lies in "
                              + std::to_string(hits) + " blocks");
        }
      }
      g.next_.resize(g.m());
      for (Vertex v = 0; v < g.m(); ++v) {
        g.next_[v] = g.n_table_.trace(v, w);
      }
      g.o_N_    = order_mod_N(p, w);
      g.orders_ = orders_rel(p, w);
      g.index_  = p.indices();
      return g;
    }

    CosetTable const& n_table() const noexcept {
      return n_table_;
    }
    Word const& word() const noexcept {
      return w_;
    }
    /// Index m of N.
    std::size_t m() const noexcept {
      return n_table_.index();
    }
    std::size_t blocks() const noexcept {
      return index_.size();
    }
    std::size_t color(Vertex v) const {
      return color_[v];
    }
    Vertex next(Vertex v) const {
      return next_[v];
    }
    std::size_t o_N() const noexcept {
      return o_N_;
    }
    /// o_{*i}(w)
    std::size_t rel_order(std::size_t block) const {
      return orders_[block];
    }
    std::size_t block_index(std::size_t block) const {
      return index_[block];
    }

    /// Vertices colored by \p block (the fiber over H_i a_i).
    std::vector<Vertex> fiber(std::size_t block) const {
      std::vector<Vertex> f;
      for (Vertex v = 0; v < m(); ++v) {
        if (color_[v] == block) {
          f.push_back(v);
        }
      }
      return f;
    }

    /// The cycles of the w-step permutation, ordered by least vertex.
    std::vector<HSLoop> loops() const {
      std::vector<HSLoop> out;
      std::vector<bool>   seen(m(), false);
      for (Vertex v = 0; v < m(); ++v) {
        if (seen[v]) {
          continue;
        }
        HSLoop loop;
        for (Vertex u = v; !seen[u]; u = next_[u]) {
          seen[u] = true;
          loop.vertices.push_back(u);
        }
        std::map<std::size_t, std::vector<std::size_t>> positions;
        for (std::size_t i = 0; i < loop.length(); ++i) {
          positions[color_[loop.vertices[i]]].push_back(i);
        }
        for (auto const& [block, pos] : positions) {
          std::size_t spacing = loop.length() / pos.size();
          for (std::size_t j = 0; j < pos.size(); ++j) {
            auto nxt = (j + 1 < pos.size()) ? pos[j + 1] : pos[0] + loop.length();
            if (nxt - pos[j] != spacing) {
              spacing = 0;
            }
          }
          loop.participants.push_back(
              LoopParticipant{block, pos.size(), spacing, pos.front()});
        }
        out.push_back(std::move(loop));
      }
      return out;
    }

   private:
    HSColoredGraph(CosetTable n, Word w)
        : n_table_(std::move(n)), w_(std::move(w)) {}

    CosetTable               n_table_;
    Word                     w_;
    std::vector<std::size_t> color_;
    std::vector<Vertex>      next_;
    std::size_t              o_N_ = 1;
    std::vector<std::size_t> orders_;
    std::vector<std::size_t> index_;
  };

  /// The exact cover of Z traced by one loop: block i contributes the class
  /// o_{*i}(w) Z + (first position of color i).
  inline ZPartition loop_z_partition(HSLoop const& loop, HSColoredGraph const& g) {
    std::vector<std::size_t>             colors;
    std::map<std::size_t, std::uint64_t> moduli;
    for (auto v : loop.vertices) {
      colors.push_back(g.color(v));
    }
    for (auto const& q : loop.participants) {
      moduli[q.block] = g.rel_order(q.block);
    }
    return from_colored_loop(loop.length(), colors, moduli);
  }

  /// Number of loops the fiber over block i meets.
  inline std::size_t fiber_loop_count(HSColoredGraph const& g, std::size_t block) {
    std::size_t n = 0;
    for (auto const& loop : g.loops()) {
      n += loop.has_block(block) ? 1 : 0;
    }
    return n;
  }

}  // namespace hsforge
