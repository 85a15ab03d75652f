#pragma once

// Shared fixtures: the worked examples, random generators and brute-force
// oracles that avoid the library's own shortcuts.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <hsforge/partition.hpp>
#include <hsforge/perm.hpp>
#include <hsforge/schreier.hpp>
#include <hsforge/word.hpp>

namespace support {

  using namespace hsforge;

  inline Word w2(std::string const& s) {
    return parse_word(2, s);
  }

  inline std::vector<Word> words2(std::initializer_list<char const*> ws) {
    std::vector<Word> out;
    for (auto s : ws) {
      out.push_back(w2(s));
    }
    return out;
  }

  // ---- worked examples ----

  /// Index 3, transversal {1, a, ab}.
  inline CosetTable table_G() {
    return subgroup_table(2, words2({"b", "aa", "abba", "ababa"}));
  }

  /// Index 4, not normal.
  inline CosetTable table_K() {
    return subgroup_table(2, words2({"b", "aa", "abba", "abaaba", "abababa"}));
  }

  /// Index 2: words with an even number of a's.
  inline CosetTable table_H1() {
    return subgroup_table(2, words2({"b", "aa", "aba"}));
  }

  /// Normal, index 4, transition group Z2 x Z2: M, Ma, Mab, Mb.
  inline CosetTable table_M() {
    auto a = Permutation::from_cycles(4, {{0, 1}, {2, 3}});
    auto b = Permutation::from_cycles(4, {{1, 2}, {0, 3}});
    std::vector<std::vector<Vertex>> imgs{
        {a.images().begin(), a.images().end()}, {b.images().begin(), b.images().end()}};
    return CosetTable::from_generator_images(imgs);
  }

  inline CosetPartition full_cosets(CosetTable const& t, std::string const& name) {
    std::vector<CosetSpec> specs;
    for (auto const& rep : transversal(t)) {
      specs.emplace_back(name, t, rep);
    }
    return CosetPartition(t.rank(), std::move(specs)).checked();
  }

  /// {H1, K a, K ab}
  inline CosetPartition example_4_cycle() {
    return CosetPartition(2, {CosetSpec("H1", table_H1(), w2("")),
                              CosetSpec("K", table_K(), w2("a")),
                              CosetSpec("K", table_K(), w2("ab"))})
        .checked();
  }

  /// {H1, M a, M ab}
  inline CosetPartition example_no_4_cycle() {
    return CosetPartition(2, {CosetSpec("H1", table_H1(), w2("")),
                              CosetSpec("M", table_M(), w2("a")),
                              CosetSpec("M", table_M(), w2("ab"))})
        .checked();
  }

  // ---- random generators ----

  using Rng = std::mt19937_64;

  inline Word random_word(Rng& rng, unsigned rank, std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::uniform_int_distribution<std::size_t> letter(0, 2 * rank - 1);
    Word                                       w(rank);
    auto const                                 n = len(rng);
    while (w.length() < n) {
      w.push_back(Letter::from_index(letter(rng)));
    }
    return w;
  }

  inline Permutation random_perm(Rng& rng, std::size_t d) {
    std::vector<Vertex> img(d);
    for (Vertex i = 0; i < d; ++i) {
      img[i] = i;
    }
    std::shuffle(img.begin(), img.end(), rng);
    return Permutation(std::move(img));
  }

  inline bool transitive(std::vector<Permutation> const& gens, std::size_t d) {
    std::vector<bool>   seen(d, false);
    std::vector<Vertex> stack{0};
    seen[0]         = true;
    std::size_t cnt = 1;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (auto const& g : gens) {
        for (auto u : {g[v], g.inverse()[v]}) {
          if (!seen[u]) {
            seen[u] = true;
            ++cnt;
            stack.push_back(u);
          }
        }
      }
    }
    return cnt == d;
  }

  /// Random transitive action of F_rank on d points, as a coset table.
  inline CosetTable random_table(Rng& rng, unsigned rank, std::size_t d) {
    while (true) {
      std::vector<Permutation> gens;
      for (unsigned j = 0; j < rank; ++j) {
        gens.push_back(random_perm(rng, d));
      }
      if (!transitive(gens, d)) {
        continue;
      }
      std::vector<std::vector<Vertex>> imgs;
      for (auto const& g : gens) {
        imgs.emplace_back(g.images().begin(), g.images().end());
      }
      return CosetTable::from_generator_images(imgs);
    }
  }

  /// Random permutation group of order in [2, max_order] on at most 6 points.
  inline PermGroup random_quotient(Rng& rng, unsigned rank, std::size_t max_order) {
    std::uniform_int_distribution<std::size_t> deg(2, 6);
    while (true) {
      auto const               d = deg(rng);
      std::vector<Permutation> gens;
      for (unsigned j = 0; j < rank; ++j) {
        gens.push_back(random_perm(rng, d));
      }
      PermGroup g(d, gens);
      try {
        auto e = g.enumerate(max_order);
        if (e.order() >= 2) {
          return e;
        }
      } catch (CapExceeded const&) {
      }
    }
  }

  inline std::vector<Permutation> closure(std::vector<Permutation> gens, std::size_t degree) {
    std::set<Permutation>    seen{Permutation::identity(degree)};
    std::vector<Permutation> out{Permutation::identity(degree)};
    for (std::size_t h = 0; h < out.size(); ++h) {
      for (auto const& g : gens) {
        auto x = out[h] * g;
        if (seen.insert(x).second) {
          out.push_back(x);
        }
      }
    }
    return out;
  }

  /// Partition of G built by repeatedly replacing a block K g with the
  /// cosets L k g of a proper subgroup L < K.
  inline std::vector<QuotientBlock> random_refinement(Rng& rng, PermGroup const& G,
                                                      std::size_t steps) {
    auto const                 deg = G.degree();
    std::vector<Permutation>   all(G.elements().begin(), G.elements().end());
    std::vector<QuotientBlock> blocks{{all, Permutation::identity(deg)}};
    bool                       refined = false;
    for (std::size_t step = 0; step < steps || !refined; ++step) {
      std::uniform_int_distribution<std::size_t> pick(0, blocks.size() - 1);
      auto const                                 b = refined ? pick(rng) : 0;
      auto const                                 K = blocks[b].subgroup;
      if (K.size() < 2) {
        if (!refined) {
          break;
        }
        continue;
      }
      std::uniform_int_distribution<std::size_t> el(0, K.size() - 1);
      auto L = closure({K[el(rng)]}, deg);
      if (L.size() == K.size()) {
        L = {Permutation::identity(deg)};
      }
      std::set<Permutation>      used;
      std::vector<QuotientBlock> pieces;
      for (auto const& k : K) {
        if (used.contains(k)) {
          continue;
        }
        for (auto const& l : L) {
          used.insert(l * k);
        }
        pieces.push_back({L, k * blocks[b].rep});
      }
      blocks.erase(blocks.begin() + static_cast<std::ptrdiff_t>(b));
      blocks.insert(blocks.end(), pieces.begin(), pieces.end());
      refined = true;
    }
    return blocks;
  }

  inline CosetPartition random_partition(Rng& rng, unsigned rank, std::size_t max_order,
                                         std::size_t steps = 3) {
    auto G      = random_quotient(rng, rank, max_order);
    auto blocks = random_refinement(rng, G, steps);
    return lift_partition(G, blocks);
  }

  // ---- brute-force oracles ----

  /// All reduced words of length <= n.
  inline std::vector<Word> all_words(unsigned rank, std::size_t n) {
    std::vector<Word> out{Word(rank)};
    for (std::size_t h = 0; h < out.size(); ++h) {
      if (out[h].length() == n) {
        continue;
      }
      for (std::size_t x = 0; x < 2 * rank; ++x) {
        Word w = out[h];
        w.push_back(Letter::from_index(x));
        if (w.length() == out[h].length() + 1) {
          out.push_back(std::move(w));
        }
      }
    }
    return out;
  }

  /// u in H alpha  iff  u alpha^-1 in H.
  inline bool in_coset(CosetSpec const& c, Word const& u) {
    return c.table.contains(multiply(u, inverse(c.rep)));
  }

  /// Least k with alpha w^k alpha^-1 in H, by powering words.
  inline std::size_t rel_order_by_powers(CosetSpec const& c, Word const& w) {
    Word wk = w;
    for (std::size_t k = 1;; ++k) {
      if (c.table.contains(multiply(multiply(c.rep, wk), inverse(c.rep)))) {
        return k;
      }
      wk = multiply(wk, w);
    }
  }

  inline std::size_t lcm_all(std::vector<std::size_t> const& v) {
    std::size_t l = 1;
    for (auto x : v) {
      l = std::lcm(l, x);
    }
    return l;
  }

}  // namespace support
