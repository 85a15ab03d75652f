#pragma once

// Coset partitions {H_i a_i} of F_n and the machinery to check and analyse
// them: product automata, normal cores, the group N, relative orders, the
// right action of F_n and the distance between partitions.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "perm.hpp"
#include "schreier.hpp"
#include "word.hpp"

namespace hsforge {

  struct Caps {
    std::size_t states = default_cap;
    std::size_t group  = default_cap;
  };

  /// One block H_i a_i. \c marked is the vertex of H_i a_i in the table.
  struct CosetSpec {
    std::string name;
    CosetTable  table;
    Word        rep;
    Vertex      marked;

    CosetSpec(std::string name_, CosetTable table_, Word rep_)
        : name(std::move(name_)),
          table(std::move(table_)),
          rep(std::move(rep_)),
          marked(table.coset_of(rep)) {}

    std::size_t index() const noexcept {
      return table.index();
    }
  };

  class CosetPartition;
  struct ValidationReport;
  ValidationReport validate(CosetPartition const& p, std::size_t state_cap);

  /// Blocks are kept in the order given; use sorted_by_index() for the
  /// d_1 <= ... <= d_s view.
  class CosetPartition {
   public:
    CosetPartition(unsigned rank, std::vector<CosetSpec> cosets)
        : rank_(rank), cosets_(std::move(cosets)) {
      if (cosets_.empty()) {
        throw InvalidArgument("a coset partition needs at least one block");
      }
      for (auto const& c : cosets_) {
        if (c.table.rank() != rank_) {
          throw RankMismatch(rank_, c.table.rank());
        }
        if (c.rep.rank() != rank_) {
          throw RankMismatch(rank_, c.rep.rank());
        }
      }
    }

    unsigned rank() const noexcept {
      return rank_;
    }
    std::size_t size() const noexcept {
      return cosets_.size();
    }
    CosetSpec const& operator[](std::size_t i) const {
      return cosets_[i];
    }
    std::span<CosetSpec const> blocks() const noexcept {
      return cosets_;
    }
    bool validated() const noexcept {
      return validated_;
    }

    /// Indices d_i in block order.
    std::vector<std::size_t> indices() const {
      std::vector<std::size_t> d;
      for (auto const& c : cosets_) {
        d.push_back(c.index());
      }
      return d;
    }

    /// Block positions ordered by ascending index (stable).
    std::vector<std::size_t> sorted_by_index() const {
      std::vector<std::size_t> order(size());
      std::iota(order.begin(), order.end(), std::size_t(0));
      std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
        return cosets_[a].index() < cosets_[b].index();
      });
      return order;
    }

    /// Validates and returns a copy flagged as validated; throws
    /// NotAPartition with the witness otherwise.
    CosetPartition checked(std::size_t state_cap = default_cap) const;

    /// Same tables, representatives a_i * w.
    CosetPartition acted(Word const& w) const {
      CosetPartition out = *this;
      for (auto& c : out.cosets_) {
        c.rep    = multiply(c.rep, w);
        c.marked = c.table.trace(c.marked, w);
      }
      return out;
    }

   private:
    unsigned               rank_;
    std::vector<CosetSpec> cosets_;
    bool                   validated_ = false;
  };

  inline void require_validated(CosetPartition const& p) {
    if (!p.validated()) {
      throw InvalidArgument("coset partition has not been validated");
    }
  }

  namespace detail {
    struct TupleHash {
      std::size_t operator()(std::vector<Vertex> const& t) const noexcept {
        std::size_t h = t.size();
        for (auto v : t) {
          h = h * 0x100000001B3ull ^ v;
        }
        return h;
      }
    };
  }  // namespace detail

  /// Reachable part of the product of coset tables from a tuple of
  /// basepoints: the Schreier graph of the intersection of the stabilisers.
  class ProductAutomaton {
   public:
    ProductAutomaton(std::vector<CosetTable const*> tables,
                     std::vector<Vertex>            basepoints,
                     std::size_t                    state_cap = default_cap)
        : width_(tables.size()) {
      if (tables.size() != basepoints.size()) {
        throw InvalidArgument("one basepoint per table required");
      }
      if (state_cap == 0) {
        throw InvalidArgument("state cap must be at least 1");
      }
      rank_ = tables.empty() ? 1 : tables.front()->rank();
      for (std::size_t i = 0; i < tables.size(); ++i) {
        if (tables[i]->rank() != rank_) {
          throw RankMismatch(rank_, tables[i]->rank());
        }
        if (basepoints[i] >= tables[i]->index()) {
          throw InvalidArgument("basepoint out of range");
        }
      }
      std::size_t const width   = tables.size();
      std::size_t const letters = 2 * std::size_t(rank_);
      std::unordered_map<std::vector<Vertex>, Vertex, detail::TupleHash> seen;
      auto push = [&](std::vector<Vertex> t, Vertex parent, std::size_t x) {
        if (count_ >= state_cap) {
          throw StateCapExceeded(state_cap);
        }
        auto id = static_cast<Vertex>(count_);
        seen.emplace(t, id);
        states_.insert(states_.end(), t.begin(), t.end());
        parent_.push_back(parent);
        parent_letter_.push_back(x);
        ++count_;
        return id;
      };
      push(basepoints, no_vertex, 0);
      std::vector<Vertex> next(width);
      for (std::size_t head = 0; head < count_; ++head) {
        for (std::size_t x = 0; x < letters; ++x) {
          for (std::size_t i = 0; i < width; ++i) {
            next[i] = tables[i]->target(states_[head * width + i], x);
          }
          auto   it = seen.find(next);
          Vertex id = (it != seen.end()) ? it->second
                                         : push(next, static_cast<Vertex>(head), x);
          delta_.push_back(id);
        }
      }
    }

    unsigned rank() const noexcept {
      return rank_;
    }
    std::size_t size() const noexcept {
      return count_;
    }
    std::size_t width() const noexcept {
      return width_;
    }
    std::span<Vertex const> state(std::size_t i) const {
      return std::span<Vertex const>(states_).subspan(i * width(), width());
    }
    Vertex target(Vertex s, std::size_t letter) const {
      return delta_[s * 2 * std::size_t(rank_) + letter];
    }

    /// BFS word from the initial state to state i.
    Word word_to(std::size_t i) const {
      std::vector<Letter> rev;
      for (auto s = static_cast<Vertex>(i); parent_[s] != no_vertex;
           s      = parent_[s]) {
        rev.push_back(Letter::from_index(parent_letter_[s]));
      }
      std::reverse(rev.begin(), rev.end());
      return Word(rank_, rev);
    }

    CosetTable to_table() const {
      return CosetTable(rank_, count_, delta_);
    }

   private:
    std::size_t                    width_;
    unsigned                       rank_  = 1;
    std::size_t                    count_ = 0;
    std::vector<Vertex>            states_;
    std::vector<Vertex>            delta_;
    std::vector<Vertex>            parent_;
    std::vector<std::size_t>       parent_letter_;
  };

  inline ProductAutomaton product(std::span<CosetTable const> tables,
                                  std::span<Vertex const>     basepoints,
                                  std::size_t state_cap = default_cap) {
    std::vector<CosetTable const*> ptrs;
    for (auto const& t : tables) {
      ptrs.push_back(&t);
    }
    return ProductAutomaton(std::move(ptrs),
                            std::vector<Vertex>(basepoints.begin(), basepoints.end()),
                            state_cap);
  }

  struct OverlapWitness {
    Word        word;
    std::size_t first;
    std::size_t second;
  };

  struct ValidationReport {
    bool                          valid;
    std::optional<OverlapWitness> overlap;
    std::optional<Word>           gap;
    std::size_t                   states;
  };

  /// Checks every state of the product automaton based at (0, ..., 0) is
  /// marked by exactly one block.
  inline ValidationReport validate(CosetPartition const& p,
                                   std::size_t state_cap = default_cap) {
    std::vector<CosetTable const*> tables;
    for (auto const& c : p.blocks()) {
      tables.push_back(&c.table);
    }
    ProductAutomaton prod(tables, std::vector<Vertex>(p.size(), 0), state_cap);
    ValidationReport report{true, std::nullopt, std::nullopt, prod.size()};
    for (std::size_t s = 0; s < prod.size(); ++s) {
      auto                     st = prod.state(s);
      std::vector<std::size_t> hits;
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (st[i] == p[i].marked) {
          hits.push_back(i);
        }
      }
      if (hits.size() == 1) {
        continue;
      }
      report.valid = false;
      if (hits.empty()) {
        report.gap = prod.word_to(s);
      } else {
        report.overlap = OverlapWitness{prod.word_to(s), hits[0], hits[1]};
      }
      break;
    }
    return report;
  }

  inline CosetPartition CosetPartition::checked(std::size_t state_cap) const {
    auto report = validate(*this, state_cap);
    if (!report.valid) {
      if (report.gap) {
        throw NotAPartition("cosets do not cover F_n: " + display(*report.gap)
                            + " lies in no block");
      }
      throw NotAPartition("cosets overlap: " + display(report.overlap->word)
                          + " lies in blocks "
                          + std::to_string(report.overlap->first + 1) + " and "
                          + std::to_string(report.overlap->second + 1));
    }
    CosetPartition out = *this;
    out.validated_     = true;
    return out;
  }

  /// Index values occurring at least twice, ascending.
  inline std::vector<std::size_t> multiplicity(CosetPartition const& p) {
    auto d = p.indices();
    std::sort(d.begin(), d.end());
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i < d.size(); ++i) {
      if (d[i] == d[i - 1] && (out.empty() || out.back() != d[i])) {
        out.push_back(d[i]);
      }
    }
    return out;
  }

  /// o_{*i}(w): least k with w^k in a_i^-1 H_i a_i.
  inline std::size_t order_rel(CosetPartition const& p, std::size_t i,
                               Word const& w) {
    return order_at(p[i].table, w, p[i].marked);
  }

  inline std::vector<std::size_t> orders_rel(CosetPartition const& p,
                                             Word const&           w) {
    std::vector<std::size_t> o;
    for (std::size_t i = 0; i < p.size(); ++i) {
      o.push_back(order_rel(p, i, w));
    }
    return o;
  }

  struct OMaxSharp {
    std::size_t o_max;
    std::size_t sharp;  // number of blocks with o_{*i}(w) == o_max
  };

  inline OMaxSharp o_max_and_sharp(CosetPartition const& p, Word const& w) {
    auto o  = orders_rel(p, w);
    auto mx = *std::max_element(o.begin(), o.end());
    return {mx, static_cast<std::size_t>(std::count(o.begin(), o.end(), mx))};
  }

  /// The action of F_n on the cosets of N_H, as a table (Cayley graph of the
  /// transition group). Vertex 0 is the identity.
  inline CosetTable normal_core(CosetTable const& t,
                                std::size_t       cap = default_cap) {
    auto const          T       = transition_group(t).enumerate(cap);
    std::size_t const   letters = t.alphabet_size();
    std::vector<Vertex> delta(T.order() * letters);
    std::vector<Permutation> moves;
    for (auto const& g : T.generators()) {
      moves.push_back(g);
      moves.push_back(g.inverse());
    }
    for (std::size_t e = 0; e < T.order(); ++e) {
      for (std::size_t x = 0; x < letters; ++x) {
        delta[e * letters + x]
            = static_cast<Vertex>(*T.index_of(T.elements()[e] * moves[x]));
      }
    }
    return CosetTable(t.rank(), T.order(), std::move(delta));
  }

  /// N: the intersection of the normal cores of all blocks.
  inline CosetTable big_N(CosetPartition const& p, Caps caps = {}) {
    std::vector<CosetTable> cores;
    for (auto const& c : p.blocks()) {
      cores.push_back(normal_core(c.table, caps.group));
    }
    std::vector<Vertex> base(cores.size(), 0);
    return product(cores, base, caps.states).to_table();
  }

  inline CosetPartition act(CosetPartition const& p, Word const& w) {
    return p.acted(w);
  }

  /// |orbit of P under <w>| = lcm of the relative orders.
  inline std::size_t orbit_size_under(CosetPartition const& p, Word const& w) {
    std::size_t l = 1;
    for (auto o : orders_rel(p, w)) {
      l = std::lcm(l, o);
    }
    return l;
  }

  /// Index of the intersection of a_i^-1 H_i a_i over the listed blocks.
  inline std::size_t conjugate_intersection_index(
      CosetPartition const& p, std::span<std::size_t const> blocks,
      std::size_t state_cap = default_cap) {
    std::vector<CosetTable const*> tables;
    std::vector<Vertex>            base;
    for (auto i : blocks) {
      tables.push_back(&p[i].table);
      base.push_back(p[i].marked);
    }
    if (tables.empty()) {
      return 1;
    }
    return ProductAutomaton(tables, base, state_cap).size();
  }

  struct IntersectionReport {
    std::size_t j, k;
    std::size_t index_all;      // [F_n : cap over all i]
    std::size_t index_without;  // [F_n : cap over i != j,k]
    bool        strict;         // condition (i)
    bool        lcm_not_dividing;  // condition (ii)
    bool        holds;
    bool        same_subgroup;  // H_j == H_k as canonical tables
  };

  inline IntersectionReport intersection_conditions(CosetPartition const& p,
                                                    std::size_t j, std::size_t k,
                                                    std::size_t state_cap
                                                    = default_cap) {
    require_validated(p);
    if (j == k || j >= p.size() || k >= p.size()) {
      throw InvalidArgument("need two distinct block indices");
    }
    std::vector<std::size_t> all(p.size()), rest;
    std::iota(all.begin(), all.end(), std::size_t(0));
    for (auto i : all) {
      if (i != j && i != k) {
        rest.push_back(i);
      }
    }
    IntersectionReport r{};
    r.j             = j;
    r.k             = k;
    r.index_all     = conjugate_intersection_index(p, all, state_cap);
    r.index_without = conjugate_intersection_index(p, rest, state_cap);
    r.strict        = r.index_all != r.index_without;
    r.lcm_not_dividing
        = r.index_without % std::lcm(p[j].index(), p[k].index()) != 0;
    r.holds         = r.strict || r.lcm_not_dividing;
    r.same_subgroup = p[j].table == p[k].table;
    return r;
  }

  /// Subgroup tables ordered by descending index, ties by canonical encoding.
  inline std::vector<CosetTable const*> sorted_tables(CosetPartition const& p) {
    std::vector<CosetTable const*> t;
    for (auto const& c : p.blocks()) {
      t.push_back(&c.table);
    }
    std::stable_sort(t.begin(), t.end(), [](auto a, auto b) {
      if (a->index() != b->index()) {
        return a->index() > b->index();
      }
      return *a < *b;
    });
    return t;
  }

  /// A value in {0} U {2^-k : k >= 1}.
  struct Distance {
    std::size_t place = 0;  // 0 encodes distance zero

    double value() const noexcept {
      return place == 0 ? 0.0 : std::ldexp(1.0, -static_cast<int>(place));
    }
    bool is_zero() const noexcept {
      return place == 0;
    }
    /// rho < 2^-k
    bool below_power(std::size_t k) const noexcept {
      return place == 0 || place > k;
    }
    bool operator==(Distance const&) const = default;
  };

  inline Distance rho(CosetPartition const& p, CosetPartition const& q) {
    if (p.rank() != q.rank()) {
      throw RankMismatch(p.rank(), q.rank());
    }
    auto a = sorted_tables(p);
    auto b = sorted_tables(q);
    auto n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (*a[i] != *b[i]) {
        return Distance{i + 1};
      }
    }
    return a.size() == b.size() ? Distance{0} : Distance{n + 1};
  }

  /// A finite-index subgroup not containing w: the path of w completed
  /// deterministically.
  inline CosetTable separating_subgroup(unsigned rank, Word const& w) {
    if (w.empty()) {
      throw EmptyWord();
    }
    if (w.rank() != rank) {
      throw RankMismatch(rank, w.rank());
    }
    std::size_t const   d       = w.length() + 1;
    std::size_t const   letters = 2 * std::size_t(rank);
    std::vector<Vertex> delta(d * letters, no_vertex);
    for (std::size_t i = 0; i < w.length(); ++i) {
      auto x                                   = w[i].index();
      delta[i * letters + x]                   = static_cast<Vertex>(i + 1);
      delta[(i + 1) * letters + inverse_index(x)] = static_cast<Vertex>(i);
    }
    // Candidates 1..d-1 first, basepoint last.
    std::vector<Vertex> candidates(d);
    std::iota(candidates.begin(), candidates.end() - 1, Vertex(1));
    candidates.back() = 0;
    for (std::size_t v = 0; v < d; ++v) {
      for (std::uint32_t g = 1; g <= rank; ++g) {
        auto x = Letter{g, false}.index();
        if (delta[v * letters + x] != no_vertex) {
          continue;
        }
        for (Vertex u : candidates) {
          if (delta[u * letters + inverse_index(x)] == no_vertex) {
            delta[v * letters + x]                = u;
            delta[u * letters + inverse_index(x)] = static_cast<Vertex>(v);
            break;
          }
        }
      }
    }
    return CosetTable(rank, d, std::move(delta));
  }

  /// A block K_i g_i of a partition of a finite group, given by elements of
  /// the (enumerated) quotient.
  struct QuotientBlock {
    std::vector<Permutation> subgroup;
    Permutation              rep;
  };

  /// Pulls a coset partition of G = F_n / ker back to F_n along the
  /// epimorphism x_j -> quotient.generators()[j-1].
  inline CosetPartition lift_partition(PermGroup const&                quotient,
                                       std::span<QuotientBlock const> blocks,
                                       std::size_t cap = default_cap) {
    auto const        G     = quotient.enumerate(cap);
    std::size_t const order = G.order();
    unsigned const    rank  = G.rank();
    if (blocks.empty()) {
      throw NotAPartition("no blocks given");
    }
    auto element = [&](Permutation const& g) {
      auto i = G.index_of(g);
      if (!i) {
        throw NotAPartition("element " + to_string(g)
                            + " is not in the quotient group");
      }
      return *i;
    };
    std::vector<int>       owner(order, -1);
    std::vector<CosetSpec> specs;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      auto const& K = blocks[b].subgroup;
      std::vector<bool> inK(order, false);
      for (auto const& k : K) {
        inK[element(k)] = true;
      }
      if (!inK[0]) {
        throw NotAPartition("block " + std::to_string(b + 1)
                            + " subgroup lacks the identity");
      }
      for (auto const& x : K) {
        for (auto const& y : K) {
          if (!inK[element(x * y)]) {
            throw NotAPartition("block " + std::to_string(b + 1)
                                + " is not closed under multiplication");
          }
        }
      }
      // Right cosets K g: label each element by its coset.
      std::vector<Vertex> coset(order, no_vertex);
      Vertex              cosets = 0;
      for (std::size_t g = 0; g < order; ++g) {
        if (coset[g] != no_vertex) {
          continue;
        }
        for (auto const& k : K) {
          coset[element(k * G.elements()[g])] = cosets;
        }
        ++cosets;
      }
      std::vector<std::vector<Vertex>> images(rank, std::vector<Vertex>(cosets));
      for (std::size_t g = 0; g < order; ++g) {
        for (unsigned j = 0; j < rank; ++j) {
          images[j][coset[g]]
              = coset[element(G.elements()[g] * G.generators()[j])];
        }
      }
      auto const rep = element(blocks[b].rep);
      for (std::size_t g = 0; g < order; ++g) {
        if (coset[g] != coset[rep]) {
          continue;
        }
        if (owner[g] != -1) {
          throw NotAPartition("blocks " + std::to_string(owner[g] + 1) + " and "
                              + std::to_string(b + 1) + " overlap");
        }
        owner[g] = static_cast<int>(b);
      }
      specs.emplace_back("K" + std::to_string(b + 1),
                         CosetTable::from_generator_images(images),
                         G.witness(rep));
    }
    if (std::find(owner.begin(), owner.end(), -1) != owner.end()) {
      throw NotAPartition("blocks do not cover the quotient group");
    }
    return CosetPartition(rank, std::move(specs)).checked(cap);
  }

}  // namespace hsforge
