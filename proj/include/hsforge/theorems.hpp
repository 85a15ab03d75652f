#pragma once

// Decision procedures for the sufficient conditions for multiplicity, each
// cross-checked against the partition's actual indices.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"
#include "hs_graph.hpp"
#include "partition.hpp"
#include "perm.hpp"
#include "schreier.hpp"
#include "word.hpp"
#include "z_cover.hpp"

namespace hsforge {

  enum class Verdict {
    Applies,
    DoesNotApply,
    NotApplicable,
    Unknown,  // a cap was hit before the question was settled
    Checked,  // invariant report rather than a theorem
  };

  inline char const* to_string(Verdict v) {
    switch (v) {
      case Verdict::Applies: return "applies";
      case Verdict::DoesNotApply: return "does-not-apply";
      case Verdict::NotApplicable: return "not-applicable";
      case Verdict::Unknown: return "unknown";
      case Verdict::Checked: return "checked";
    }
    return "?";
  }

  /// A fired condition. For theo1 \c label is the fine list (i)..(vii),
  /// \c group the four-way grouping (i)..(iv) and \c r the depth in d_{s-r}.
  struct Condition {
    std::string              label;
    std::string              group;
    std::size_t              r = 0;
    std::vector<std::size_t> blocks;  // 1-based, in file order

    bool operator==(Condition const&) const = default;
  };

  struct TheoremReport {
    std::string              theorem;
    Verdict                  verdict = Verdict::DoesNotApply;
    std::vector<Condition>   conditions;
    std::vector<Word>        witnesses;
    std::string              predicted;
    std::optional<bool>      verified;  // set whenever a prediction was checked
    std::size_t              k = 0, p = 0, sharp = 0;
    std::vector<std::string> notes;

    bool applies() const noexcept {
      return verdict == Verdict::Applies;
    }
  };

  namespace detail {
    inline std::vector<std::size_t> sorted_indices(CosetPartition const& p) {
      auto d = p.indices();
      std::sort(d.begin(), d.end());
      return d;
    }

    /// d_{s-r} with 1-based d_1 <= ... <= d_s.
    inline std::size_t d_minus(std::vector<std::size_t> const& d, std::size_t r) {
      return d[d.size() - r - 1];
    }

    inline std::size_t count_of(std::vector<std::size_t> const& d, std::size_t x) {
      return static_cast<std::size_t>(std::count(d.begin(), d.end(), x));
    }

    inline TheoremReport unknown(std::string id, CapExceeded const& e) {
      TheoremReport r;
      r.theorem = std::move(id);
      r.verdict = Verdict::Unknown;
      r.notes.push_back(e.what());
      return r;
    }
  }  // namespace detail

  /// A d_s-cycle in T_s forces d_s to appear at least p times.
  inline TheoremReport check_theo0(CosetPartition const& p, Caps caps = {}) {
    require_validated(p);
    TheoremReport r;
    r.theorem = "theo0";
    try {
      auto const  d  = detail::sorted_indices(p);
      auto const  ds = d.back();
      r.k            = ds;
      r.p            = smallest_prime_divisor(ds);
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i].index() != ds) {
          continue;
        }
        auto w = has_k_cycle_at(transition_group(p[i].table), ds, p[i].marked,
                                caps.group);
        if (w) {
          r.verdict = Verdict::Applies;
          r.witnesses.push_back(std::move(*w));
          r.conditions.push_back(Condition{"cycle", "cycle", 0, {i + 1}});
          break;
        }
      }
      r.predicted = "index " + std::to_string(ds) + " appears at least "
                    + std::to_string(r.p) + " times";
      if (r.applies()) {
        r.sharp    = detail::count_of(d, ds);
        r.verified = r.sharp >= r.p;
      } else {
        r.notes.push_back("no " + std::to_string(ds)
                          + "-cycle in any transition group of largest index");
      }
    } catch (CapExceeded const& e) {
      return detail::unknown("theo0", e);
    }
    return r;
  }

  /// Fired conditions for given k, p, # against ascending indices d.
  inline std::vector<Condition> theo1_conditions(std::vector<std::size_t> const& d,
                                                 std::size_t k, std::size_t p,
                                                 std::size_t sharp) {
    std::vector<Condition> out;
    auto const             s = d.size();
    if (s >= 3 && k > detail::d_minus(d, 2)) {
      out.push_back({"i", "i", 2, {}});
    }
    if (s >= 4 && k > detail::d_minus(d, 3)) {
      if (p >= 3) {
        out.push_back({"ii", "ii", 3, {}});
      }
      if (p == 2 && sharp >= 4) {
        out.push_back({"iii", "iii", 3, {}});
      }
      if (p == 2 && sharp == 2) {
        out.push_back({"iv", "iii", 3, {}});
      }
    }
    for (std::size_t r = 4; r + 1 <= s; ++r) {
      if (k <= detail::d_minus(d, r)) {
        continue;
      }
      if (p >= r) {
        out.push_back({"v", "iv", r, {}});
      }
      if (sharp >= r + 1) {
        out.push_back({"vi", "iv", r, {}});
      }
      if (sharp == p) {
        out.push_back({"vii", "iv", r, {}});
      }
    }
    return out;
  }

  /// k = longest cycle over all T_i; witnesses u with o_max(u) = k are built
  /// by moving a k-cycle to the marked vertex by conjugation.
  inline TheoremReport check_theo1(CosetPartition const& p, Caps caps = {}) {
    require_validated(p);
    TheoremReport r;
    r.theorem = "theo1";
    auto const d = detail::sorted_indices(p);
    r.predicted  = "some index appears at least twice";
    if (d.size() < 3) {
      r.verdict = Verdict::NotApplicable;
      r.notes.push_back("needs at least three blocks");
      return r;
    }
    try {
      std::vector<PermGroup> groups;
      for (auto const& c : p.blocks()) {
        groups.push_back(transition_group(c.table).enumerate(caps.group));
      }
      for (auto const& g : groups) {
        r.k = std::max(r.k, max_cycle_length(g, caps.group).k);
      }
      r.p = smallest_prime_divisor(r.k);

      std::optional<Word> first;
      std::set<std::size_t> tried;
      for (std::size_t i = 0; i < p.size() && r.conditions.empty(); ++i) {
        auto const& G  = groups[i];
        auto const  tv = transversal(p[i].table);
        for (std::size_t e = 0; e < G.order() && r.conditions.empty(); ++e) {
          for (auto const& cyc : G.elements()[e].cycles()) {
            if (cyc.size() != r.k) {
              continue;
            }
            auto const c = multiply(inverse(tv[cyc.front()]), tv[p[i].marked]);
            auto       u = multiply(multiply(inverse(c), G.witness(e)), c);
            auto const om = o_max_and_sharp(p, u);
            if (!first) {
              first   = u;
              r.sharp = om.sharp;
            }
            if (!tried.insert(om.sharp).second) {
              continue;
            }
            auto fired = theo1_conditions(d, r.k, r.p, om.sharp);
            if (!fired.empty()) {
              r.conditions = std::move(fired);
              r.sharp      = om.sharp;
              first        = u;
              break;
            }
          }
        }
      }
      if (first) {
        r.witnesses.push_back(*first);
      }
    } catch (CapExceeded const& e) {
      return detail::unknown("theo1", e);
    }
    r.verdict = r.conditions.empty() ? Verdict::DoesNotApply : Verdict::Applies;
    if (r.applies()) {
      r.verified = !multiplicity(p).empty();
    }
    return r;
  }

  /// Pairwise intersection conditions forcing H_j = H_k.
  inline TheoremReport check_theo2(CosetPartition const& p, Caps caps = {}) {
    require_validated(p);
    TheoremReport r;
    r.theorem   = "theo2";
    r.predicted = "H_j = H_k for every pair meeting a condition";
    if (p.size() < 3) {
      r.verdict = Verdict::NotApplicable;
      r.notes.push_back("needs at least three blocks");
      return r;
    }
    try {
      bool same = true;
      for (std::size_t j = 0; j < p.size(); ++j) {
        for (std::size_t k = j + 1; k < p.size(); ++k) {
          auto ir = intersection_conditions(p, j, k, caps.states);
          if (ir.strict) {
            r.conditions.push_back({"i", "i", 0, {j + 1, k + 1}});
          }
          if (ir.lcm_not_dividing) {
            r.conditions.push_back({"ii", "ii", 0, {j + 1, k + 1}});
          }
          if (ir.holds) {
            same = same && ir.same_subgroup;
          }
        }
      }
      r.verdict = r.conditions.empty() ? Verdict::DoesNotApply : Verdict::Applies;
      if (r.applies()) {
        r.verified = same && !multiplicity(p).empty();
      }
    } catch (CapExceeded const& e) {
      return detail::unknown("theo2", e);
    }
    return r;
  }

  /// Stability of the conditions under small perturbations in the metric:
  /// each hypothesis met by p0 at the right distance is asserted for p.
  inline TheoremReport check_theo4(CosetPartition const& p0, CosetPartition const& p,
                                   Caps caps = {}) {
    require_validated(p0);
    require_validated(p);
    TheoremReport r;
    r.theorem = "theo4";
    auto const dist = rho(p, p0);
    r.notes.push_back("rho = " + std::to_string(dist.value()));
    auto const t0 = check_theo0(p0, caps);
    auto const t1 = check_theo1(p0, caps);
    if (t0.verdict == Verdict::Unknown || t1.verdict == Verdict::Unknown) {
      r.verdict = Verdict::Unknown;
      return r;
    }
    bool ok = true, any = false;
    if (t0.applies() && dist.below_power(1)) {
      any       = true;
      auto mine = check_theo0(p, caps);
      if (mine.verdict == Verdict::Unknown) {
        r.verdict = Verdict::Unknown;
        return r;
      }
      ok = ok && mine.applies() && mine.verified.value_or(false);
      r.conditions.push_back({"i", "theo0", 1, {}});
    }
    if (t1.applies()) {
      std::optional<TheoremReport> mine;
      for (auto const& c : t1.conditions) {
        if (!dist.below_power(c.r + 1)) {
          continue;
        }
        if (!mine) {
          mine = check_theo1(p, caps);
          if (mine->verdict == Verdict::Unknown) {
            r.verdict = Verdict::Unknown;
            return r;
          }
        }
        any = true;
        if (c.group == "i" || c.group == "ii") {
          auto same = std::find_if(mine->conditions.begin(), mine->conditions.end(),
                                   [&](Condition const& x) {
                                     return x.label == c.label && x.r == c.r;
                                   });
          ok = ok && same != mine->conditions.end();
          r.conditions.push_back({"ii", c.group, c.r, {}});
        } else {
          r.conditions.push_back({"iii", c.group, c.r, {}});
        }
        ok = ok && !multiplicity(p).empty();
      }
    }
    r.predicted = "p inherits the conditions p0 meets within the radius";
    r.verdict   = any ? Verdict::Applies : Verdict::DoesNotApply;
    if (any) {
      r.verified = ok;
    }
    return r;
  }

  /// Loop structure of the HS-colored graph along w: loop count and length,
  /// per-fiber counts and spacing, and the integer cover each loop traces.
  inline TheoremReport check_loops(CosetPartition const& p, Word const& w,
                                   Caps caps = {}) {
    require_validated(p);
    TheoremReport r;
    r.theorem = "loops";
    r.verdict = Verdict::Checked;
    r.witnesses.push_back(w);
    r.predicted = "every loop traces an exact cover of Z";
    try {
      auto const g     = HSColoredGraph::build(p, w, caps);
      auto const loops = g.loops();
      auto const oN    = g.o_N();
      bool       ok    = true;
      auto       fail  = [&](std::string msg) {
        ok = false;
        r.notes.push_back(std::move(msg));
      };
      if (loops.size() * oN != g.m()) {
        fail("loop count is not m / o_N");
      }
      for (std::size_t b = 0; b < p.size(); ++b) {
        auto const o = g.rel_order(b);
        if ((g.m() / p[b].index()) * o != fiber_loop_count(g, b) * oN) {
          fail("fiber " + std::to_string(b + 1) + " meets the wrong number of loops");
        }
      }
      for (auto const& loop : loops) {
        if (loop.length() != oN) {
          fail("loop of length " + std::to_string(loop.length()));
          continue;
        }
        for (auto const& q : loop.participants) {
          auto const o = g.rel_order(q.block);
          if (q.count * o != oN || (q.count > 1 && q.spacing != o)) {
            fail("fiber " + std::to_string(q.block + 1) + " badly spaced");
          }
        }
        if (loop.participants.size() < 2) {
          continue;
        }
        auto z = loop_z_partition(loop, g);
        if (!validate_z(z).valid) {
          fail("loop does not trace a cover: " + to_string(z));
          continue;
        }
        auto s = erdos_checks(z);
        if (!s.all_hold()) {
          fail("structural check fails on " + to_string(z));
        }
      }
      r.k        = oN;
      r.sharp    = loops.size();
      r.verified = ok;
    } catch (CapExceeded const& e) {
      auto u = detail::unknown("loops", e);
      u.witnesses.push_back(w);
      return u;
    } catch (Error const& e) {
      r.verified = false;
      r.notes.push_back(e.what());
    }
    return r;
  }

  /// Generators and all products of two generators.
  inline std::vector<Word> default_words(unsigned rank) {
    std::vector<Word> out;
    for (std::uint32_t g = 1; g <= rank; ++g) {
      out.push_back(generator_word(rank, g));
    }
    for (std::uint32_t g = 1; g <= rank; ++g) {
      for (std::uint32_t h = 1; h <= rank; ++h) {
        out.push_back(multiply(generator_word(rank, g), generator_word(rank, h)));
      }
    }
    return out;
  }

  /// theo0, theo1, theo2 and the loop checks along \p words (default sample
  /// when empty) and every theorem witness.
  inline std::vector<TheoremReport> analyze_all(CosetPartition const& p, Caps caps = {},
                                                std::vector<Word> words = {}) {
    require_validated(p);
    std::vector<TheoremReport> out;
    out.push_back(check_theo0(p, caps));
    out.push_back(check_theo1(p, caps));
    out.push_back(check_theo2(p, caps));
    if (words.empty()) {
      words = default_words(p.rank());
    }
    for (std::size_t i = 0; i < 3; ++i) {
      for (auto const& w : out[i].witnesses) {
        if (std::find(words.begin(), words.end(), w) == words.end()) {
          words.push_back(w);
        }
      }
    }
    for (auto const& w : words) {
      out.push_back(check_loops(p, w, caps));
    }
    return out;
  }

  /// Exit status: 0 consistent, 2 a prediction failed or a theorem fired
  /// without multiplicity, 3 some verdict is Unknown.
  inline int exit_code(CosetPartition const& p, std::span<TheoremReport const> reports) {
    bool unknown = false;
    bool mult    = !multiplicity(p).empty();
    for (auto const& r : reports) {
      if (r.verified == false || (r.applies() && !mult)) {
        return 2;
      }
      unknown |= r.verdict == Verdict::Unknown;
    }
    return unknown ? 3 : 0;
  }

}  // namespace hsforge
