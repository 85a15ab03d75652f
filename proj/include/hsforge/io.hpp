#pragma once

// Partition files and JSON reports.
//
//   rank 2
//   sub H = b, aa, aba            # generators, folded and completed
//   table M = 4; 0:a->1, 0:b->2, 1:a->0, 1:b->3, 2:a->3, 2:b->0, 3:a->2, 3:b->1
//   coset H rep 1
//   coset M rep a
//
// Table entries may use "->" or the arrow character; listing an edge once
// implies its inverse.

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "errors.hpp"
#include "partition.hpp"
#include "schreier.hpp"
#include "theorems.hpp"
#include "word.hpp"
#include "z_cover.hpp"

namespace hsforge {

  namespace detail {
    inline std::string_view trim(std::string_view s) {
      auto const ws = " \t\r";
      auto const b  = s.find_first_not_of(ws);
      if (b == std::string_view::npos) {
        return {};
      }
      return s.substr(b, s.find_last_not_of(ws) - b + 1);
    }

    inline std::vector<std::string_view> split(std::string_view s, char sep) {
      std::vector<std::string_view> out;
      std::size_t                   pos = 0;
      while (true) {
        auto end = s.find(sep, pos);
        out.push_back(trim(s.substr(pos, end == std::string_view::npos ? end : end - pos)));
        if (end == std::string_view::npos) {
          return out;
        }
        pos = end + 1;
      }
    }

    inline std::size_t parse_count(std::size_t line, std::string_view s) {
      if (s.empty() || s.find_first_not_of("0123456789") != std::string_view::npos) {
        throw ParseError(line, "expected a number, got \"" + std::string(s) + "\"");
      }
      return std::stoul(std::string(s));
    }

    /// "v:x->u" with x a single letter.
    inline CosetTable parse_table(std::size_t line, unsigned rank, std::string_view body) {
      auto const semi = body.find(';');
      if (semi == std::string_view::npos) {
        throw ParseError(line, "table needs \"d; edges\"");
      }
      auto const          d       = parse_count(line, trim(body.substr(0, semi)));
      std::size_t const   letters = 2 * std::size_t(rank);
      std::vector<Vertex> delta(d * letters, no_vertex);
      auto                set = [&](Vertex v, std::size_t x, Vertex u) {
        auto& slot = delta[v * letters + x];
        if (slot != no_vertex && slot != u) {
          throw ParseError(line, "conflicting edges at vertex " + std::to_string(v));
        }
        slot = u;
      };
      for (auto item : split(body.substr(semi + 1), ',')) {
        if (item.empty()) {
          continue;
        }
        auto const colon = item.find(':');
        auto       arrow = item.find("->");
        auto       skip  = std::size_t(2);
        if (arrow == std::string_view::npos) {
          arrow = item.find("→");
          skip  = std::string_view("→").size();
        }
        if (colon == std::string_view::npos || arrow == std::string_view::npos
            || arrow < colon) {
          throw ParseError(line, "bad edge \"" + std::string(item) + "\"");
        }
        auto const v = parse_count(line, trim(item.substr(0, colon)));
        auto const u = parse_count(line, trim(item.substr(arrow + skip)));
        if (v >= d || u >= d) {
          throw ParseError(line, "vertex out of range in \"" + std::string(item) + "\"");
        }
        Word lw(rank);
        try {
          lw = parse_word(rank, trim(item.substr(colon + 1, arrow - colon - 1)));
        } catch (Error const& e) {
          throw ParseError(line, e.what());
        }
        if (lw.length() != 1) {
          throw ParseError(line, "edge label must be one letter");
        }
        auto const x = lw[0].index();
        set(static_cast<Vertex>(v), x, static_cast<Vertex>(u));
        set(static_cast<Vertex>(u), inverse_index(x), static_cast<Vertex>(v));
      }
      try {
        return CosetTable(rank, d, std::move(delta));
      } catch (Error const& e) {
        throw ParseError(line, e.what());
      }
    }
  }  // namespace detail

  /// Reads a partition file; the result is not yet validated.
  inline CosetPartition parse_partition(std::string_view text) {
    unsigned                          rank = 0;
    std::map<std::string, CosetTable> subs;
    std::vector<CosetSpec>            cosets;
    std::size_t                       line = 0;
    std::istringstream                in{std::string(text)};
    for (std::string raw; std::getline(in, raw);) {
      ++line;
      auto s = std::string_view(raw);
      s      = detail::trim(s.substr(0, s.find('#')));
      if (s.empty()) {
        continue;
      }
      auto const sp      = s.find_first_of(" \t");
      auto const keyword = s.substr(0, sp);
      auto const rest    = sp == std::string_view::npos ? std::string_view{}
                                                         : detail::trim(s.substr(sp));
      if (keyword == "rank") {
        if (rank != 0) {
          throw ParseError(line, "rank given twice");
        }
        rank = static_cast<unsigned>(detail::parse_count(line, rest));
        if (rank == 0) {
          throw ParseError(line, "rank must be positive");
        }
        continue;
      }
      if (rank == 0) {
        throw ParseError(line, "\"rank N\" must come first");
      }
      if (keyword == "sub" || keyword == "table") {
        auto const eq = rest.find('=');
        if (eq == std::string_view::npos) {
          throw ParseError(line, "expected NAME = ...");
        }
        auto name = std::string(detail::trim(rest.substr(0, eq)));
        auto body = detail::trim(rest.substr(eq + 1));
        if (name.empty() || name.find_first_of(" \t") != std::string::npos) {
          throw ParseError(line, "bad subgroup name \"" + name + "\"");
        }
        if (subs.contains(name)) {
          throw ParseError(line, "subgroup " + name + " defined twice");
        }
        if (keyword == "table") {
          subs.emplace(name, detail::parse_table(line, rank, body));
          continue;
        }
        std::vector<Word> gens;
        for (auto item : detail::split(body, ',')) {
          try {
            gens.push_back(parse_word(rank, item));
          } catch (Error const& e) {
            throw ParseError(line, e.what());
          }
        }
        try {
          subs.emplace(name, subgroup_table(rank, gens));
        } catch (InfiniteIndex const&) {
          throw ParseError(line, "subgroup " + name + " has infinite index");
        }
        continue;
      }
      if (keyword == "coset") {
        auto const parts = detail::split(rest, ' ');
        std::vector<std::string_view> words;
        for (auto w : parts) {
          if (!w.empty()) {
            words.push_back(w);
          }
        }
        if (words.size() < 2 || words.size() > 3 || words[1] != "rep") {
          throw ParseError(line, "expected \"coset NAME rep WORD\"");
        }
        auto it = subs.find(std::string(words[0]));
        if (it == subs.end()) {
          throw ParseError(line, "unknown subgroup " + std::string(words[0]));
        }
        Word rep(rank);
        try {
          rep = parse_word(rank, words.size() == 3 ? words[2] : std::string_view{});
        } catch (Error const& e) {
          throw ParseError(line, e.what());
        }
        if (it->second.index() < 2) {
          throw ParseError(line, "subgroup " + it->first + " is the whole group");
        }
        cosets.emplace_back(it->first, it->second, std::move(rep));
        continue;
      }
      throw ParseError(line, "unknown keyword \"" + std::string(keyword) + "\"");
    }
    if (rank == 0) {
      throw ParseError(line, "missing \"rank N\"");
    }
    if (cosets.empty()) {
      throw ParseError(line, "no coset lines");
    }
    return CosetPartition(rank, std::move(cosets));
  }

  inline CosetPartition load_partition(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw InvalidArgument("cannot open " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_partition(ss.str());
  }

  // ---- JSON ----

  inline nlohmann::json to_json(Condition const& c) {
    nlohmann::json j{{"label", c.label}, {"group", c.group}};
    if (c.r) {
      j["r"] = c.r;
    }
    if (!c.blocks.empty()) {
      j["blocks"] = c.blocks;
    }
    return j;
  }

  inline nlohmann::json to_json(TheoremReport const& r) {
    nlohmann::json j{{"theorem", r.theorem}, {"verdict", to_string(r.verdict)}};
    j["conditions"] = nlohmann::json::array();
    for (auto const& c : r.conditions) {
      j["conditions"].push_back(to_json(c));
    }
    j["witnesses"] = nlohmann::json::array();
    for (auto const& w : r.witnesses) {
      j["witnesses"].push_back(display(w));
    }
    j["predicted"] = r.predicted;
    j["verified"]  = r.verified ? nlohmann::json(*r.verified) : nlohmann::json(nullptr);
    j["k"]         = r.k;
    j["p"]         = r.p;
    j["sharp"]     = r.sharp;
    j["notes"]     = r.notes;
    return j;
  }

  inline nlohmann::json to_json(ValidationReport const& v, CosetPartition const& p) {
    nlohmann::json j{{"valid", v.valid}, {"indices", p.indices()}, {"states", v.states}};
    if (v.gap) {
      j["gap"] = display(*v.gap);
    }
    if (v.overlap) {
      j["overlap"] = {{"word", display(v.overlap->word)},
                      {"blocks", {v.overlap->first + 1, v.overlap->second + 1}}};
    }
    return j;
  }

  /// {valid, indices, multiplicity, m, per_theorem}. Loop reports are keyed
  /// by their word.
  inline nlohmann::json partition_report(CosetPartition const&           p,
                                         std::span<TheoremReport const> reports,
                                         Caps                            caps = {}) {
    nlohmann::json j{{"valid", p.validated()},
                     {"indices", p.indices()},
                     {"multiplicity", multiplicity(p)}};
    try {
      j["m"] = big_N(p, caps).index();
    } catch (CapExceeded const&) {
      j["m"] = nullptr;
    }
    nlohmann::json per = nlohmann::json::object();
    for (auto const& r : reports) {
      if (r.theorem == "loops") {
        per["loops"][display(r.witnesses.front())] = to_json(r);
      } else {
        per[r.theorem] = to_json(r);
      }
    }
    j["per_theorem"] = std::move(per);
    return j;
  }

  inline nlohmann::json to_json(ZPartition const& z) {
    auto v = validate_z(z);
    nlohmann::json j{{"classes", to_string(z)}, {"valid", v.valid}};
    if (v.witness) {
      j["witness"] = *v.witness;
    }
    if (v.valid) {
      auto s     = erdos_checks(z);
      j["checks"] = {{"trivial", s.trivial},
                     {"not_pairwise_coprime", s.not_pairwise_coprime},
                     {"max_repeats_p_times", s.max_repeats_p_times},
                     {"every_modulus_divides_another", s.every_modulus_divides_another},
                     {"maximal_moduli_repeat", s.maximal_moduli_repeat},
                     {"o_max", s.o_max},
                     {"p", s.p},
                     {"o_max_count", s.o_max_count}};
    }
    return j;
  }

}  // namespace hsforge
