#pragma once

// Graphviz output. Nodes and edges are emitted in vertex then letter order,
// so identical inputs give identical bytes.

#include <array>
#include <cstddef>
#include <sstream>
#include <string>

#include "hs_graph.hpp"
#include "partition.hpp"
#include "schreier.hpp"
#include "word.hpp"

namespace hsforge {

  namespace detail {
    inline constexpr std::array<char const*, 8> palette{
        "red", "green", "blue", "orange", "purple", "brown", "cyan", "magenta"};

    inline std::string quoted(std::string const& s) {
      return "\"" + s + "\"";
    }

    template <class Graph>
    std::string dot_positive(Graph const& g, Transversal const& tv,
                             std::string const& name) {
      std::ostringstream out;
      out << "digraph " << quoted(name) << " {\n";
      for (Vertex v = 0; v < tv.size(); ++v) {
        out << "  " << v << " [label=" << quoted(display(tv[v]))
            << (v == 0 ? ", shape=doublecircle" : ", shape=circle") << "];\n";
      }
      for (Vertex v = 0; v < tv.size(); ++v) {
        for (std::uint32_t gen = 1; gen <= g.rank(); ++gen) {
          Letter const l{gen, false};
          auto const   u = g.target(v, l.index());
          if (u != no_vertex) {
            out << "  " << v << " -> " << u << " [label=" << quoted(std::string(1, letter_char(l)))
                << "];\n";
          }
        }
      }
      out << "}\n";
      return out.str();
    }
  }  // namespace detail

  /// Schreier graph: positive-letter edges, basepoint double-circled.
  inline std::string to_dot(CosetTable const& t, std::string const& name = "sub") {
    return detail::dot_positive(t, transversal(t), name);
  }

  inline std::string to_dot(StallingsGraph const& g, std::string const& name = "sub") {
    return detail::dot_positive(g, transversal(g), name);
  }

  /// w-step edges only.
  inline std::string to_dot(CosetTable const& t, WFunctionalGraph const& wg,
                            std::string const& name = "w") {
    auto const         tv = transversal(t);
    std::ostringstream out;
    out << "digraph " << detail::quoted(name) << " {\n";
    for (Vertex v = 0; v < wg.size(); ++v) {
      out << "  " << v << " [label=" << detail::quoted(display(tv[v]))
          << (v == 0 ? ", shape=doublecircle" : ", shape=circle") << "];\n";
    }
    for (Vertex v = 0; v < wg.size(); ++v) {
      out << "  " << v << " -> " << wg.next(v)
          << " [label=" << detail::quoted(display(wg.word())) << "];\n";
    }
    out << "}\n";
    return out.str();
  }

  /// Two layers: the cosets of N grouped into colored fibers (top), and each
  /// block's Schreier graph with its marked vertex (bottom), joined by dashed
  /// projection edges. Only w-steps are drawn.
  inline std::string to_dot(HSColoredGraph const& g, CosetPartition const& p,
                            std::string const& name = "hs") {
    auto const         tv = transversal(g.n_table());
    auto const         w  = display(g.word());
    std::ostringstream out;
    out << "digraph " << detail::quoted(name) << " {\n";
    out << "  compound=true;\n";
    for (std::size_t b = 0; b < p.size(); ++b) {
      auto const color = detail::palette[b % detail::palette.size()];
      out << "  subgraph cluster_top" << b << " {\n";
      out << "    label=" << detail::quoted(p[b].name + display(p[b].rep))
          << "; color=" << color << ";\n";
      for (auto v : g.fiber(b)) {
        out << "    n" << v << " [label=" << detail::quoted("N" + display(tv[v]))
            << ", color=" << color << ", style=filled, fillcolor=" << color << "];\n";
      }
      out << "  }\n";
    }
    for (Vertex v = 0; v < g.m(); ++v) {
      out << "  n" << v << " -> n" << g.next(v) << " [label=" << detail::quoted(w)
          << "];\n";
    }
    for (std::size_t b = 0; b < p.size(); ++b) {
      auto const  color = detail::palette[b % detail::palette.size()];
      auto const& t     = p[b].table;
      auto const  btv   = transversal(t);
      out << "  subgraph cluster_bot" << b << " {\n";
      out << "    label=" << detail::quoted(p[b].name) << ";\n";
      for (Vertex v = 0; v < t.index(); ++v) {
        out << "    b" << b << "_" << v << " [label="
            << detail::quoted(p[b].name + display(btv[v]));
        if (v == p[b].marked) {
          out << ", color=" << color << ", shape=doublecircle";
        }
        out << "];\n";
      }
      for (Vertex v = 0; v < t.index(); ++v) {
        out << "    b" << b << "_" << v << " -> b" << b << "_" << t.trace(v, g.word())
            << " [label=" << detail::quoted(w) << "];\n";
      }
      out << "  }\n";
    }
    for (Vertex v = 0; v < g.m(); ++v) {
      auto const b = g.color(v);
      out << "  n" << v << " -> b" << b << "_" << p[b].marked
          << " [style=dashed, arrowhead=none, constraint=false];\n";
    }
    out << "}\n";
    return out.str();
  }

}  // namespace hsforge
