// hsforge: validate and analyse coset partitions of free groups.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <hsforge/dot.hpp>
#include <hsforge/hs_graph.hpp>
#include <hsforge/io.hpp>
#include <hsforge/partition.hpp>
#include <hsforge/theorems.hpp>
#include <hsforge/z_cover.hpp>

namespace fs = std::filesystem;
using namespace hsforge;

namespace {

  struct RunConfig {
    std::vector<std::string> inputs;
    std::size_t              cap_states = default_cap;
    std::size_t              cap_group  = default_cap;
    std::string              words;
    bool                     json = false;
    std::string              dot_dir;
    std::string              target = "sub";
    std::string              word;
    std::string              classes;

    Caps caps() const {
      return Caps{cap_states, cap_group};
    }
  };

  std::size_t env_cap() {
    if (char const* s = std::getenv("HSFORGE_CAP")) {
      try {
        auto v = std::stoull(s);
        if (v >= 1) {
          return static_cast<std::size_t>(v);
        }
      } catch (std::exception const&) {
      }
      std::cerr << "warning: ignoring HSFORGE_CAP=" << s << "\n";
    }
    return default_cap;
  }

  CosetPartition load(std::string const& path) {
    try {
      return load_partition(path);
    } catch (ParseError const& e) {
      throw ParseError(0, path + ":" + std::to_string(e.line()) + ": " + e.message());
    }
  }

  std::vector<Word> parse_words(unsigned rank, std::string const& list) {
    std::vector<Word> out;
    if (list.empty()) {
      return out;
    }
    std::size_t pos = 0;
    while (pos <= list.size()) {
      auto end = std::min(list.find(',', pos), list.size());
      out.push_back(parse_word(rank, list.substr(pos, end - pos)));
      pos = end + 1;
    }
    return out;
  }

  std::string join(std::vector<std::size_t> const& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
      s += (i ? "," : "") + std::to_string(v[i]);
    }
    return s + "]";
  }

  void write_out(RunConfig const& cfg, std::string const& file, std::string const& body) {
    if (cfg.dot_dir.empty()) {
      std::cout << body;
      return;
    }
    fs::create_directories(cfg.dot_dir);
    std::ofstream out(fs::path(cfg.dot_dir) / file, std::ios::binary);
    if (!out) {
      throw InvalidArgument("cannot write " + (fs::path(cfg.dot_dir) / file).string());
    }
    out << body;
    std::cout << (fs::path(cfg.dot_dir) / file).string() << "\n";
  }

  int cmd_validate(RunConfig const& cfg) {
    auto p = load(cfg.inputs.at(0));
    auto r = validate(p, cfg.cap_states);
    if (cfg.json) {
      std::cout << to_json(r, p).dump(2) << "\n";
    } else if (r.valid) {
      std::cout << "valid, indices " << join(p.indices()) << "\n";
    } else if (r.gap) {
      std::cout << "gap, witness=" << display(*r.gap) << "\n";
    } else {
      std::cout << "overlap, witness=" << display(r.overlap->word) << " in blocks "
                << r.overlap->first + 1 << " and " << r.overlap->second + 1 << "\n";
    }
    return r.valid ? 0 : 1;
  }

  nlohmann::json cycle_types(CosetPartition const& p, Caps caps) {
    nlohmann::json out = nlohmann::json::object();
    for (auto const& c : p.blocks()) {
      if (out.contains(c.name)) {
        continue;
      }
      try {
        auto& entries = out[c.name] = nlohmann::json::array();
        for (auto const& e : cycle_type_report(transition_group(c.table), caps.group)) {
          entries.push_back(
              {{"type", e.type}, {"count", e.count}, {"witness", display(e.witness)}});
        }
      } catch (CapExceeded const&) {
        out[c.name] = nullptr;
      }
    }
    return out;
  }

  int cmd_analyze(RunConfig const& cfg) {
    auto p = load(cfg.inputs.at(0)).checked(cfg.cap_states);
    auto reports = analyze_all(p, cfg.caps(), parse_words(p.rank(), cfg.words));
    auto code    = exit_code(p, reports);
    if (cfg.json) {
      auto j           = partition_report(p, reports, cfg.caps());
      j["cycle_types"] = cycle_types(p, cfg.caps());
      std::cout << j.dump(2) << "\n";
      return code;
    }
    std::cout << "indices " << join(p.indices()) << ", multiplicity "
              << join(multiplicity(p)) << "\n";
    for (auto const& r : reports) {
      std::cout << r.theorem;
      if (r.theorem == "loops") {
        std::cout << " w=" << display(r.witnesses.front());
      }
      std::cout << ": " << to_string(r.verdict);
      for (auto const& c : r.conditions) {
        std::cout << " (" << c.label;
        if (c.r) {
          std::cout << ", r=" << c.r;
        }
        if (!c.blocks.empty()) {
          std::cout << ", blocks " << join(c.blocks);
        }
        std::cout << ")";
      }
      if (r.verified) {
        std::cout << (*r.verified ? ", verified" : ", VIOLATED");
      }
      if (r.theorem != "loops" && !r.witnesses.empty()) {
        std::cout << ", witness " << display(r.witnesses.front());
      }
      for (auto const& n : r.notes) {
        std::cout << "; " << n;
      }
      std::cout << "\n";
    }
    return code;
  }

  int cmd_graph(RunConfig const& cfg) {
    auto p = load(cfg.inputs.at(0));
    if (cfg.target == "sub") {
      std::set<std::string> done;
      for (auto const& c : p.blocks()) {
        if (done.insert(c.name).second) {
          if (cfg.word.empty()) {
            write_out(cfg, "sub_" + c.name + ".dot", to_dot(c.table, c.name));
          } else {
            auto w = parse_word(p.rank(), cfg.word);
            write_out(cfg, "sub_" + c.name + "_" + display(w) + ".dot",
                      to_dot(c.table, w_graph(c.table, w), c.name));
          }
        }
      }
      return 0;
    }
    auto v = p.checked(cfg.cap_states);
    auto w = parse_word(p.rank(), cfg.word);
    auto g = HSColoredGraph::build(v, w, cfg.caps());
    write_out(cfg, "hs_" + display(w) + ".dot", to_dot(g, v));
    return 0;
  }

  int cmd_zcheck(RunConfig const& cfg) {
    auto z = parse_z_partition(cfg.classes);
    auto j = to_json(z);
    if (cfg.json) {
      std::cout << j.dump(2) << "\n";
    } else if (!j["valid"].get<bool>()) {
      std::cout << "invalid, witness=" << j["witness"].get<std::int64_t>() << "\n";
    } else {
      auto s = erdos_checks(z);
      std::cout << "valid" << (s.trivial ? " trivial" : "") << ", checks "
                << (s.all_hold() ? "all hold" : "FAIL") << " (o_max " << s.o_max
                << " x" << s.o_max_count << ", p " << s.p << ")\n";
    }
    return j["valid"].get<bool>() ? 0 : 1;
  }

  int cmd_metric(RunConfig const& cfg) {
    auto p = load(cfg.inputs.at(0));
    auto q = load(cfg.inputs.at(1));
    auto d = rho(p, q);
    if (cfg.json) {
      std::cout << nlohmann::json{{"rho", d.value()}, {"place", d.place}}.dump(2) << "\n";
    } else {
      std::cout << "rho = " << (d.is_zero() ? std::string("0")
                                            : "2^-" + std::to_string(d.place))
                << "\n";
    }
    return 0;
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coset partitions of free groups: validation and multiplicity checks"};
  app.require_subcommand(1);

  RunConfig cfg;
  cfg.cap_states = cfg.cap_group = env_cap();

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--cap-states", cfg.cap_states, "product automaton state cap")
        ->check(CLI::PositiveNumber);
    sub->add_option("--cap-group", cfg.cap_group, "permutation group enumeration cap")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--json", cfg.json, "JSON output");
  };

  auto* validate_cmd = app.add_subcommand("validate", "check a partition file");
  validate_cmd->add_option("file", cfg.inputs)->required()->expected(1);
  add_common(validate_cmd);

  auto* analyze_cmd = app.add_subcommand("analyze", "run every theorem check");
  analyze_cmd->add_option("file", cfg.inputs)->required()->expected(1);
  analyze_cmd->add_option("--words", cfg.words, "comma-separated words for loop checks");
  add_common(analyze_cmd);

  auto* graph_cmd = app.add_subcommand("graph", "write DOT graphs");
  graph_cmd->add_option("file", cfg.inputs)->required()->expected(1);
  graph_cmd->add_option("--target", cfg.target, "sub or hs")
      ->check(CLI::IsMember({"sub", "hs"}));
  graph_cmd->add_option("--word", cfg.word, "the word w");
  graph_cmd->add_option("--dot-dir", cfg.dot_dir, "output directory (default stdout)");
  add_common(graph_cmd);

  auto* zcheck_cmd = app.add_subcommand("zcheck", "check a family of residue classes");
  zcheck_cmd->add_option("classes", cfg.classes, "o:r,o:r,...")->required();
  zcheck_cmd->add_flag("--json", cfg.json, "JSON output");

  auto* metric_cmd = app.add_subcommand("metric", "distance between two partitions");
  metric_cmd->add_option("files", cfg.inputs)->required()->expected(2);
  add_common(metric_cmd);

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*validate_cmd) return cmd_validate(cfg);
    if (*analyze_cmd) return cmd_analyze(cfg);
    if (*graph_cmd) return cmd_graph(cfg);
    if (*zcheck_cmd) return cmd_zcheck(cfg);
    if (*metric_cmd) return cmd_metric(cfg);
  } catch (ParseError const& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (CapExceeded const& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 3;
  } catch (Error const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
