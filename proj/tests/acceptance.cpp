// Acceptance criteria 1-10: one PASS/FAIL line each.

#include <chrono>
#include <filesystem>
#include <iostream>

#include <hsforge/io.hpp>

#include "properties.hpp"

using namespace hsforge;
using support::w2;

namespace {

  struct Check {
    props::Failures f;

    void operator()(bool ok, std::string const& what) {
      props::expect(f, ok, what);
    }
    void add(props::Failures const& more) {
      f.insert(f.end(), more.begin(), more.end());
    }
  };

  using Vs = std::vector<Vertex>;
  using Ns = std::vector<std::size_t>;

  props::Failures index_three() {
    Check c;
    auto  G  = support::table_G();
    auto  tv = transversal(G);
    c(G.index() == 3, "index");
    c(tv.size() == 3 && to_string(tv[0]).empty() && to_string(tv[1]) == "a"
          && to_string(tv[2]) == "ab",
      "transversal");
    c(transition_group(G).enumerate().order() == 6, "transition group order");
    return c.f;
  }

  props::Failures orders() {
    Check c;
    auto  G = support::table_G();
    c(order_at(G, w2("abA"), 0) == 2, "o(abA,0)");
    c(order_at(G, w2("b"), 0) == 1, "o(b,0)");
    c(order_at(G, w2("b"), 1) == 2 && order_at(G, w2("b"), 2) == 2, "o(b,1), o(b,2)");
    for (Vertex i = 0; i < 3; ++i) {
      c(order_at(G, w2("ab"), i) == 3, "o(ab,i)");
      c(visited_set(G, w2("ab"), i) == Vs{0, 1, 2}, "V(ab,i)");
    }
    c(visited_set(G, w2("abA"), 0) == Vs{0, 2}, "V(abA,0)");
    c(visited_set(G, w2("abA"), 1) == Vs{1}, "V(abA,1)");
    c(visited_set(G, w2("b"), 0) == Vs{0}, "V(b,0)");
    c(visited_set(G, w2("b"), 1) == Vs{1, 2}, "V(b,1)");
    return c.f;
  }

  props::Failures normal_core_index() {
    Check c;
    auto  K = support::table_K();
    c(K.index() == 4, "index of K");
    c(normal_core(K).index() == 8, "index of the normal core");
    return c.f;
  }

  props::Failures four_cycle_graph() {
    Check c;
    auto  p = support::example_4_cycle();
    c(validate(p).valid, "validates");
    auto g = HSColoredGraph::build(p, w2("ab"));
    c(g.m() == 8, "m");
    c(g.o_N() == 4, "o_N(ab)");
    c(orders_rel(p, w2("ab")) == Ns{2, 4, 4}, "relative orders");
    auto loops = g.loops();
    c(loops.size() == 2, "loop count");
    for (auto const& l : loops) {
      c(l.length() == 4, "loop length");
      auto z = loop_z_partition(l, g);
      Ns   mods;
      for (auto const& k : z.classes()) {
        mods.push_back(k.modulus);
      }
      std::sort(mods.begin(), mods.end());
      c(mods == Ns{2, 4, 4}, "loop moduli " + to_string(z));
      c(validate_z(z).valid && erdos_checks(z).all_hold(), "loop checks " + to_string(z));
    }
    c(g.fiber(0).size() == 4 && g.fiber(1).size() == 2 && g.fiber(2).size() == 2,
      "fiber sizes");
    return c.f;
  }

  props::Failures theo0_verdicts() {
    Check c;
    auto  p = support::example_4_cycle();
    auto  r = check_theo0(p);
    c(r.applies(), "applies on the four-cycle partition");
    c(r.k == 4 && r.p == 2, "4-cycle with p = 2");
    if (!r.witnesses.empty() && !r.conditions.empty()) {
      auto b = r.conditions.front().blocks.front() - 1;
      c(p[b].index() == 4 && order_rel(p, b, r.witnesses.front()) == 4, "witness");
    }
    auto idx = p.indices();
    std::sort(idx.begin(), idx.end());
    c(idx == Ns{2, 4, 4} && std::count(idx.begin(), idx.end(), 4) >= 2,
      "index 4 repeated twice");

    auto q = support::example_no_4_cycle();
    c(check_theo0(q).verdict == Verdict::DoesNotApply, "silent on the Klein-four partition");
    auto TM = transition_group(support::table_M()).enumerate();
    c(TM.order() == 4 && max_cycle_length(TM).k == 2, "T_M order 4, max cycle 2");
    return c.f;
  }

  props::Failures theo2_pair() {
    Check c;
    auto  p = support::example_no_4_cycle();
    auto  r = check_theo2(p);
    c(r.applies(), "applies");
    bool at_pair = std::any_of(r.conditions.begin(), r.conditions.end(), [](auto const& k) {
      return k.label == "i" && k.blocks == Ns{2, 3};
    });
    c(at_pair, "condition (i) at (2,3)");
    c(p[1].table == p[2].table, "H2 = H3 by table equality");
    c(r.verified == true, "verified");
    return c.f;
  }

  props::Failures metric() {
    Check c;
    auto  a = support::example_4_cycle(), b = support::example_no_4_cycle();
    c(rho(a, b).value() == 0.5, "rho between the worked examples");
    c.add(props::metric_suite(7001, {a, b}));
    return c.f;
  }

  props::Failures property_suite() {
    Check c;
    auto  t0 = std::chrono::steady_clock::now();
    c.add(props::table_suite(8001));
    c.add(props::partition_suite(8002));
    auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c(secs < 60.0, "took " + std::to_string(secs) + " s");
    return c.f;
  }

  props::Failures soundness() {
    Check c;
    namespace fs = std::filesystem;
    for (auto const& e : fs::directory_iterator(HSFORGE_DATA_DIR)) {
      if (e.path().extension() != ".part") {
        continue;
      }
      try {
        auto p = load_partition(e.path().string());
        if (validate(p).valid) {
          props::check_soundness(p.checked(), c.f);
        }
      } catch (ParseError const&) {
      }
    }
    support::Rng rng(10001);
    for (int n = 0; n < 200; ++n) {
      std::uniform_int_distribution<unsigned> rank(2, 3);
      props::check_soundness(support::random_partition(rng, rank(rng), 64), c.f);
    }
    return c.f;
  }

}  // namespace

int main() {
  struct Criterion {
    char const* name;
    props::Failures (*run)();
  };
  Criterion const all[] = {
      {"index-3 subgroup: index, transversal, |T| = 6", index_three},
      {"orders and visited sets on the index-3 table", orders},
      {"K has index 4, normal core index 8", normal_core_index},
      {"four-cycle partition: m, o_N, orders, loops, fibers, loop covers", four_cycle_graph},
      {"theo0 verdicts on both worked partitions", theo0_verdicts},
      {"theo2 at pair (2,3) via (i) on the Klein-four partition", theo2_pair},
      {"metric suite", metric},
      {"property suite under 60 s", property_suite},
      {"split-chain covers of Z", [] { return props::z_suite(9001); }},
      {"soundness harness", soundness},
  };
  int failed = 0;
  int n      = 0;
  for (auto const& c : all) {
    ++n;
    props::Failures f;
    try {
      f = c.run();
    } catch (std::exception const& e) {
      f.push_back(std::string("exception: ") + e.what());
    }
    std::cout << (f.empty() ? "PASS" : "FAIL") << " criterion " << n << ": " << c.name;
    if (!f.empty()) {
      ++failed;
      std::cout << " (" << f.size() << " violations; first: " << f.front() << ")";
    }
    std::cout << "\n";
  }
  return failed == 0 ? 0 : 1;
}
