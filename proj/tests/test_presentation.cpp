#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "tbraid/presentation.hpp"

using namespace tbraid;

namespace {

GroupPresentation rooted(const CheckerboardGraph& g) {
  return kill_generator(greene_presentation(g), g.names[static_cast<std::size_t>(g.root)]);
}

std::vector<long long> small(const AbelianInvariants& inv) {
  std::vector<long long> out;
  for (const auto& t : inv.torsion) out.push_back(t.convert_to<long long>());
  return out;
}

}  // namespace

TEST_CASE("k parallel edges give the cyclic group of order k") {
  for (int k = 1; k <= 12; ++k) {
    const auto p = rooted(oracle::parallel_edges(k));
    REQUIRE(p.generators == std::vector<std::string>{"v"});
    // the root's own relator survives as v^-k next to v's v^k
    REQUIRE(p.relators.size() == 2);
    for (const auto& r : p.relators) CHECK(same_relator(r, FreeWord::generator(0, k)));
    const auto inv = abelianize(p);
    CHECK(inv.free_rank == 0);
    CHECK(inv.order() == k);
    for (int q = 2; q <= 6; ++q) CHECK(oracle::hom_count(p, q) == std::gcd(k, q));
  }
}

TEST_CASE("Greene relators at each vertex") {
  // two vertices, one positive and one negative edge, plus the root relator
  auto g = oracle::parallel_edges(2);
  g.edges[1].sign = -1;
  const auto p = greene_presentation(g);
  CHECK(p.generators == std::vector<std::string>{"r", "v"});
  REQUIRE(p.relators.size() == 3);
  CHECK(p.relators.back() == FreeWord::generator(0));
  // at v: (r^-1 v)(r^-1 v)^-1 reduces away
  CHECK(rooted(g).relators.empty());
}

TEST_CASE("cycle presentation equals the Greene presentation of the cycle graph") {
  oracle::for_each_cycle(2, 4, 3, [](const DecoratedCycleGraph& d) {
    CAPTURE(d.to_string());
    const auto c = cycle_presentation(d);
    const auto g = greene_presentation(cycle_graph_from_params(d));
    CHECK(static_cast<int>(c.generators.size()) == d.c_n() + d.m + 1);
    CHECK(same_relators(kill_generator(c, "z"), kill_generator(g, "z")));
  });
}

TEST_CASE("explicit relators of the smallest cycle") {
  // (1;1,1;1): y0 -- y1 positive path edge, x-path edge y1 -> y0 negative,
  // one root edge at each
  const auto p = cycle_presentation({1, {1, 1}, {1}});
  CHECK(p.generators == std::vector<std::string>{"y0", "y1", "z"});
  CHECK(p.relators.size() == 4);
  CHECK(abelianize(p) == abelianize(rooted(cycle_graph_from_params({1, {1, 1}, {1}}))));
}

TEST_CASE("n = 0 has no explicit relator list") {
  CHECK_THROWS_AS(cycle_presentation({2, {3}, {}}), DegenerateShape);
  CHECK_THROWS_AS(extended_cycle({2, {3}, {}}), DegenerateShape);
}

TEST_CASE("extended cycle indices") {
  const DecoratedCycleGraph d{3, {1, 2, 1}, {2, 1}};
  const auto e = extended_cycle(d);
  CHECK(e.pres.generators[static_cast<std::size_t>(e.x(0))] == "x0");
  CHECK(e.pres.generators[static_cast<std::size_t>(e.x(3))] == "x3");
  CHECK(e.pres.generators[static_cast<std::size_t>(e.y(0))] == "y0");
  CHECK(e.pres.generators[static_cast<std::size_t>(e.y(3))] == "y3");
  CHECK(e.pres.labels[static_cast<std::size_t>(e.rx(1))] == "r(x1)");
  CHECK(e.pres.labels[static_cast<std::size_t>(e.ry(2))] == "r(y2)");
  CHECK(e.pres.labels[static_cast<std::size_t>(e.rz())] == "r(z)");
  CHECK(same_relator(e.pres.relators[static_cast<std::size_t>(e.alias0())], FreeWord({e.x(0) + 1, -(e.y(0) + 1)})));
  CHECK(same_relator(e.pres.relators[static_cast<std::size_t>(e.aliasm())], FreeWord({e.x(3) + 1, -(e.y(3) + 1)})));
  // killing the aliases recovers the cycle presentation's invariants
  CHECK(abelianize(e.pres) == abelianize(kill_generator(cycle_presentation(d), "z")));
}

TEST_CASE("abelianization against homomorphism counts") {
  std::mt19937 rng(2);
  int checked = 0;
  for (int t = 0; t < 200 && checked < 40; ++t) {
    BraidWord w;
    std::uniform_int_distribution<int> gen(1, 2), sign(0, 1);
    for (int i = 0; i < 3 + t % 5; ++i) w.letters.emplace_back(gen(rng), sign(rng) ? 1 : -1);
    CheckerboardGraph g;
    try {
      g = closure_white_graph(w);
    } catch (const DegenerateDiagram&) {
      continue;
    }
    const auto p = rooted(g);
    if (p.generators.size() > 5) continue;
    const auto inv = abelianize(p);
    CAPTURE(to_string(w));
    for (int k : {2, 3, 4, 5, 6})
      CHECK(oracle::hom_count(p, k) == oracle::expected_hom_count(small(inv), inv.free_rank, k));
    ++checked;
  }
  CHECK(checked >= 20);
}

TEST_CASE("Smith form on known matrices") {
  CHECK(abelianize(GroupPresentation{{"a", "b"}, {FreeWord({1, 1, 2, 2, 2, 2}), FreeWord({1, 1, 1, 1, 2, 2})}, {}})
            .to_string() == "Z/2 + Z/6");
  GroupPresentation free2{{"a", "b"}, {}, {}};
  CHECK(abelianize(free2).free_rank == 2);
  CHECK(abelianize(free2).order() == 0);
  CHECK(abelianize(GroupPresentation{{"a"}, {FreeWord({1})}, {}}).to_string() == "Z/1");
}

TEST_CASE("Tietze simplification keeps invariants") {
  for (const char* text : {"h^2 s1^-1 s2^-1", "h^2 s1^-2 s2^-1", "h s1 s2^-2 s1 s2^-2", "s1 s2^-1 s1 s2^-3", "h s2^4"}) {
    CAPTURE(text);
    const auto p = rooted(closure_white_graph(parse_braid(text)));
    const auto s = tietze_simplify(p);
    CHECK(s.generators.size() <= p.generators.size());
    CHECK(abelianize(s) == abelianize(p));
    for (int k : {2, 3, 5}) CHECK(oracle::hom_count(s, k) == oracle::hom_count(p, k));
  }
}

TEST_CASE("kill generator") {
  GroupPresentation p{{"a", "b"}, {FreeWord({1, 2, -1}), FreeWord({1})}, {"x", "y"}};
  const auto q = kill_generator(p, "a");
  CHECK(q.generators == std::vector<std::string>{"b"});
  REQUIRE(q.relators.size() == 1);
  CHECK(q.relators[0] == FreeWord({1}));
  CHECK_THROWS(kill_generator(p, "c"));
}

TEST_CASE("JSON round trip and pretty print") {
  const auto p = cycle_presentation({2, {1, 3}, {2}});
  const auto j = to_json(p);
  CHECK(j.contains("generators"));
  CHECK(j.contains("relators"));
  const auto back = presentation_from_json(nlohmann::json::parse(j.dump()));
  CHECK(back.generators == p.generators);
  CHECK(back.relators == p.relators);
  CHECK(back.labels == p.labels);
  const auto text = pretty(p);
  CHECK(text.find("r(y0)") != std::string::npos);
  CHECK(text.front() == '<');
}

TEST_CASE("checks undeclared generators") {
  GroupPresentation p{{"a"}, {FreeWord({2})}, {}};
  CHECK_THROWS_AS(p.check(), std::logic_error);
  CHECK_THROWS(presentation_from_json(nlohmann::json::parse(R"({"generators":["a"],"relators":[[["b",1]]]})")));
}
