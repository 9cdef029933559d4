#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "tbraid/diagram.hpp"

using namespace tbraid;

namespace {

BraidWord random_word(std::mt19937& rng, int len) {
  std::uniform_int_distribution<int> gen(1, 2), sign(0, 1);
  BraidWord w;
  for (int i = 0; i < len; ++i) w.letters.emplace_back(gen(rng), sign(rng) ? 1 : -1);
  return w;
}

}  // namespace

TEST_CASE("worked example reads as the cycle graph") {
  const auto g = closure_white_graph(parse_braid("s2^3 s1 s2^-1 s1 s2^-1 s1"));
  check_rotation_system(g);
  CHECK(satisfies_euler(g));
  const auto r = read_decorated(g);
  CHECK(r.params == DecoratedCycleGraph{3, {1, 1, 1}, {1, 1}});
  CHECK(same_labelled_graph(relabelled(g, r.labels), cycle_graph_from_params(r.params)));
  CHECK(abs(goeritz_matrix(g).determinant()) == 16);
}

TEST_CASE("cycle graph counts") {
  oracle::for_each_cycle(2, 4, 3, [](const DecoratedCycleGraph& d) {
    CAPTURE(d.to_string());
    const auto g = cycle_graph_from_params(d);
    check_rotation_system(g);
    CHECK(satisfies_euler(g));
    CHECK(static_cast<int>(g.vertex_count()) == d.c_n() + d.m + 1);
    int root_edges = 0;
    for (int a : d.a) root_edges += a;
    CHECK(static_cast<int>(g.edge_count()) == d.m + d.c_n() + root_edges);
    CHECK(g.names[static_cast<std::size_t>(g.root)] == "z");
  });
}

TEST_CASE("cycle parameters survive graph round trips") {
  oracle::for_each_cycle(2, 4, 3, [](const DecoratedCycleGraph& d) {
    CAPTURE(d.to_string());
    CHECK(to_decorated(cycle_graph_from_params(d)) == d);
    const auto closure = closure_white_graph(cycle_form_word(d));
    CHECK(to_decorated(closure) == d);
    CHECK(abs(goeritz_matrix(closure).determinant()) == abs(goeritz_matrix(cycle_graph_from_params(d)).determinant()));
  });
}

TEST_CASE("Goeritz determinant against Leibniz and spanning trees") {
  std::mt19937 rng(5);
  int checked = 0;
  for (int t = 0; t < 400 && checked < 120; ++t) {
    const auto w = random_word(rng, 2 + t % 7);
    CheckerboardGraph g;
    try {
      g = closure_white_graph(w);
    } catch (const DegenerateDiagram&) {
      continue;
    }
    if (g.vertex_count() > 8 || g.edge_count() > 14) continue;
    const auto G = goeritz_matrix(g);
    CAPTURE(to_string(w));
    CHECK(G.is_symmetric());
    CHECK(G.determinant() == oracle::leibniz_det(G.entries));
    CHECK(abs(G.determinant()) == abs(oracle::signed_spanning_trees(g)));
    CHECK(satisfies_euler(g));
    ++checked;
  }
  CHECK(checked >= 50);
}

TEST_CASE("parallel edges") {
  for (int k = 1; k <= 6; ++k) {
    const auto g = oracle::parallel_edges(k);
    check_rotation_system(g);
    CHECK(face_count(g) == static_cast<std::size_t>(k));
    CHECK(satisfies_euler(g));
    CHECK(goeritz_matrix(g).determinant() == k);
  }
}

TEST_CASE("closures of torus braids") {
  // s1^k s2 closes to T(2,k), determinant k
  for (int k = 1; k <= 7; ++k) {
    BraidWord w;
    w.letters.assign(static_cast<std::size_t>(k), BraidLetter(1, 1));
    w.letters.emplace_back(2, 1);
    CHECK(abs(goeritz_matrix(closure_white_graph(w)).determinant()) == k);
  }
  // the unlink-with-a-component pieces: s1 s2^-1 is the unknot
  CHECK(abs(goeritz_matrix(closure_white_graph(parse_braid("s1 s2^-1"))).determinant()) == 1);
}

TEST_CASE("determinant is a conjugacy invariant") {
  std::mt19937 rng(9);
  for (int t = 0; t < 60; ++t) {
    const auto w = random_word(rng, 3 + t % 6);
    BigInt base;
    try {
      base = abs(goeritz_matrix(closure_white_graph(w)).determinant());
    } catch (const DegenerateDiagram&) {
      continue;
    }
    for (std::size_t k = 0; k < w.letters.size(); ++k) {
      const auto c = cyclic_conjugate(w, k);
      CAPTURE(to_string(w));
      CAPTURE(to_string(c));
      try {
        CHECK(abs(goeritz_matrix(closure_white_graph(c)).determinant()) == base);
      } catch (const DegenerateDiagram&) {
      }
    }
  }
}

TEST_CASE("rotation system errors") {
  auto g = oracle::parallel_edges(3);
  g.rotation[1].pop_back();
  CHECK_THROWS_AS(check_rotation_system(g), std::logic_error);
  g = oracle::parallel_edges(3);
  std::swap(g.rotation[0][0], g.rotation[1][0]);
  CHECK_THROWS_AS(check_rotation_system(g), std::logic_error);
}

TEST_CASE("degenerate and non-cycle diagrams") {
  CHECK_THROWS_AS(closure_white_graph(parse_braid("1")), DegenerateDiagram);
  CHECK_THROWS_AS(closure_white_graph(parse_braid("s1 s1^-1")), DegenerateDiagram);
  CHECK_THROWS_AS(read_decorated(closure_white_graph(parse_braid("s1 s2 s1 s2"))), ShapeMismatch);
}

TEST_CASE("labelled graph comparison sees sign changes") {
  const DecoratedCycleGraph d{2, {1, 2}, {1}};
  auto g = cycle_graph_from_params(d);
  CHECK(same_labelled_graph(g, cycle_graph_from_params(d)));
  g.edges[0].sign = -g.edges[0].sign;
  CHECK_FALSE(same_labelled_graph(g, cycle_graph_from_params(d)));
  CHECK_FALSE(same_labelled_graph(cycle_graph_from_params({2, {2, 1}, {1}}), cycle_graph_from_params(d)));
}

TEST_CASE("dot export") {
  const auto dot = to_dot(cycle_graph_from_params({1, {3, 4}, {1}}));
  CHECK(dot.find("graph") != std::string::npos);
  CHECK(dot.find("root=true") != std::string::npos);
  CHECK(dot.find("sign=\"-\"") != std::string::npos);
  CHECK(dot.find("sign=\"+\"") != std::string::npos);
}

TEST_CASE("alternating closures") {
  CHECK(is_alternating_closure(Type1{0, {1, 2}}));
  CHECK_FALSE(is_alternating_closure(Type1{1, {1, 2}}));
  CHECK_FALSE(is_alternating_closure(Type2{1, 3}));
}

TEST_CASE("cycle parameter text") {
  const DecoratedCycleGraph d{4, {2, 1, 3}, {3, 1}};
  CHECK(d.to_string() == "(4;2,1,3;3,1)");
  CHECK(parse_cycle_params(" ( 4; 2,1,3 ;3,1 )") == d);
  CHECK(parse_cycle_params("(1;3;)") == DecoratedCycleGraph{1, {3}, {}});
  CHECK_THROWS_AS(parse_cycle_params("(1;3)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_cycle_params("(0;1,1;1)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_cycle_params("(1;1,1;1,1)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_cycle_params("(1;a;)"), std::invalid_argument);
}
