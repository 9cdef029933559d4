#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "oracles.hpp"
#include "tbraid/certificate.hpp"
#include "tbraid/lo.hpp"

using namespace tbraid;

namespace {

bool in_hypothesis(const DecoratedCycleGraph& d) {
  return d.m > 1 || (d.m == 1 && d.a.front() > 1 && d.a.back() > 1);
}

GroupPresentation rooted_closure(const char* text) {
  const auto g = closure_white_graph(parse_braid(text));
  return tietze_simplify(kill_generator(greene_presentation(g), g.names[static_cast<std::size_t>(g.root)]));
}

GroupPresentation pres(std::vector<std::string> gens, std::vector<std::vector<int>> rels) {
  GroupPresentation p;
  p.generators = std::move(gens);
  for (auto& r : rels) p.relators.emplace_back(std::move(r));
  p.labels.assign(p.relators.size(), "");
  return p;
}

// ab^k as a letter list with +-(g+1) encoding
std::vector<int> rep(std::vector<int> w, int k) {
  std::vector<int> out;
  for (int i = 0; i < k; ++i) out.insert(out.end(), w.begin(), w.end());
  return out;
}

}  // namespace

TEST_CASE("worked certificates verify") {
  for (const auto& d : {DecoratedCycleGraph{3, {1, 1, 1}, {1, 1}}, DecoratedCycleGraph{1, {3, 4}, {1}}}) {
    CAPTURE(d.to_string());
    const auto c = certify_cycle_non_lo(d);
    CHECK(c.hypothesis_case == (d.m > 1 ? 1 : 2));
    const auto v = verify_certificate(c);
    CHECK(v.ok);
    CHECK(v.steps_checked == c.steps.size());
    CHECK(c.steps.back().kind == CertStep::Kind::Contradiction);
  }
}

TEST_CASE("hypothesis and shape guards") {
  CHECK_THROWS_AS(certify_cycle_non_lo({1, {1, 3}, {1}}), HypothesisNotMet);
  CHECK_THROWS_AS(certify_cycle_non_lo({1, {2, 1}, {2}}), HypothesisNotMet);
  CHECK_THROWS_AS(certify_cycle_non_lo({2, {3}, {}}), DegenerateShape);
}

TEST_CASE("certificates over a grid verify and survive JSON") {
  int certified = 0;
  oracle::for_each_cycle(3, 4, 3, [&](const DecoratedCycleGraph& d) {
    CAPTURE(d.to_string());
    if (!in_hypothesis(d)) {
      CHECK_THROWS_AS(certify_cycle_non_lo(d), HypothesisNotMet);
      return;
    }
    const auto c = certify_cycle_non_lo(d);
    CHECK(verify_certificate(c).ok);
    const auto text = to_json(c).dump();
    const auto back = certificate_from_json(nlohmann::json::parse(text));
    CHECK(verify_certificate(back).ok);
    CHECK(to_json(back).dump() == text);
    ++certified;
  });
  CHECK(certified > 100);
}

TEST_CASE("mixed-sign vertices are the two ends of the x-path") {
  oracle::for_each_cycle(3, 4, 2, [](const DecoratedCycleGraph& d) {
    CAPTURE(d.to_string());
    // x-path edges are negative, everything else positive, so only the
    // vertices shared by both paths see two signs
    const std::vector<std::string> expected{"y0", "y" + std::to_string(d.c_n())};
    CHECK(mixed_sign_vertices(d) == expected);
    // recount edge signs around every vertex
    const auto g = cycle_graph_from_params(d);
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      int pos = 0, neg = 0;
      for (const auto& e : g.edges)
        if (e.u == static_cast<int>(v) || e.v == static_cast<int>(v)) (e.sign > 0 ? pos : neg)++;
      const bool mixed = pos > 0 && neg > 0;
      CHECK(mixed == (std::find(expected.begin(), expected.end(), g.names[v]) != expected.end()));
    }
  });
}

TEST_CASE("tampered certificates fail") {
  const DecoratedCycleGraph d{1, {3, 4}, {1}};
  const auto good = certify_cycle_non_lo(d);
  REQUIRE(verify_certificate(good).ok);

  int flipped = 0;
  for (std::size_t i = 0; i < good.steps.size(); ++i) {
    if (good.steps[i].kind != CertStep::Kind::Product) continue;
    auto bad = good;
    bad.steps[i].sign = flip(bad.steps[i].sign);
    CHECK_FALSE(verify_certificate(bad).ok);
    ++flipped;
  }
  CHECK(flipped > 0);

  for (std::size_t i = 0; i < good.steps.size(); ++i) {
    if (good.steps[i].factors.empty()) continue;
    auto bad = good;
    bad.steps[i].factors.front().second += 1;
    CAPTURE(i);
    CHECK_FALSE(verify_certificate(bad).ok);
  }

  auto bad = good;
  bad.steps.pop_back();
  CHECK_FALSE(verify_certificate(bad).ok);

  bad = good;
  bad.params.a[0] += 1;
  CHECK_FALSE(verify_certificate(bad).ok);

  bad = good;
  for (auto& s : bad.steps)
    if (s.kind == CertStep::Kind::Relation) {
      s.relator = (s.relator + 1) % static_cast<int>(bad.pres.relators.size());
      break;
    }
  CHECK_FALSE(verify_certificate(bad).ok);

  bad = good;
  bad.steps.front().sign = flip(bad.steps.front().sign);
  CHECK_FALSE(verify_certificate(bad).ok);

  CHECK_THROWS(certificate_from_json(nlohmann::json::parse(R"({"steps":[]})")));
}

TEST_CASE("sign names") {
  for (Sign s : {Sign::Positive, Sign::NonNegative, Sign::Negative, Sign::NonPositive}) {
    CHECK(sign_from_name(sign_name(s)) == s);
    CHECK(flip(flip(s)) == s);
  }
  CHECK(flip(Sign::Positive) == Sign::Negative);
  CHECK(flip(Sign::NonNegative) == Sign::NonPositive);
  CHECK_THROWS(sign_from_name("up"));
}

TEST_CASE("coset enumeration on groups of known order") {
  struct Case {
    GroupPresentation p;
    std::size_t order;
  };
  std::vector<Case> cases{
      {pres({"v"}, {{1, 1, 1, 1, 1}}), 5},
      {pres({"a", "b"}, {{1, 1}, {2, 2, 2}, rep({1, 2}, 3)}), 12},
      {pres({"a", "b"}, {{1, 1}, {2, 2, 2}, rep({1, 2}, 4)}), 24},
      {pres({"a", "b"}, {{1, 1}, {2, 2, 2}, rep({1, 2}, 5)}), 60},
      {pres({"i", "j"}, {{1, 1, 1, 1}, {1, 1, -2, -2}, {-2, 1, 2, 1}}), 8},
      {pres({"x"}, {{1}}), 1},
  };
  for (int n = 2; n <= 9; ++n) cases.push_back({pres({"r", "s"}, {rep({1}, n), {2, 2}, {1, 2, 1, 2}}), 2 * static_cast<std::size_t>(n)});
  for (const auto& [p, order] : cases) {
    CAPTURE(pretty(p));
    const auto t = todd_coxeter(p);
    REQUIRE(t.complete);
    CHECK(t.order == order);
    CHECK(t.rows.size() == order);
    CHECK(is_consistent(t, p));
    CHECK(oracle::permutation_group_order(t) == order);
    for (const auto& r : p.relators) CHECK(t.is_identity(r));
  }
}

TEST_CASE("finite branched-cover groups") {
  struct Case {
    const char* braid;
    std::size_t order;
  };
  for (const auto& [braid, order] : std::vector<Case>{{"h^2 s1^-1 s2^-1", 120}, {"h^2 s1^-2 s2^-1", 48}, {"h^2 s1^-3 s2^-1", 24}}) {
    CAPTURE(braid);
    const auto p = rooted_closure(braid);
    const auto t = todd_coxeter(p);
    REQUIRE(t.complete);
    CHECK(t.order == order);
    CHECK(oracle::permutation_group_order(t) == order);
    CHECK(is_consistent(t, p));
    CHECK(dump(todd_coxeter(p)) == dump(t));

    // relabel the generators in reverse and conjugate every relator
    auto q = p;
    const int n = static_cast<int>(p.generators.size());
    std::reverse(q.generators.begin(), q.generators.end());
    for (auto& r : q.relators) {
      for (int& l : r.letters) l = l > 0 ? n - l + 1 : -(n + l + 1);
      if (!r.empty()) std::rotate(r.letters.begin(), r.letters.begin() + 1, r.letters.end());
    }
    CHECK(todd_coxeter(q).order == order);
    CHECK(todd_coxeter(tietze_simplify(p)).order == order);
    // |H1| divides the order
    const auto inv = abelianize(p);
    CHECK(inv.free_rank == 0);
    CHECK(order % inv.order().convert_to<std::size_t>() == 0);
  }
}

TEST_CASE("coset cap on infinite groups") {
  const auto t = todd_coxeter(pres({"x"}, {}), 1000);
  CHECK_FALSE(t.complete);
  CHECK(dump(t).rfind("exhausted", 0) == 0);
  CHECK_FALSE(todd_coxeter(pres({"a", "b"}, {{1, 2, -1, -2}}), 5000).complete);
  CHECK(dump(todd_coxeter(pres({"v"}, {{1, 1, 1}}))).rfind("order 3\n", 0) == 0);
}

TEST_CASE("torsion verdicts") {
  AbelianInvariants z5;
  z5.torsion = {5};
  CHECK(torsion_non_lo(z5, true).verdict == Verdict::NonLO_Torsion);
  CHECK(torsion_non_lo(z5, false).verdict == Verdict::Inconclusive);
  AbelianInvariants trivial;
  CHECK(torsion_non_lo(trivial, true).verdict == Verdict::Inconclusive);
  AbelianInvariants z;
  z.free_rank = 1;
  CHECK(torsion_non_lo(z, true).verdict == Verdict::Inconclusive);
  CHECK(verdict_name(Verdict::NonLO_Certified) == "NonLO_Certified");
  CHECK(verdict_name(Verdict::Inconclusive) == "Inconclusive");
}

TEST_CASE("positive cone search in finite cyclic groups") {
  for (int k : {2, 3, 5}) {
    CAPTURE(k);
    const auto p = pres({"x"}, {rep({1}, k)});
    const auto t = todd_coxeter(p);
    const CosetTableOracle o(t);
    const auto w = positive_cone_search(p, o, 6);
    REQUIRE(w);
    CHECK_FALSE(w->trivial_group);
    CHECK(w->derivations.size() == 2);
    for (const auto& dv : w->derivations) {
      CHECK_FALSE(dv.product.empty());
      CHECK(t.is_identity(dv.product));
      for (int l : dv.product.letters) CHECK(l * dv.signs[0] > 0);
    }
    CHECK(replay_witness(*w, p, o));
    auto forged = *w;
    forged.derivations[0].product.letters.pop_back();
    CHECK_FALSE(replay_witness(forged, p, o));
  }
  // depth below the order finds nothing
  const auto p = pres({"x"}, {rep({1}, 5)});
  CHECK_FALSE(positive_cone_search(p, CosetTableOracle(todd_coxeter(p)), 4));
}

TEST_CASE("positive cone search in other groups") {
  CHECK_FALSE(positive_cone_search(pres({"x"}, {}), FreeGroupOracle(), 10));
  CHECK_FALSE(positive_cone_search(pres({"a", "b"}, {}), FreeGroupOracle(), 10));

  const auto triv = pres({"x"}, {{1}});
  const auto w = positive_cone_search(triv, CosetTableOracle(todd_coxeter(triv)), 3);
  REQUIRE(w);
  CHECK(w->trivial_group);

  // s1^3 s2 closes to the trefoil; its double cover has group Z/3
  const auto p = rooted_closure("s1^3 s2");
  const auto t = todd_coxeter(p);
  REQUIRE(t.complete);
  CHECK(t.order == 3);
  const CosetTableOracle o(t);
  const auto tw = positive_cone_search(p, o, 6);
  REQUIRE(tw);
  CHECK(replay_witness(*tw, p, o));
  for (const auto& dv : tw->derivations) CHECK(t.is_identity(dv.product));

  // same search, same witness
  const auto again = positive_cone_search(p, o, 6);
  REQUIRE(again);
  REQUIRE(again->derivations.size() == tw->derivations.size());
  for (std::size_t i = 0; i < tw->derivations.size(); ++i)
    CHECK(again->derivations[i].product == tw->derivations[i].product);
}
