#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "oracles.hpp"
#include "tbraid/pipeline.hpp"

using namespace tbraid;

namespace {

Verdict verdict_of(const char* text) {
  const auto r = run_pipeline(text);
  REQUIRE(r.verdict);
  return *r.verdict;
}

}  // namespace

TEST_CASE("pipeline verdicts on the displayed examples") {
  CHECK(verdict_of("h s1 s2^-2 s1 s2^-2") == Verdict::NonLO_Certified);
  CHECK(verdict_of("h^-1 s1 s2^-1 s1 s2^-2") == Verdict::NonLO_Certified);
  CHECK(verdict_of("s1 s2^-1") == Verdict::NonLO_CitedTheorem);
  CHECK(verdict_of("h^2 s1^-1 s2^-1") == Verdict::NonLO_FiniteGroup);
  CHECK(verdict_of("h^2 s1^-3 s2^-1") == Verdict::NonLO_FiniteGroup);
  CHECK(verdict_of("h s2^5") == Verdict::NonLO_FiniteGroup);
  CHECK(verdict_of("h s1 s2^-1") == Verdict::NonLO_Torsion);
  CHECK(verdict_of("h s1 s2^-2") == Verdict::NonLO_Torsion);
  CHECK(verdict_of("h^-1 s1 s2^-1") == Verdict::NonLO_Torsion);
}

TEST_CASE("pipeline report contents") {
  const auto r = run_pipeline("h s1 s2^-2 s1 s2^-2");
  CHECK(r.exit_code() == kExitVerdict);
  CHECK(r.machine_checked);
  REQUIRE(r.cycle);
  CHECK(*r.cycle == DecoratedCycleGraph{3, {1, 1, 1}, {1, 1}});
  REQUIRE(r.determinant);
  CHECK(abs(*r.determinant) == abs(oracle::signed_spanning_trees(cycle_graph_from_params(*r.cycle))));
  CHECK(abs(*r.determinant) == 16);
  REQUIRE(r.abelian);
  CHECK(r.abelian->to_string() == "Z/4 + Z/4");
  REQUIRE(r.graph_summary);
  CHECK(r.graph_summary->euler);
  CHECK(r.soundness_failures.empty());
  CHECK(r.normalization_replayed.value_or(false));

  const auto t = run_pipeline("h^2 s1^-2 s2^-1");
  REQUIRE(t.cosets);
  CHECK(t.cosets->complete);
  CHECK(t.cosets->order == 48);
  CHECK(t.abelian->to_string() == "Z/2");
}

TEST_CASE("inconclusive and bad input") {
  const auto none = run_pipeline("s1 s1 s2 s2");
  CHECK_FALSE(none.verdict);
  CHECK(none.exit_code() == kExitInconclusive);

  const auto bad = run_pipeline("zzz");
  CHECK_FALSE(bad.input_error.empty());
  CHECK(bad.exit_code() == kExitInput);

  const auto hyp = run_cycle({1, {1, 3}, {1}});
  CHECK(hyp.hypothesis_not_met);
  CHECK(hyp.exit_code() == kExitInconclusive);
  REQUIRE(hyp.verdict);
  CHECK(*hyp.verdict == Verdict::Inconclusive);
}

TEST_CASE("recheck mode agrees") {
  PipelineOptions opt;
  opt.recheck = true;
  const auto r = run_pipeline("h^-1 s1 s2^-1 s1 s2^-2", opt);
  REQUIRE(r.verdict);
  CHECK(*r.verdict == Verdict::NonLO_Certified);
  REQUIRE(r.certificate_check);
  CHECK(r.certificate_check->ok);
  CHECK(r.lemma_checks.value_or(0) > 0);
}

TEST_CASE("canonical JSON is reproducible") {
  for (const char* text : {"h s1 s2^-2 s1 s2^-2", "h^2 s1^-1 s2^-1", "s1 s1 s2 s2", "zzz"}) {
    CAPTURE(text);
    const auto a = to_json(run_pipeline(text), true).dump(2);
    const auto b = to_json(run_pipeline(text), true).dump(2);
    CHECK(a == b);
    CHECK(a.find("timing_ms") == std::string::npos);
  }
  CHECK(to_json(run_pipeline("h s2^5"), false).dump().find("timing_ms") != std::string::npos);
}

TEST_CASE("grid parsing") {
  std::istringstream in("# header\nh s2^5\n\n(3;1,1,1;1,1)  # cycle\n  s1 s2^-1\n");
  const auto g = parse_grid(in);
  REQUIRE(g.size() == 3);
  CHECK(g[0].text == "h s2^5");
  CHECK(g[0].line == 2);
  CHECK(g[1].is_params);
  CHECK(g[1].line == 4);
  CHECK(g[2].text == "s1 s2^-1");

  std::istringstream bad("h s2^5\n(1;1)\n");
  try {
    parse_grid(bad);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("batch keeps input order and is worker-independent") {
  std::istringstream in("h s2^5\n(3;1,1,1;1,1)\n(1;1,3;1)\nh^2 s1^-3 s2^-1\ns1 s2^-1\ns1 s1 s2 s2\n");
  const auto g = parse_grid(in);
  const auto one = run_batch(g, {}, 1);
  const auto three = run_batch(g, {}, 3);
  REQUIRE(one.reports.size() == g.size());
  CHECK(to_json(one, true).dump() == to_json(three, true).dump());
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(one.reports[i].input == g[i].text);
  CHECK(one.count(Verdict::NonLO_FiniteGroup) == 2);
  CHECK(one.count(Verdict::NonLO_Certified) == 1);
  CHECK(one.count(Verdict::NonLO_CitedTheorem) == 1);
  CHECK(one.hypothesis_not_met() == 1);
  CHECK(one.count(std::nullopt) == 1);
  CHECK(one.unsound() == 0);
  CHECK(one.exit_code() == kExitVerdict);
  CHECK(summary_table(one).find("NonLO_Certified") != std::string::npos);
  CHECK(run_batch({}, {}, 2).reports.empty());
}
