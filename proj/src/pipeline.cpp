#include "tbraid/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <sstream>
#include <thread>

#include "tbraid/lemmas.hpp"

namespace tbraid {

namespace {

using Clock = std::chrono::steady_clock;

class Stage {
 public:
  Stage(PipelineReport& r, std::string name) : r_(r), name_(std::move(name)), start_(Clock::now()) {}
  ~Stage() {
    r_.timing_ms.emplace_back(name_, std::chrono::duration<double, std::milli>(Clock::now() - start_).count());
  }

 private:
  PipelineReport& r_;
  std::string name_;
  Clock::time_point start_;
};

std::string big_string(const BigInt& v) { return v.str(); }

nlohmann::json big_json(const BigInt& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
    return v.convert_to<long long>();
  return v.str();
}

GraphSummary summarize(const CheckerboardGraph& g) {
  return {g.names.size(), g.edges.size(), face_count(g), satisfies_euler(g), g.names[static_cast<std::size_t>(g.root)]};
}

// Greene presentation of g with the root killed; fills graph, invariants,
// determinant and checks |det| against |H1|.
GroupPresentation present(PipelineReport& r, const CheckerboardGraph& g) {
  GroupPresentation p;
  {
    Stage s(r, "graph");
    check_rotation_system(g);
    r.graph = g;
    r.graph_summary = summarize(g);
    if (!r.graph_summary->euler) r.soundness_failures.push_back("white graph fails V - E + F = 2");
  }
  {
    Stage s(r, "present");
    p = kill_generator(greene_presentation(g), g.names[static_cast<std::size_t>(g.root)]);
    r.abelian = abelianize(p);
    r.determinant = goeritz_matrix(g).determinant();
  }
  const BigInt det = abs(*r.determinant);
  if (r.abelian->free_rank > 0 ? det != 0 : det != r.abelian->order())
    r.soundness_failures.push_back("|det| = " + big_string(det) + " but H1 = " + r.abelian->to_string());
  return p;
}

void finite_group_route(PipelineReport& r, const BraidWord& w, const PipelineOptions& opt) {
  const auto p = present(r, closure_white_graph(w));
  GroupPresentation simple;
  CosetTable table;
  {
    Stage s(r, "cosets");
    simple = tietze_simplify(p);
    r.presentation = simple;
    table = todd_coxeter(simple, opt.max_cosets);
    r.cosets = CosetSummary{table.complete, table.order, table.defined};
  }
  if (abelianize(simple) != *r.abelian)
    r.soundness_failures.push_back("Tietze simplification changed the abelianization");
  if (!table.complete) {
    r.verdict = Verdict::Inconclusive;
    r.justification = "coset enumeration exhausted after " + std::to_string(table.defined) + " cosets";
    return;
  }
  if (!is_consistent(table, simple)) {
    r.soundness_failures.push_back("coset table is not a permutation representation of the relators");
    return;
  }
  const BigInt h1 = r.abelian->order();
  if (h1 == 0 || BigInt(table.order) % h1 != 0)
    r.soundness_failures.push_back("|H1| does not divide the group order");
  r.verdict = Verdict::NonLO_FiniteGroup;
  r.machine_checked = true;
  r.justification = table.order == 1 ? "trivial group"
                                     : "finite group of order " + std::to_string(table.order);
  if (opt.depth > 0) {
    Stage s(r, "cone");
    CosetTableOracle oracle(table);
    auto witness = positive_cone_search(simple, oracle, opt.depth);
    r.cone_witness = witness.has_value();
    if (witness && !replay_witness(*witness, simple, oracle))
      r.soundness_failures.push_back("positive-cone witness does not replay");
  }
}

void alternating_route(PipelineReport& r, const BraidWord& w) {
  r.presentation = present(r, closure_white_graph(w));
  r.verdict = Verdict::NonLO_CitedTheorem;
  r.machine_checked = false;
  r.justification = "alternating closure; non-LO by the cited theorem for alternating branch sets, not checked here";
}

void certify(PipelineReport& r, const DecoratedCycleGraph& d, const PipelineOptions& opt) {
  if (!d.meets_cycle_hypothesis()) {
    r.hypothesis_not_met = true;
    r.verdict = Verdict::Inconclusive;
    r.justification = "cycle hypothesis fails: need m > 1, or m = 1 with a0, an > 1";
    return;
  }
  {
    Stage s(r, "certify");
    r.certificate = certify_cycle_non_lo(d);
  }
  {
    Stage s(r, "recheck");
    if (opt.recheck) {
      // only the serialized certificate is trusted here
      const auto back = certificate_from_json(nlohmann::json::parse(to_json(*r.certificate).dump()));
      r.certificate_check = verify_certificate(back);
      r.lemma_checks = verify_all_lemmas(d, true);
    } else {
      r.certificate_check = verify_certificate(*r.certificate);
    }
  }
  if (!r.certificate_check->ok) {
    r.soundness_failures.push_back("certificate rejected: " + r.certificate_check->failure);
    return;
  }
  r.verdict = Verdict::NonLO_Certified;
  r.machine_checked = true;
  r.justification = "cycle certificate, case " + std::to_string(r.certificate->hypothesis_case);
}

void cycle_route(PipelineReport& r, const DecoratedCycleGraph& d, const PipelineOptions& opt) {
  r.cycle = d;
  present(r, cycle_graph_from_params(d));
  {
    Stage s(r, "present");
    r.presentation = cycle_presentation(d);
  }
  const auto h = d.vertex_count() + 1;
  if (static_cast<int>(r.presentation->generators.size()) != h)
    r.soundness_failures.push_back("cycle presentation has " +
                                   std::to_string(r.presentation->generators.size()) + " generators, expected " +
                                   std::to_string(h));
  if (abelianize(*r.presentation) != *r.abelian)
    r.soundness_failures.push_back("cycle presentation and graph presentation have different H1");
  certify(r, d, opt);
}

// Closure of s1^k s2 is T(2,k); the double cover is a lens space.
AbelianInvariants torus_invariants(int k) {
  BraidWord w;
  w.letters.assign(static_cast<std::size_t>(std::abs(k)), BraidLetter(1, k < 0 ? -1 : 1));
  w.letters.emplace_back(2, 1);
  const auto g = closure_white_graph(w);
  return abelianize(kill_generator(greene_presentation(g), g.names[static_cast<std::size_t>(g.root)]));
}

void torus_route(PipelineReport& r, const TorusBranchSet& t) {
  r.presentation = present(r, closure_white_graph(r.normalization->output));
  if (t.q != t.derived_q)
    r.notes.push_back("stated branch set T(2," + std::to_string(t.q) + "), derived T(2," +
                      std::to_string(t.derived_q) + "); the derived word is used");
  if (r.abelian->free_rank == 0 && r.abelian->order() != std::abs(t.derived_q))
    r.soundness_failures.push_back("torus output does not have |H1| = " + std::to_string(std::abs(t.derived_q)));
  auto tv = torsion_non_lo(*r.abelian, true);
  r.verdict = tv.verdict;
  r.machine_checked = tv.verdict != Verdict::Inconclusive;
  r.justification = "T(2," + std::to_string(t.derived_q) + "): " + tv.justification;
  if (r.abelian->is_trivial()) {
    r.verdict = Verdict::NonLO_FiniteGroup;
    r.justification = "T(2,+-1) is the unknot; trivial group";
  }
}

void connected_sum_route(PipelineReport& r, const ConnectedSumBranchSet& c) {
  r.presentation = present(r, closure_white_graph(r.normalization->output));
  // pi1 is the free product Z/p * Z/q; torsion in either factor persists.
  std::vector<std::string> parts;
  bool torsion = false, trivial = true;
  for (int k : {c.p, c.q}) {
    const auto inv = torus_invariants(k);
    const auto tv = torsion_non_lo(inv, true);
    torsion = torsion || tv.verdict == Verdict::NonLO_Torsion;
    trivial = trivial && inv.is_trivial();
    parts.push_back("T(2," + std::to_string(k) + ") gives " + (inv.is_trivial() ? std::string("1") : inv.to_string()));
  }
  const std::string both = parts[0] + ", " + parts[1];
  if (torsion) {
    r.verdict = Verdict::NonLO_Torsion;
    r.machine_checked = true;
    r.justification = "connected sum, free product of finite cyclic factors with torsion: " + both;
  } else if (trivial) {
    r.verdict = Verdict::NonLO_FiniteGroup;
    r.machine_checked = true;
    r.justification = "connected sum of unknots; trivial group";
  } else {
    r.verdict = Verdict::Inconclusive;
    r.justification = "connected sum without torsion: " + both;
  }
}

void type1_route(PipelineReport& r, const BraidWord& w, const Type1& t, const PipelineOptions& opt) {
  {
    Stage s(r, "normalize");
    r.normalization = t.d == 1 ? normalize_type1_d1(w) : normalize_type1_dm1(w);
    const auto rep = replay_transcript(w, r.normalization->transcript, r.normalization->output);
    r.normalization_replayed = rep.ok;
    if (!rep.ok) r.soundness_failures.push_back("normalization transcript: " + rep.failure);
  }
  const auto& shape = r.normalization->shape;
  if (const auto* cf = std::get_if<CycleForm>(&shape)) {
    const auto& d = cf->graph;
    if (t.d == 1 && d.m <= 2) r.soundness_failures.push_back("d = 1 normal form with m <= 2");
    if (t.d == -1 && !(d.m == 1 && d.a.front() > 1 && d.a.back() > 1))
      r.soundness_failures.push_back("d = -1 normal form outside m = 1, a0, an > 1");
    {
      Stage s(r, "graph");
      const auto read = to_decorated(closure_white_graph(r.normalization->output));
      if (!(read == d)) r.soundness_failures.push_back("closure graph reads as " + read.to_string());
    }
    cycle_route(r, d, opt);
  } else if (const auto* tb = std::get_if<TorusBranchSet>(&shape)) {
    torus_route(r, *tb);
  } else {
    connected_sum_route(r, std::get<ConnectedSumBranchSet>(shape));
  }
}

}  // namespace

int PipelineReport::exit_code() const {
  if (!input_error.empty()) return kExitInput;
  if (!soundness_failures.empty()) return kExitUnsound;
  if (!verdict || *verdict == Verdict::Inconclusive) return kExitInconclusive;
  return kExitVerdict;
}

PipelineReport run_pipeline(const std::string& text, const PipelineOptions& opt) {
  PipelineReport r;
  r.input = text;
  BraidWord w;
  try {
    w = parse_braid(text);
  } catch (const ParseError& e) {
    r.input_error = e.what();
    return r;
  }
  try {
    {
      Stage s(r, "classify");
      r.classification = classify_detailed(w);
      const auto rep = replay_transcript(w, r.classification->moves, r.classification->canonical);
      if (!rep.ok) r.soundness_failures.push_back("classification transcript: " + rep.failure);
    }
    const auto& fam = r.classification->family;
    if (std::holds_alternative<Type2>(fam) || std::holds_alternative<Type3>(fam)) {
      finite_group_route(r, w, opt);
    } else if (const auto* t1 = std::get_if<Type1>(&fam)) {
      if (t1->d == 0)
        alternating_route(r, w);
      else if (t1->d == 1 || t1->d == -1)
        type1_route(r, w, *t1, opt);
      else
        r.presentation = present(r, closure_white_graph(w));
    } else {
      r.presentation = present(r, closure_white_graph(w));
      r.notes.push_back("not in a Baldwin family; no rule applies");
    }
  } catch (const DegenerateDiagram& e) {
    r.notes.push_back(std::string("no diagram: ") + e.what());
  } catch (const std::exception& e) {
    r.soundness_failures.push_back(std::string("internal error: ") + e.what());
  }
  return r;
}

PipelineReport run_cycle(const DecoratedCycleGraph& d, const PipelineOptions& opt) {
  PipelineReport r;
  r.input = d.to_string();
  try {
    d.validate();
  } catch (const std::invalid_argument& e) {
    r.input_error = e.what();
    return r;
  }
  try {
    cycle_route(r, d, opt);
  } catch (const std::exception& e) {
    r.soundness_failures.push_back(std::string("internal error: ") + e.what());
  }
  return r;
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json to_json(const BaldwinClass& c) {
  return std::visit(
      [](const auto& v) -> nlohmann::json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Type1>) return {{"type", 1}, {"d", v.d}, {"a", v.a}};
        if constexpr (std::is_same_v<T, Type2>) return {{"type", 2}, {"d", v.d}, {"m", v.m}};
        if constexpr (std::is_same_v<T, Type3>) return {{"type", 3}, {"d", v.d}, {"m", v.m}};
        return {{"type", nullptr}};
      },
      c);
}

nlohmann::json to_json(const Transcript& t) {
  auto out = nlohmann::json::array();
  for (const auto& m : t) {
    nlohmann::json j{{"move", move_name(m.kind)}, {"position", m.position}, {"sign", m.sign},
                     {"result", to_string(m.result)}};
    if (!m.pattern.empty()) j["pattern"] = to_string(m.pattern);
    if (!m.note.empty()) j["note"] = m.note;
    out.push_back(std::move(j));
  }
  return out;
}

namespace {

nlohmann::json shape_json(const OutcomeShape& s) {
  if (const auto* c = std::get_if<CycleForm>(&s)) return {{"kind", "cycle"}, {"params", c->graph.to_string()}};
  if (const auto* t = std::get_if<TorusBranchSet>(&s))
    return {{"kind", "torus"}, {"p", t->p}, {"q", t->q}, {"derived_q", t->derived_q}};
  const auto& c = std::get<ConnectedSumBranchSet>(s);
  return {{"kind", "connected_sum"}, {"p", c.p}, {"q", c.q}};
}

}  // namespace

nlohmann::json to_json(const PipelineReport& r, bool canonical) {
  nlohmann::json j;
  j["input"] = r.input;
  if (!r.input_error.empty()) j["input_error"] = r.input_error;
  if (r.classification) {
    j["class"] = to_json(r.classification->family);
    j["canonical_word"] = to_string(r.classification->canonical);
  }
  if (r.normalization) {
    j["normalization"] = {{"shape", shape_json(r.normalization->shape)},
                          {"output", to_string(r.normalization->output)},
                          {"transcript", to_json(r.normalization->transcript)},
                          {"replayed", r.normalization_replayed.value_or(false)}};
  }
  if (r.cycle) j["cycle"] = r.cycle->to_string();
  if (r.graph_summary) {
    const auto& g = *r.graph_summary;
    j["graph"] = {{"vertices", g.vertices}, {"edges", g.edges}, {"faces", g.faces}, {"euler", g.euler}, {"root", g.root}};
  }
  if (r.presentation) j["presentation"] = to_json(*r.presentation);
  if (r.abelian) {
    auto tors = nlohmann::json::array();
    for (const auto& t : r.abelian->torsion) tors.push_back(big_json(t));
    j["abelianization"] = {{"torsion", tors}, {"free_rank", r.abelian->free_rank}, {"group", r.abelian->to_string()}};
  }
  if (r.determinant) j["determinant"] = big_json(*r.determinant);
  if (r.cosets)
    j["cosets"] = {{"complete", r.cosets->complete}, {"order", r.cosets->order}, {"defined", r.cosets->defined}};
  if (r.cone_witness) j["cone_witness"] = *r.cone_witness;
  if (r.lemma_checks) j["lemma_checks"] = *r.lemma_checks;
  if (r.certificate) j["certificate"] = to_json(*r.certificate);
  if (r.certificate_check)
    j["certificate_check"] = {{"ok", r.certificate_check->ok},
                              {"steps_checked", r.certificate_check->steps_checked},
                              {"failure", r.certificate_check->failure}};
  if (r.hypothesis_not_met) j["hypothesis_not_met"] = true;
  j["verdict"] = r.verdict ? nlohmann::json(verdict_name(*r.verdict)) : nlohmann::json(nullptr);
  j["machine_checked"] = r.machine_checked;
  if (!r.justification.empty()) j["justification"] = r.justification;
  if (!r.notes.empty()) j["notes"] = r.notes;
  j["soundness_failures"] = r.soundness_failures;
  j["exit_code"] = r.exit_code();
  if (!canonical) {
    nlohmann::json t = nlohmann::json::object();
    for (const auto& [name, ms] : r.timing_ms) t[name] = t.value(name, 0.0) + ms;
    j["timing_ms"] = t;
  }
  return j;
}

// ---------------------------------------------------------------------------
// Batch

std::vector<GridEntry> parse_grid(std::istream& in) {
  std::vector<GridEntry> out;
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    line = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);
    GridEntry e{no, line, line.front() == '('};
    try {
      if (e.is_params)
        parse_cycle_params(line);
      else
        parse_braid(line);
    } catch (const std::exception& ex) {
      throw ParseError("grid line " + std::to_string(no) + ": " + ex.what());
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::size_t BatchSummary::count(std::optional<Verdict> v) const {
  return static_cast<std::size_t>(
      std::count_if(reports.begin(), reports.end(), [&](const PipelineReport& r) { return r.verdict == v; }));
}

std::size_t BatchSummary::hypothesis_not_met() const {
  return static_cast<std::size_t>(
      std::count_if(reports.begin(), reports.end(), [](const PipelineReport& r) { return r.hypothesis_not_met; }));
}

std::size_t BatchSummary::unsound() const {
  return static_cast<std::size_t>(std::count_if(reports.begin(), reports.end(), [](const PipelineReport& r) {
    return !r.soundness_failures.empty();
  }));
}

BatchSummary run_batch(const std::vector<GridEntry>& entries, const PipelineOptions& opt, unsigned workers) {
  BatchSummary s;
  s.entries = entries;
  s.reports.resize(entries.size());
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(1, entries.size())));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < entries.size();) {
      const auto& e = entries[i];
      s.reports[i] = e.is_params ? run_cycle(parse_cycle_params(e.text), opt) : run_pipeline(e.text, opt);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < workers; ++k) pool.emplace_back(work);
  }
  return s;
}

nlohmann::json to_json(const BatchSummary& s, bool canonical) {
  nlohmann::json counts = nlohmann::json::object();
  for (auto v : {Verdict::NonLO_Certified, Verdict::NonLO_FiniteGroup, Verdict::NonLO_Torsion,
                 Verdict::NonLO_CitedTheorem, Verdict::Inconclusive})
    counts[std::string(verdict_name(v))] = s.count(v);
  counts["no_verdict"] = s.count(std::nullopt);
  auto reports = nlohmann::json::array();
  for (std::size_t i = 0; i < s.reports.size(); ++i) {
    auto j = to_json(s.reports[i], canonical);
    j["line"] = s.entries[i].line;
    reports.push_back(std::move(j));
  }
  return {{"instances", s.reports.size()},
          {"verdicts", counts},
          {"hypothesis_not_met", s.hypothesis_not_met()},
          {"soundness_failures", s.unsound()},
          {"reports", reports}};
}

std::string summary_table(const BatchSummary& s) {
  std::ostringstream out;
  for (std::size_t i = 0; i < s.reports.size(); ++i) {
    const auto& r = s.reports[i];
    out << s.entries[i].line << "\t" << r.input << "\t"
        << (r.hypothesis_not_met ? std::string("HypothesisNotMet")
                                 : r.verdict ? std::string(verdict_name(*r.verdict)) : std::string("-"))
        << "\t" << (r.soundness_failures.empty() ? "ok" : "FAIL: " + r.soundness_failures.front()) << "\n";
  }
  out << "instances " << s.reports.size() << ", certified " << s.count(Verdict::NonLO_Certified) << ", finite "
      << s.count(Verdict::NonLO_FiniteGroup) << ", torsion " << s.count(Verdict::NonLO_Torsion) << ", cited "
      << s.count(Verdict::NonLO_CitedTheorem) << ", inconclusive " << s.count(Verdict::Inconclusive)
      << ", no verdict " << s.count(std::nullopt) << ", hypothesis not met " << s.hypothesis_not_met()
      << ", soundness failures " << s.unsound() << "\n";
  return out.str();
}

}  // namespace tbraid
