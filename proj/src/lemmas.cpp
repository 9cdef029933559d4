#include "tbraid/lemmas.hpp"

#include <map>

namespace tbraid {

namespace {

FreeWord gen(int g, int e = 1) { return FreeWord::generator(g, e); }

class Builder {
 public:
  Builder(std::string lemma, GroupPresentation p) {
    t_.lemma = std::move(lemma);
    t_.pres = std::move(p);
    table_.resize(t_.pres.generators.size());
    t_.steps.reserve(64);
  }

  void scope() {
    t_.steps.push_back({.kind = ProofStep::Kind::Scope, .rule = "new scope"});
    std::fill(table_.begin(), table_.end(), std::nullopt);
  }

  void solve(int relator, int target) {
    const FreeWord& r = t_.pres.relators.at(static_cast<std::size_t>(relator));
    FreeWord value = solve_relation(r, target);
    std::string rule = "solve " + label(relator) + " for " + name(target);
    table_[static_cast<std::size_t>(target)] = substitute_all(value, table_);
    t_.steps.push_back({.kind = ProofStep::Kind::Solve,
                        .rule = std::move(rule),
                        .relator = relator,
                        .target = target,
                        .before = r,
                        .after = std::move(value)});
  }

  void apply(const EliminationScheme& scheme) {
    for (const auto& rule : scheme.rules) {
      solve(rule.relator, rule.target);
      if (t_.steps.back().after != rule.replacement)
        throw VerificationFailure(scheme.name + ": stored rule for " + name(rule.target) +
                                  " differs from the solved relator");
    }
  }

  int expand(const FreeWord& w, std::string rule, int relator = -1) {
    t_.steps.push_back({.kind = ProofStep::Kind::Expand,
                        .rule = std::move(rule),
                        .relator = relator,
                        .before = w,
                        .after = substitute_all(w, table_)});
    return static_cast<int>(t_.steps.size()) - 1;
  }

  const FreeWord& result(int step) const { return t_.steps[static_cast<std::size_t>(step)].after; }

  void equal(int lhs, int rhs, std::string rule) {
    if (result(lhs) != result(rhs))
      throw VerificationFailure(t_.lemma + ": " + rule + " fails: " + t_.pres.show(result(lhs)) +
                                " vs " + t_.pres.show(result(rhs)));
    t_.steps.push_back({.kind = ProofStep::Kind::Equal, .rule = std::move(rule), .lhs = lhs, .rhs = rhs});
  }

  /// expand both and require equality
  void same(const FreeWord& a, const FreeWord& b, const std::string& rule) {
    int i = expand(a, "expand");
    int j = expand(b, "expand");
    equal(i, j, rule);
  }

  const std::string& name(int g) const { return t_.pres.generators[static_cast<std::size_t>(g)]; }
  std::string label(int r) const {
    return t_.pres.labels.empty() ? "relator " + std::to_string(r) : t_.pres.labels[static_cast<std::size_t>(r)];
  }
  const GroupPresentation& pres() const { return t_.pres; }
  ProofTranscript take() { return std::move(t_); }

 private:
  ProofTranscript t_;
  std::vector<std::optional<FreeWord>> table_;
};

SubstitutionRule rule_from(const GroupPresentation& p, int relator, int target) {
  return {target, solve_relation(p.relators.at(static_cast<std::size_t>(relator)), target), relator};
}

// x_i = (x1 x0^-1)^{i-1} x1 over the given symbols.
FreeWord x_closed_form(int x0, int x1, int i) {
  return power(gen(x1) * gen(x0, -1), i - 1) * gen(x1);
}

}  // namespace

EliminationScheme forward_scheme(const ExtendedCycle& e) {
  const auto& p = e.pres;
  EliminationScheme s{"forward", {}};
  s.rules.push_back(rule_from(p, e.alias0(), e.x(0)));
  for (int i = 1; i < e.params.m; ++i) s.rules.push_back(rule_from(p, e.rx(i), e.x(i + 1)));
  for (int j = 0; j < e.params.c_n(); ++j) s.rules.push_back(rule_from(p, e.ry(j), e.y(j + 1)));
  return s;
}

EliminationScheme backward_scheme(const ExtendedCycle& e) {
  const auto& p = e.pres;
  EliminationScheme s{"backward", {}};
  s.rules.push_back(rule_from(p, e.aliasm(), e.x(e.params.m)));
  for (int i = e.params.m - 1; i >= 1; --i) s.rules.push_back(rule_from(p, e.rx(i), e.x(i - 1)));
  for (int j = e.params.c_n(); j >= 1; --j) s.rules.push_back(rule_from(p, e.ry(j), e.y(j - 1)));
  return s;
}

EliminationScheme xpath_scheme(const ExtendedCycle& e) {
  EliminationScheme s{"x-path", {}};
  s.rules.push_back(rule_from(e.pres, e.alias0(), e.x(0)));
  for (int i = 1; i < e.params.m; ++i) s.rules.push_back(rule_from(e.pres, e.rx(i), e.x(i + 1)));
  return s;
}

EliminationScheme alias_scheme(const ExtendedCycle& e) {
  EliminationScheme s{"alias", {}};
  s.rules.push_back(rule_from(e.pres, e.alias0(), e.x(0)));
  s.rules.push_back(rule_from(e.pres, e.aliasm(), e.x(e.params.m)));
  return s;
}

LemmaContext lemma_context(const DecoratedCycleGraph& d) {
  LemmaContext c{extended_cycle(d), {}, 0, 0, 0, 0, 0, 0, 0, 0};
  const auto& e = c.cycle;
  c.pres = e.pres;
  auto add = [&](const std::string& name) {
    c.pres.generators.push_back(name);
    return static_cast<int>(c.pres.generators.size()) - 1;
  };
  c.u = add("u");
  c.v = add("v");
  c.s = add("s");
  c.t = add("t");
  const int m = d.m, cn = d.c_n();
  const int a0 = d.a.front(), an = d.a.back();
  auto define = [&](int g, FreeWord value, std::string label) {
    c.pres.add_relator(gen(g, -1) * value, std::move(label));
    return static_cast<int>(c.pres.relators.size()) - 1;
  };
  c.def_u = define(c.u, gen(e.y(0)), "u = y0");
  c.def_v = define(c.v, gen(e.x(1)) * gen(e.y(0), a0 - 1), "v = x1 y0^(a0-1)");
  c.def_s = define(c.s, gen(e.y(cn)), "s = y" + std::to_string(cn));
  c.def_t = define(c.t, gen(e.y(cn), an - 1) * gen(e.x(m - 1)),
                   "t = y" + std::to_string(cn) + "^(an-1) x" + std::to_string(m - 1));
  return c;
}

TwoLetterWords left_words(const LemmaContext& c) {
  const auto& d = c.cycle.params;
  const int n = d.n();
  TwoLetterWords w{c.u, c.v, std::vector<FreeWord>(static_cast<std::size_t>(n) + 1),
                   std::vector<FreeWord>(static_cast<std::size_t>(n) + 1)};
  w.P[0] = gen(c.u);
  w.Q[0] = gen(c.v);
  for (int k = 1; k <= n; ++k) {
    const auto K = static_cast<std::size_t>(k);
    w.P[K] = power(w.Q[K - 1], d.b[K - 1]) * w.P[K - 1];
    if (k < n) w.Q[K] = w.Q[K - 1] * power(w.P[K], d.a[K]);
  }
  return w;
}

TwoLetterWords right_words(const LemmaContext& c) {
  const auto& d = c.cycle.params;
  const int n = d.n();
  TwoLetterWords w{c.s, c.t, std::vector<FreeWord>(static_cast<std::size_t>(n) + 1),
                   std::vector<FreeWord>(static_cast<std::size_t>(n) + 1)};
  const auto N = static_cast<std::size_t>(n);
  w.P[N] = gen(c.s);
  w.Q[N] = gen(c.t);
  for (int k = n; k >= 1; --k) {
    const auto K = static_cast<std::size_t>(k);
    w.P[K - 1] = w.P[K] * power(w.Q[K], d.b[K - 1]);
    if (k - 1 >= 1) w.Q[K - 1] = power(w.P[K - 1], d.a[K - 1]) * w.Q[K];
  }
  return w;
}

ProofTranscript verify_lemma_x(int m) {
  if (m < 1) throw std::invalid_argument("lemma x needs m >= 1");
  GroupPresentation p;
  for (int i = 0; i <= m; ++i) p.generators.push_back("x" + std::to_string(i));
  for (int i = 1; i < m; ++i)
    p.add_relator(inverse(gen(i + 1, -1) * gen(i)) * inverse(gen(i - 1, -1) * gen(i)),
                  "r(x" + std::to_string(i) + ")");
  Builder b("lemma x (m=" + std::to_string(m) + ")", std::move(p));
  for (int i = 1; i < m; ++i) b.solve(i - 1, i + 1);
  for (int i = 0; i <= m; ++i)
    b.same(x_closed_form(0, 1, i), gen(i), "x" + std::to_string(i) + " closed form");
  return b.take();
}

namespace {

ProofTranscript lemma_y_with(const ExtendedCycle& e) {
  const auto& d = e.params;
  Builder b("lemma y " + d.to_string(), e.pres);
  const int n = d.n();
  for (int k = 1; k <= n; ++k) {
    const int c = d.c(k - 1), C = d.c(k);
    // forward from y_c, y_{c+1}
    b.scope();
    for (int j = c + 1; j < C; ++j) b.solve(e.ry(j), e.y(j + 1));
    const FreeWord step = gen(e.y(c + 1)) * gen(e.y(c), -1);
    for (int i = c; i <= C; ++i)
      b.same(power(step, i - c - 1) * gen(e.y(c + 1)), gen(e.y(i)),
             "forward form of y" + std::to_string(i));
    // backward from y_C, y_{C-1}
    b.scope();
    for (int j = C - 1; j > c; --j) b.solve(e.ry(j), e.y(j - 1));
    const FreeWord back = gen(e.y(C - 1)) * gen(e.y(C), -1);
    const FreeWord back2 = gen(e.y(C), -1) * gen(e.y(C - 1));
    for (int i = c; i <= C; ++i) {
      const FreeWord f1 = power(back, C - i - 1) * gen(e.y(C - 1));
      const FreeWord f2 = gen(e.y(C - 1)) * power(back2, C - i - 1);
      const std::string yi = "y" + std::to_string(i);
      int s1 = b.expand(f1, "expand");
      int s2 = b.expand(f2, "expand");
      int s3 = b.expand(gen(e.y(i)), "expand");
      b.equal(s1, s3, "backward form of " + yi);
      b.equal(s1, s2, "both backward forms of " + yi);
    }
  }
  return b.take();
}

LemmaResult left_with(const LemmaContext& c, const EliminationScheme& forward) {
  const auto& e = c.cycle;
  const auto& d = e.params;
  Builder b("lemma left " + d.to_string(), c.pres);
  b.solve(c.def_u, c.u);
  b.solve(c.def_v, c.v);
  b.apply(forward);
  TwoLetterWords w = left_words(c);
  const int n = d.n();
  for (int k = 0; k <= n; ++k) {
    const int ck = d.c(k);
    b.same(w.P[static_cast<std::size_t>(k)], gen(e.y(ck)), "y" + std::to_string(ck) + " in u, v");
    if (k < n)
      b.same(w.Q[static_cast<std::size_t>(k)], gen(e.y(ck + 1)) * gen(e.y(ck), -1),
             "y" + std::to_string(ck + 1) + " y" + std::to_string(ck) + "^-1 in u, v");
  }
  return {b.take(), std::move(w)};
}

LemmaResult right_with(const LemmaContext& c, const EliminationScheme& backward) {
  const auto& e = c.cycle;
  const auto& d = e.params;
  Builder b("lemma right " + d.to_string(), c.pres);
  b.solve(c.def_s, c.s);
  b.solve(c.def_t, c.t);
  b.apply(backward);
  TwoLetterWords w = right_words(c);
  const int n = d.n();
  for (int k = n; k >= 0; --k) {
    const int ck = d.c(k);
    b.same(w.P[static_cast<std::size_t>(k)], gen(e.y(ck)), "y" + std::to_string(ck) + " in s, t");
    if (k > 0)
      b.same(w.Q[static_cast<std::size_t>(k)], gen(e.y(ck), -1) * gen(e.y(ck - 1)),
             "y" + std::to_string(ck) + "^-1 y" + std::to_string(ck - 1) + " in s, t");
  }
  return {b.take(), std::move(w)};
}

ProofTranscript product_with(const LemmaContext& c, const EliminationScheme& forward,
                             const TwoLetterWords& w) {
  const auto& e = c.cycle;
  const auto& d = e.params;
  Builder b("product relation " + d.to_string(), c.pres);
  b.solve(c.def_u, c.u);
  b.solve(c.def_v, c.v);
  b.apply(forward);
  FreeWord product;
  for (int k = 0; k <= d.n(); ++k)
    product = product * power(w.P[static_cast<std::size_t>(k)], d.a[static_cast<std::size_t>(k)]);
  int lhs = b.expand(product, "expand w0 w1 ... wn");
  const FreeWord rz_inverse = inverse(e.pres.relators[static_cast<std::size_t>(e.rz())]);
  int rhs = b.expand(rz_inverse, "expand r(z)^-1", e.rz());
  b.equal(lhs, rhs, "w0 w1 ... wn = r(z)^-1 = 1");
  return b.take();
}

}  // namespace

ProofTranscript verify_lemma_y(const DecoratedCycleGraph& d) { return lemma_y_with(extended_cycle(d)); }

LemmaResult verify_lemma_left(const DecoratedCycleGraph& d) {
  const LemmaContext c = lemma_context(d);
  return left_with(c, forward_scheme(c.cycle));
}

LemmaResult verify_lemma_right(const DecoratedCycleGraph& d) {
  const LemmaContext c = lemma_context(d);
  return right_with(c, backward_scheme(c.cycle));
}

ProofTranscript verify_product_relation(const DecoratedCycleGraph& d) {
  const LemmaContext c = lemma_context(d);
  return product_with(c, forward_scheme(c.cycle), left_words(c));
}

std::size_t verify_all_lemmas(const DecoratedCycleGraph& d, bool replay) {
  const LemmaContext c = lemma_context(d);
  const EliminationScheme forward = forward_scheme(c.cycle);
  std::size_t checks = 0;
  auto finish = [&](const ProofTranscript& t) {
    for (const auto& s : t.steps) checks += s.kind == ProofStep::Kind::Equal;
    if (!replay) return;
    ReplayResult r = replay_proof(t);
    if (!r.ok) throw VerificationFailure(t.lemma + ": replay failed: " + r.failure);
  };
  finish(verify_lemma_x(d.m));
  finish(lemma_y_with(c.cycle));
  LemmaResult left = left_with(c, forward);
  finish(left.transcript);
  finish(right_with(c, backward_scheme(c.cycle)).transcript);
  finish(product_with(c, forward, left.words));
  return checks;
}

ReplayResult replay_proof(const ProofTranscript& t) {
  ReplayResult out;
  const auto& p = t.pres;
  const std::size_t G = p.generators.size();
  std::vector<std::optional<FreeWord>> table(G);
  std::vector<std::size_t> scope_solves;
  auto fail = [&](std::size_t i, const std::string& why) {
    out.ok = false;
    out.failure = "step " + std::to_string(i) + " (" + t.steps[i].rule + "): " + why;
    return out;
  };
  auto close_scope = [&]() -> std::optional<std::size_t> {
    // a replacement may not mention a generator solved later in the scope
    for (std::size_t a = 0; a < scope_solves.size(); ++a)
      for (std::size_t b = a + 1; b < scope_solves.size(); ++b)
        if (mentions(t.steps[scope_solves[a]].after, t.steps[scope_solves[b]].target)) return scope_solves[a];
    scope_solves.clear();
    return std::nullopt;
  };
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const auto& s = t.steps[i];
    ++out.steps;
    switch (s.kind) {
      case ProofStep::Kind::Scope:
        if (auto bad = close_scope()) return fail(*bad, "elimination order is cyclic");
        std::fill(table.begin(), table.end(), std::nullopt);
        break;
      case ProofStep::Kind::Solve: {
        if (s.relator < 0 || static_cast<std::size_t>(s.relator) >= p.relators.size())
          return fail(i, "no such relator");
        if (s.target < 0 || static_cast<std::size_t>(s.target) >= G) return fail(i, "no such generator");
        if (reduce(s.before) != p.relators[static_cast<std::size_t>(s.relator)])
          return fail(i, "recorded relator differs from the presentation");
        if (table[static_cast<std::size_t>(s.target)]) return fail(i, "generator solved twice");
        FreeWord value;
        try {
          value = solve_relation(s.before, s.target);
        } catch (const SolveError& err) {
          return fail(i, err.what());
        }
        if (value != s.after) return fail(i, "recorded solution differs");
        table[static_cast<std::size_t>(s.target)] = substitute_all(value, table);
        scope_solves.push_back(i);
        break;
      }
      case ProofStep::Kind::Expand: {
        if (s.relator >= 0) {
          if (static_cast<std::size_t>(s.relator) >= p.relators.size()) return fail(i, "no such relator");
          const FreeWord& r = p.relators[static_cast<std::size_t>(s.relator)];
          const FreeWord w = reduce(s.before);
          if (w != r && w != inverse(r)) return fail(i, "word is not the cited relator");
        }
        if (substitute_all(s.before, table) != s.after) return fail(i, "recorded expansion differs");
        break;
      }
      case ProofStep::Kind::Equal: {
        auto ok_ref = [&](int k) {
          return k >= 0 && static_cast<std::size_t>(k) < i &&
                 t.steps[static_cast<std::size_t>(k)].kind == ProofStep::Kind::Expand;
        };
        if (!ok_ref(s.lhs) || !ok_ref(s.rhs)) return fail(i, "equality cites a bad step");
        if (t.steps[static_cast<std::size_t>(s.lhs)].after != t.steps[static_cast<std::size_t>(s.rhs)].after)
          return fail(i, "expanded words differ");
        break;
      }
    }
  }
  if (auto bad = close_scope()) return fail(*bad, "elimination order is cyclic");
  return out;
}

namespace {

const std::map<ProofStep::Kind, std::string> kind_names{{ProofStep::Kind::Solve, "solve"},
                                                        {ProofStep::Kind::Expand, "expand"},
                                                        {ProofStep::Kind::Equal, "equal"},
                                                        {ProofStep::Kind::Scope, "scope"}};

}  // namespace

nlohmann::json to_json(const ProofTranscript& t) {
  nlohmann::json j;
  j["lemma"] = t.lemma;
  j["presentation"] = to_json(t.pres);
  auto steps = nlohmann::json::array();
  for (const auto& s : t.steps) {
    nlohmann::json js;
    js["kind"] = kind_names.at(s.kind);
    js["rule"] = s.rule;
    switch (s.kind) {
      case ProofStep::Kind::Solve:
        js["relator"] = s.relator;
        js["target"] = t.pres.generators[static_cast<std::size_t>(s.target)];
        js["before"] = word_json(s.before, t.pres.generators);
        js["after"] = word_json(s.after, t.pres.generators);
        break;
      case ProofStep::Kind::Expand:
        if (s.relator >= 0) js["relator"] = s.relator;
        js["before"] = word_json(s.before, t.pres.generators);
        js["after"] = word_json(s.after, t.pres.generators);
        break;
      case ProofStep::Kind::Equal:
        js["lhs"] = s.lhs;
        js["rhs"] = s.rhs;
        break;
      case ProofStep::Kind::Scope:
        break;
    }
    steps.push_back(std::move(js));
  }
  j["steps"] = std::move(steps);
  return j;
}

ProofTranscript proof_from_json(const nlohmann::json& j) {
  ProofTranscript t;
  t.lemma = j.at("lemma").get<std::string>();
  t.pres = presentation_from_json(j.at("presentation"));
  for (const auto& js : j.at("steps")) {
    ProofStep s;
    const auto kind = js.at("kind").get<std::string>();
    bool found = false;
    for (const auto& [k, name] : kind_names)
      if (name == kind) s.kind = k, found = true;
    if (!found) throw std::invalid_argument("unknown proof step kind " + kind);
    s.rule = js.value("rule", "");
    s.relator = js.value("relator", -1);
    if (js.contains("target")) s.target = t.pres.index_of(js.at("target").get<std::string>());
    s.lhs = js.value("lhs", -1);
    s.rhs = js.value("rhs", -1);
    if (js.contains("before")) s.before = word_from_json(js.at("before"), t.pres);
    if (js.contains("after")) s.after = word_from_json(js.at("after"), t.pres);
    t.steps.push_back(std::move(s));
  }
  return t;
}

}  // namespace tbraid
