#include "tbraid/certificate.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "tbraid/diagram.hpp"
#include "tbraid/lemmas.hpp"

namespace tbraid {

std::string_view sign_name(Sign s) {
  switch (s) {
    case Sign::Positive: return "positive";
    case Sign::NonNegative: return "nonnegative";
    case Sign::Negative: return "negative";
    case Sign::NonPositive: return "nonpositive";
  }
  return "?";
}

Sign sign_from_name(std::string_view name) {
  for (Sign s : {Sign::Positive, Sign::NonNegative, Sign::Negative, Sign::NonPositive})
    if (sign_name(s) == name) return s;
  throw std::invalid_argument("unknown sign " + std::string(name));
}

Sign flip(Sign s) {
  switch (s) {
    case Sign::Positive: return Sign::Negative;
    case Sign::NonNegative: return Sign::NonPositive;
    case Sign::Negative: return Sign::Positive;
    case Sign::NonPositive: return Sign::NonNegative;
  }
  return s;
}

std::vector<std::string> mixed_sign_vertices(const DecoratedCycleGraph& d) {
  const CheckerboardGraph g = cycle_graph_from_params(d);
  std::vector<int> seen(g.vertex_count(), 0);  // bit 1: +, bit 2: -
  for (const auto& e : g.edges) {
    const int bit = e.sign > 0 ? 1 : 2;
    seen[static_cast<std::size_t>(e.u)] |= bit;
    seen[static_cast<std::size_t>(e.v)] |= bit;
  }
  std::vector<std::string> out;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (seen[v] == 3) out.push_back(g.names[v]);
  return out;
}

namespace {

using Kind = CertStep::Kind;

const std::map<Kind, std::string> kind_names{{Kind::Assume, "assume"},
                                             {Kind::Relation, "relation"},
                                             {Kind::ForcedPositive, "forced-positive"},
                                             {Kind::Product, "product"},
                                             {Kind::FactorBound, "factor-bound"},
                                             {Kind::Contradiction, "contradiction"}};

std::vector<Factor> factors_of(const FreeWord& w, const std::vector<std::string>& names) {
  std::vector<Factor> out;
  for (auto [g, e] : syllables(w)) out.emplace_back(names[static_cast<std::size_t>(g)], e);
  return out;
}

std::vector<Factor> repeat(const std::string& label, int k) {
  if (k == 0) return {};
  return {{label, k}};
}

}  // namespace

NonLOCertificate certify_cycle_non_lo(const DecoratedCycleGraph& d) {
  d.validate();
  if (d.n() == 0) throw DegenerateShape("certificate requires n > 0");
  if (!d.meets_cycle_hypothesis())
    throw HypothesisNotMet("need m > 1, or m = 1 with a0 > 1 and an > 1; got " + d.to_string());

  const LemmaContext lc = lemma_context(d);
  const ExtendedCycle& e = lc.cycle;
  const int m = d.m, cn = d.c_n();
  const int a0 = d.a.front(), an = d.a.back();
  const auto& names = e.pres.generators;
  auto gname = [&](int g) { return names[static_cast<std::size_t>(g)]; };
  const std::string y0 = gname(e.y(0)), yc = gname(e.y(cn)), x1 = gname(e.x(1));

  NonLOCertificate c;
  c.params = d;
  c.hypothesis_case = m > 1 ? 1 : 2;
  c.wlog_branch = y0 + " < 1 < " + yc;
  c.wlog_note =
      "extremal generators sit at mixed-sign vertices; they have opposite signs since "
      "r(z) makes a product of their powers trivial; the branch " + yc + " < 1 < " + y0 +
      " is the same argument for the opposite order";
  c.pres = e.pres;
  c.schemes = {forward_scheme(e), backward_scheme(e), xpath_scheme(e), alias_scheme(e)};

  auto gen = [](int g, int k = 1) { return FreeWord::generator(g, k); };
  c.definitions = {
      {"u", gen(e.y(0))},
      {"v", gen(e.x(1)) * gen(e.y(0), a0 - 1)},
      {"s", gen(e.y(cn))},
      {"t", gen(e.y(cn), an - 1) * gen(e.x(m - 1))},
      {"h", gen(e.y(0), a0 - 1)},
  };

  auto& st = c.steps;
  auto push = [&](CertStep s) {
    st.push_back(std::move(s));
    return static_cast<int>(st.size()) - 1;
  };
  const int assume_y0 = push({.kind = Kind::Assume, .label = y0, .sign = Sign::Negative,
                              .justification = "WLOG: least generator"});
  push({.kind = Kind::Assume, .label = yc, .sign = Sign::Positive,
        .justification = "WLOG: greatest generator"});
  push({.kind = Kind::Product, .label = "u", .sign = Sign::Negative, .factors = {{y0, 1}},
        .scheme = "free", .justification = "u = y0"});

  // w0 w1 ... wn over u, v
  const TwoLetterWords left = left_words(lc);
  FreeWord product;
  for (int k = 0; k <= d.n(); ++k)
    product = product * power(left.P[static_cast<std::size_t>(k)], d.a[static_cast<std::size_t>(k)]);
  std::vector<std::string> local_names = lc.pres.generators;
  const int relation = push({.kind = Kind::Relation, .factors = factors_of(product, local_names),
                             .scheme = "forward", .relator = e.rz(),
                             .justification = "w0 w1 ... wn = 1 (left lemma words substituted in r(z))"});
  push({.kind = Kind::ForcedPositive, .label = "v", .sign = Sign::Positive, .relation = relation,
        .justification = "otherwise a product of non-positive elements, one negative, is 1"});
  push({.kind = Kind::Product, .label = "h", .sign = Sign::NonPositive, .factors = repeat(y0, a0 - 1),
        .scheme = "free", .justification = "power of a negative element"});
  push({.kind = Kind::FactorBound, .label = x1, .sign = Sign::Positive, .scheme = "free",
        .product_label = "v", .bound_label = "h", .justification = "x1 is positive"});

  if (m > 1) {
    std::vector<Factor> f = repeat(yc, an - 1);
    for (int i = 0; i < m - 2; ++i) {
      f.emplace_back(x1, 1);
      f.emplace_back(y0, -1);
    }
    f.emplace_back(x1, 1);
    push({.kind = Kind::Product, .label = "t", .sign = Sign::Positive, .factors = std::move(f),
          .scheme = "x-path", .justification = "t = y_cn^(an-1) (x1 y0^-1)^(m-2) x1 by the x-path lemma"});
  } else {
    c.definitions.emplace_back("h2", gen(e.y(0), a0 - 2));
    c.definitions.emplace_back("g", gen(e.x(1)) * gen(e.y(0)));
    push({.kind = Kind::Product, .label = "h2", .sign = Sign::NonPositive,
          .factors = repeat(y0, a0 - 2), .scheme = "free", .justification = "power of a negative element"});
    push({.kind = Kind::FactorBound, .label = "g", .sign = Sign::Positive, .scheme = "free",
          .product_label = "v", .bound_label = "h2", .justification = "x1 y0 >= x1 y0^(a0-1) > 1"});
    std::vector<Factor> f = repeat(x1, an - 2);
    f.emplace_back("g", 1);
    push({.kind = Kind::Product, .label = "t", .sign = Sign::Positive, .factors = std::move(f),
          .scheme = "alias", .justification = "t = x1^(an-2) (x1 y0) with y_cn = x1, x0 = y0"});
  }
  push({.kind = Kind::Product, .label = "s", .sign = Sign::Positive, .factors = {{yc, 1}},
        .scheme = "free", .justification = "s = y_cn"});
  const TwoLetterWords right = right_words(lc);
  const int y0_positive = push({.kind = Kind::Product, .label = y0, .sign = Sign::Positive,
                                .factors = factors_of(right.P[0], local_names), .scheme = "backward",
                                .justification = "y0 in s, t by the right lemma"});
  push({.kind = Kind::Contradiction, .label = y0, .cites = {assume_y0, y0_positive},
        .justification = "y0 is both negative and positive"});
  return c;
}

namespace {

bool implies(Sign have, Sign want) {
  if (have == want) return true;
  return (have == Sign::Positive && want == Sign::NonNegative) ||
         (have == Sign::Negative && want == Sign::NonPositive);
}

bool incompatible(Sign a, Sign b) {
  auto pos = [](Sign s) { return s == Sign::Positive; };
  auto neg = [](Sign s) { return s == Sign::Negative; };
  auto npos = [](Sign s) { return s == Sign::NonPositive || s == Sign::Negative; };
  auto nneg = [](Sign s) { return s == Sign::NonNegative || s == Sign::Positive; };
  return (pos(a) && npos(b)) || (pos(b) && npos(a)) || (neg(a) && nneg(b)) || (neg(b) && nneg(a));
}

class Checker {
 public:
  explicit Checker(const NonLOCertificate& c) : c_(c) {}

  CertificateCheck run() {
    try {
      check_header();
      step_sign_.assign(c_.steps.size(), std::nullopt);
      for (std::size_t i = 0; i < c_.steps.size(); ++i) {
        index_ = i;
        check_step(c_.steps[i]);
        ++out_.steps_checked;
      }
      if (c_.steps.empty() || c_.steps.back().kind != Kind::Contradiction)
        fail("certificate does not end in a contradiction");
    } catch (const Failure&) {
      out_.ok = false;
    } catch (const std::exception& ex) {
      out_.ok = false;
      out_.failure = "step " + std::to_string(index_) + ": " + ex.what();
    }
    return out_;
  }

 private:
  struct Failure {};
  const NonLOCertificate& c_;
  CertificateCheck out_;
  std::size_t index_ = 0;
  std::map<std::string, FreeWord> words_;
  std::map<std::string, Expander> expanders_;
  std::map<std::string, std::vector<Sign>> facts_;
  std::vector<std::optional<Sign>> step_sign_;

  [[noreturn]] void fail(const std::string& why) {
    out_.failure = "step " + std::to_string(index_) + ": " + why;
    throw Failure{};
  }

  void check_header() {
    const ExtendedCycle e = extended_cycle(c_.params);
    if (c_.pres.generators != e.pres.generators || c_.pres.relators != e.pres.relators)
      fail("presentation differs from the one derived from the parameters");
    if (!c_.params.meets_cycle_hypothesis()) fail("parameters do not meet the hypothesis");
    if (c_.hypothesis_case != (c_.params.m > 1 ? 1 : 2)) fail("wrong case for the parameters");
    const std::size_t G = c_.pres.generators.size();
    expanders_.emplace("free", Expander(EliminationScheme{"free", {}}, G));
    for (const auto& s : c_.schemes) {
      for (const auto& r : s.rules) {
        if (r.relator < 0 || static_cast<std::size_t>(r.relator) >= c_.pres.relators.size())
          fail(s.name + ": rule cites a missing relator");
        if (solve_relation(c_.pres.relators[static_cast<std::size_t>(r.relator)], r.target) != r.replacement)
          fail(s.name + ": rule for " + c_.pres.generators[static_cast<std::size_t>(r.target)] +
               " is not the solution of its relator");
      }
      if (expanders_.count(s.name)) fail("scheme name used twice: " + s.name);
      expanders_.emplace(s.name, Expander(s, G));  // checks acyclicity
    }
    for (std::size_t g = 0; g < G; ++g) words_[c_.pres.generators[g]] = FreeWord::generator(static_cast<int>(g));
    for (const auto& [label, w] : c_.definitions) {
      if (words_.count(label)) fail("definition shadows a name: " + label);
      for (int l : w.letters)
        if (static_cast<std::size_t>(letter_generator(l)) >= G) fail("definition uses unknown generator");
      words_[label] = w;
    }
  }

  const FreeWord& word(const std::string& label) {
    auto it = words_.find(label);
    if (it == words_.end()) fail("unknown label " + label);
    return it->second;
  }

  const Expander& scheme(const std::string& name) {
    auto it = expanders_.find(name);
    if (it == expanders_.end()) fail("unknown scheme " + name);
    return it->second;
  }

  FreeWord product(const std::vector<Factor>& factors) {
    FreeWord w;
    for (const auto& [label, e] : factors) w = w * power(word(label), e);
    return w;
  }

  bool has(const std::string& label, Sign want) {
    auto it = facts_.find(label);
    if (it == facts_.end()) return false;
    return std::any_of(it->second.begin(), it->second.end(), [&](Sign s) { return implies(s, want); });
  }

  /// factor adjusted by its exponent has sign `want`
  bool factor_has(const Factor& f, Sign want) {
    return has(f.first, f.second > 0 ? want : flip(want));
  }

  void establish(const std::string& label, Sign s) {
    facts_[label].push_back(s);
    step_sign_[index_] = s;
  }

  void check_product_sign(const CertStep& s) {
    const bool up = s.sign == Sign::Positive || s.sign == Sign::NonNegative;
    const Sign strict = up ? Sign::Positive : Sign::Negative;
    const Sign weak = up ? Sign::NonNegative : Sign::NonPositive;
    bool any_strict = false;
    for (const auto& f : s.factors) {
      if (f.second == 0) continue;
      if (factor_has(f, strict))
        any_strict = true;
      else if (!factor_has(f, weak))
        fail("factor " + f.first + " has no established sign of the required kind");
    }
    if ((s.sign == strict) && !any_strict) fail("strict sign needs a strict factor");
  }

  void check_step(const CertStep& s) {
    switch (s.kind) {
      case Kind::Assume: {
        const auto mixed = mixed_sign_vertices(c_.params);
        const std::string y0 = c_.pres.generators[static_cast<std::size_t>(c_.params.m + 1)];
        const std::string yc = c_.pres.generators[static_cast<std::size_t>(c_.params.m + 1 + c_.params.c_n())];
        if (mixed != std::vector<std::string>{y0, yc}) fail("mixed-sign vertices are not {y0, y_cn}");
        if (c_.wlog_branch != y0 + " < 1 < " + yc) fail("unexpected WLOG branch");
        const bool ok = (s.label == y0 && s.sign == Sign::Negative) || (s.label == yc && s.sign == Sign::Positive);
        if (!ok) fail("assumption outside the WLOG branch");
        if (facts_.count(s.label)) fail("assumption repeated");
        establish(s.label, s.sign);
        break;
      }
      case Kind::Relation: {
        if (s.relator < 0 || static_cast<std::size_t>(s.relator) >= c_.pres.relators.size())
          fail("relation cites a missing relator");
        const Expander& ex = scheme(s.scheme);
        const FreeWord lhs = ex(product(s.factors));
        const FreeWord& r = c_.pres.relators[static_cast<std::size_t>(s.relator)];
        if (lhs != ex(r) && lhs != ex(inverse(r))) fail("product is not the cited relator");
        break;
      }
      case Kind::ForcedPositive: {
        if (s.relation < 0 || static_cast<std::size_t>(s.relation) >= index_ ||
            c_.steps[static_cast<std::size_t>(s.relation)].kind != Kind::Relation)
          fail("forced sign cites a bad relation");
        bool target_seen = false, strict = false;
        for (const auto& f : c_.steps[static_cast<std::size_t>(s.relation)].factors) {
          if (f.first == s.label) {
            if (f.second < 0) fail("target occurs inverted");
            target_seen = true;
            continue;
          }
          if (factor_has(f, Sign::Negative))
            strict = true;
          else if (!factor_has(f, Sign::NonPositive))
            fail("factor " + f.first + " is not known to be <= 1");
        }
        if (!target_seen || !strict) fail("relation does not force the target");
        if (s.sign != Sign::Positive) fail("forced sign must be positive");
        establish(s.label, Sign::Positive);
        break;
      }
      case Kind::Product: {
        const Expander& ex = scheme(s.scheme);
        if (ex(word(s.label)) != ex(product(s.factors))) fail("word identity fails for " + s.label);
        check_product_sign(s);
        establish(s.label, s.sign);
        break;
      }
      case Kind::FactorBound: {
        if (!has(s.product_label, Sign::Positive)) fail(s.product_label + " not known positive");
        if (!has(s.bound_label, Sign::NonPositive)) fail(s.bound_label + " not known <= 1");
        const Expander& ex = scheme(s.scheme);
        if (ex(word(s.product_label)) != ex(word(s.label) * word(s.bound_label)))
          fail("word identity fails for " + s.product_label);
        if (s.sign != Sign::Positive) fail("factor bound gives a positive element");
        establish(s.label, Sign::Positive);
        break;
      }
      case Kind::Contradiction: {
        if (index_ + 1 != c_.steps.size()) fail("contradiction must be the last step");
        if (s.cites.size() != 2) fail("contradiction cites two steps");
        std::vector<Sign> signs;
        for (int k : s.cites) {
          if (k < 0 || static_cast<std::size_t>(k) >= index_ || !step_sign_[static_cast<std::size_t>(k)])
            fail("contradiction cites a step without a sign");
          if (c_.steps[static_cast<std::size_t>(k)].label != s.label) fail("cited steps concern another element");
          signs.push_back(*step_sign_[static_cast<std::size_t>(k)]);
        }
        if (!incompatible(signs[0], signs[1])) fail("cited signs are compatible");
        break;
      }
    }
  }
};

nlohmann::json factors_json(const std::vector<Factor>& f) {
  auto out = nlohmann::json::array();
  for (const auto& [label, e] : f) out.push_back({label, e});
  return out;
}

std::vector<Factor> factors_from(const nlohmann::json& j) {
  std::vector<Factor> out;
  for (const auto& f : j) out.emplace_back(f.at(0).get<std::string>(), f.at(1).get<int>());
  return out;
}

}  // namespace

CertificateCheck verify_certificate(const NonLOCertificate& c) { return Checker(c).run(); }

nlohmann::json to_json(const NonLOCertificate& c) {
  nlohmann::json j;
  const auto& names = c.pres.generators;
  j["hypothesis"] = {{"params", {{"m", c.params.m}, {"a", c.params.a}, {"b", c.params.b}}},
                     {"case", c.hypothesis_case},
                     {"wlog", c.wlog_branch},
                     {"note", c.wlog_note}};
  j["presentation"] = to_json(c.pres);
  auto schemes = nlohmann::json::array();
  for (const auto& s : c.schemes) {
    auto rules = nlohmann::json::array();
    for (const auto& r : s.rules)
      rules.push_back({{"target", names[static_cast<std::size_t>(r.target)]},
                       {"relator", r.relator},
                       {"replacement", word_json(r.replacement, names)}});
    schemes.push_back({{"name", s.name}, {"rules", std::move(rules)}});
  }
  j["schemes"] = std::move(schemes);
  auto defs = nlohmann::json::array();
  for (const auto& [label, w] : c.definitions) defs.push_back({{"label", label}, {"word", word_json(w, names)}});
  j["definitions"] = std::move(defs);
  auto steps = nlohmann::json::array();
  for (const auto& s : c.steps) {
    nlohmann::json js;
    js["kind"] = kind_names.at(s.kind);
    if (!s.label.empty()) js["label"] = s.label;
    if (s.kind != Kind::Relation && s.kind != Kind::Contradiction) js["sign"] = sign_name(s.sign);
    if (!s.factors.empty() || s.kind == Kind::Product || s.kind == Kind::Relation)
      js["factors"] = factors_json(s.factors);
    if (!s.scheme.empty()) js["scheme"] = s.scheme;
    if (s.relator >= 0) js["relator"] = s.relator;
    if (s.relation >= 0) js["relation"] = s.relation;
    if (!s.product_label.empty()) js["product"] = s.product_label;
    if (!s.bound_label.empty()) js["bound"] = s.bound_label;
    if (!s.cites.empty()) js["cites"] = s.cites;
    js["justification"] = s.justification;
    if (s.kind == Kind::Contradiction)
      j["contradiction"] = std::move(js);
    else
      steps.push_back(std::move(js));
  }
  j["steps"] = std::move(steps);
  return j;
}

NonLOCertificate certificate_from_json(const nlohmann::json& j) {
  NonLOCertificate c;
  const auto& h = j.at("hypothesis");
  c.params.m = h.at("params").at("m").get<int>();
  c.params.a = h.at("params").at("a").get<std::vector<int>>();
  c.params.b = h.at("params").at("b").get<std::vector<int>>();
  c.params.validate();
  c.hypothesis_case = h.at("case").get<int>();
  c.wlog_branch = h.at("wlog").get<std::string>();
  c.wlog_note = h.value("note", "");
  c.pres = presentation_from_json(j.at("presentation"));
  for (const auto& js : j.at("schemes")) {
    EliminationScheme s{js.at("name").get<std::string>(), {}};
    for (const auto& r : js.at("rules")) {
      int target = c.pres.index_of(r.at("target").get<std::string>());
      if (target < 0) throw std::invalid_argument("scheme rule targets an unknown generator");
      s.rules.push_back({target, word_from_json(r.at("replacement"), c.pres), r.at("relator").get<int>()});
    }
    c.schemes.push_back(std::move(s));
  }
  for (const auto& d : j.at("definitions"))
    c.definitions.emplace_back(d.at("label").get<std::string>(), word_from_json(d.at("word"), c.pres));
  auto read_step = [](const nlohmann::json& js) {
    CertStep s;
    const auto kind = js.at("kind").get<std::string>();
    bool found = false;
    for (const auto& [k, name] : kind_names)
      if (name == kind) s.kind = k, found = true;
    if (!found) throw std::invalid_argument("unknown certificate step " + kind);
    s.label = js.value("label", "");
    if (js.contains("sign")) s.sign = sign_from_name(js.at("sign").get<std::string>());
    if (js.contains("factors")) s.factors = factors_from(js.at("factors"));
    s.scheme = js.value("scheme", "");
    s.relator = js.value("relator", -1);
    s.relation = js.value("relation", -1);
    s.product_label = js.value("product", "");
    s.bound_label = js.value("bound", "");
    if (js.contains("cites")) s.cites = js.at("cites").get<std::vector<int>>();
    s.justification = js.value("justification", "");
    return s;
  };
  for (const auto& js : j.at("steps")) c.steps.push_back(read_step(js));
  if (j.contains("contradiction")) c.steps.push_back(read_step(j.at("contradiction")));
  return c;
}

}  // namespace tbraid
