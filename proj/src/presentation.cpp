#include "tbraid/presentation.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace tbraid {

int GroupPresentation::index_of(const std::string& name) const {
  auto it = std::find(generators.begin(), generators.end(), name);
  return it == generators.end() ? -1 : static_cast<int>(it - generators.begin());
}

void GroupPresentation::check() const {
  for (const auto& r : relators)
    for (int l : r.letters)
      if (static_cast<std::size_t>(letter_generator(l)) >= generators.size())
        throw std::logic_error("relator mentions an undeclared generator");
  if (!labels.empty() && labels.size() != relators.size())
    throw std::logic_error("relator labels out of step with relators");
}

void GroupPresentation::add_relator(FreeWord r, std::string label) {
  relators.push_back(reduce(std::move(r)));
  if (labels.empty() && label.empty()) return;
  labels.resize(relators.size() - 1);
  labels.push_back(std::move(label));
}

GroupPresentation greene_presentation(const CheckerboardGraph& g) {
  check_rotation_system(g);
  GroupPresentation p;
  p.generators = g.names;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    FreeWord r;
    const int xi = static_cast<int>(v);
    for (int d : g.rotation[v]) {
      // w = (x_j^-1 x_i)^sign
      FreeWord w = FreeWord::generator(g.dart_target(d), -1) * FreeWord::generator(xi);
      r = r * power(w, g.dart_sign(d));
    }
    p.add_relator(std::move(r), "r(" + g.names[v] + ")");
  }
  p.add_relator(FreeWord::generator(g.root), g.names[static_cast<std::size_t>(g.root)]);
  return p;
}

GroupPresentation kill_generator(const GroupPresentation& p, const std::string& name) {
  const int k = p.index_of(name);
  if (k < 0) throw std::invalid_argument("no generator named " + name);
  GroupPresentation out;
  for (std::size_t i = 0; i < p.generators.size(); ++i)
    if (static_cast<int>(i) != k) out.generators.push_back(p.generators[i]);
  for (std::size_t r = 0; r < p.relators.size(); ++r) {
    FreeWord w;
    for (int l : p.relators[r].letters) {
      int gen = letter_generator(l);
      if (gen == k) continue;
      int shifted = gen > k ? gen - 1 : gen;
      w = w * FreeWord::generator(shifted, letter_sign(l));
    }
    if (cyclic_reduce(w).empty()) continue;
    out.add_relator(std::move(w), p.labels.empty() ? std::string() : p.labels[r]);
  }
  return out;
}

namespace {

// Relator list in terms of symbol lookups for x_i (0 <= i <= m) and y_j;
// `z` is -1 when the root is already killed.
void cycle_relators(const DecoratedCycleGraph& d, const std::function<int(int)>& X,
                    const std::function<int(int)>& Y, int z, GroupPresentation& p) {
  const int m = d.m, n = d.n(), cn = d.c_n();
  auto gen = [](int g, int e = 1) { return FreeWord::generator(g, e); };
  // (a^-1 b)
  auto q = [&](int a, int b) { return gen(a, -1) * gen(b); };
  auto xname = [](int i) { return "x" + std::to_string(i); };
  for (int i = 1; i < m; ++i)
    p.add_relator(inverse(q(X(i + 1), X(i))) * inverse(q(X(i - 1), X(i))), "r(" + xname(i) + ")");
  std::vector<int> marked(static_cast<std::size_t>(cn) + 1, -1);
  for (int k = 0; k <= n; ++k) marked[static_cast<std::size_t>(d.c(k))] = k;
  for (int j = 0; j <= cn; ++j) {
    const int k = marked[static_cast<std::size_t>(j)];
    const std::string label = "r(y" + std::to_string(j) + ")";
    if (k < 0) {
      p.add_relator(q(Y(j + 1), Y(j)) * q(Y(j - 1), Y(j)), label);
      continue;
    }
    const FreeWord roots = gen(Y(j), d.a[static_cast<std::size_t>(k)]);
    if (j == 0)
      p.add_relator(inverse(q(X(1), Y(0))) * roots * q(Y(1), Y(0)), label);
    else if (j == cn)
      p.add_relator(q(Y(j - 1), Y(j)) * roots * inverse(q(X(m - 1), Y(j))), label);
    else
      p.add_relator(q(Y(j - 1), Y(j)) * roots * q(Y(j + 1), Y(j)), label);
  }
  FreeWord rz;
  for (int k = n; k >= 0; --k) {
    FreeWord w = gen(Y(d.c(k)), -1);
    if (z >= 0) w = w * gen(z);
    rz = rz * power(w, d.a[static_cast<std::size_t>(k)]);
  }
  if (z >= 0) p.add_relator(gen(z), "z");
  p.add_relator(std::move(rz), "r(z)");
}

void require_cycle(const DecoratedCycleGraph& d) {
  d.validate();
  if (d.n() == 0) throw DegenerateShape("cycle relator list requires n > 0");
}

}  // namespace

GroupPresentation cycle_presentation(const DecoratedCycleGraph& d) {
  require_cycle(d);
  const int m = d.m, cn = d.c_n();
  GroupPresentation p;
  for (int i = 1; i < m; ++i) p.generators.push_back("x" + std::to_string(i));
  for (int j = 0; j <= cn; ++j) p.generators.push_back("y" + std::to_string(j));
  p.generators.push_back("z");
  auto Y = [m](int j) { return m - 1 + j; };
  auto X = [&](int i) { return i == 0 ? Y(0) : i == m ? Y(cn) : i - 1; };
  cycle_relators(d, X, Y, m + cn, p);
  return p;
}

ExtendedCycle extended_cycle(const DecoratedCycleGraph& d) {
  require_cycle(d);
  ExtendedCycle e{d, {}};
  const int m = d.m, cn = d.c_n();
  for (int i = 0; i <= m; ++i) e.pres.generators.push_back("x" + std::to_string(i));
  for (int j = 0; j <= cn; ++j) e.pres.generators.push_back("y" + std::to_string(j));
  cycle_relators(d, [&](int i) { return e.x(i); }, [&](int j) { return e.y(j); }, -1, e.pres);
  e.pres.add_relator(FreeWord::generator(e.x(0), -1) * FreeWord::generator(e.y(0)), "x0 = y0");
  e.pres.add_relator(FreeWord::generator(e.x(m), -1) * FreeWord::generator(e.y(cn)),
                     "x" + std::to_string(m) + " = y" + std::to_string(cn));
  return e;
}

BigInt AbelianInvariants::order() const {
  if (free_rank > 0) return 0;
  BigInt o = 1;
  for (const auto& t : torsion) o *= t;
  return o;
}

std::string AbelianInvariants::to_string() const {
  std::string out;
  for (const auto& t : torsion) out += (out.empty() ? "" : " + ") + ("Z/" + t.str());
  for (std::size_t i = 0; i < free_rank; ++i) out += (out.empty() ? "" : " + ") + std::string("Z");
  return out.empty() ? "Z/1" : out;
}

AbelianInvariants abelianize(const GroupPresentation& p) {
  p.check();
  IntMatrix m(p.relators.size(), std::vector<BigInt>(p.generators.size(), 0));
  for (std::size_t r = 0; r < p.relators.size(); ++r)
    for (int l : p.relators[r].letters) m[r][static_cast<std::size_t>(letter_generator(l))] += letter_sign(l);
  AbelianInvariants inv;
  if (p.generators.empty()) return inv;
  SmithForm s = smith_normal_form(std::move(m));
  for (const auto& d : s.diagonal)
    if (d > 1) inv.torsion.push_back(d);
  inv.free_rank = p.generators.size() - s.rank;
  return inv;
}

GroupPresentation tietze_simplify(const GroupPresentation& input) {
  input.check();
  GroupPresentation p;
  p.generators = input.generators;
  for (const auto& r : input.relators) {
    FreeWord c = cyclic_reduce(r);
    if (!c.empty()) p.relators.push_back(std::move(c));
  }
  constexpr std::size_t length_cap = 1'000'000;
  for (;;) {
    // Candidate: shortest relator, then highest generator index, occurring once.
    int best_r = -1, best_g = -1;
    for (std::size_t r = 0; r < p.relators.size(); ++r) {
      for (int g = static_cast<int>(p.generators.size()) - 1; g >= 0; --g) {
        if (occurrences(p.relators[r], g) != 1) continue;
        if (best_r < 0 || p.relators[r].length() < p.relators[static_cast<std::size_t>(best_r)].length()) {
          best_r = static_cast<int>(r);
          best_g = g;
        }
        break;
      }
    }
    if (best_r < 0) break;
    const FreeWord value = solve_relation(p.relators[static_cast<std::size_t>(best_r)], best_g);
    std::vector<FreeWord> next;
    std::size_t total = 0;
    for (std::size_t r = 0; r < p.relators.size(); ++r) {
      if (static_cast<int>(r) == best_r) continue;
      FreeWord w = cyclic_reduce(substitute(p.relators[r], best_g, value));
      total += w.length();
      if (!w.empty()) next.push_back(std::move(w));
    }
    if (total > length_cap) break;
    // Drop the generator and shift indices above it.
    for (auto& w : next)
      for (int& l : w.letters) {
        int g = letter_generator(l);
        if (g > best_g) l = l > 0 ? l - 1 : l + 1;
      }
    p.generators.erase(p.generators.begin() + best_g);
    p.relators = std::move(next);
  }
  return p;
}

nlohmann::json word_json(const FreeWord& w, const std::vector<std::string>& names) {
  auto out = nlohmann::json::array();
  for (auto [g, e] : syllables(w)) out.push_back({names.at(static_cast<std::size_t>(g)), e});
  return out;
}

FreeWord word_from_json(const nlohmann::json& j, const GroupPresentation& p) {
  std::vector<std::pair<int, int>> syl;
  for (const auto& s : j) {
    int g = p.index_of(s.at(0).get<std::string>());
    if (g < 0) throw std::invalid_argument("word mentions unknown generator " + s.at(0).dump());
    syl.emplace_back(g, s.at(1).get<int>());
  }
  return reduce(from_syllables(syl));
}

nlohmann::json to_json(const GroupPresentation& p) {
  nlohmann::json j;
  j["generators"] = p.generators;
  auto rels = nlohmann::json::array();
  for (const auto& r : p.relators) rels.push_back(word_json(r, p.generators));
  j["relators"] = std::move(rels);
  if (!p.labels.empty()) j["labels"] = p.labels;
  return j;
}

GroupPresentation presentation_from_json(const nlohmann::json& j) {
  GroupPresentation p;
  p.generators = j.at("generators").get<std::vector<std::string>>();
  for (const auto& word : j.at("relators")) p.relators.push_back(word_from_json(word, p));
  if (j.contains("labels")) p.labels = j.at("labels").get<std::vector<std::string>>();
  p.check();
  return p;
}

std::string pretty(const GroupPresentation& p) {
  std::ostringstream out;
  out << "< ";
  for (std::size_t i = 0; i < p.generators.size(); ++i) out << (i ? ", " : "") << p.generators[i];
  out << " |\n";
  for (std::size_t r = 0; r < p.relators.size(); ++r) {
    out << "  ";
    if (!p.labels.empty() && !p.labels[r].empty()) out << p.labels[r] << " = ";
    out << p.show(p.relators[r]) << "\n";
  }
  out << ">\n";
  return out.str();
}

bool same_relators(const GroupPresentation& a, const GroupPresentation& b) {
  if (a.relators.size() != b.relators.size()) return false;
  std::vector<std::string> sorted_a = a.generators, sorted_b = b.generators;
  std::sort(sorted_a.begin(), sorted_a.end());
  std::sort(sorted_b.begin(), sorted_b.end());
  if (sorted_a != sorted_b) return false;
  // Rename b's generators into a's numbering.
  std::vector<std::optional<FreeWord>> rename(b.generators.size());
  for (std::size_t g = 0; g < b.generators.size(); ++g)
    rename[g] = FreeWord::generator(a.index_of(b.generators[g]));
  std::vector<char> used(a.relators.size(), 0);
  for (const auto& rb : b.relators) {
    FreeWord w = substitute_all(rb, rename);
    bool found = false;
    for (std::size_t i = 0; i < a.relators.size() && !found; ++i)
      if (!used[i] && same_relator(a.relators[i], w)) used[i] = 1, found = true;
    if (!found) return false;
  }
  return true;
}

}  // namespace tbraid
