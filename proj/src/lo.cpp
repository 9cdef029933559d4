#include "tbraid/lo.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace tbraid {

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::NonLO_Certified: return "NonLO_Certified";
    case Verdict::NonLO_FiniteGroup: return "NonLO_FiniteGroup";
    case Verdict::NonLO_Torsion: return "NonLO_Torsion";
    case Verdict::NonLO_CitedTheorem: return "NonLO_CitedTheorem";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

TorsionVerdict torsion_non_lo(const AbelianInvariants& inv, bool cyclic_known) {
  if (!cyclic_known)
    return {Verdict::Inconclusive, "abelianization alone does not decide left-orderability"};
  if (inv.free_rank > 0) return {Verdict::Inconclusive, "infinite abelianization"};
  if (inv.torsion.empty()) return {Verdict::Inconclusive, "trivial abelianization"};
  return {Verdict::NonLO_Torsion, "nontrivial finite cyclic group " + inv.to_string()};
}

CosetTableOracle::CosetTableOracle(CosetTable table) : table_(std::move(table)) {
  if (!table_.complete) throw std::invalid_argument("coset oracle needs a complete table");
}

GroupOracle::Key CosetTableOracle::multiply(const Key& e, int letter) const {
  return {table_.rows[static_cast<std::size_t>(e.at(0))][static_cast<std::size_t>(CosetTable::column(letter))]};
}

GroupOracle::Key FreeGroupOracle::multiply(const Key& e, int letter) const {
  Key out = e;
  if (!out.empty() && out.back() == -letter)
    out.pop_back();
  else
    out.push_back(letter);
  return out;
}

namespace {

// Breadth-first closure of the semigroup generated by `letters`; returns a
// shortest nonempty product equal to the identity.
std::optional<FreeWord> reach_identity(const GroupOracle& oracle, const std::vector<int>& letters, int depth) {
  struct Node {
    GroupOracle::Key key;
    int parent;
    int letter;
  };
  std::vector<Node> nodes;
  std::map<GroupOracle::Key, int> seen;
  std::vector<int> frontier;
  const auto id = oracle.identity();
  auto path = [&](int n) {
    FreeWord w;
    for (; n >= 0; n = nodes[static_cast<std::size_t>(n)].parent)
      w.letters.push_back(nodes[static_cast<std::size_t>(n)].letter);
    std::reverse(w.letters.begin(), w.letters.end());
    return w;
  };
  for (int l : letters) {
    auto k = oracle.multiply(id, l);
    nodes.push_back({k, -1, l});
    if (k == id) return path(static_cast<int>(nodes.size()) - 1);
    if (seen.emplace(k, static_cast<int>(nodes.size()) - 1).second)
      frontier.push_back(static_cast<int>(nodes.size()) - 1);
  }
  for (int level = 2; level <= depth && !frontier.empty(); ++level) {
    std::vector<int> next;
    for (int n : frontier) {
      for (int l : letters) {
        auto k = oracle.multiply(nodes[static_cast<std::size_t>(n)].key, l);
        nodes.push_back({k, n, l});
        const int idx = static_cast<int>(nodes.size()) - 1;
        if (k == id) return path(idx);
        if (seen.emplace(k, idx).second) next.push_back(idx);
      }
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

}  // namespace

std::optional<PositiveConeWitness> positive_cone_search(const GroupPresentation& p,
                                                        const GroupOracle& oracle, int depth) {
  p.check();
  const int G = static_cast<int>(p.generators.size());
  std::vector<int> nontrivial;
  for (int g = 0; g < G; ++g)
    if (!oracle.is_identity(oracle.multiply(oracle.identity(), g + 1))) nontrivial.push_back(g);
  PositiveConeWitness w;
  if (nontrivial.empty()) {
    w.trivial_group = true;
    return w;
  }
  if (nontrivial.size() > 20) throw std::invalid_argument("too many generators for a sign search");
  const std::size_t assignments = std::size_t{1} << nontrivial.size();
  for (std::size_t mask = 0; mask < assignments; ++mask) {
    SignedDerivation d;
    d.signs.assign(static_cast<std::size_t>(G), 0);
    std::vector<int> letters;
    for (std::size_t i = 0; i < nontrivial.size(); ++i) {
      const int g = nontrivial[i];
      const int s = (mask >> i) & 1u ? -1 : 1;
      d.signs[static_cast<std::size_t>(g)] = s;
      letters.push_back(s * (g + 1));
    }
    auto found = reach_identity(oracle, letters, depth);
    if (!found) return std::nullopt;
    d.product = std::move(*found);
    w.derivations.push_back(std::move(d));
  }
  return w;
}

bool replay_witness(const PositiveConeWitness& w, const GroupPresentation& p, const GroupOracle& oracle) {
  const int G = static_cast<int>(p.generators.size());
  if (w.trivial_group) {
    for (int g = 0; g < G; ++g)
      if (!oracle.is_identity(oracle.multiply(oracle.identity(), g + 1))) return false;
    return true;
  }
  std::vector<int> nontrivial;
  for (int g = 0; g < G; ++g)
    if (!oracle.is_identity(oracle.multiply(oracle.identity(), g + 1))) nontrivial.push_back(g);
  if (w.derivations.size() != (std::size_t{1} << nontrivial.size())) return false;
  std::map<std::vector<int>, int> covered;
  for (const auto& d : w.derivations) {
    if (d.product.empty() || d.signs.size() != static_cast<std::size_t>(G)) return false;
    for (int g : nontrivial)
      if (d.signs[static_cast<std::size_t>(g)] == 0) return false;
    ++covered[d.signs];
    auto k = oracle.identity();
    for (int l : d.product.letters) {
      const int g = letter_generator(l);
      if (d.signs[static_cast<std::size_t>(g)] != letter_sign(l)) return false;
      k = oracle.multiply(k, l);
    }
    if (!oracle.is_identity(k)) return false;
  }
  return covered.size() == w.derivations.size();
}

}  // namespace tbraid
