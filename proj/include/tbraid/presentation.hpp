#pragma once

// Finite presentations: Greene's presentation of a rooted signed white graph,
// the explicit cycle-form relators, abelian invariants and Tietze moves.

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "tbraid/cycle_params.hpp"
#include "tbraid/diagram.hpp"
#include "tbraid/free_word.hpp"
#include "tbraid/integer_matrix.hpp"

namespace tbraid {

/// n = 0 cycle shapes have no relator list of the explicit form.
class DegenerateShape : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct GroupPresentation {
  std::vector<std::string> generators;
  std::vector<FreeWord> relators;
  /// Optional per-relator tags such as "r(y0)"; empty or one per relator.
  std::vector<std::string> labels;

  int index_of(const std::string& name) const;
  /// Throws std::logic_error when a relator uses an undeclared generator.
  void check() const;
  void add_relator(FreeWord r, std::string label = {});
  FreeWord word(const std::string& text) const { return parse_free_word(text, generators); }
  std::string show(const FreeWord& w) const { return to_string(w, generators); }
};

/// One generator per vertex named after it; relator per vertex is the
/// product over counter-clockwise darts of (x_j^-1 x_i)^sign, followed by
/// the root relator x_r.
GroupPresentation greene_presentation(const CheckerboardGraph& g);

/// Substitutes generator `name` by the identity and drops it; relators that
/// become trivial are removed.
GroupPresentation kill_generator(const GroupPresentation& p, const std::string& name);

/// The explicit relator list of the cycle form with aliases x0 = y0 and
/// x_m = y_{c_n} resolved: generators x1..x_{m-1}, y0..y_{c_n}, z.
GroupPresentation cycle_presentation(const DecoratedCycleGraph& d);

/// Cycle relators with z killed, x0..x_m kept as separate symbols and the
/// aliases x0 = y0, x_m = y_{c_n} added as relators. The rewriting lemmas
/// work in this presentation.
struct ExtendedCycle {
  DecoratedCycleGraph params;
  GroupPresentation pres;
  int x(int i) const { return i; }
  int y(int j) const { return params.m + 1 + j; }
  int rx(int i) const { return i - 1; }  // 0 < i < m
  int ry(int j) const { return params.m - 1 + j; }
  int rz() const { return params.m + params.c_n(); }
  int alias0() const { return rz() + 1; }
  int aliasm() const { return rz() + 2; }
};

ExtendedCycle extended_cycle(const DecoratedCycleGraph& d);

struct AbelianInvariants {
  std::vector<BigInt> torsion;  // invariant factors > 1
  std::size_t free_rank = 0;

  /// |H_1| when finite, 0 when the free rank is positive.
  BigInt order() const;
  bool is_trivial() const { return torsion.empty() && free_rank == 0; }
  std::string to_string() const;
  bool operator==(const AbelianInvariants&) const = default;
};

AbelianInvariants abelianize(const GroupPresentation& p);

/// Repeatedly eliminates a generator occurring exactly once in some relator
/// and drops trivial relators. Deterministic.
GroupPresentation tietze_simplify(const GroupPresentation& p);

nlohmann::json to_json(const GroupPresentation& p);
/// Word as [[generator name, exponent], ...].
nlohmann::json word_json(const FreeWord& w, const std::vector<std::string>& names);
FreeWord word_from_json(const nlohmann::json& j, const GroupPresentation& p);
GroupPresentation presentation_from_json(const nlohmann::json& j);
std::string pretty(const GroupPresentation& p);

/// Relator multisets equal up to cyclic rotation and inversion, generators
/// matched by name.
bool same_relators(const GroupPresentation& a, const GroupPresentation& b);

}  // namespace tbraid
