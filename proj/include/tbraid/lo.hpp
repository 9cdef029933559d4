#pragma once

// Non-left-orderability evidence that does not go through a certificate:
// finite cyclic groups and bounded positive-cone searches.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tbraid/coset.hpp"
#include "tbraid/presentation.hpp"

namespace tbraid {

enum class Verdict {
  NonLO_Certified,     // checked certificate
  NonLO_FiniteGroup,   // complete coset table of a nontrivial or trivial finite group
  NonLO_Torsion,       // finite cyclic group with nontrivial torsion
  NonLO_CitedTheorem,  // alternating branch set; not machine-checked here
  Inconclusive,
};

std::string_view verdict_name(Verdict v);

struct TorsionVerdict {
  Verdict verdict = Verdict::Inconclusive;
  std::string justification;
};

/// Non-LO only when the group is known to be cyclic and its abelianization
/// is finite and nontrivial.
TorsionVerdict torsion_non_lo(const AbelianInvariants& inv, bool cyclic_known);

/// Word-problem oracle: elements are keyed so equal elements get equal keys.
class GroupOracle {
 public:
  using Key = std::vector<int>;
  virtual ~GroupOracle() = default;
  virtual Key identity() const = 0;
  /// key of e * letter, letter in the +-(g+1) encoding
  virtual Key multiply(const Key& e, int letter) const = 0;
  bool is_identity(const Key& k) const { return k == identity(); }
};

/// Regular representation read from a complete coset table.
class CosetTableOracle : public GroupOracle {
 public:
  explicit CosetTableOracle(CosetTable table);
  Key identity() const override { return {0}; }
  Key multiply(const Key& e, int letter) const override;

 private:
  CosetTable table_;
};

/// Free group: keys are reduced words.
class FreeGroupOracle : public GroupOracle {
 public:
  Key identity() const override { return {}; }
  Key multiply(const Key& e, int letter) const override;
};

struct SignedDerivation {
  std::vector<int> signs;    // per generator: +1, -1, or 0 for trivial generators
  FreeWord product;          // nonempty product of signed generators equal to 1
};

struct PositiveConeWitness {
  std::vector<SignedDerivation> derivations;  // one per sign assignment
  bool trivial_group = false;
};

constexpr int default_cone_depth = 8;

/// Every sign assignment on the nontrivial generators must reach the
/// identity as a nonempty product of at most `depth` signed generators.
/// nullopt means NotFound, which is inconclusive.
std::optional<PositiveConeWitness> positive_cone_search(const GroupPresentation& p,
                                                        const GroupOracle& oracle,
                                                        int depth = default_cone_depth);

/// Re-checks each derivation with the oracle.
bool replay_witness(const PositiveConeWitness& w, const GroupPresentation& p,
                    const GroupOracle& oracle);

}  // namespace tbraid
