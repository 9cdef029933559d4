#pragma once

// Non-left-orderability certificates for cycle-form white graphs. A
// certificate is a list of sign deductions about named elements of the
// extended cycle presentation; every word identity it relies on is checked
// by expanding both sides under an elimination scheme stored alongside it.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "tbraid/cycle_params.hpp"
#include "tbraid/free_word.hpp"
#include "tbraid/presentation.hpp"

namespace tbraid {

class HypothesisNotMet : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Order signs relative to the identity: > 1, >= 1, < 1, <= 1.
enum class Sign { Positive, NonNegative, Negative, NonPositive };

std::string_view sign_name(Sign s);
Sign sign_from_name(std::string_view name);
Sign flip(Sign s);

/// label^exponent inside a product
using Factor = std::pair<std::string, int>;

struct CertStep {
  enum class Kind {
    Assume,          // WLOG branch: the extremal generators y0 < 1 < y_{c_n}
    Relation,        // product of factors is trivial in the group
    ForcedPositive,  // target is the only factor of a trivial product not known <= 1
    Product,         // element equals a product of signed factors
    FactorBound,     // g h > 1 and h <= 1 give g > 1
    Contradiction,   // an element carries incompatible signs
  };
  Kind kind = Kind::Product;
  std::string label;  // element the step is about
  Sign sign = Sign::Positive;
  std::vector<Factor> factors;
  std::string scheme;         // elimination scheme for the identity check
  int relator = -1;           // Relation: the relator the product equals (or inverts)
  int relation = -1;          // ForcedPositive: index of the Relation step
  std::string product_label;  // FactorBound: the element g h
  std::string bound_label;    // FactorBound: the element h
  std::vector<int> cites;     // Contradiction: the two conflicting steps
  std::string justification;
};

struct NonLOCertificate {
  DecoratedCycleGraph params;
  int hypothesis_case = 1;  // 1: m > 1, 2: m = 1 with a0, an > 1
  std::string wlog_branch;   // "y0 < 1 < y{c_n}"
  std::string wlog_note;
  GroupPresentation pres;  // extended cycle presentation
  std::vector<EliminationScheme> schemes;
  std::vector<std::pair<std::string, FreeWord>> definitions;
  std::vector<CertStep> steps;
};

/// Throws HypothesisNotMet when neither m > 1 nor m = 1 with a0, an > 1, and
/// DegenerateShape for n = 0.
NonLOCertificate certify_cycle_non_lo(const DecoratedCycleGraph& d);

struct CertificateCheck {
  bool ok = true;
  std::size_t steps_checked = 0;
  std::string failure;
};

/// Independent re-verification: re-derives the presentation from the
/// parameters, re-solves every scheme rule from its relator, re-expands
/// every identity and re-applies every sign rule.
CertificateCheck verify_certificate(const NonLOCertificate& c);

nlohmann::json to_json(const NonLOCertificate& c);
NonLOCertificate certificate_from_json(const nlohmann::json& j);

/// Generators whose incident edges (root edges included) carry both signs.
std::vector<std::string> mixed_sign_vertices(const DecoratedCycleGraph& d);

}  // namespace tbraid
