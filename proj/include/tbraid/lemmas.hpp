#pragma once

// Machine-checked replays of the rewriting lemmas for cycle-form
// presentations. Every equality is established by solving relators for one
// generator and substituting, never by a word-problem search.

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "tbraid/free_word.hpp"
#include "tbraid/presentation.hpp"

namespace tbraid {

class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ProofStep {
  enum class Kind {
    Solve,   // relator `relator` solved for `target`; after := solution, defines target
    Expand,  // after = before with every defined generator substituted
    Equal,   // outputs of Expand steps `lhs` and `rhs` coincide
    Scope,   // forget all definitions
  };
  Kind kind = Kind::Expand;
  std::string rule;
  int relator = -1;  // Solve; for Expand, a relator `before` must equal (or invert)
  int target = -1;
  int lhs = -1, rhs = -1;
  FreeWord before;
  FreeWord after;
};

struct ProofTranscript {
  std::string lemma;
  GroupPresentation pres;
  std::vector<ProofStep> steps;
};

struct ReplayResult {
  bool ok = true;
  std::size_t steps = 0;
  std::string failure;
};

/// Independent re-check of every recorded step, including that no solved
/// replacement mentions a generator eliminated later in the same scope.
ReplayResult replay_proof(const ProofTranscript& t);

nlohmann::json to_json(const ProofTranscript& t);
ProofTranscript proof_from_json(const nlohmann::json& j);

// Elimination schemes over the extended cycle presentation. Each rule is
// solved from the relator it names.
EliminationScheme forward_scheme(const ExtendedCycle& e);   // basis y0, x1
EliminationScheme backward_scheme(const ExtendedCycle& e);  // basis y_{c_n}, x_{m-1}
EliminationScheme xpath_scheme(const ExtendedCycle& e);     // x0 := y0, x_{i+1} from r(x_i)
EliminationScheme alias_scheme(const ExtendedCycle& e);     // x0 := y0, x_m := y_{c_n}

/// Words P_k (for y_{c_k}) and Q_k over two new generators appended to the
/// extended presentation. Left: u = y0, v = x1 y0^{a0-1}, Q_k = y_{c_k+1}
/// y_{c_k}^-1 for k < n. Right: s = y_{c_n}, t = y_{c_n}^{a_n-1} x_{m-1},
/// Q_k = y_{c_k}^-1 y_{c_k-1} for k > 0.
struct TwoLetterWords {
  int first = -1, second = -1;  // generator indices of u, v (or s, t)
  std::vector<FreeWord> P;      // index k = 0..n
  std::vector<FreeWord> Q;
};

/// Presentation the lemma words live in: the extended cycle presentation
/// plus u, v, s, t and their defining relators "u = y0", ...
struct LemmaContext {
  ExtendedCycle cycle;
  GroupPresentation pres;
  int u, v, s, t;
  int def_u, def_v, def_s, def_t;  // relator indices
};

LemmaContext lemma_context(const DecoratedCycleGraph& d);

/// Recurrences of the left lemma: P_0 = u, Q_0 = v, P_k = Q_{k-1}^{b_k}
/// P_{k-1}, Q_k = Q_{k-1} P_k^{a_k}.
TwoLetterWords left_words(const LemmaContext& c);
/// Mirror image: P_n = s, Q_n = t, P_{k-1} = P_k Q_k^{b_k}, Q_k = P_k^{a_k} Q_{k+1}.
TwoLetterWords right_words(const LemmaContext& c);

/// Both throw VerificationFailure when a closed form disagrees.
ProofTranscript verify_lemma_x(int m);
ProofTranscript verify_lemma_y(const DecoratedCycleGraph& d);

struct LemmaResult {
  ProofTranscript transcript;
  TwoLetterWords words;
};

LemmaResult verify_lemma_left(const DecoratedCycleGraph& d);
LemmaResult verify_lemma_right(const DecoratedCycleGraph& d);

/// w_0 ... w_n with w_k = P_k^{a_k} expands to the inverse of r(z).
ProofTranscript verify_product_relation(const DecoratedCycleGraph& d);

/// All of the above for one parameter tuple; returns the number of Equal
/// checks discharged. `replay` additionally re-runs replay_proof on each.
std::size_t verify_all_lemmas(const DecoratedCycleGraph& d, bool replay);

}  // namespace tbraid
