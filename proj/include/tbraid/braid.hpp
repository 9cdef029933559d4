#pragma once

// Three-strand braid words, conjugation moves, Baldwin family membership and
// the normalization chains that turn type (1) braids with d = +-1 into the
// cycle form sigma2^m sigma1^a0 sigma2^-b1 ... sigma1^an.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "tbraid/cycle_params.hpp"

namespace tbraid {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised when a recorded move cannot be applied to the word it claims to act on.
class ReplayError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BraidLetter {
  int generator = 1;  // 1 or 2
  int sign = 1;       // +1 or -1

  constexpr BraidLetter() = default;
  constexpr BraidLetter(int gen, int sgn) : generator(gen), sign(sgn) {
    if ((gen != 1 && gen != 2) || (sgn != 1 && sgn != -1))
      throw std::invalid_argument("braid letter must be s1^+-1 or s2^+-1");
  }

  constexpr BraidLetter inverse() const { return {generator, -sign}; }
  constexpr BraidLetter exchanged() const { return {3 - generator, sign}; }
  constexpr bool is_inverse_of(BraidLetter o) const {
    return generator == o.generator && sign == -o.sign;
  }
  bool operator==(const BraidLetter&) const = default;
};

using Letters = std::vector<BraidLetter>;

/// A word in sigma1, sigma2 together with a symbolic power h^d of the central
/// full twist h = (sigma2 sigma1)^3. Because h is central its position in the
/// word is immaterial; the letters are read after h^d.
struct BraidWord {
  Letters letters;
  int fulltwist_power = 0;

  std::size_t length() const { return letters.size(); }
  bool operator==(const BraidWord&) const = default;
};

/// Maximal run of a single generator with a signed exponent.
struct Syllable {
  int generator;
  int exponent;
  bool operator==(const Syllable&) const = default;
};

// Text format: whitespace separated tokens s1, s2, h, each with optional ^k.
// "1" denotes the identity.
BraidWord parse_braid(std::string_view text);
std::string to_string(const BraidWord& w);
std::string to_string(const Letters& letters);

Letters free_reduce(Letters letters);
BraidWord free_reduce(BraidWord w);
bool is_freely_reduced(const Letters& letters);

/// Replaces each h by (sigma2 sigma1)^3 and each h^-1 by its inverse.
BraidWord expand_fulltwist(const BraidWord& w);

/// Moves the first k letters to the end. Requires 0 <= k <= length.
BraidWord cyclic_conjugate(const BraidWord& w, std::size_t k);

int exponent_sum(const BraidWord& w);

/// Inverts every letter and negates the full-twist power. With
/// exchange_generators the result also swaps sigma1 and sigma2.
BraidWord mirror(const BraidWord& w, bool exchange_generators = false);

/// Conjugation by the half twist: sigma1 <-> sigma2 letterwise.
BraidWord exchange(const BraidWord& w);

std::vector<Syllable> syllables(const Letters& letters);
Letters from_syllables(const std::vector<Syllable>& syl);

/// Every positive length-six word equal to h in B_3, closed under the braid
/// relation sigma1 sigma2 sigma1 = sigma2 sigma1 sigma2.
const std::vector<Letters>& fulltwist_positive_words();
bool is_fulltwist_word(const Letters& letters);

bool cyclically_equal(const Letters& lhs, const Letters& rhs);

// ---------------------------------------------------------------------------
// Transcripts

enum class MoveKind {
  Rotate,         // move the first `position` letters to the end
  FreeReduce,     // cancel adjacent inverse pairs
  ExpandH,        // replace one h^sign by pattern^sign inserted at `position`
  ExtractH,       // remove pattern^sign found at `position`, adjust h power
  BraidRelation,  // sigma_i sigma_j sigma_i -> sigma_j sigma_i sigma_j at `position`
  MergeRuns,      // run-length re-encoding; removes zero exponents
  Mirror,
  Exchange,
};

std::string_view move_name(MoveKind kind);
std::optional<MoveKind> move_from_name(std::string_view name);

struct Move {
  MoveKind kind = MoveKind::FreeReduce;
  int position = 0;
  int sign = 1;
  Letters pattern;   // full-twist representative for ExpandH / ExtractH
  std::string note;  // free-form audit text
  BraidWord result;  // the word after the move

  bool operator==(const Move&) const = default;
};

using Transcript = std::vector<Move>;

/// Applies a move without consulting its recorded result. Throws ReplayError
/// when the move does not fit the word.
BraidWord apply_move(const BraidWord& w, const Move& move);

/// Builds the move, applies it to w, stores the result and appends it.
BraidWord record(Transcript& transcript, const BraidWord& w, Move move);

struct ReplayReport {
  bool ok = true;
  std::size_t steps_checked = 0;
  std::string failure;
};

/// Re-applies every move starting from `input`, checking each recorded
/// intermediate word, that the exponent sum is preserved (negated by Mirror),
/// and that the final word matches `claimed_output` up to rotation and free
/// reduction.
ReplayReport replay_transcript(const BraidWord& input, const Transcript& transcript,
                               const BraidWord& claimed_output);

// ---------------------------------------------------------------------------
// Baldwin families

struct Type1 {
  int d = 0;
  std::vector<int> a;
  bool operator==(const Type1&) const = default;
};
struct Type2 {
  int d = 1;
  int m = 0;
  bool operator==(const Type2&) const = default;
};
struct Type3 {
  int d = 0;
  int m = -1;
  bool operator==(const Type3&) const = default;
};
struct NotInFamily {
  bool operator==(const NotInFamily&) const = default;
};

using BaldwinClass = std::variant<Type1, Type2, Type3, NotInFamily>;

std::string describe(const BaldwinClass& c);

struct Classification {
  BaldwinClass family;
  /// Input conjugated into the family's displayed shape (h extracted,
  /// cyclically reduced, rotated to the canonical start).
  BraidWord canonical;
  Transcript moves;
};

Classification classify_detailed(const BraidWord& w);
BaldwinClass classify_baldwin(const BraidWord& w);

/// Words in the displayed family shapes.
BraidWord type1_word(int d, const std::vector<int>& a);
BraidWord type2_word(int d, int m);
BraidWord type3_word(int d, int m);
BraidWord family_word(const BaldwinClass& c);

// ---------------------------------------------------------------------------
// Normalization

struct CycleForm {
  DecoratedCycleGraph graph;
  bool operator==(const CycleForm&) const = default;
};

/// Branch set T(2, q). For the d = -1, n = 1 chain the displayed exponent
/// and the derived word disagree; `q` is the stated branch set and
/// `derived_q` the one read off the final word.
struct TorusBranchSet {
  int p = 2;
  int q = 0;
  int derived_q = 0;
  bool operator==(const TorusBranchSet&) const = default;
};

/// Branch set T(2, p) # T(2, q), the closure of sigma2^q sigma1^p. Covers
/// both the a = 2 case and the collapsed cycle (n = 0).
struct ConnectedSumBranchSet {
  int p = 2;
  int q = 0;
  bool operator==(const ConnectedSumBranchSet&) const = default;
};

using OutcomeShape = std::variant<CycleForm, TorusBranchSet, ConnectedSumBranchSet>;

struct NormalizationOutcome {
  OutcomeShape shape;
  BraidWord output;
  Transcript transcript;
};

NormalizationOutcome normalize_type1_d1(const BraidWord& w);
NormalizationOutcome normalize_type1_dm1(const BraidWord& w);

/// sigma2^m sigma1^a0 sigma2^-b1 sigma1^a1 ... sigma2^-bn sigma1^an
BraidWord cycle_form_word(const DecoratedCycleGraph& g);

}  // namespace tbraid
