#pragma once

// Words in a free group on numbered generators. A letter is +(g+1) for
// generator g and -(g+1) for its inverse; names live in the presentation.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tbraid {

class SolveError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct FreeWord {
  std::vector<int> letters;

  FreeWord() = default;
  explicit FreeWord(std::vector<int> l) : letters(std::move(l)) {}

  static FreeWord generator(int g, int exponent = 1);

  bool empty() const { return letters.empty(); }
  std::size_t length() const { return letters.size(); }
  bool operator==(const FreeWord&) const = default;
};

inline int letter_generator(int letter) { return (letter > 0 ? letter : -letter) - 1; }
inline int letter_sign(int letter) { return letter > 0 ? 1 : -1; }

FreeWord reduce(FreeWord w);
bool is_reduced(const FreeWord& w);
FreeWord inverse(const FreeWord& w);
/// Concatenation followed by free reduction.
FreeWord operator*(const FreeWord& lhs, const FreeWord& rhs);
FreeWord power(const FreeWord& w, int k);

/// Strips inverse pairs across the ends as well.
FreeWord cyclic_reduce(FreeWord w);
/// Equal up to cyclic rotation (for cyclically reduced words).
bool cyclic_rotation_equal(const FreeWord& a, const FreeWord& b);
/// Equal up to cyclic rotation and inversion, after cyclic reduction.
bool same_relator(const FreeWord& a, const FreeWord& b);

int occurrences(const FreeWord& w, int g);
int exponent_sum(const FreeWord& w, int g);
bool mentions(const FreeWord& w, int g);

/// Replaces every occurrence of generator g by `replacement`.
FreeWord substitute(const FreeWord& w, int g, const FreeWord& replacement);

/// Replaces each generator g with table[g] when it is set.
FreeWord substitute_all(const FreeWord& w, const std::vector<std::optional<FreeWord>>& table);

/// For r containing g exactly once, the word w free of g with r = 1 <=> g = w.
FreeWord solve_relation(const FreeWord& r, int g);

/// Group notation, compressing repeated blocks: "(x1 x0^-1)^3 x1". The
/// identity prints as "1".
std::string to_string(const FreeWord& w, const std::vector<std::string>& names);

/// Accepts the notation produced by to_string, including nested powers.
/// Unknown generator names raise std::invalid_argument.
FreeWord parse_free_word(std::string_view text, const std::vector<std::string>& names);

/// Run-length pairs (generator, exponent) for JSON.
std::vector<std::pair<int, int>> syllables(const FreeWord& w);
FreeWord from_syllables(const std::vector<std::pair<int, int>>& syl);

// ---------------------------------------------------------------------------
// Elimination

/// target := replacement, where replacement was solved from relator `relator`
/// of the presentation the scheme belongs to (-1 when not tied to one).
struct SubstitutionRule {
  int target = 0;
  FreeWord replacement;
  int relator = -1;
  bool operator==(const SubstitutionRule&) const = default;
};

/// Ordered rules; each replacement may mention basis generators and earlier
/// targets only.
struct EliminationScheme {
  std::string name;
  std::vector<SubstitutionRule> rules;

  /// Throws std::logic_error when a rule redefines a target or mentions a
  /// target that is not yet eliminated.
  void check_acyclic(std::size_t generator_count) const;

  /// Fully expanded value of each generator (unset for basis generators).
  std::vector<std::optional<FreeWord>> expansion_table(std::size_t generator_count) const;
};

/// Rewrites words over the basis of a scheme, caching expansions.
class Expander {
 public:
  Expander(const EliminationScheme& scheme, std::size_t generator_count);
  FreeWord operator()(const FreeWord& w) const { return substitute_all(w, table_); }
  const std::optional<FreeWord>& value(int g) const { return table_[static_cast<std::size_t>(g)]; }

 private:
  std::vector<std::optional<FreeWord>> table_;
};

}  // namespace tbraid
