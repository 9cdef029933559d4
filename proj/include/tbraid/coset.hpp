#pragma once

// Todd-Coxeter enumeration of the cosets of the trivial subgroup (HLT
// strategy with coincidence processing). Coset numbering is deterministic.

#include <cstddef>
#include <string>
#include <vector>

#include "tbraid/presentation.hpp"

namespace tbraid {

struct CosetTable {
  std::size_t generator_count = 0;
  /// rows[c][2g] is c.g, rows[c][2g+1] is c.g^-1; -1 when undefined.
  std::vector<std::vector<int>> rows;
  bool complete = false;     // false means the coset cap was hit
  std::size_t order = 0;     // group order when complete
  std::size_t defined = 0;   // cosets ever defined

  static int column(int letter) {
    return 2 * letter_generator(letter) + (letter > 0 ? 0 : 1);
  }
  /// Image of coset c under a word; -1 if the table is incomplete there.
  int act(int c, const FreeWord& w) const;
  bool is_identity(const FreeWord& w) const { return act(0, w) == 0; }
};

constexpr std::size_t default_max_cosets = 1'000'000;

CosetTable todd_coxeter(const GroupPresentation& p, std::size_t max_cosets = default_max_cosets);

/// Golden-file format: "order N" then one line per coset listing the images
/// under g1 g1^-1 g2 g2^-1 ...
std::string dump(const CosetTable& t);

/// True when every relator fixes every coset and each column is a permutation.
bool is_consistent(const CosetTable& t, const GroupPresentation& p);

}  // namespace tbraid
