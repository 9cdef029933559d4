#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace tbraid {

/// Parameters of the single-cycle decorated white graph: an x-path of m
/// negative edges closing up a y-path whose marked vertices y_{c_k} carry a_k
/// positive edges to the root. b_k - 1 unmarked vertices sit between the
/// marked vertices k-1 and k.
struct DecoratedCycleGraph {
  int m = 1;
  std::vector<int> a;  // a_0 .. a_n
  std::vector<int> b;  // b_1 .. b_n

  int n() const { return static_cast<int>(b.size()); }

  /// c_k = b_1 + ... + b_k, with c_0 = 0.
  int c(int k) const {
    int total = 0;
    for (int i = 0; i < k; ++i) total += b[static_cast<std::size_t>(i)];
    return total;
  }
  int c_n() const { return c(n()); }

  /// Non-root vertex count m + c_n; with the root this is c_n + m + 1.
  int vertex_count() const { return m + c_n(); }

  /// Throws std::invalid_argument when a parameter is out of range.
  void validate() const;

  /// Hypothesis of the cycle non-left-orderability argument.
  bool meets_cycle_hypothesis() const {
    if (n() < 1) return false;
    if (m > 1) return true;
    return m == 1 && a.front() > 1 && a.back() > 1;
  }

  /// Compact "(m;a0,..,an;b1,..,bn)" form, also accepted by the grid parser.
  std::string to_string() const;

  bool operator==(const DecoratedCycleGraph&) const = default;
};

/// Inverse of to_string; whitespace is ignored. Throws std::invalid_argument.
DecoratedCycleGraph parse_cycle_params(std::string_view text);

}  // namespace tbraid
