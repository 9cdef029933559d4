#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace tbraid {

using BigInt = boost::multiprecision::cpp_int;
using IntMatrix = std::vector<std::vector<BigInt>>;

/// Fraction-free Gaussian elimination (Bareiss). The empty matrix has det 1.
BigInt determinant(IntMatrix m);

struct SmithForm {
  std::vector<BigInt> diagonal;  // nonzero invariant factors d1 | d2 | ...
  std::size_t rank = 0;
};

/// Invariant factors of an integer matrix by row/column reduction.
SmithForm smith_normal_form(IntMatrix m);

}  // namespace tbraid
