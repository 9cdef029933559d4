#include "tbraid/integer_matrix.hpp"

#include <stdexcept>
#include <utility>

namespace tbraid {

BigInt determinant(IntMatrix m) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw std::invalid_argument("determinant of a non-square matrix");
  if (n == 0) return 1;
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(m[k], m[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

namespace {

// Moves the smallest nonzero |entry| of the trailing block to (t, t).
bool bring_pivot(IntMatrix& m, std::size_t t, std::size_t cols) {
  const std::size_t rows = m.size();
  std::size_t bi = rows, bj = cols;
  for (std::size_t i = t; i < rows; ++i)
    for (std::size_t j = t; j < cols; ++j)
      if (m[i][j] != 0 && (bi == rows || abs(m[i][j]) < abs(m[bi][bj]))) {
        bi = i;
        bj = j;
      }
  if (bi == rows) return false;
  std::swap(m[t], m[bi]);
  for (auto& row : m) std::swap(row[t], row[bj]);
  return true;
}

}  // namespace

SmithForm smith_normal_form(IntMatrix m) {
  SmithForm out;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  for (const auto& row : m)
    if (row.size() != cols) throw std::invalid_argument("ragged matrix");

  std::size_t t = 0;
  while (t < rows && t < cols && bring_pivot(m, t, cols)) {
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m[i][t] == 0) continue;
        BigInt q = m[i][t] / m[t][t];
        for (std::size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
        if (m[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m[t][j] == 0) continue;
        BigInt q = m[t][j] / m[t][t];
        for (std::size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
        if (m[t][j] != 0) clean = false;
      }
      if (!clean) {
        bring_pivot(m, t, cols);
        continue;
      }
      // The pivot must divide the rest of the block.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (m[i][j] % m[t][t] != 0) {
            for (std::size_t jj = t; jj < cols; ++jj) m[t][jj] += m[i][jj];
            divides = false;
            break;
          }
      if (divides) break;
    }
    out.diagonal.push_back(abs(m[t][t]));
    ++t;
  }
  out.rank = t;
  return out;
}

}  // namespace tbraid
