#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <Eigen/Core>

#include <optional>
#include <vector>

namespace polyfam {

using Rational = boost::multiprecision::cpp_rational;

namespace detail {

// Exact Gaussian elimination on an augmented system A x = b over the
// rationals. Returns the unique solution when it exists, nullopt when the
// system is inconsistent or underdetermined. Small dense systems only.
inline std::optional<std::vector<Rational>> solve_exact_unique(
    std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const size_t rows = a.size();
  const size_t cols = rows ? a[0].size() : 0;
  size_t rank = 0;
  std::vector<size_t> pivot_col;
  for (size_t c = 0; c < cols && rank < rows; ++c) {
    size_t piv = rank;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    std::swap(b[piv], b[rank]);
    Rational inv = a[rank][c];
    for (size_t j = c; j < cols; ++j) a[rank][j] /= inv;
    b[rank] /= inv;
    for (size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][c] == 0) continue;
      Rational f = a[r][c];
      for (size_t j = c; j < cols; ++j) a[r][j] -= f * a[rank][j];
      b[r] -= f * b[rank];
    }
    pivot_col.push_back(c);
    ++rank;
  }
  for (size_t r = rank; r < rows; ++r)
    if (b[r] != 0) return std::nullopt;  // inconsistent
  if (rank < cols) return std::nullopt;  // underdetermined
  std::vector<Rational> x(cols, Rational(0));
  for (size_t r = 0; r < rank; ++r) x[pivot_col[r]] = b[r];
  return x;
}

}  // namespace detail

// Exact decision of whether some convex combination of the coefficient
// columns is the zero vector. Enumerates supports: a nonempty solution
// polytope has a vertex, and every vertex is the unique solution of the
// system restricted to some support with independent columns, so support
// enumeration is complete. Intended for small families (n <= 12 or so).
inline std::optional<Eigen::VectorXd> exact_zero_convex_combination(
    const Eigen::MatrixXd& coeff_columns) {
  const Eigen::Index rows = coeff_columns.rows();
  const Eigen::Index n = coeff_columns.cols();
  std::vector<std::vector<Rational>> cols(static_cast<size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    cols[size_t(j)].resize(size_t(rows));
    for (Eigen::Index i = 0; i < rows; ++i) cols[size_t(j)][size_t(i)] = Rational(coeff_columns(i, j));
  }
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<size_t> support;
    for (Eigen::Index j = 0; j < n; ++j)
      if (mask & (1u << j)) support.push_back(size_t(j));
    // System: sum_j c_j * col_j = 0 and sum_j c_j = 1, restricted to support.
    std::vector<std::vector<Rational>> a(size_t(rows) + 1,
                                         std::vector<Rational>(support.size(), Rational(0)));
    std::vector<Rational> b(size_t(rows) + 1, Rational(0));
    for (size_t sj = 0; sj < support.size(); ++sj) {
      for (Eigen::Index i = 0; i < rows; ++i) a[size_t(i)][sj] = cols[support[sj]][size_t(i)];
      a[size_t(rows)][sj] = 1;
    }
    b[size_t(rows)] = 1;
    auto sol = detail::solve_exact_unique(std::move(a), std::move(b));
    if (!sol) continue;
    bool nonneg = true;
    for (const Rational& v : *sol)
      if (v < 0) {
        nonneg = false;
        break;
      }
    if (!nonneg) continue;
    Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
    for (size_t sj = 0; sj < support.size(); ++sj)
      w[Eigen::Index(support[sj])] = (*sol)[sj].convert_to<double>();
    return w;
  }
  return std::nullopt;
}

}  // namespace polyfam
