#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "polyfam/exact.hpp"
#include "polyfam/family.hpp"

namespace polyfam {

// Euclidean projection onto the standard simplex { w >= 0, sum w = 1 }.
inline Eigen::VectorXd project_to_simplex(const Eigen::VectorXd& v) {
  const Index n = v.size();
  std::vector<double> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cumulative = 0.0, theta = 0.0;
  int rho = 0;
  for (Index j = 0; j < n; ++j) {
    cumulative += u[size_t(j)];
    double candidate = (cumulative - 1.0) / double(j + 1);
    if (u[size_t(j)] - candidate > 0.0) {
      rho = int(j + 1);
      theta = candidate;
    }
  }
  (void)rho;
  return (v.array() - theta).max(0.0).matrix();
}

struct ZeroComboResult {
  std::optional<Eigen::VectorXd> weights;  // engaged iff a zero combination was accepted
  double residual = 0.0;  // min over the simplex of ||normalized combination||_2
  bool exact = false;     // decision came from the exact rational path

  bool proper() const { return !weights.has_value(); }
};

namespace detail {

// Minimum of ||F c||_2 over { c >= 0, sum c = 1 } by exhaustive face
// enumeration: on each support the equality-constrained least-squares
// problem is solved through a nullspace parametrization, and feasible
// stationary points cover every vertex and face minimum.
inline std::pair<double, Eigen::VectorXd> simplex_least_squares_faces(const Eigen::MatrixXd& f) {
  const Index n = f.cols();
  double best = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_c = Eigen::VectorXd::Zero(n);
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<Index> support;
    for (Index j = 0; j < n; ++j)
      if (mask & (1u << j)) support.push_back(j);
    const Index k = Index(support.size());
    Eigen::MatrixXd fs(f.rows(), k);
    for (Index j = 0; j < k; ++j) fs.col(j) = f.col(support[size_t(j)]);
    Eigen::VectorXd c;
    if (k == 1) {
      c = Eigen::VectorXd::Ones(1);
    } else {
      // c = c0 + N z with c0 the barycenter and N a basis of { sum = 0 }.
      Eigen::VectorXd c0 = Eigen::VectorXd::Constant(k, 1.0 / double(k));
      Eigen::MatrixXd basis(k, k - 1);
      basis.setZero();
      for (Index j = 0; j < k - 1; ++j) {
        basis(j, j) = 1.0;
        basis(k - 1, j) = -1.0;
      }
      Eigen::MatrixXd a = fs * basis;
      Eigen::VectorXd b = -fs * c0;
      Eigen::VectorXd z = a.completeOrthogonalDecomposition().solve(b);
      c = c0 + basis * z;
    }
    if ((c.array() < -1e-12).any()) continue;
    c = c.cwiseMax(0.0);
    double s = c.sum();
    if (s <= 0.0) continue;
    c /= s;
    double r = (fs * c).norm();
    if (r < best) {
      best = r;
      best_c = Eigen::VectorXd::Zero(n);
      for (Index j = 0; j < k; ++j) best_c[support[size_t(j)]] = c[j];
    }
  }
  return {best, best_c};
}

// Projected-gradient fallback for families too large to enumerate faces.
inline std::pair<double, Eigen::VectorXd> simplex_least_squares_pg(const Eigen::MatrixXd& f) {
  const Index n = f.cols();
  Eigen::MatrixXd q = f.transpose() * f;
  double lipschitz = 2.0 * q.operatorNorm();
  double step = lipschitz > 0.0 ? 1.0 / lipschitz : 1.0;
  double best = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_c = Eigen::VectorXd::Constant(n, 1.0 / double(n));
  std::vector<Eigen::VectorXd> starts;
  starts.push_back(Eigen::VectorXd::Constant(n, 1.0 / double(n)));
  for (Index j = 0; j < n; ++j) starts.push_back(Eigen::VectorXd::Unit(n, j));
  for (auto c : starts) {
    for (int it = 0; it < 2000; ++it) {
      Eigen::VectorXd next = project_to_simplex(c - step * 2.0 * (q * c));
      if ((next - c).lpNorm<Eigen::Infinity>() < 1e-16) {
        c = next;
        break;
      }
      c = next;
    }
    double r = (f * c).norm();
    if (r < best) {
      best = r;
      best_c = c;
    }
  }
  return {best, best_c};
}

}  // namespace detail

// Searches the weight simplex for a convex combination that is the zero
// polynomial. Members are normalized to unit max coefficient first (positive
// scaling preserves properness and makes the residual threshold
// scale-invariant); returned weights apply to the original members. With
// tol.exact set, existence is decided in exact rational arithmetic on the
// given coefficients and the numeric residual is kept only as a statistic.
inline ZeroComboResult zero_convex_combination(const Familyd& family, const Tolerances& tol) {
  const Index n = family.size();
  ZeroComboResult out;

  for (Index i = 0; i < n; ++i) {
    if (family.members[size_t(i)].is_identically_zero()) {
      // The zero member is itself a convex combination equal to zero.
      out.weights = Eigen::VectorXd::Unit(n, i);
      out.residual = 0.0;
      out.exact = true;
      return out;
    }
  }

  Eigen::MatrixXd f = family.coeff_matrix();
  Eigen::VectorXd scales(n);
  Eigen::MatrixXd f_hat = f;
  for (Index j = 0; j < n; ++j) {
    scales[j] = f.col(j).cwiseAbs().maxCoeff();
    f_hat.col(j) /= scales[j];
  }

  auto [residual, c_hat] = (n <= 16) ? detail::simplex_least_squares_faces(f_hat)
                                     : detail::simplex_least_squares_pg(f_hat);
  out.residual = residual;

  bool accept;
  Eigen::VectorXd weights_hat = c_hat;
  if (tol.exact && n <= 16) {
    auto exact_w = exact_zero_convex_combination(f);
    out.exact = true;
    accept = exact_w.has_value();
    if (accept) {
      out.weights = *exact_w;  // already weights on the original members
      return out;
    }
    return out;
  }
  accept = residual <= tol.tau_proper;
  if (accept) {
    // Undo the per-member normalization: c_hat weighs normalized members.
    Eigen::VectorXd w = weights_hat.array() / scales.array();
    out.weights = w / w.sum();
  }
  return out;
}

}  // namespace polyfam
