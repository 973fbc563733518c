#pragma once

#include <Eigen/Core>

#include <cmath>
#include <limits>
#include <vector>

#include "polyfam/poly.hpp"

namespace polyfam {

// The single point at infinity of the projective line R u {inf}.
inline constexpr double point_at_infinity = std::numeric_limits<double>::infinity();

inline bool is_infinite_point(double r) { return std::isinf(r); }

// A real 2x2 matrix of determinant one acting on the projective line and on
// polynomials of a fixed ambient degree.
//
// Convention: act(m, p)(t) = (gamma*t + delta)^d * p((alpha*t + beta) /
// (gamma*t + delta)), the direct substitution formula, while act_point(m, r)
// = (alpha*r + beta)/(gamma*r + delta) is the forward point map. Roots of
// act(m, p) are therefore the act_point(inverse(m), .) images of the roots of
// p, and acts compose contravariantly: act(a, act(b, p)) = act(b*a, p).
// Matrix inversion is left to callers: inverse of (a, b, c, d) is
// (d, -b, -c, a).
struct MobiusMap {
  double alpha, beta, gamma, delta;

  static MobiusMap identity() { return {1.0, 0.0, 0.0, 1.0}; }

  double det() const { return alpha * delta - beta * gamma; }

  MobiusMap inverse() const { return {delta, -beta, -gamma, alpha}; }
};

// Projective evaluation of the fractional-linear map.
inline double act_point(const MobiusMap& m, double r) {
  if (is_infinite_point(r)) {
    if (m.gamma == 0.0) return point_at_infinity;
    return m.alpha / m.gamma;
  }
  double num = m.alpha * r + m.beta;
  double den = m.gamma * r + m.delta;
  if (den == 0.0) return point_at_infinity;
  return num / den;
}

// (gamma t + delta)^d p((alpha t + beta)/(gamma t + delta)) expanded in the
// ambient degree d of p: sum_k c_k (alpha t + beta)^k (gamma t + delta)^(d-k).
inline Polyd act(const MobiusMap& m, const Polyd& p) {
  const Index d = p.ambient_degree();
  // Power tables (alpha t + beta)^k and (gamma t + delta)^k for k = 0..d.
  std::vector<Polyd> up(size_t(d) + 1), low(size_t(d) + 1);
  up[0] = Polyd{1.0};
  low[0] = Polyd{1.0};
  Polyd lin_up{m.beta, m.alpha};
  Polyd lin_low{m.delta, m.gamma};
  for (Index k = 1; k <= d; ++k) {
    up[size_t(k)] = up[size_t(k - 1)] * lin_up;
    low[size_t(k)] = low[size_t(k - 1)] * lin_low;
  }
  Eigen::VectorXd out = Eigen::VectorXd::Zero(d + 1);
  for (Index k = 0; k <= d; ++k) {
    if (p.coeffs[k] == 0.0) continue;
    Polyd term = up[size_t(k)] * low[size_t(d - k)];
    out.head(term.coeffs.size()) += p.coeffs[k] * term.coeffs;
  }
  return Polyd(std::move(out));
}

// The orthogonal determinant-one map sending the finite point t0 to infinity:
// rows ((-t0, -1), (1, -t0)) / sqrt(1 + t0^2). The bottom-row entries are
// computed so that gamma * t0 + delta cancels exactly in floating point.
inline MobiusMap rotation_to_infinity(double t0) {
  double gamma = 1.0 / std::sqrt(1.0 + t0 * t0);
  double delta = -(gamma * t0);
  return {delta, -gamma, gamma, delta};
}

// SO2 rotation by angle theta, for randomized invariance checks.
inline MobiusMap so2_rotation(double theta) {
  double c = std::cos(theta), s = std::sin(theta);
  return {c, -s, s, c};
}

}  // namespace polyfam
