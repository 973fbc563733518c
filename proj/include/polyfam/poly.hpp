#pragma once

#include <Eigen/Core>

#include <cmath>
#include <initializer_list>
#include <utility>

#include "polyfam/errors.hpp"
#include "polyfam/tolerances.hpp"

namespace polyfam {

using Eigen::Index;

// A univariate real polynomial viewed as an element of the ambient space of
// polynomials of degree at most d. coeffs[i] multiplies t^i and the vector
// always has exactly d+1 entries; trailing zeros are meaningful (they encode
// roots at infinity). The zero polynomial is the all-zero vector.
template <typename Scalar>
struct Poly {
  using CoeffVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  CoeffVector coeffs;

  Poly() : coeffs(CoeffVector::Zero(1)) {}
  explicit Poly(CoeffVector c) : coeffs(std::move(c)) {
    if (coeffs.size() == 0) coeffs = CoeffVector::Zero(1);
  }
  Poly(std::initializer_list<Scalar> ascending) : coeffs(Index(ascending.size())) {
    Index i = 0;
    for (const Scalar& c : ascending) coeffs[i++] = c;
    if (coeffs.size() == 0) coeffs = CoeffVector::Zero(1);
  }

  static Poly zero(Index ambient_degree) {
    return Poly(CoeffVector::Zero(ambient_degree + 1));
  }

  Index ambient_degree() const { return coeffs.size() - 1; }

  bool is_identically_zero() const {
    for (Index i = 0; i < coeffs.size(); ++i)
      if (coeffs[i] != Scalar(0)) return false;
    return true;
  }

  // Same coefficients reinterpreted in a larger ambient space.
  Poly embedded(Index ambient_degree) const {
    CoeffVector c = CoeffVector::Zero(ambient_degree + 1);
    c.head(coeffs.size()) = coeffs;
    return Poly(std::move(c));
  }

  Poly operator-() const { return Poly(CoeffVector(-coeffs)); }
};

using Polyd = Poly<double>;

// Largest absolute coefficient; the scale against which tau_zero is applied.
// Invariant under global scaling of the polynomial by construction.
template <typename Scalar>
Scalar coeff_scale(const Poly<Scalar>& p) {
  using std::abs;
  Scalar s(0);
  for (Index i = 0; i < p.coeffs.size(); ++i) {
    Scalar a = abs(p.coeffs[i]);
    if (a > s) s = a;
  }
  return s;
}

template <typename Scalar>
bool is_zero(const Poly<Scalar>& p, const Tolerances& tol) {
  using std::abs;
  Scalar s = coeff_scale(p);
  if (s == Scalar(0)) return true;
  // Nonzero scale means some coefficient equals the scale, which by
  // definition exceeds tau_zero * scale.
  (void)tol;
  return false;
}

// Horner evaluation.
template <typename Scalar>
Scalar eval(const Poly<Scalar>& p, const Scalar& t) {
  Scalar acc(0);
  for (Index i = p.coeffs.size() - 1; i >= 0; --i) acc = acc * t + p.coeffs[i];
  return acc;
}

// Horner evaluation of p and its first derivative in one sweep.
template <typename Scalar>
std::pair<Scalar, Scalar> eval_with_derivative(const Poly<Scalar>& p, const Scalar& t) {
  Scalar v(0), dv(0);
  for (Index i = p.coeffs.size() - 1; i >= 0; --i) {
    dv = dv * t + v;
    v = v * t + p.coeffs[i];
  }
  return {v, dv};
}

// An upper bound on |p(t)| obtained by pushing absolute values through
// Horner; used to decide whether a computed value is significantly nonzero.
template <typename Scalar>
Scalar eval_magnitude_bound(const Poly<Scalar>& p, const Scalar& t) {
  using std::abs;
  Scalar at = abs(t);
  Scalar acc(0);
  for (Index i = p.coeffs.size() - 1; i >= 0; --i) acc = acc * at + abs(p.coeffs[i]);
  return acc;
}

// Formal derivative. The ambient degree drops by one (constants stay at
// ambient degree 0).
template <typename Scalar>
Poly<Scalar> derivative(const Poly<Scalar>& p) {
  using CoeffVector = typename Poly<Scalar>::CoeffVector;
  if (p.coeffs.size() <= 1) return Poly<Scalar>(CoeffVector::Zero(1));
  CoeffVector d(p.coeffs.size() - 1);
  for (Index i = 1; i < p.coeffs.size(); ++i) d[i - 1] = Scalar(i) * p.coeffs[i];
  return Poly<Scalar>(std::move(d));
}

template <typename Scalar>
Poly<Scalar> nth_derivative(Poly<Scalar> p, int n) {
  for (int i = 0; i < n; ++i) p = derivative(p);
  return p;
}

template <typename Scalar>
Poly<Scalar> operator+(const Poly<Scalar>& a, const Poly<Scalar>& b) {
  if (a.ambient_degree() != b.ambient_degree())
    throw DimensionError("ambient degree mismatch in polynomial addition");
  return Poly<Scalar>(typename Poly<Scalar>::CoeffVector(a.coeffs + b.coeffs));
}

template <typename Scalar>
Poly<Scalar> operator-(const Poly<Scalar>& a, const Poly<Scalar>& b) {
  if (a.ambient_degree() != b.ambient_degree())
    throw DimensionError("ambient degree mismatch in polynomial subtraction");
  return Poly<Scalar>(typename Poly<Scalar>::CoeffVector(a.coeffs - b.coeffs));
}

template <typename Scalar>
Poly<Scalar> operator*(const Scalar& c, const Poly<Scalar>& p) {
  return Poly<Scalar>(typename Poly<Scalar>::CoeffVector(c * p.coeffs));
}

// Convolution product; ambient degrees add.
template <typename Scalar>
Poly<Scalar> operator*(const Poly<Scalar>& a, const Poly<Scalar>& b) {
  using CoeffVector = typename Poly<Scalar>::CoeffVector;
  CoeffVector c = CoeffVector::Zero(a.coeffs.size() + b.coeffs.size() - 1);
  for (Index i = 0; i < a.coeffs.size(); ++i)
    for (Index j = 0; j < b.coeffs.size(); ++j) c[i + j] += a.coeffs[i] * b.coeffs[j];
  return Poly<Scalar>(std::move(c));
}

// Monic polynomial with the given roots (with multiplicity).
template <typename Scalar, typename Container>
Poly<Scalar> poly_from_roots(const Container& roots) {
  Poly<Scalar> p{Scalar(1)};
  for (const auto& r : roots) p = p * Poly<Scalar>{Scalar(-r), Scalar(1)};
  return p;
}

// Synthetic division of p by (t - r), discarding the remainder; the ambient
// degree drops by one. Standard stable deflation for a (near-)root r.
template <typename Scalar>
Poly<Scalar> deflate(const Poly<Scalar>& p, const Scalar& r) {
  using CoeffVector = typename Poly<Scalar>::CoeffVector;
  const Index n = p.coeffs.size();
  if (n <= 1) return Poly<Scalar>(CoeffVector::Zero(1));
  CoeffVector q = CoeffVector::Zero(n - 1);
  Scalar carry = p.coeffs[n - 1];
  for (Index i = n - 2; i >= 0; --i) {
    q[i] = carry;
    carry = p.coeffs[i] + r * carry;
  }
  return Poly<Scalar>(std::move(q));
}

// Effective degree with respect to the relative coefficient threshold.
struct EffectiveDegree {
  bool is_zero = false;       // distinguished IsZero marker
  Index degree = 0;           // highest significant power
  Index roots_at_infinity = 0;  // ambient_degree - degree
};

template <typename Scalar>
EffectiveDegree effective_degree(const Poly<Scalar>& p, const Tolerances& tol) {
  using std::abs;
  Scalar scale = coeff_scale(p);
  EffectiveDegree out;
  if (scale == Scalar(0)) {
    out.is_zero = true;
    out.roots_at_infinity = p.ambient_degree();
    return out;
  }
  Scalar cut = Scalar(tol.tau_zero) * scale;
  Index deg = 0;
  for (Index i = 0; i < p.coeffs.size(); ++i)
    if (abs(p.coeffs[i]) > cut) deg = i;
  out.degree = deg;
  out.roots_at_infinity = p.ambient_degree() - deg;
  return out;
}

// Leading coefficient at the effective degree.
template <typename Scalar>
Scalar effective_leading_coeff(const Poly<Scalar>& p, const Tolerances& tol) {
  EffectiveDegree ed = effective_degree(p, tol);
  if (ed.is_zero) return Scalar(0);
  return p.coeffs[ed.degree];
}

// Coefficients restricted to indices 0..effective degree.
template <typename Scalar>
Poly<Scalar> trim_to_effective(const Poly<Scalar>& p, const Tolerances& tol) {
  EffectiveDegree ed = effective_degree(p, tol);
  if (ed.is_zero) return Poly<Scalar>::zero(0);
  return Poly<Scalar>(typename Poly<Scalar>::CoeffVector(p.coeffs.head(ed.degree + 1)));
}

}  // namespace polyfam
