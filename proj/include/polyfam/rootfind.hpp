#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <vector>

#include "polyfam/poly.hpp"

namespace polyfam {

// Real roots with multiplicities, sorted descending, plus the count of roots
// at infinity (ambient degree deficiency).
struct RootSpectrum {
  struct Entry {
    double value;
    int multiplicity;
  };
  std::vector<Entry> roots;   // strictly descending in value
  Index roots_at_infinity = 0;
  double min_gap = std::numeric_limits<double>::infinity();

  Index total_finite_multiplicity() const {
    Index m = 0;
    for (const Entry& e : roots) m += e.multiplicity;
    return m;
  }

  // Roots repeated by multiplicity, descending: lambda_1 >= lambda_2 >= ...
  std::vector<double> flattened() const {
    std::vector<double> out;
    out.reserve(static_cast<size_t>(total_finite_multiplicity()));
    for (const Entry& e : roots)
      for (int i = 0; i < e.multiplicity; ++i) out.push_back(e.value);
    return out;
  }

  // Max root modulus clamped to >= 1; the scale for relative root tolerances.
  double spread() const {
    double s = 1.0;
    for (const Entry& e : roots) s = std::max(s, std::abs(e.value));
    return s;
  }
};

struct RealRootsOutcome {
  std::optional<RootSpectrum> spectrum;  // engaged iff real-rooted within tolerance
  double margin = 0.0;                   // largest |Im| among root clusters / spread

  bool real_rooted() const { return spectrum.has_value(); }
};

struct RealRootedness {
  enum class Verdict { RealRooted, NotRealRooted, Borderline };
  Verdict verdict;
  double margin;
};

namespace detail {

using Complexd = std::complex<double>;

// Parlett-Reinsch balancing (diagonal similarity scaling by powers of two),
// applied before the eigensolve; companion matrices of badly scaled
// polynomials are otherwise poorly conditioned.
inline void balance_companion(Eigen::MatrixXd& m) {
  const Index n = m.rows();
  const double gamma = 0.9;
  bool changed = true;
  while (changed) {
    changed = false;
    for (Index i = 0; i < n; ++i) {
      double row = 0.0, col = 0.0;
      for (Index j = 0; j < n; ++j) {
        if (j == i) continue;
        row += std::abs(m(i, j));
        col += std::abs(m(j, i));
      }
      if (row == 0.0 || col == 0.0) continue;
      double f = 1.0;
      double s = row + col;
      while (col < row / 2.0) {
        f *= 2.0;
        col *= 4.0;
      }
      while (col >= row * 2.0) {
        f /= 2.0;
        col /= 4.0;
      }
      if (f != 1.0 && (row / f + col * f) < gamma * s) {
        m.row(i) /= f;
        m.col(i) *= f;
        changed = true;
      }
    }
  }
}

inline Complexd eval_complex(const Eigen::VectorXd& c, Complexd z) {
  Complexd acc(0.0, 0.0);
  for (Index i = c.size() - 1; i >= 0; --i) acc = acc * z + c[i];
  return acc;
}

inline Complexd eval_complex_derivative(const Eigen::VectorXd& c, Complexd z) {
  Complexd acc(0.0, 0.0);
  for (Index i = c.size() - 1; i >= 1; --i) acc = acc * z + double(i) * c[i];
  return acc;
}

// A few Newton steps in complex arithmetic; keep the iterate only while the
// residual decreases.
inline Complexd polish_complex(const Eigen::VectorXd& c, Complexd z) {
  double best = std::abs(eval_complex(c, z));
  for (int it = 0; it < 4; ++it) {
    Complexd d = eval_complex_derivative(c, z);
    if (std::abs(d) == 0.0) break;
    Complexd step = eval_complex(c, z) / d;
    Complexd zn = z - step;
    double r = std::abs(eval_complex(c, zn));
    if (r >= best) break;
    best = r;
    z = zn;
  }
  return z;
}

// Newton on the (m-1)-th derivative, where an m-fold root of p is simple.
inline double polish_multiple_root(const Polyd& p, double r, int multiplicity, double radius) {
  if (multiplicity == 1) {
    double z = r;
    for (int it = 0; it < 8; ++it) {
      auto [v, dv] = eval_with_derivative(p, z);
      if (dv == 0.0) break;
      double step = v / dv;
      if (!std::isfinite(step)) break;
      z -= step;
      if (std::abs(z - r) > 2.0 * radius) return r;
      if (std::abs(step) < 1e-15 * (1.0 + std::abs(z))) break;
    }
    return z;
  }
  Polyd q = nth_derivative(p, multiplicity - 1);
  double z = r;
  for (int it = 0; it < 8; ++it) {
    auto [v, dv] = eval_with_derivative(q, z);
    if (dv == 0.0) break;
    double step = v / dv;
    if (!std::isfinite(step)) break;
    z -= step;
    if (std::abs(z - r) > 2.0 * radius) return r;  // ran away; keep the centroid
    if (std::abs(step) < 1e-15 * (1.0 + std::abs(z))) break;
  }
  return z;
}

struct Cluster {
  Complexd centroid;
  int size;
};

// Radius within which a merged cluster of m eigenvalues is accepted as one
// root of multiplicity m. Eigenvalue scatter of an m-fold root grows like
// eps^(1/m), so the radius must escalate with the multiplicity hypothesis.
inline double cluster_radius(int m, double spread, double tau_root) {
  double eps_floor = std::pow(1e3 * std::numeric_limits<double>::epsilon(), 1.0 / std::max(m, 1));
  return (1.0 + spread) * std::max(tau_root, eps_floor);
}

// Taylor coefficients of p about x (b_j = p^(j)(x)/j!) by repeated synthetic
// division; one pass, no per-derivative allocations.
inline std::vector<double> taylor_coefficients(const Polyd& p, double x) {
  std::vector<double> b(p.coeffs.data(), p.coeffs.data() + p.coeffs.size());
  const Index d = Index(b.size()) - 1;
  for (Index j = 0; j < d; ++j)
    for (Index i = d - 1; i >= j; --i) b[size_t(i)] += x * b[size_t(i) + 1];
  return b;
}

// Attainable accuracy of an m-fold root near x from the backward-error bound:
// coefficients are only known to eps * B(x), so the root cluster is only
// located to (eps * B(x) / |p^(m)(x)/m!|)^(1/m).
inline double attainable_radius_from_taylor(const std::vector<double>& taylor, double bound,
                                            int m) {
  double tm = std::abs(taylor[size_t(m)]);
  if (!(tm > 0.0)) return std::numeric_limits<double>::infinity();
  double eps = std::numeric_limits<double>::epsilon();
  return std::pow(eps * bound / tm, 1.0 / double(m));
}

inline double attainable_radius(const Polyd& p, double x, int m) {
  return attainable_radius_from_taylor(taylor_coefficients(p, x), eval_magnitude_bound(p, x), m);
}

// Taylor-coefficient test: near a genuine m-fold root r, the first m Taylor
// terms of p at r are dominated by the m-th at the cluster scale rho. Gates
// escalated-radius merges so a genuinely complex pair sitting near a real
// root is not swallowed into a fake multiple root.
inline bool taylor_multiplicity_consistent_from(const std::vector<double>& taylor, int m,
                                                double rho) {
  const Index deg = Index(taylor.size()) - 1;
  if (m > deg) return false;
  double top = 0.0, power = std::pow(rho, double(m));
  for (Index j = m; j <= deg; ++j) {
    top = std::max(top, std::abs(taylor[size_t(j)]) * power);
    power *= rho;
  }
  if (top == 0.0) return false;
  // The centroid of a genuine m-cluster sits O(scatter) off the true root, so
  // the (m-1)-th term legitimately reaches ~m/10 of the top at rho ~ 10x the
  // scatter; 0.5 still rejects complex pairs above the attainable accuracy.
  power = 1.0;
  for (Index j = 0; j < m; ++j) {
    if (std::abs(taylor[size_t(j)]) * power > 0.5 * top) return false;
    power *= rho;
  }
  return true;
}

inline bool taylor_multiplicity_consistent(const Polyd& p, double r, int m, double rho) {
  return taylor_multiplicity_consistent_from(taylor_coefficients(p, r), m, rho);
}

// Agglomerative clustering of the eigenvalues in the complex plane. Merges
// within the base radius are unconditional (tolerance semantics). Beyond it,
// a merge claiming multiplicity m must stay within the attainable accuracy of
// an m-fold root at that location and pass the Taylor dominance gate, so a
// genuinely complex pair sitting near the real axis is not swallowed into a
// fake multiple root while honest multiple-root scatter is.
inline std::vector<Cluster> cluster_eigenvalues(const Polyd& trimmed,
                                                std::vector<Complexd> pts,
                                                double spread, double tau_root) {
  std::vector<Cluster> clusters;
  clusters.reserve(pts.size());
  for (Complexd z : pts) clusters.push_back({z, 1});
  const double base = (1.0 + spread) * tau_root;
  // Beyond a few percent of the spread, points are geometrically separate:
  // a multiple root that cannot be located better than that is ambiguous at
  // working precision no matter the algorithm.
  const double cap = std::max(base, 0.02 * (1.0 + spread));
  {
    double min_dist = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < pts.size(); ++i)
      for (size_t j = i + 1; j < pts.size(); ++j)
        min_dist = std::min(min_dist, std::abs(pts[i] - pts[j]));
    if (min_dist > cap) return clusters;  // nothing can merge
  }

  std::vector<std::pair<Complexd, Complexd>> forbidden;
  auto is_forbidden = [&](Complexd a, Complexd b) {
    for (auto& [fa, fb] : forbidden)
      if ((fa == a && fb == b) || (fa == b && fb == a)) return true;
    return false;
  };
  while (clusters.size() > 1) {
    double best_dist = std::numeric_limits<double>::infinity();
    size_t bi = 0, bj = 0;
    for (size_t i = 0; i < clusters.size(); ++i)
      for (size_t j = i + 1; j < clusters.size(); ++j) {
        double dist = std::abs(clusters[i].centroid - clusters[j].centroid);
        if (dist > cap) continue;  // outside any merge radius
        if (is_forbidden(clusters[i].centroid, clusters[j].centroid)) continue;
        if (dist < best_dist) {
          best_dist = dist;
          bi = i;
          bj = j;
        }
      }
    if (!std::isfinite(best_dist)) break;
    int m = clusters[bi].size + clusters[bj].size;
    Complexd merged_centroid =
        (clusters[bi].centroid * double(clusters[bi].size) +
         clusters[bj].centroid * double(clusters[bj].size)) /
        double(m);
    bool accept;
    if (best_dist <= base) {
      accept = true;
    } else {
      auto taylor = taylor_coefficients(trimmed, merged_centroid.real());
      double bound = eval_magnitude_bound(trimmed, merged_centroid.real());
      double rho = 10.0 * attainable_radius_from_taylor(taylor, bound, m);
      accept = best_dist <= rho &&
               taylor_multiplicity_consistent_from(taylor, m, std::max(rho, base));
    }
    if (!accept) {
      forbidden.emplace_back(clusters[bi].centroid, clusters[bj].centroid);
      continue;
    }
    clusters[bi] = {merged_centroid, m};
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bj));
    forbidden.clear();  // centroids moved; stale rejections no longer apply
  }
  return clusters;
}

// Roots of the quadratic c0 + c1 t + c2 t^2 (c2 != 0) in the numerically
// stable form; returns the pair and the discriminant.
inline std::pair<Complexd, Complexd> quadratic_roots(double c0, double c1, double c2) {
  double disc = c1 * c1 - 4.0 * c2 * c0;
  if (disc >= 0.0) {
    double sq = std::sqrt(disc);
    double q = -0.5 * (c1 + (c1 >= 0.0 ? sq : -sq));
    double r1 = (c2 != 0.0) ? q / c2 : 0.0;
    double r2 = (q != 0.0) ? c0 / q : -c1 / (2.0 * c2);
    return {Complexd(r1, 0.0), Complexd(r2, 0.0)};
  }
  double re = -c1 / (2.0 * c2);
  double im = std::sqrt(-disc) / (2.0 * std::abs(c2));
  return {Complexd(re, im), Complexd(re, -im)};
}

inline std::vector<Complexd> companion_eigenvalues(const Eigen::VectorXd& monic_low) {
  // monic_low holds c_0..c_{n-1} of t^n + c_{n-1} t^{n-1} + ... + c_0.
  const Index n = monic_low.size();
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (Index i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  companion.col(n - 1) = -monic_low;
  balance_companion(companion);
  Eigen::EigenSolver<Eigen::MatrixXd> es(companion, /*computeEigenvectors=*/false);
  std::vector<Complexd> out(static_cast<size_t>(n));
  for (Index i = 0; i < n; ++i) out[size_t(i)] = es.eigenvalues()[i];
  return out;
}

// Aberth-Ehrlich simultaneous iteration. Much cheaper than the eigensolve at
// the degrees this library sees; falls back to the companion matrix when a
// sweep budget is exhausted without convergence.
inline bool aberth_roots(const Eigen::VectorXd& monic_low, std::vector<Complexd>& z) {
  const Index n = monic_low.size();
  // Fujiwara bound on the root moduli for the starting circle.
  double radius = 0.0;
  for (Index i = 0; i < n; ++i) {
    double c = std::abs(monic_low[n - 1 - i]);
    if (i == n - 1) c *= 0.5;
    radius = std::max(radius, std::pow(c, 1.0 / double(i + 1)));
  }
  radius = 2.0 * radius + 1e-3;
  z.resize(size_t(n));
  for (Index k = 0; k < n; ++k) {
    double angle = 2.0 * M_PI * double(k) / double(n) + 0.42;
    z[size_t(k)] = radius * Complexd(std::cos(angle), std::sin(angle));
  }
  // Raw real/imag arithmetic: the library complex operators go through
  // NaN-correct libcalls that dominate the sweep cost at these degrees.
  std::vector<double> zr(static_cast<size_t>(n)), zi(static_cast<size_t>(n));
  for (Index k = 0; k < n; ++k) {
    zr[size_t(k)] = z[size_t(k)].real();
    zi[size_t(k)] = z[size_t(k)].imag();
  }
  std::vector<char> frozen(static_cast<size_t>(n), 0);
  const double stop_eps = 4.0 * std::numeric_limits<double>::epsilon();
  bool converged = false;
  for (int sweep = 0; sweep < 60 && !converged; ++sweep) {
    double worst = 0.0;
    for (Index k = 0; k < n; ++k) {
      if (frozen[size_t(k)]) continue;
      double xr = zr[size_t(k)], xi = zi[size_t(k)];
      double az = std::sqrt(xr * xr + xi * xi);
      double pr = 1.0, pi = 0.0, dr = 0.0, di = 0.0, babs = 1.0;
      for (Index i = n - 1; i >= 0; --i) {
        double tr = dr * xr - di * xi + pr;
        di = dr * xi + di * xr + pi;
        dr = tr;
        tr = pr * xr - pi * xi + monic_low[i];
        pi = pr * xi + pi * xr;
        pr = tr;
        babs = babs * az + std::abs(monic_low[i]);
      }
      if (pr == 0.0 && pi == 0.0) continue;
      // Adams-style stop: the residual is at the rounding floor of its own
      // evaluation, so the iterate cannot improve.
      if (pr * pr + pi * pi <= stop_eps * stop_eps * babs * babs) {
        frozen[size_t(k)] = 1;
        continue;
      }
      double dn = dr * dr + di * di;
      if (dn == 0.0) {
        dr = 1e-30;
        dn = dr * dr;
      }
      double wr = (pr * dr + pi * di) / dn, wi = (pi * dr - pr * di) / dn;
      double sr = 0.0, si = 0.0;
      for (Index j = 0; j < n; ++j) {
        if (j == k) continue;
        double er = xr - zr[size_t(j)], ei = xi - zi[size_t(j)];
        double en = er * er + ei * ei;
        if (en == 0.0) {
          er = 1e-12;
          en = er * er;
        }
        sr += er / en;
        si += -ei / en;
      }
      double qr = 1.0 - (wr * sr - wi * si), qi = -(wr * si + wi * sr);
      double qn = qr * qr + qi * qi;
      double stepr, stepi;
      if (qn == 0.0) {
        stepr = wr;
        stepi = wi;
      } else {
        stepr = (wr * qr + wi * qi) / qn;
        stepi = (wi * qr - wr * qi) / qn;
      }
      xr -= stepr;
      xi -= stepi;
      zr[size_t(k)] = xr;
      zi[size_t(k)] = xi;
      double rel = std::sqrt(stepr * stepr + stepi * stepi) /
                   (1.0 + std::sqrt(xr * xr + xi * xi));
      if (rel < 1e-12) frozen[size_t(k)] = 1;
      worst = std::max(worst, rel);
    }
    if (worst < 1e-12) converged = true;
    if (!converged && sweep > 0 && sweep % 8 == 0) {
      // Unfreeze periodically: a frozen point can drift out of date as its
      // neighbors keep moving.
      bool any_active = false;
      for (Index k = 0; k < n; ++k)
        if (!frozen[size_t(k)]) any_active = true;
      if (!any_active) converged = true;
      std::fill(frozen.begin(), frozen.end(), 0);
    }
  }
  if (!converged) return false;
  for (Index k = 0; k < n; ++k) z[size_t(k)] = Complexd(zr[size_t(k)], zi[size_t(k)]);
  return true;
}

}  // namespace detail

// All complex roots of the effective-degree part of p, companion-matrix
// eigenvalues polished by Newton. Throws ZeroPolynomialError on the zero
// polynomial. Tolerance enters only through the effective-degree trim.
inline std::vector<std::complex<double>> complex_roots(const Polyd& p, const Tolerances& tol) {
  if (p.is_identically_zero()) throw ZeroPolynomialError();
  Polyd trimmed = trim_to_effective(p, tol);
  const Index deg = trimmed.ambient_degree();
  if (deg == 0) return {};
  if (deg == 1) return {std::complex<double>(-trimmed.coeffs[0] / trimmed.coeffs[1], 0.0)};
  if (deg == 2) {
    auto [r1, r2] = detail::quadratic_roots(trimmed.coeffs[0], trimmed.coeffs[1], trimmed.coeffs[2]);
    return {r1, r2};
  }
  Eigen::VectorXd monic_low = trimmed.coeffs.head(deg) / trimmed.coeffs[deg];
  std::vector<std::complex<double>> roots;
  if (detail::aberth_roots(monic_low, roots)) return roots;  // converged to its floor
  roots = detail::companion_eigenvalues(monic_low);
  for (auto& z : roots) z = detail::polish_complex(trimmed.coeffs, z);
  return roots;
}

// Real roots with multiplicities. Returns the spectrum when every root
// cluster has a near-real centroid, otherwise the offending margin.
inline RealRootsOutcome real_roots(const Polyd& p, const Tolerances& tol) {
  if (p.is_identically_zero()) throw ZeroPolynomialError();
  EffectiveDegree ed = effective_degree(p, tol);
  RealRootsOutcome out;
  if (ed.degree == 0) {
    RootSpectrum s;
    s.roots_at_infinity = ed.roots_at_infinity;
    out.spectrum = std::move(s);
    return out;
  }

  Polyd trimmed = trim_to_effective(p, tol);
  auto pts = complex_roots(p, tol);

  double spread = 1.0;
  for (auto z : pts) spread = std::max(spread, std::abs(z));

  auto clusters = detail::cluster_eigenvalues(trimmed, pts, spread, tol.tau_root);

  double margin = 0.0;
  for (const auto& c : clusters) margin = std::max(margin, std::abs(c.centroid.imag()) / spread);
  out.margin = margin;
  if (margin > tol.tau_root) return out;

  // Polish each cluster on the real axis and rebuild, merging any clusters
  // whose polished representatives collide.
  std::vector<std::pair<double, int>> polished;
  polished.reserve(clusters.size());
  for (const auto& c : clusters) {
    double rho = detail::cluster_radius(c.size, spread, tol.tau_root);
    double r = detail::polish_multiple_root(trimmed, c.centroid.real(), c.size, rho);
    polished.emplace_back(r, c.size);
  }
  std::sort(polished.begin(), polished.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  RootSpectrum spec;
  spec.roots_at_infinity = ed.roots_at_infinity;
  const double merge_radius = detail::cluster_radius(2, spread, tol.tau_root);
  for (const auto& [r, m] : polished) {
    if (!spec.roots.empty() && spec.roots.back().value - r <= merge_radius) {
      // Weighted merge keeps the centroid of the combined cluster.
      auto& last = spec.roots.back();
      last.value = (last.value * last.multiplicity + r * m) / double(last.multiplicity + m);
      last.multiplicity += m;
    } else {
      spec.roots.push_back({r, m});
    }
  }
  for (size_t i = 1; i < spec.roots.size(); ++i)
    spec.min_gap = std::min(spec.min_gap, spec.roots[i - 1].value - spec.roots[i].value);
  out.spectrum = std::move(spec);
  return out;
}

namespace detail {

// Sturm-sequence backend: an independent real-rootedness check used to
// arbitrate disputed margins. The chain is the Euclidean remainder sequence
// of (p, p'), every element normalized to unit max coefficient, with a
// running first-order noise bound per element. A remainder below its own
// noise floor means the chain has reached the gcd.
inline std::vector<Eigen::VectorXd> sturm_chain(const Polyd& p, const Tolerances& tol) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  auto trim = [&](Eigen::VectorXd v) {
    double scale = v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
    Index deg = -1;
    for (Index i = 0; i < v.size(); ++i)
      if (std::abs(v[i]) > tol.tau_zero * scale) deg = i;
    if (deg < 0) return Eigen::VectorXd();
    return Eigen::VectorXd(v.head(deg + 1));
  };
  std::vector<Eigen::VectorXd> chain;
  Eigen::VectorXd a = trim(trim_to_effective(p, tol).coeffs);
  if (a.size() == 0) return chain;
  a /= a.cwiseAbs().maxCoeff();
  chain.push_back(a);
  Eigen::VectorXd b = trim(derivative(Polyd(Eigen::VectorXd(chain[0]))).coeffs);
  double unc_u = eps, unc_v = eps;  // absolute noise on the unit-scaled elements
  while (b.size() > 0) {
    b /= b.cwiseAbs().maxCoeff();
    chain.push_back(b);
    const Eigen::VectorXd& u = chain[chain.size() - 2];
    const Eigen::VectorXd& v = chain.back();
    if (v.size() == 1) break;  // nonzero constant ends the chain
    // rem = u mod v, then negate.
    Eigen::VectorXd rem = u;
    double quotient_mass = 0.0;  // sum of |q| over division steps
    while (rem.size() >= v.size()) {
      Index du = rem.size() - 1, dv = v.size() - 1;
      double q = rem[du] / v[dv];
      quotient_mass += std::abs(q);
      for (Index i = 0; i <= dv; ++i) rem[du - dv + i] -= q * v[i];
      rem.conservativeResize(du);  // leading entry is now (numerically) zero
      rem = trim(rem);
      if (rem.size() == 0) break;
    }
    double noise = unc_u + quotient_mass * (unc_v + eps) + eps;
    if (rem.size() && rem.cwiseAbs().maxCoeff() <= 30.0 * noise) rem = Eigen::VectorXd();
    if (rem.size() == 0) break;
    double scale = rem.cwiseAbs().maxCoeff();
    unc_u = unc_v;
    unc_v = noise / scale;
    b = -rem;
  }
  return chain;
}

inline int sturm_sign_variations(const std::vector<Eigen::VectorXd>& chain, double x) {
  int variations = 0;
  double prev = 0.0;
  for (const auto& c : chain) {
    double v = 0.0;
    for (Index i = c.size() - 1; i >= 0; --i) v = v * x + c[i];
    if (v == 0.0) continue;
    if (prev != 0.0 && ((prev > 0.0) != (v > 0.0))) ++variations;
    prev = v;
  }
  return variations;
}

// Number of distinct real roots of p (Sturm), together with the degree of
// gcd(p, p') read off the chain tail. p is real-rooted iff the distinct real
// root count equals the number of distinct complex roots deg(p) - deg(gcd).
inline bool sturm_real_rooted(const Polyd& p, const Tolerances& tol) {
  auto chain = sturm_chain(p, tol);
  if (chain.empty()) return true;  // numerically zero: convention
  Index deg = chain[0].size() - 1;
  if (deg == 0) return true;
  // Cauchy root bound of the normalized head polynomial.
  const Eigen::VectorXd& c = chain[0];
  double bound = 0.0;
  for (Index i = 0; i < deg; ++i) bound = std::max(bound, std::abs(c[i] / c[deg]));
  bound += 1.0;
  int distinct = sturm_sign_variations(chain, -bound) - sturm_sign_variations(chain, bound);
  Index gcd_deg = chain.size() >= 2 ? chain.back().size() - 1 : 0;
  return distinct == deg - gcd_deg;
}

}  // namespace detail

// Quantified real-rootedness verdict. Margins within a factor 10 of tau_root
// are Borderline; outside that band but within a factor 100, the Sturm
// backend arbitrates and any disagreement is also Borderline.
inline RealRootedness is_real_rooted(const Polyd& p, const Tolerances& tol) {
  RealRootsOutcome rr = real_roots(p, tol);
  double margin = rr.margin;
  bool verdict_real = rr.real_rooted();
  RealRootedness out{verdict_real ? RealRootedness::Verdict::RealRooted
                                  : RealRootedness::Verdict::NotRealRooted,
                     margin};
  if (margin >= tol.tau_root / 10.0 && margin <= tol.tau_root * 10.0) {
    out.verdict = RealRootedness::Verdict::Borderline;
    return out;
  }
  if (margin > tol.tau_root / 100.0 && margin < tol.tau_root * 100.0) {
    bool sturm = detail::sturm_real_rooted(p, tol);
    if (sturm != verdict_real) out.verdict = RealRootedness::Verdict::Borderline;
  }
  return out;
}

}  // namespace polyfam
