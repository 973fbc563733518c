#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "polyfam/family.hpp"
#include "polyfam/mobius.hpp"
#include "polyfam/poly.hpp"
#include "polyfam/rootfind.hpp"
#include "polyfam/simplex.hpp"

namespace polyfam {

// Global sign of a polynomial on all of R.
enum class SignClass { NonPositive, NonNegative, IdenticallyZero, Indefinite };

namespace detail {

// Spectral summary of a nonzero real-rooted polynomial: flattened descending
// roots, effective degree and effective leading coefficient.
struct Ladder {
  std::vector<double> roots;
  Index degree = 0;
  double lc = 0.0;

  double spread() const {
    double s = 1.0;
    for (double r : roots) s = std::max(s, std::abs(r));
    return s;
  }
  double lambda(Index j) const {  // 1-based, -inf past the end
    return j <= Index(roots.size()) ? roots[size_t(j - 1)]
                                    : -std::numeric_limits<double>::infinity();
  }
};

inline Ladder root_ladder(const Polyd& p, const Tolerances& tol) {
  RealRootsOutcome rr = real_roots(p, tol);
  if (!rr.real_rooted()) throw NotRealRootedError(rr.margin);
  Ladder l;
  l.roots = rr.spectrum->flattened();
  EffectiveDegree ed = effective_degree(p, tol);
  l.degree = ed.degree;
  l.lc = p.coeffs[ed.degree];
  return l;
}

// The base relation for two positive-leading real-rooted polynomials:
// deg(a) in {deg(b), deg(b)-1} and the roots of b weakly alternate above
// those of a, with slack on every comparison.
inline bool base_interlaces(const Ladder& a, const Ladder& b, double slack) {
  if (a.degree != b.degree && a.degree != b.degree - 1) return false;
  for (Index j = 1; j <= a.degree; ++j)
    if (b.lambda(j) < a.lambda(j) - slack) return false;
  Index upper = std::min(a.degree, b.degree - 1);
  for (Index j = 1; j <= upper; ++j)
    if (a.lambda(j) < b.lambda(j + 1) - slack) return false;
  return true;
}

}  // namespace detail

// The generalized relation f << g ("g interlaces f"), extended to arbitrary
// leading-coefficient signs by the closure of the rule f << g => g << -f and
// the conventions 0 << f, f << 0. The closure has period four, which fixes
// the normalization table below. Throws NotRealRootedError on non-real-rooted
// input.
inline bool interlaces(const Polyd& f, const Polyd& g, const Tolerances& tol) {
  if (f.is_identically_zero() || g.is_identically_zero()) return true;
  detail::Ladder lf = detail::root_ladder(f, tol);
  detail::Ladder lg = detail::root_ladder(g, tol);
  double slack = tol.tau_root * std::max(lf.spread(), lg.spread());
  bool fp = lf.lc > 0.0, gp = lg.lc > 0.0;
  auto neg = [](detail::Ladder l) {
    l.lc = -l.lc;  // roots are negation-invariant
    return l;
  };
  if (fp && gp) return detail::base_interlaces(lf, lg, slack);
  if (fp && !gp) return detail::base_interlaces(neg(lg), lf, slack);
  if (!fp && gp) return detail::base_interlaces(lg, neg(lf), slack);
  return detail::base_interlaces(neg(lf), neg(lg), slack);
}

// W[f,g] = f'g - g'f at ambient degree 2d-2 (the top coefficient of the
// ambient-(2d-1) product cancels exactly).
inline Polyd wronskian_poly(const Polyd& f, const Polyd& g) {
  if (f.ambient_degree() != g.ambient_degree())
    throw DimensionError("wronskian arguments must share an ambient degree");
  const Index d = f.ambient_degree();
  if (d == 0) return Polyd::zero(0);
  Polyd full = derivative(f) * g - derivative(g) * f;
  return Polyd(Eigen::VectorXd(full.coeffs.head(2 * d - 1)));
}

// Global sign classification by sampling between sign-change candidates: a
// polynomial one-signed on R has only even-multiplicity real roots, so its
// sign is constant between consecutive distinct real roots and beyond them.
inline SignClass classify_sign(const Polyd& w, const Tolerances& tol, double external_scale) {
  if (coeff_scale(w) <= tol.tau_zero * external_scale) return SignClass::IdenticallyZero;

  std::vector<double> values;
  double spread = 1.0;
  {
    auto pts = complex_roots(w, tol);
    for (auto z : pts) spread = std::max(spread, std::abs(z));
    Polyd trimmed = trim_to_effective(w, tol);
    auto clusters = detail::cluster_eigenvalues(trimmed, pts, spread, tol.tau_root);
    for (const auto& c : clusters)
      if (std::abs(c.centroid.imag()) <= tol.tau_root * spread)
        values.push_back(c.centroid.real());
    std::sort(values.begin(), values.end());
  }

  std::vector<double> samples;
  if (values.empty()) {
    samples = {-2.0 * spread, 0.0, 2.0 * spread};
  } else {
    samples.push_back(values.front() - 2.0 * spread);
    for (size_t i = 1; i < values.size(); ++i)
      samples.push_back(0.5 * (values[i - 1] + values[i]));
    samples.push_back(values.back() + 2.0 * spread);
  }

  int pos = 0, neg = 0;
  for (double x : samples) {
    double v = eval(w, x);
    double bound = eval_magnitude_bound(w, x);
    if (std::abs(v) <= tol.tau_sign * bound) continue;
    (v > 0.0 ? pos : neg) += 1;
  }
  if (pos > 0 && neg > 0) return SignClass::Indefinite;
  if (pos > 0) return SignClass::NonNegative;
  if (neg > 0) return SignClass::NonPositive;
  return SignClass::IdenticallyZero;  // every sample at noise level
}

// Wronskian with its sign class. The classification scale is the natural
// magnitude of the two products before cancellation.
inline std::pair<Polyd, SignClass> wronskian(const Polyd& f, const Polyd& g,
                                             const Tolerances& tol) {
  Polyd w = wronskian_poly(f, g);
  double scale = double(f.ambient_degree() + 1) *
                 (coeff_scale(derivative(f)) * coeff_scale(g) +
                  coeff_scale(derivative(g)) * coeff_scale(f));
  return {w, classify_sign(w, tol, std::max(scale, 1e-300))};
}

// Hermite-Kakeya-Obreschkoff pair test: all real combinations a f + b g are
// real-rooted iff f << g or g << f.
inline bool hko_pair(const Polyd& f, const Polyd& g, const Tolerances& tol) {
  return interlaces(f, g, tol) || interlaces(g, f, tol);
}

struct InterleaverResult {
  std::optional<Polyd> witness;
  enum class Failure { None, NotPairwiseConsistent, NotProper, RetryBudgetExhausted };
  Failure failure = Failure::None;

  bool ok() const { return witness.has_value(); }
};

namespace detail {

// Witness roots for a same-sign family: lambda_j(g) = max_i lambda_j(f_i),
// valid exactly when the pairwise root condition holds. Members may have
// degree D or D-1 (a deficient member's finite roots align at their own
// index; its ambient index is shifted by the root at infinity).
inline std::optional<std::vector<double>> max_root_ladder(const std::vector<Ladder>& ls,
                                                          double slack) {
  Index max_deg = 0;
  for (const Ladder& l : ls) max_deg = std::max(max_deg, l.degree);
  for (const Ladder& l : ls)
    if (l.degree < max_deg - 1) return std::nullopt;
  for (const Ladder& f : ls)
    for (const Ladder& g : ls)
      for (Index j = 1; j + 1 <= g.degree; ++j) {
        if (j > f.degree) break;
        if (f.lambda(j) < g.lambda(j + 1) - slack) return std::nullopt;
      }
  std::vector<double> roots(static_cast<size_t>(max_deg));
  for (Index j = 1; j <= max_deg; ++j) {
    double m = -std::numeric_limits<double>::infinity();
    for (const Ladder& l : ls)
      if (j <= l.degree) m = std::max(m, l.lambda(j));
    roots[size_t(j - 1)] = m;
  }
  return roots;
}

inline Polyd monic_from_roots_at_ambient(const std::vector<double>& roots, Index ambient) {
  Polyd p = poly_from_roots<double>(roots);
  return p.embedded(ambient);
}

inline Polyd normalize_max_coeff(const Polyd& p) {
  double s = coeff_scale(p);
  if (s == 0.0) return p;
  return (1.0 / s) * p;
}

struct LadderSet {
  std::vector<Ladder> ladders;
  double spread = 1.0;
  bool all_full = true;     // every member has effective degree == ambient
  bool same_sign = true;
  int positive_count = 0;
};

inline LadderSet ladder_set(const std::vector<Polyd>& members, const Tolerances& tol) {
  LadderSet out;
  out.ladders.reserve(members.size());
  for (const Polyd& p : members) {
    Ladder l = root_ladder(p, tol);
    out.spread = std::max(out.spread, l.spread());
    if (l.degree != p.ambient_degree()) out.all_full = false;
    if (l.lc > 0.0) ++out.positive_count;
    out.ladders.push_back(std::move(l));
  }
  out.same_sign =
      out.positive_count == 0 || out.positive_count == int(out.ladders.size());
  return out;
}

// Same-sign construction: negate if needed, take the max-root ladder, undo
// the negation (f << g iff -f << -g).
inline InterleaverResult positive_leading_interleaver(const std::vector<Polyd>& members,
                                                      const LadderSet& ls, Index ambient,
                                                      const Tolerances& tol) {
  InterleaverResult res;
  bool negate = ls.positive_count == 0;
  std::vector<Ladder> oriented = ls.ladders;
  if (negate)
    for (Ladder& l : oriented) l.lc = -l.lc;
  auto roots = max_root_ladder(oriented, tol.tau_root * ls.spread);
  if (!roots) {
    res.failure = InterleaverResult::Failure::NotPairwiseConsistent;
    return res;
  }
  Polyd g = monic_from_roots_at_ambient(*roots, ambient);
  if (negate) g = -g;
  g = normalize_max_coeff(g);
  for (const Polyd& f : members)
    if (!interlaces(f, g, tol)) {
      res.failure = InterleaverResult::Failure::RetryBudgetExhausted;
      return res;
    }
  res.witness = std::move(g);
  return res;
}

}  // namespace detail

// Constructive search for a real-rooted g with f_i << g for every member.
//
// Same-sign full-degree families use the max-root ladder directly. Mixed
// families follow the constructive route of the general existence theorem:
// require properness, strip shared roots, mean-perturb by epsilon, rotate a
// degree-normalizing point and then a separating point to infinity so that
// all leading coefficients agree, build the ladder witness there, pull it
// back, reattach shared roots, and verify against the original family,
// halving epsilon on failure.
inline InterleaverResult common_interleaver(const Familyd& family, const Tolerances& tol) {
  const Index d = family.ambient_degree();
  for (Index i = 0; i < family.size(); ++i)
    if (family.members[size_t(i)].is_identically_zero()) throw ZeroMemberError(int(i));

  InterleaverResult res;
  detail::LadderSet ls = detail::ladder_set(family.members, tol);

  if (ls.same_sign && ls.all_full)
    return detail::positive_leading_interleaver(family.members, ls, d, tol);

  ZeroComboResult zc = zero_convex_combination(family, tol);
  if (!zc.proper()) {
    res.failure = InterleaverResult::Failure::NotProper;
    return res;
  }

  StripResult strip = strip_common_roots(family, tol);
  Polyd shared_factor = poly_from_roots<double>(strip.shared_roots);

  // Frame 1: move a point clear of every root to infinity so all members get
  // full degree BEFORE the mean perturbation; otherwise the perturbation
  // completes deficient members with a root near -1/(eps * lc) that wrecks
  // the separating-point geometry. Leading signs are preserved up to a
  // global flip.
  MobiusMap t1 = MobiusMap::identity();
  std::vector<Polyd> framed = strip.reduced.members;
  {
    detail::LadderSet base0 = detail::ladder_set(framed, tol);
    if (!base0.all_full) {
      double far_point = 2.0 * base0.spread + 1.0;
      t1 = rotation_to_infinity(far_point).inverse();
      for (Polyd& p : framed) p = act(t1, p);
      if (!detail::ladder_set(framed, tol).all_full) {
        res.failure = InterleaverResult::Failure::RetryBudgetExhausted;
        return res;
      }
    }
  }
  Familyd framed_family(framed);

  double eps = tol.epsilon_perturb;
  for (int attempt = 0; attempt <= tol.max_retries; ++attempt, eps *= 0.5) {
    Polyd mean = family_mean(framed_family);
    std::vector<Polyd> perturbed;
    perturbed.reserve(size_t(family.size()));
    for (const Polyd& r : framed) perturbed.push_back(r + eps * mean);

    try {
      const Index dr = perturbed.front().ambient_degree();
      detail::LadderSet framed_ls = detail::ladder_set(perturbed, tol);
      if (!framed_ls.all_full) continue;

      MobiusMap t2 = MobiusMap::identity();
      bool negated_mid = false;
      std::vector<Polyd> aligned = perturbed;
      detail::LadderSet aligned_ls = framed_ls;
      if (!framed_ls.same_sign) {
        // Orient so the top positive root sits below the top negative root.
        double r_plus = -std::numeric_limits<double>::infinity();
        double r_minus = -std::numeric_limits<double>::infinity();
        for (const detail::Ladder& l : framed_ls.ladders)
          (l.lc > 0.0 ? r_plus : r_minus) = std::max(l.lc > 0.0 ? r_plus : r_minus, l.lambda(1));
        double sep = 10.0 * tol.tau_root * framed_ls.spread;
        if (std::abs(r_plus - r_minus) <= sep) continue;
        std::vector<Polyd> oriented = perturbed;
        std::vector<detail::Ladder> olad = framed_ls.ladders;
        if (r_plus > r_minus) {
          negated_mid = true;
          for (Polyd& p : oriented) p = -p;
          for (detail::Ladder& l : olad) l.lc = -l.lc;
          std::swap(r_plus, r_minus);
        }
        // Separating point: above every positive-leading root, inside
        // (lambda_2, lambda_1) of every negative-leading member.
        double lo = r_plus;
        double hi = std::numeric_limits<double>::infinity();
        for (const detail::Ladder& l : olad) {
          if (l.lc > 0.0) continue;
          lo = std::max(lo, l.lambda(2));
          hi = std::min(hi, l.lambda(1));
        }
        if (!(hi - lo > 2.0 * sep)) continue;
        double s = std::isinf(hi) ? lo + 1.0 : 0.5 * (lo + hi);
        t2 = rotation_to_infinity(s).inverse();
        aligned.clear();
        for (const Polyd& p : oriented) aligned.push_back(act(t2, p));
        aligned_ls = detail::ladder_set(aligned, tol);
        if (!aligned_ls.same_sign || !aligned_ls.all_full) continue;
      }

      InterleaverResult inner =
          detail::positive_leading_interleaver(aligned, aligned_ls, dr, tol);
      if (!inner.ok()) continue;

      Polyd g = *inner.witness;
      g = act(t2.inverse(), g);
      if (negated_mid) g = -g;
      g = act(t1.inverse(), g);
      Polyd g_full = (g * shared_factor).embedded(d);
      g_full = detail::normalize_max_coeff(g_full);

      // The epsilon-limit witness can lose leading coefficients (its top
      // roots escape to infinity), so candidates with small leading terms
      // chopped stand in for the limit at finite epsilon.
      std::vector<Polyd> candidates{g_full};
      {
        Polyd chopped = g_full;
        for (int chop = 0; chop < 2; ++chop) {
          Index top = chopped.coeffs.size() - 1;
          while (top > 0 && chopped.coeffs[top] == 0.0) --top;
          if (top == 0 || std::abs(chopped.coeffs[top]) > 0.1 * coeff_scale(chopped)) break;
          chopped.coeffs[top] = 0.0;
          candidates.push_back(detail::normalize_max_coeff(chopped));
        }
      }
      for (Polyd& candidate : candidates) {
        bool verified = true;
        for (const Polyd& f : family.members) {
          try {
            if (!interlaces(f, candidate, tol)) {
              verified = false;
              break;
            }
          } catch (const NotRealRootedError&) {
            verified = false;  // chopping can break real-rootedness; skip
            break;
          }
        }
        if (verified) {
          res.witness = std::move(candidate);
          res.failure = InterleaverResult::Failure::None;
          return res;
        }
      }
    } catch (const NotRealRootedError&) {
      // Perturbed members or transformed polynomials failed a root extraction
      // at this epsilon; shrink and retry.
    }
  }
  res.failure = InterleaverResult::Failure::RetryBudgetExhausted;
  return res;
}

}  // namespace polyfam
