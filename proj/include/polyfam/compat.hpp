#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "polyfam/interlace.hpp"
#include "polyfam/oracle.hpp"
#include "polyfam/simplex.hpp"

namespace polyfam {

// Verdict plus a machine-checkable witness. Every witness re-verifies
// independently of the code path that produced it (see verify_report).
struct CompatReport {
  enum class Verdict { Compatible, Incompatible, Inconclusive };

  struct Interleaver {
    Polyd g;
  };
  struct ZeroComboPlusInterlacing {
    Eigen::VectorXd weights;
    int pair_i, pair_j;
  };
  struct Counterexample {
    Eigen::VectorXd weights;
    double margin;
  };
  struct TripleCounterexample {
    std::array<int, 3> indices;
    Eigen::Vector3d weights;
    double margin;
  };
  struct MarginBand {
    double margin;
  };
  using Witness = std::variant<std::monostate, Interleaver, ZeroComboPlusInterlacing,
                               Counterexample, TripleCounterexample, MarginBand>;

  Verdict verdict = Verdict::Inconclusive;
  Witness witness;
  std::map<std::string, double> margins;
  int triples_checked = 0;
  std::string note;
};

namespace detail {

inline void require_real_rooted_or_zero(const Polyd& p, const Tolerances& tol) {
  if (p.is_identically_zero()) return;
  RealRootsOutcome rr = real_roots(p, tol);
  if (!rr.real_rooted()) throw NotRealRootedError(rr.margin);
}

inline void require_family_real_rooted_or_zero(const Familyd& family, const Tolerances& tol) {
  for (const Polyd& p : family.members) require_real_rooted_or_zero(p, tol);
}

struct CounterexampleHit {
  Eigen::VectorXd weights;
  double margin;
};

inline double violation_margin(const Familyd& family, const Eigen::VectorXd& w,
                               const Tolerances& tol) {
  Polyd combo = linear_combination(family, w);
  if (combo.is_identically_zero()) return 0.0;
  return real_roots(combo, tol).margin;
}

// Hunts a convex combination that is not real-rooted: deterministic face
// points, dense edge grids, Dirichlet samples, then a pattern-search ascent
// of the margin. The incompatible region is open, so sampling finds it when
// tolerances permit.
inline std::optional<CounterexampleHit> find_counterexample(const Familyd& family,
                                                            const Tolerances& tol,
                                                            std::int64_t n_random) {
  const Index n = family.size();
  CounterRng rng{tol.seed ^ 0x5eedc0ffeeULL};

  double best_margin = 0.0;
  Eigen::VectorXd best_w;
  auto consider = [&](const Eigen::VectorXd& w) {
    double m = violation_margin(family, w, tol);
    if (m > best_margin) {
      best_margin = m;
      best_w = w;
    }
  };

  // A margin well past the threshold is already a solid witness; stop
  // sampling and go straight to the ascent (the rule is deterministic).
  const double solid = 1e3 * tol.tau_root;
  for (const auto& w : deterministic_simplex_points(n)) consider(w);
  for (Index i = 0; i < n && best_margin <= solid; ++i)
    for (Index j = i + 1; j < n && best_margin <= solid; ++j)
      for (int k = 1; k < 32; ++k) {
        double s = double(k) / 32.0;
        Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
        w[i] = 1.0 - s;
        w[j] = s;
        consider(w);
      }
  for (std::int64_t k = 0; k < n_random && best_margin <= solid; ++k)
    consider(dirichlet_weights(n, rng, std::uint64_t(k)));

  if (!(best_margin > tol.tau_root)) return std::nullopt;

  // Local margin ascent to sharpen the witness.
  double step = 0.1;
  for (int round = 0; round < 24; ++round) {
    bool improved = false;
    for (Index i = 0; i < n && !improved; ++i)
      for (Index j = 0; j < n && !improved; ++j) {
        if (i == j) continue;
        Eigen::VectorXd w = best_w;
        double delta = std::min(step, w[i]);
        if (delta <= 0.0) continue;
        w[i] -= delta;
        w[j] += delta;
        double m = violation_margin(family, w, tol);
        if (m > best_margin) {
          best_margin = m;
          best_w = w;
          improved = true;
        }
      }
    if (!improved) step *= 0.5;
    if (step < 1e-4) break;
  }
  return CounterexampleHit{best_w, best_margin};
}

inline bool in_properness_band(const ZeroComboResult& zc, const Tolerances& tol) {
  return !zc.exact && zc.proper() && zc.residual <= 10.0 * tol.tau_proper;
}

}  // namespace detail

// Compatibility of a pair: for n = 2, properness fails only in the
// degenerate case a f = -b g, where every convex combination is a scalar
// multiple of a real-rooted polynomial; otherwise compatibility is
// equivalent to the existence of a common interleaver.
inline CompatReport pair_compatible(const Polyd& f, const Polyd& g, const Tolerances& tol) {
  detail::require_real_rooted_or_zero(f, tol);
  detail::require_real_rooted_or_zero(g, tol);
  Familyd fam({f, g});
  CompatReport rep;

  ZeroComboResult zc = zero_convex_combination(fam, tol);
  rep.margins["properness_residual"] = zc.residual;
  if (!zc.proper()) {
    rep.verdict = CompatReport::Verdict::Compatible;
    rep.witness = CompatReport::ZeroComboPlusInterlacing{*zc.weights, 0, 1};
    return rep;
  }
  if (detail::in_properness_band(zc, tol)) {
    rep.verdict = CompatReport::Verdict::Inconclusive;
    rep.witness = CompatReport::MarginBand{zc.residual};
    rep.note = "properness residual inside the tolerance band";
    return rep;
  }

  InterleaverResult il = common_interleaver(fam, tol);
  if (il.ok()) {
    rep.verdict = CompatReport::Verdict::Compatible;
    rep.witness = CompatReport::Interleaver{*il.witness};
    return rep;
  }
  auto ce = detail::find_counterexample(fam, tol, 512);
  if (ce) {
    rep.verdict = CompatReport::Verdict::Incompatible;
    rep.margins["counterexample_margin"] = ce->margin;
    rep.witness = CompatReport::Counterexample{ce->weights, ce->margin};
    return rep;
  }
  rep.verdict = CompatReport::Verdict::Inconclusive;
  rep.witness = CompatReport::MarginBand{tol.tau_root};
  rep.note = "no interleaver found and no counterexample sampled";
  return rep;
}

// Compatibility of a triple: a zero convex combination with the pattern
// (a >= 0, b, c > 0) reduces the decision to one interlacing test on the
// distinguished pair; proper triples reduce to the common interleaver.
inline CompatReport triple_compatible(const Polyd& f1, const Polyd& f2, const Polyd& f3,
                                      const Tolerances& tol) {
  std::array<const Polyd*, 3> fs{&f1, &f2, &f3};
  for (const Polyd* p : fs) detail::require_real_rooted_or_zero(*p, tol);
  CompatReport rep;
  rep.triples_checked = 1;

  // Zero members impose no constraint (0 << f and f << 0); the verdict is
  // that of the remaining members.
  std::vector<int> nonzero;
  for (int i = 0; i < 3; ++i)
    if (!fs[size_t(i)]->is_identically_zero()) nonzero.push_back(i);
  if (nonzero.size() <= 1) {
    rep.verdict = CompatReport::Verdict::Compatible;
    Eigen::VectorXd w = Eigen::VectorXd::Zero(3);
    int zi = nonzero.empty() ? 0 : (nonzero[0] == 0 ? 1 : 0);
    w[zi] = 1.0;
    rep.witness = CompatReport::ZeroComboPlusInterlacing{w, zi, nonzero.empty() ? (zi + 1) % 3 : nonzero[0]};
    return rep;
  }
  if (nonzero.size() == 2) {
    CompatReport sub = pair_compatible(*fs[size_t(nonzero[0])], *fs[size_t(nonzero[1])], tol);
    sub.triples_checked = 1;
    // Re-express pair-level witnesses in the triple's own index space.
    if (auto* cw = std::get_if<CompatReport::Counterexample>(&sub.witness)) {
      Eigen::Vector3d w3 = Eigen::Vector3d::Zero();
      w3[nonzero[0]] = cw->weights[0];
      w3[nonzero[1]] = cw->weights[1];
      sub.witness = CompatReport::TripleCounterexample{{0, 1, 2}, w3, cw->margin};
    } else if (auto* zw = std::get_if<CompatReport::ZeroComboPlusInterlacing>(&sub.witness)) {
      Eigen::VectorXd w3 = Eigen::VectorXd::Zero(3);
      w3[nonzero[0]] = zw->weights[0];
      w3[nonzero[1]] = zw->weights[1];
      sub.witness = CompatReport::ZeroComboPlusInterlacing{w3, nonzero[0], nonzero[1]};
    }
    return sub;
  }

  Familyd fam({f1, f2, f3});
  ZeroComboResult zc = zero_convex_combination(fam, tol);
  rep.margins["properness_residual"] = zc.residual;

  if (!zc.proper()) {
    const Eigen::VectorXd& w = *zc.weights;
    // Index with the smallest weight plays the "a >= 0" slot.
    int i = 0;
    for (int m = 1; m < 3; ++m)
      if (w[m] < w[i]) i = m;
    int j = (i == 0) ? 1 : 0;
    bool ok = hko_pair(*fs[size_t(i)], *fs[size_t(j)], tol);
    if (ok) {
      rep.verdict = CompatReport::Verdict::Compatible;
      rep.witness = CompatReport::ZeroComboPlusInterlacing{w, i, j};
      return rep;
    }
    auto ce = detail::find_counterexample(fam, tol, 1024);
    if (ce) {
      rep.verdict = CompatReport::Verdict::Incompatible;
      rep.margins["counterexample_margin"] = ce->margin;
      Eigen::Vector3d w3 = ce->weights;
      rep.witness = CompatReport::TripleCounterexample{{0, 1, 2}, w3, ce->margin};
      return rep;
    }
    rep.verdict = CompatReport::Verdict::Inconclusive;
    rep.witness = CompatReport::MarginBand{zc.residual};
    rep.note = "zero combination found but the distinguished pair does not interlace; no counterexample sampled";
    return rep;
  }
  if (detail::in_properness_band(zc, tol)) {
    rep.verdict = CompatReport::Verdict::Inconclusive;
    rep.witness = CompatReport::MarginBand{zc.residual};
    rep.note = "properness residual inside the tolerance band";
    return rep;
  }

  InterleaverResult il = common_interleaver(fam, tol);
  if (il.ok()) {
    rep.verdict = CompatReport::Verdict::Compatible;
    rep.witness = CompatReport::Interleaver{*il.witness};
    return rep;
  }
  auto ce = detail::find_counterexample(fam, tol, 1024);
  if (ce) {
    rep.verdict = CompatReport::Verdict::Incompatible;
    rep.margins["counterexample_margin"] = ce->margin;
    Eigen::Vector3d w3 = ce->weights;
    rep.witness = CompatReport::TripleCounterexample{{0, 1, 2}, w3, ce->margin};
    return rep;
  }
  rep.verdict = CompatReport::Verdict::Inconclusive;
  rep.witness = CompatReport::MarginBand{tol.tau_root};
  rep.note = "no interleaver found and no counterexample sampled";
  return rep;
}

// Compatibility of a family via the all-triples criterion; the first failing
// triple (lexicographic order) is reported, so the result is deterministic
// under any evaluation schedule. Proper compatible families additionally get
// an interleaver witness when the constructive search succeeds.
inline CompatReport family_compatible(const Familyd& family, const Tolerances& tol) {
  detail::require_family_real_rooted_or_zero(family, tol);
  const Index n = family.size();
  CompatReport rep;

  if (n == 1) {
    rep.verdict = CompatReport::Verdict::Compatible;
    rep.witness = CompatReport::Interleaver{family.members[0]};
    return rep;
  }
  if (n == 2) return pair_compatible(family.members[0], family.members[1], tol);

  std::optional<CompatReport> first_inconclusive;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      for (Index k = j + 1; k < n; ++k) {
        CompatReport tr = triple_compatible(family.members[size_t(i)], family.members[size_t(j)],
                                            family.members[size_t(k)], tol);
        ++rep.triples_checked;
        if (tr.verdict == CompatReport::Verdict::Incompatible) {
          rep.verdict = CompatReport::Verdict::Incompatible;
          rep.margins = tr.margins;
          if (auto* tc = std::get_if<CompatReport::TripleCounterexample>(&tr.witness))
            rep.witness = CompatReport::TripleCounterexample{
                {int(i), int(j), int(k)}, tc->weights, tc->margin};
          rep.note = "triple (" + std::to_string(i) + "," + std::to_string(j) + "," +
                     std::to_string(k) + ") is incompatible";
          return rep;
        }
        if (tr.verdict == CompatReport::Verdict::Inconclusive && !first_inconclusive) {
          first_inconclusive = tr;
          first_inconclusive->note = "triple (" + std::to_string(i) + "," + std::to_string(j) +
                                     "," + std::to_string(k) + ") is inconclusive";
        }
      }
  if (first_inconclusive) {
    rep.verdict = CompatReport::Verdict::Inconclusive;
    rep.witness = first_inconclusive->witness;
    rep.margins = first_inconclusive->margins;
    rep.note = first_inconclusive->note;
    return rep;
  }

  rep.verdict = CompatReport::Verdict::Compatible;
  ZeroComboResult zc = zero_convex_combination(family, tol);
  rep.margins["properness_residual"] = zc.residual;
  if (zc.proper() && !detail::in_properness_band(zc, tol)) {
    InterleaverResult il = common_interleaver(family, tol);
    if (il.ok()) {
      rep.witness = CompatReport::Interleaver{*il.witness};
    } else {
      rep.note = "compatible, but the interleaver search exhausted its retry budget";
    }
  }
  return rep;
}

// Re-runs the checks a witness claims, independently of the decider path.
inline bool verify_report(const Familyd& family, const CompatReport& rep, const Tolerances& tol) {
  if (auto* iw = std::get_if<CompatReport::Interleaver>(&rep.witness)) {
    for (const Polyd& f : family.members)
      if (!interlaces(f, iw->g, tol)) return false;
    return true;
  }
  if (auto* zw = std::get_if<CompatReport::ZeroComboPlusInterlacing>(&rep.witness)) {
    Polyd combo = linear_combination(family, zw->weights);
    double scale = 0.0;
    for (Index i = 0; i < family.size(); ++i)
      scale = std::max(scale, std::abs(zw->weights[i]) * coeff_scale(family.members[size_t(i)]));
    if (coeff_scale(combo) > 10.0 * tol.tau_proper * std::max(scale, 1e-300)) return false;
    return hko_pair(family.members[size_t(zw->pair_i)], family.members[size_t(zw->pair_j)], tol);
  }
  if (auto* cw = std::get_if<CompatReport::Counterexample>(&rep.witness)) {
    Polyd combo = linear_combination(family, cw->weights);
    if (combo.is_identically_zero()) return false;
    RealRootsOutcome rr = real_roots(combo, tol);
    return !rr.real_rooted() && rr.margin > tol.tau_root;
  }
  if (auto* tw = std::get_if<CompatReport::TripleCounterexample>(&rep.witness)) {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(family.size());
    for (int m = 0; m < 3; ++m) w[tw->indices[size_t(m)]] += tw->weights[m];
    Polyd combo = linear_combination(family, w);
    if (combo.is_identically_zero()) return false;
    RealRootsOutcome rr = real_roots(combo, tol);
    return !rr.real_rooted() && rr.margin > tol.tau_root;
  }
  return true;  // MarginBand / absent witnesses carry no claim
}

// The mean perturbation (f_i + epsilon * sum_j f_j): for proper 3-compatible
// families with no simultaneous root, small epsilon forces every convex
// combination to have only simple real roots.
inline Familyd perturb_family_mean(const Familyd& family, double epsilon, const Tolerances& tol) {
  detail::require_family_real_rooted_or_zero(family, tol);
  ZeroComboResult zc = zero_convex_combination(family, tol);
  if (!zc.proper()) throw NotProperError();

  StripResult strip = strip_common_roots(family, tol);
  if (!strip.shared_roots.empty()) throw CommonRootError(strip.shared_roots.front());

  const Index n = family.size();
  if (n == 2) {
    CompatReport pr = pair_compatible(family.members[0], family.members[1], tol);
    if (pr.verdict == CompatReport::Verdict::Incompatible) throw NotThreeCompatibleError();
  } else if (n >= 3) {
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j)
        for (Index k = j + 1; k < n; ++k) {
          CompatReport tr = triple_compatible(family.members[size_t(i)],
                                              family.members[size_t(j)],
                                              family.members[size_t(k)], tol);
          if (tr.verdict == CompatReport::Verdict::Incompatible) throw NotThreeCompatibleError();
        }
  }

  Polyd mean = family_mean(family);
  std::vector<Polyd> out;
  out.reserve(size_t(n));
  for (const Polyd& f : family.members) out.push_back(f + epsilon * mean);
  return Familyd(std::move(out), family.labels);
}

// Root-shift perturbation pushing the whole simplex into the interior of the
// real-rooted set: the interleaver's j-th root moves by -3 j eps, a
// positive-leading member at family position i by -(3 j + 1/i) eps, a
// negative-leading member at position k by -(3 j - 1/k) eps. All shifts are
// applied in a frame where every polynomial has full degree, and the output
// is validated by the strict-simplicity oracle.
inline Familyd simplex_interior_perturbation(const Familyd& family, double epsilon,
                                             const Tolerances& tol) {
  detail::require_family_real_rooted_or_zero(family, tol);
  ZeroComboResult zc = zero_convex_combination(family, tol);
  if (!zc.proper()) throw NotProperError();
  CompatReport rep = family_compatible(family, tol);
  if (rep.verdict == CompatReport::Verdict::Incompatible) throw NotCompatibleError();

  InterleaverResult il = common_interleaver(family, tol);
  if (!il.ok()) throw RetryBudgetError();
  const Polyd& g = *il.witness;
  const Index n = family.size();
  const Index d = family.ambient_degree();

  double eps = epsilon;
  for (int attempt = 0; attempt <= tol.max_retries; ++attempt, eps *= 0.5) {
    try {
      // Frame where members and interleaver all have full degree.
      std::vector<Polyd> polys = family.members;
      polys.push_back(g.embedded(d));
      detail::LadderSet all = detail::ladder_set(polys, tol);
      MobiusMap t1 = MobiusMap::identity();
      if (!all.all_full) {
        double far_point = 2.0 * all.spread + 1.0;
        t1 = rotation_to_infinity(far_point).inverse();
        for (Polyd& p : polys) p = act(t1, p);
        all = detail::ladder_set(polys, tol);
        if (!all.all_full) continue;
      }
      bool negated = all.ladders.back().lc < 0.0;
      if (negated)
        for (auto& l : all.ladders) l.lc = -l.lc;

      std::vector<Polyd> shifted;
      shifted.reserve(size_t(n));
      for (Index i = 0; i < n; ++i) {
        const detail::Ladder& l = all.ladders[size_t(i)];
        double offset = 1.0 / double(i + 1);
        std::vector<double> roots = l.roots;
        for (size_t j = 0; j < roots.size(); ++j) {
          double shift = (l.lc > 0.0) ? (3.0 * double(j + 1) + offset)
                                      : (3.0 * double(j + 1) - offset);
          roots[j] -= shift * eps;
        }
        double lead = (negated ? -1.0 : 1.0) * l.lc;
        Polyd rebuilt = lead * poly_from_roots<double>(roots);
        shifted.push_back(act(t1.inverse(), rebuilt.embedded(polys[size_t(i)].ambient_degree())));
      }
      Familyd out(std::move(shifted), family.labels);

      OracleReport check = sample_convex_combinations(out, 256, tol.seed ^ 0x51329ULL, tol);
      ZeroComboResult out_zc = zero_convex_combination(out, tol);
      if (check.violations.empty() && check.min_gap_observed > 0.0 && out_zc.proper())
        return out;
    } catch (const NotRealRootedError&) {
      // fall through to a smaller epsilon
    }
  }
  throw RetryBudgetError();
}

// Where a convex combination of at most two members can acquire a non-simple
// root: the kernel of the value/derivative matrix at each candidate point,
// intersected with the simplex. Candidates are member roots and Wronskian
// roots of member pairs (a double root of a f + b g forces W[f,g] to vanish).
struct NonSimpleDiagnostic {
  double location = 0.0;
  Eigen::VectorXd witness_weights;  // support <= 2
  std::vector<int> member_roots;    // members vanishing at the location
  struct SignEntry {
    int member;
    int sign_f;    // sign of f_member(location), 0 within the dead zone
    int sign_g2;   // sign of the witnessed combination's second derivative
  };
  std::vector<SignEntry> sign_report;
  std::vector<std::string> inconsistencies;
};

namespace detail {

inline int dead_zone_sign(double value, double threshold) {
  if (std::abs(value) <= threshold) return 0;
  return value > 0.0 ? 1 : -1;
}

}  // namespace detail

inline std::vector<NonSimpleDiagnostic> nonsimple_root_diagnostics(const Familyd& family,
                                                                   const Tolerances& tol) {
  ZeroComboResult zc = zero_convex_combination(family, tol);
  if (!zc.proper()) throw NotProperError();
  const Index n = family.size();

  // Normalize members so evaluation thresholds are scale-free.
  std::vector<Polyd> hat;
  hat.reserve(size_t(n));
  for (const Polyd& f : family.members) hat.push_back((1.0 / coeff_scale(f)) * f);

  // Candidate locations.
  std::vector<double> candidates;
  double spread = 1.0;
  auto near_real_roots_of = [&](const Polyd& p) {
    if (p.is_identically_zero()) return;
    auto pts = complex_roots(p, tol);
    double local = 1.0;
    for (auto z : pts) local = std::max(local, std::abs(z));
    spread = std::max(spread, local);
    Polyd trimmed = trim_to_effective(p, tol);
    auto clusters = detail::cluster_eigenvalues(trimmed, pts, local, tol.tau_root);
    for (const auto& c : clusters)
      if (std::abs(c.centroid.imag()) <= tol.tau_root * local)
        candidates.push_back(c.centroid.real());
  };
  for (const Polyd& f : hat) near_real_roots_of(f);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      near_real_roots_of(wronskian_poly(hat[size_t(i)], hat[size_t(j)]));

  std::sort(candidates.begin(), candidates.end());
  const double radius = tol.tau_root * (1.0 + spread);
  std::vector<double> locations;
  for (double c : candidates)
    if (locations.empty() || c - locations.back() > radius) locations.push_back(c);

  auto vanish = [&](const Polyd& p, double r) {
    double bound = std::max(eval_magnitude_bound(p, r), 1e-12);
    return std::abs(eval(p, r)) <= std::sqrt(tol.tau_sign) * bound;
  };

  std::vector<NonSimpleDiagnostic> out;
  for (double r0 : locations) {
    // Supports of size <= 2 whose combination doubles at r0.
    std::vector<Eigen::VectorXd> hits;
    for (Index i = 0; i < n; ++i) {
      if (vanish(hat[size_t(i)], r0) && vanish(derivative(hat[size_t(i)]), r0))
        hits.push_back(Eigen::VectorXd::Unit(n, i));
    }
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j) {
        Eigen::Matrix2d a;
        a << eval(hat[size_t(i)], r0), eval(hat[size_t(j)], r0),
            eval(derivative(hat[size_t(i)]), r0), eval(derivative(hat[size_t(j)]), r0);
        Eigen::JacobiSVD<Eigen::Matrix2d> svd(a, Eigen::ComputeFullV);
        if (svd.singularValues()[1] > std::sqrt(tol.tau_sign) * std::max(svd.singularValues()[0], 1.0))
          continue;
        Eigen::Vector2d v = svd.matrixV().col(1);
        if (v[0] * v[1] < -tol.tau_sign) continue;  // kernel direction leaves the orthant
        if (v[0] < 0.0) v = -v;
        v = v.cwiseMax(0.0);
        if (v.sum() <= 0.0) continue;
        v /= v.sum();
        if (v[0] < tol.tau_sign || v[1] < tol.tau_sign) continue;  // singleton handled above
        Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
        w[i] = v[0];
        w[j] = v[1];
        hits.push_back(w);
      }

    for (const Eigen::VectorXd& w : hits) {
      Familyd hat_family(hat);
      Polyd combo = linear_combination(hat_family, w);
      if (combo.is_identically_zero()) continue;
      // Polish the location: a double root of the combination is a simple
      // root of its derivative.
      Polyd dcombo = derivative(combo);
      double r = r0;
      for (int it = 0; it < 8; ++it) {
        auto [v, dv] = eval_with_derivative(dcombo, r);
        if (dv == 0.0) break;
        double step = v / dv;
        if (!std::isfinite(step) || std::abs(step) > radius) break;
        r -= step;
      }
      if (std::abs(r - r0) > 4.0 * radius) r = r0;
      if (!vanish(combo, r) || !vanish(dcombo, r)) continue;

      NonSimpleDiagnostic diag;
      diag.location = r;
      diag.witness_weights = w;
      double g2 = eval(nth_derivative(combo, 2), r);
      double g2_bound = std::max(eval_magnitude_bound(nth_derivative(combo, 2), r), 1e-12);
      int sign_g2 = detail::dead_zone_sign(g2 / g2_bound, tol.tau_sign);
      if (sign_g2 == 0)
        diag.inconsistencies.push_back("second derivative of the witnessed combination vanishes");
      for (Index m = 0; m < n; ++m) {
        double fv = eval(hat[size_t(m)], r);
        double fb = std::max(eval_magnitude_bound(hat[size_t(m)], r), 1e-12);
        int sf = vanish(hat[size_t(m)], r) ? 0 : detail::dead_zone_sign(fv / fb, tol.tau_sign);
        if (sf == 0) diag.member_roots.push_back(int(m));
        diag.sign_report.push_back({int(m), sf, sign_g2});
        if (sf != 0 && sign_g2 != 0 && sf == sign_g2)
          diag.inconsistencies.push_back("sign law violated at member " + std::to_string(m));
      }
      if (diag.member_roots.empty())
        diag.inconsistencies.push_back("no member vanishes at the non-simple root");
      out.push_back(std::move(diag));
    }
  }

  // Collapse duplicates: same location cluster and same support.
  std::vector<NonSimpleDiagnostic> dedup;
  for (auto& d : out) {
    bool duplicate = false;
    for (const auto& e : dedup) {
      if (std::abs(d.location - e.location) > radius) continue;
      bool same_support = true;
      for (Index m = 0; m < n; ++m)
        if ((d.witness_weights[m] > tol.tau_sign) != (e.witness_weights[m] > tol.tau_sign)) {
          same_support = false;
          break;
        }
      if (same_support) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) dedup.push_back(std::move(d));
  }
  return dedup;
}

}  // namespace polyfam
