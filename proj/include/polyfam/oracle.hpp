#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cstdint>
#include <future>
#include <limits>
#include <thread>
#include <vector>

#include "polyfam/family.hpp"
#include "polyfam/rng.hpp"
#include "polyfam/rootfind.hpp"

namespace polyfam {

// Brute-force evidence: dense sampling of the weight simplex.
struct OracleReport {
  struct Violation {
    Eigen::VectorXd weights;
    double margin;
  };
  std::int64_t samples = 0;
  std::vector<Violation> violations;
  // Smallest slack tau_root - margin over all sampled combinations; negative
  // exactly when violations is nonempty.
  double min_real_margin = std::numeric_limits<double>::infinity();
  // Smallest root gap among real-rooted samples with at least two distinct
  // finite roots.
  double min_gap_observed = std::numeric_limits<double>::infinity();
  std::uint64_t seed = 0;
};

namespace detail {

// Deterministic simplex points probed before any random sample: vertices,
// edge midpoints, centroid. The counterexamples of interest tend to live on
// low-dimensional faces.
inline std::vector<Eigen::VectorXd> deterministic_simplex_points(Index n) {
  std::vector<Eigen::VectorXd> pts;
  for (Index i = 0; i < n; ++i) pts.push_back(Eigen::VectorXd::Unit(n, i));
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
      w[i] = 0.5;
      w[j] = 0.5;
      pts.push_back(w);
    }
  pts.push_back(Eigen::VectorXd::Constant(n, 1.0 / double(n)));
  return pts;
}

struct SampleStats {
  double margin = 0.0;       // 0 for the zero polynomial (real-rooted by convention)
  double min_gap = std::numeric_limits<double>::infinity();
  bool violation = false;
};

inline SampleStats evaluate_combo(const Polyd& combo, const Tolerances& tol) {
  SampleStats st;
  if (combo.is_identically_zero()) return st;
  RealRootsOutcome rr = real_roots(combo, tol);
  st.margin = rr.margin;
  if (!rr.real_rooted()) {
    st.violation = true;
    return st;
  }
  // A repeated root counts as gap zero: the gap statistic certifies strict
  // simplicity across samples.
  for (const auto& e : rr.spectrum->roots)
    if (e.multiplicity > 1) {
      st.min_gap = 0.0;
      return st;
    }
  st.min_gap = rr.spectrum->min_gap;
  return st;
}

inline SampleStats evaluate_sample(const Familyd& family, const Eigen::VectorXd& w,
                                   const Tolerances& tol) {
  return evaluate_combo(linear_combination(family, w), tol);
}

}  // namespace detail

// Samples n_samples convex combinations (deterministic face points first,
// uniform Dirichlet after) and tests real-rootedness of each. The report is
// identical for identical (family, n_samples, seed) regardless of the
// parallel schedule: every draw is a pure function of (seed, sample index)
// and the reduction is order-canonical.
inline OracleReport sample_convex_combinations(const Familyd& family, std::int64_t n_samples,
                                               std::uint64_t seed, const Tolerances& tol) {
  if (n_samples < 1) throw DimensionError("n_samples must be at least 1");
  const Index n = family.size();
  OracleReport report;
  report.samples = n_samples;
  report.seed = seed;

  auto fixed = detail::deterministic_simplex_points(n);
  CounterRng rng{seed};

  auto weights_for = [&](std::int64_t k) -> Eigen::VectorXd {
    if (k < std::int64_t(fixed.size())) return fixed[size_t(k)];
    return dirichlet_weights(n, rng, std::uint64_t(k));
  };

  struct Chunk {
    std::vector<OracleReport::Violation> violations;
    double min_margin_slack = std::numeric_limits<double>::infinity();
    double min_gap = std::numeric_limits<double>::infinity();
  };

  const Eigen::MatrixXd coeff = family.coeff_matrix();
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  std::int64_t chunk_size = std::max<std::int64_t>(64, n_samples / (4 * hw) + 1);
  std::vector<std::future<Chunk>> futures;
  for (std::int64_t lo = 0; lo < n_samples; lo += chunk_size) {
    std::int64_t hi = std::min(n_samples, lo + chunk_size);
    futures.push_back(std::async(std::launch::async, [&, lo, hi]() {
      Chunk c;
      Polyd combo = Polyd::zero(family.ambient_degree());
      for (std::int64_t k = lo; k < hi; ++k) {
        Eigen::VectorXd w = weights_for(k);
        combo.coeffs.noalias() = coeff * w;
        auto st = detail::evaluate_combo(combo, tol);
        c.min_margin_slack = std::min(c.min_margin_slack, tol.tau_root - st.margin);
        c.min_gap = std::min(c.min_gap, st.min_gap);
        if (st.violation) c.violations.push_back({w, st.margin});
      }
      return c;
    }));
  }
  for (auto& f : futures) {
    Chunk c = f.get();
    report.min_real_margin = std::min(report.min_real_margin, c.min_margin_slack);
    report.min_gap_observed = std::min(report.min_gap_observed, c.min_gap);
    for (auto& v : c.violations) report.violations.push_back(std::move(v));
  }
  return report;
}

// One row per sample point of the segment (1-s) f + s g.
struct TrajectoryRow {
  enum class Kind { RealRooted, Complex, Zero };
  double s = 0.0;
  Kind kind = Kind::RealRooted;
  std::vector<double> roots;  // descending with multiplicity; empty unless RealRooted
  double complex_margin = 0.0;  // set only for Complex rows
};

// Root trajectories along one edge of the simplex, for CSV export.
inline std::vector<TrajectoryRow> edge_scan(const Polyd& f, const Polyd& g, int k,
                                            const Tolerances& tol) {
  if (k < 2) throw DimensionError("edge_scan needs at least two sample points");
  if (f.ambient_degree() != g.ambient_degree())
    throw DimensionError("edge_scan arguments must share an ambient degree");
  std::vector<TrajectoryRow> rows;
  rows.reserve(size_t(k));
  for (int i = 0; i < k; ++i) {
    double s = double(i) / double(k - 1);
    TrajectoryRow row;
    row.s = s;
    Polyd combo = (1.0 - s) * f + s * g;
    if (combo.is_identically_zero()) {
      row.kind = TrajectoryRow::Kind::Zero;
    } else {
      RealRootsOutcome rr = real_roots(combo, tol);
      if (rr.real_rooted()) {
        row.kind = TrajectoryRow::Kind::RealRooted;
        row.roots = rr.spectrum->flattened();
      } else {
        row.kind = TrajectoryRow::Kind::Complex;
        row.complex_margin = rr.margin;
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace polyfam
