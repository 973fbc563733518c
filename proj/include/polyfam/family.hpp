#pragma once

#include <Eigen/Core>

#include <string>
#include <utility>
#include <vector>

#include "polyfam/poly.hpp"
#include "polyfam/rootfind.hpp"

namespace polyfam {

// An ordered nonempty list of polynomials sharing one ambient degree.
template <typename Scalar>
struct Family {
  std::vector<Poly<Scalar>> members;
  std::vector<std::string> labels;  // optional; empty or one per member

  Family() = default;
  explicit Family(std::vector<Poly<Scalar>> m, std::vector<std::string> l = {})
      : members(std::move(m)), labels(std::move(l)) {
    validate();
  }
  Family(std::initializer_list<Poly<Scalar>> m) : members(m) { validate(); }

  void validate() const {
    if (members.empty()) throw DimensionError("family must be nonempty");
    Index d = members.front().ambient_degree();
    for (const auto& p : members)
      if (p.ambient_degree() != d)
        throw DimensionError("family members must share one ambient degree");
    if (!labels.empty() && labels.size() != members.size())
      throw DimensionError("labels must be empty or match the member count");
  }

  Index size() const { return Index(members.size()); }
  Index ambient_degree() const { return members.front().ambient_degree(); }

  // Coefficients as columns of a (d+1) x n matrix.
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> coeff_matrix() const {
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m(ambient_degree() + 1, size());
    for (Index j = 0; j < size(); ++j) m.col(j) = members[size_t(j)].coeffs;
    return m;
  }
};

using Familyd = Family<double>;

// Weighted sum of the members in the shared ambient degree.
template <typename Scalar>
Poly<Scalar> linear_combination(const Family<Scalar>& family,
                                const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& weights) {
  if (weights.size() != family.size())
    throw DimensionError("weight count must match the family size");
  using CoeffVector = typename Poly<Scalar>::CoeffVector;
  CoeffVector c = CoeffVector::Zero(family.ambient_degree() + 1);
  for (Index j = 0; j < family.size(); ++j) c += weights[j] * family.members[size_t(j)].coeffs;
  return Poly<Scalar>(std::move(c));
}

// Sum of all members.
template <typename Scalar>
Poly<Scalar> family_mean(const Family<Scalar>& family) {
  using CoeffVector = typename Poly<Scalar>::CoeffVector;
  CoeffVector c = CoeffVector::Zero(family.ambient_degree() + 1);
  for (const auto& p : family.members) c += p.coeffs;
  return Poly<Scalar>(std::move(c));
}

struct StripResult {
  Familyd reduced;
  std::vector<double> shared_roots;  // with multiplicity
};

// Detects roots shared (numerically) by every member, deflates each member by
// the corresponding linear factors at the clustered root mean, and returns
// both the reduced family and the list of shared roots. Only near-real roots
// participate; members need not be real-rooted.
inline StripResult strip_common_roots(const Familyd& family, const Tolerances& tol) {
  const Index n = family.size();
  for (Index i = 0; i < n; ++i)
    if (family.members[size_t(i)].is_identically_zero()) throw ZeroMemberError(int(i));

  // Near-real roots of each member, as (value, multiplicity) clusters.
  struct MemberRoots {
    std::vector<std::pair<double, int>> roots;  // mutable multiplicity budget
  };
  std::vector<MemberRoots> roots(static_cast<size_t>(n));
  double spread = 1.0;
  for (Index i = 0; i < n; ++i) {
    auto pts = complex_roots(family.members[size_t(i)], tol);
    for (auto z : pts) spread = std::max(spread, std::abs(z));
    Polyd trimmed = trim_to_effective(family.members[size_t(i)], tol);
    double local_spread = 1.0;
    for (auto z : pts) local_spread = std::max(local_spread, std::abs(z));
    auto clusters = detail::cluster_eigenvalues(trimmed, pts, local_spread, tol.tau_root);
    for (const auto& c : clusters)
      if (std::abs(c.centroid.imag()) <= tol.tau_root * local_spread)
        roots[size_t(i)].roots.emplace_back(c.centroid.real(), c.size);
  }

  const double radius = tol.tau_root * (1.0 + spread);
  std::vector<double> shared;
  // Candidates come from member 0; a root is shared when every member has
  // remaining multiplicity within the cluster radius.
  for (auto& [value, mult] : roots[0].roots) {
    while (mult > 0) {
      double sum = 0.0;
      bool everywhere = true;
      std::vector<size_t> hit(size_t(n), SIZE_MAX);
      for (Index i = 0; i < n; ++i) {
        bool found = false;
        for (size_t k = 0; k < roots[size_t(i)].roots.size(); ++k) {
          auto& [v, m] = roots[size_t(i)].roots[k];
          if (m > 0 && std::abs(v - value) <= radius) {
            sum += v;
            hit[size_t(i)] = k;
            found = true;
            break;
          }
        }
        if (!found) {
          everywhere = false;
          break;
        }
      }
      if (!everywhere) break;
      shared.push_back(sum / double(n));
      for (Index i = 0; i < n; ++i) --roots[size_t(i)].roots[hit[size_t(i)]].second;
    }
  }

  StripResult out;
  out.shared_roots = shared;
  std::vector<Polyd> reduced;
  reduced.reserve(size_t(n));
  for (Index i = 0; i < n; ++i) {
    Polyd q = family.members[size_t(i)];
    for (double r : shared) q = deflate(q, r);
    reduced.push_back(std::move(q));
  }
  out.reduced = Familyd(std::move(reduced), family.labels);
  return out;
}

}  // namespace polyfam
