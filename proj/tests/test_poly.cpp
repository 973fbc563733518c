#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "generators.hpp"
#include "polyfam/family.hpp"
#include "polyfam/poly.hpp"

using namespace polyfam;

namespace {
const Polyd g{-3.0, 2.0, 1.0};   // t^2 + 2t - 3
const Polyd h{-3.0, -2.0, 1.0};  // t^2 - 2t - 3
const Tolerances tol{};
}  // namespace

TEST_CASE("eval") {
  CHECK(eval(g, 1.0) == doctest::Approx(0.0));
  Polyd c{-3.0, 0.0, 1.0};
  CHECK(eval(c, 0.0) == doctest::Approx(-3.0));
  CHECK(eval(Polyd::zero(4), 5.0) == 0.0);
}

TEST_CASE("derivative") {
  Polyd dg = derivative(g);
  CHECK(dg.ambient_degree() == 1);
  CHECK(dg.coeffs[0] == 2.0);
  CHECK(dg.coeffs[1] == 2.0);

  Polyd c{7.0};
  Polyd dc = derivative(c);
  CHECK(dc.ambient_degree() == 0);
  CHECK(dc.is_identically_zero());

  Polyd t_in_r3 = Polyd{0.0, 1.0}.embedded(3);
  Polyd dt = derivative(t_in_r3);
  CHECK(dt.ambient_degree() == 2);
  CHECK(dt.coeffs[0] == 1.0);
  CHECK(dt.coeffs[1] == 0.0);
}

TEST_CASE("linear_combination") {
  Familyd gh({g, h});
  Eigen::VectorXd half(2);
  half << 0.5, 0.5;
  Polyd mid = linear_combination(gh, half);
  CHECK(mid.coeffs[0] == doctest::Approx(-3.0));
  CHECK(mid.coeffs[1] == doctest::Approx(0.0));
  CHECK(mid.coeffs[2] == doctest::Approx(1.0));

  Polyd f3{3.0, 0.0, -1.0};
  Familyd triple({f3, g, h});
  Eigen::VectorXd w(3);
  w << 0.5, 0.25, 0.25;
  CHECK(linear_combination(triple, w).is_identically_zero());

  Familyd single({g});
  Eigen::VectorXd one(1);
  one << 1.0;
  CHECK(linear_combination(single, one).coeffs == g.coeffs);

  Eigen::VectorXd bad(3);
  bad << 1, 0, 0;
  CHECK_THROWS_AS(linear_combination(gh, bad), DimensionError);
}

TEST_CASE("linear_combination recovers members at unit vectors") {
  testgen::Rng rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    int n = testgen::uniform_int(rng, 1, 5);
    int d = testgen::uniform_int(rng, 1, 8);
    std::vector<Polyd> members;
    for (int i = 0; i < n; ++i)
      members.push_back(testgen::random_real_rooted(rng, d).poly.embedded(d));
    Familyd fam(members);
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXd e = Eigen::VectorXd::Unit(n, i);
      CHECK((linear_combination(fam, e).coeffs - members[size_t(i)].coeffs).norm() == 0.0);
    }
  }
}

TEST_CASE("effective_degree") {
  Polyd t_in_r2{0.0, 1.0, 0.0};
  auto ed = effective_degree(t_in_r2, tol);
  CHECK_FALSE(ed.is_zero);
  CHECK(ed.degree == 1);
  CHECK(ed.roots_at_infinity == 1);

  auto ed_g = effective_degree(g, tol);
  CHECK(ed_g.degree == 2);
  CHECK(ed_g.roots_at_infinity == 0);

  auto ed_zero = effective_degree(Polyd::zero(2), tol);
  CHECK(ed_zero.is_zero);
}

TEST_CASE("effective_degree partitions the ambient degree") {
  testgen::Rng rng(13);
  for (int trial = 0; trial < 60; ++trial) {
    int deg = testgen::uniform_int(rng, 0, 6);
    int ambient = deg + testgen::uniform_int(rng, 0, 3);
    Polyd p = testgen::random_real_rooted(rng, deg).poly.embedded(ambient);
    auto ed = effective_degree(p, tol);
    CHECK(ed.degree + ed.roots_at_infinity == ambient);
  }
}

TEST_CASE("strip_common_roots") {
  SUBCASE("factored construction") {
    Polyd a = poly_from_roots<double>(std::vector<double>{1.0, 0.0});
    Polyd b = poly_from_roots<double>(std::vector<double>{1.0, -1.0});
    auto res = strip_common_roots(Familyd({a, b}), tol);
    REQUIRE(res.shared_roots.size() == 1);
    CHECK(res.shared_roots[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(res.reduced.ambient_degree() == 1);
    // reduced members are t and t+1
    CHECK(res.reduced.members[0].coeffs[0] == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(res.reduced.members[1].coeffs[0] == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("disjoint roots keep the family") {
    auto res = strip_common_roots(Familyd({g, h}), tol);
    CHECK(res.shared_roots.empty());
    CHECK(res.reduced.members[0].coeffs == g.coeffs);
  }
  SUBCASE("t^2 twice") {
    Polyd sq{0.0, 0.0, 1.0};
    auto res = strip_common_roots(Familyd({sq, sq}), tol);
    REQUIRE(res.shared_roots.size() == 2);
    CHECK(res.shared_roots[0] == doctest::Approx(0.0));
    CHECK(res.reduced.ambient_degree() == 0);
    CHECK(res.reduced.members[0].coeffs[0] == doctest::Approx(1.0));
  }
  SUBCASE("zero member throws") {
    CHECK_THROWS_AS(strip_common_roots(Familyd({g, Polyd::zero(2)}), tol), ZeroMemberError);
  }
}

TEST_CASE("strip_common_roots reconstruction") {
  testgen::Rng rng(29);
  for (int trial = 0; trial < 30; ++trial) {
    int shared_count = testgen::uniform_int(rng, 0, 2);
    std::vector<double> shared;
    for (int s = 0; s < shared_count; ++s) shared.push_back(testgen::uniform(rng, -3.0, 3.0));
    int n = testgen::uniform_int(rng, 2, 4);
    std::vector<Polyd> members;
    for (int i = 0; i < n; ++i) {
      auto base = testgen::random_real_rooted(rng, testgen::uniform_int(rng, 1, 4), 10.0, 0.5);
      std::vector<double> roots = base.roots.empty() ? std::vector<double>{} : std::vector<double>{};
      for (auto& [v, m] : base.roots)
        for (int k = 0; k < m; ++k) roots.push_back(v);
      for (double s : shared) roots.push_back(s);
      members.push_back(testgen::uniform(rng, 0.5, 2.0) * poly_from_roots<double>(roots));
    }
    Index ambient = 0;
    for (auto& p : members) ambient = std::max(ambient, p.ambient_degree());
    for (auto& p : members) p = p.embedded(ambient);
    Familyd fam(members);
    auto res = strip_common_roots(fam, tol);
    CHECK(res.shared_roots.size() >= size_t(shared_count));
    Polyd factor = poly_from_roots<double>(res.shared_roots);
    for (Index i = 0; i < fam.size(); ++i) {
      Polyd rebuilt = (res.reduced.members[size_t(i)] * factor).embedded(ambient);
      double err = (rebuilt.coeffs - fam.members[size_t(i)].coeffs).cwiseAbs().maxCoeff();
      CHECK(err <= 10.0 * tol.tau_zero * coeff_scale(fam.members[size_t(i)]) + 1e-9);
    }
  }
}

TEST_CASE("family validation") {
  CHECK_THROWS_AS(Familyd(std::vector<Polyd>{}), DimensionError);
  CHECK_THROWS_AS(Familyd({g, Polyd{1.0, 2.0}}), DimensionError);
  CHECK_THROWS_AS(Familyd({g}, {"a", "b"}), DimensionError);
}

TEST_CASE("tolerance validation") {
  Tolerances bad;
  bad.tau_root = 0.0;
  CHECK_THROWS_AS(bad.validate(), ToleranceError);
  Tolerances eps;
  eps.epsilon_perturb = 1.5;
  CHECK_THROWS_AS(eps.validate(), ToleranceError);
  CHECK_NOTHROW(Tolerances{}.validate());
  CHECK_THROWS_AS(Tolerances::profile("nope"), ToleranceError);
  CHECK(Tolerances::profile("strict").tau_root < Tolerances{}.tau_root);
}
