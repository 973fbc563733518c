#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "polyfam/interlace.hpp"

using namespace polyfam;

namespace {
const Polyd g{-3.0, 2.0, 1.0};   // roots 1, -3
const Polyd h{-3.0, -2.0, 1.0};  // roots 3, -1
const Tolerances tol{};

// Sampling check behind the HKO theorem: scan directions on the half circle
// and report whether some real combination fails to be real-rooted.
bool all_directions_real_rooted(const Polyd& f, const Polyd& gg, int directions) {
  for (int k = 0; k < directions; ++k) {
    double theta = M_PI * double(k) / double(directions);
    Polyd combo = std::cos(theta) * f + std::sin(theta) * gg;
    if (combo.is_identically_zero()) continue;
    if (!real_roots(combo, tol).real_rooted()) return false;
  }
  return true;
}
}  // namespace

TEST_CASE("interlaces on the worked pairs") {
  CHECK(interlaces(g, h, tol));       // 3 >= 1 >= -1 >= -3
  CHECK(interlaces(h, -g, tol));      // sign rule applied to g << h
  CHECK(interlaces(Polyd::zero(2), g, tol));
  CHECK(interlaces(g, Polyd::zero(2), tol));
  CHECK_FALSE(interlaces(h, g, tol));  // alternation fails the other way
  CHECK_THROWS_AS(interlaces(Polyd{1.0, 0.0, 1.0}, g, tol), NotRealRootedError);
}

TEST_CASE("interlaces is reflexive for real-rooted inputs") {
  testgen::Rng rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    int degree = testgen::uniform_int(rng, 0, 8);
    Polyd p = testgen::random_real_rooted(rng, degree, 5.0, 1e-2, 2,
                                          testgen::uniform(rng, 0.0, 1.0) < 0.5 ? -1.3 : 0.7)
                  .poly;
    CHECK(interlaces(p, p, tol));
  }
}

TEST_CASE("interlaces handles a degree gap of one") {
  Polyd p = poly_from_roots<double>(std::vector<double>{2.0, 0.0});
  Polyd q = poly_from_roots<double>(std::vector<double>{1.0});
  // q has degree 1, p degree 2: q << p requires deg q in {2, 1} and 2 >= 1 >= 0
  CHECK(interlaces(q.embedded(2), p, tol));
  CHECK_FALSE(interlaces(p, q.embedded(2), tol));  // deg p = deg q + 1 fails the base order
}

TEST_CASE("wronskian examples") {
  SUBCASE("(t, t-1)") {
    Polyd a{0.0, 1.0};
    Polyd b{-1.0, 1.0};
    auto [w, cls] = wronskian(a, b, tol);
    CHECK(w.ambient_degree() == 0);
    CHECK(w.coeffs[0] == doctest::Approx(-1.0));
    CHECK(cls == SignClass::NonPositive);
  }
  SUBCASE("(g, h) -> -4t^2 - 12") {
    auto [w, cls] = wronskian(g, h, tol);
    REQUIRE(w.ambient_degree() == 2);
    CHECK(w.coeffs[0] == doctest::Approx(-12.0));
    CHECK(w.coeffs[1] == doctest::Approx(0.0));
    CHECK(w.coeffs[2] == doctest::Approx(-4.0));
    CHECK(cls == SignClass::NonPositive);
  }
  SUBCASE("diagonal is identically zero") {
    auto [w, cls] = wronskian(g, g, tol);
    CHECK(cls == SignClass::IdenticallyZero);
    CHECK(coeff_scale(w) == 0.0);
  }
}

TEST_CASE("wronskian antisymmetry is exact") {
  testgen::Rng rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    int degree = testgen::uniform_int(rng, 1, 7);
    Polyd a = testgen::random_real_rooted(rng, degree).poly.embedded(degree);
    Polyd b = testgen::random_real_rooted(rng, testgen::uniform_int(rng, 1, degree))
                  .poly.embedded(degree);
    Polyd wab = wronskian_poly(a, b);
    Polyd wba = wronskian_poly(b, a);
    CHECK((wab.coeffs + wba.coeffs).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("hko_pair examples") {
  CHECK(hko_pair(g, h, tol));
  CHECK(hko_pair(g, Polyd{4.0, 0.0, -1.0}, tol));  // discriminant positive everywhere
  CHECK(hko_pair(Polyd{0.0, 1.0}, Polyd{-10.0, 1.0}, tol));
}

TEST_CASE("hko_pair agrees with dense direction sampling") {
  testgen::Rng rng(47);
  int agree_true = 0, agree_false = 0;
  for (int trial = 0; trial < 60; ++trial) {
    int degree = testgen::uniform_int(rng, 1, 6);
    Polyd a, b;
    if (trial % 2 == 0) {
      auto pr = testgen::random_interlacing_pair(rng, degree);
      a = pr.first;
      b = pr.second;
    } else {
      Index amb = degree;
      a = testgen::random_real_rooted(rng, degree, 4.0, 1e-2).poly.embedded(amb);
      b = testgen::random_real_rooted(rng, degree, 4.0, 1e-2).poly.embedded(amb);
    }
    bool claimed = hko_pair(a, b, tol);
    bool sampled = all_directions_real_rooted(a, b, 200);
    if (claimed) {
      CHECK(sampled);
      ++agree_true;
    } else {
      CHECK_FALSE(sampled);
      ++agree_false;
    }
  }
  CHECK(agree_true > 0);
  CHECK(agree_false > 0);
}

TEST_CASE("wronskian sign classifies the interlacing direction") {
  testgen::Rng rng(53);
  for (int trial = 0; trial < 40; ++trial) {
    int degree = testgen::uniform_int(rng, 1, 6);
    auto [f, gg] = testgen::random_interlacing_pair(rng, degree,
                                                    testgen::uniform(rng, 0.0, 1.0) < 0.7);
    REQUIRE(interlaces(f, gg, tol));
    auto cls_fg = wronskian(f, gg, tol).second;
    CHECK((cls_fg == SignClass::NonPositive || cls_fg == SignClass::IdenticallyZero));
    auto cls_gf = wronskian(gg, f, tol).second;
    CHECK((cls_gf == SignClass::NonNegative || cls_gf == SignClass::IdenticallyZero));
  }
}

TEST_CASE("common_interleaver on same-sign pairs") {
  SUBCASE("max-root construction") {
    Polyd a = poly_from_roots<double>(std::vector<double>{2.0, 0.0});
    Polyd b = poly_from_roots<double>(std::vector<double>{3.0, 1.0});
    auto res = common_interleaver(Familyd({a, b}), tol);
    REQUIRE(res.ok());
    auto rr = real_roots(*res.witness, tol);
    REQUIRE(rr.real_rooted());
    auto flat = rr.spectrum->flattened();
    REQUIRE(flat.size() == 2);
    CHECK(flat[0] == doctest::Approx(3.0));
    CHECK(flat[1] == doctest::Approx(1.0));
  }
  SUBCASE("witness for (g, h) has the roots of h") {
    auto res = common_interleaver(Familyd({g, h}), tol);
    REQUIRE(res.ok());
    auto flat = real_roots(*res.witness, tol).spectrum->flattened();
    REQUIRE(flat.size() == 2);
    CHECK(flat[0] == doctest::Approx(3.0));
    CHECK(flat[1] == doctest::Approx(-1.0));
  }
  SUBCASE("the r = sqrt(3) family is not proper") {
    Familyd fam({Polyd{3.0, 0.0, -1.0}, g, h});
    auto res = common_interleaver(fam, tol);
    CHECK_FALSE(res.ok());
    CHECK(res.failure == InterleaverResult::Failure::NotProper);
  }
}

TEST_CASE("common_interleaver rejects inconsistent positive families") {
  Polyd a = poly_from_roots<double>(std::vector<double>{10.0, 9.0});
  Polyd b = poly_from_roots<double>(std::vector<double>{0.0, -1.0});
  auto res = common_interleaver(Familyd({a, b}), tol);
  CHECK_FALSE(res.ok());
  CHECK(res.failure == InterleaverResult::Failure::NotPairwiseConsistent);
}

TEST_CASE("common_interleaver on mixed-sign families verifies its witness") {
  testgen::Rng rng(59);
  int done = 0, checked = 0;
  while (done < 30) {
    int degree = testgen::uniform_int(rng, 2, 6);
    int n = testgen::uniform_int(rng, 2, 5);
    Familyd fam = testgen::random_compatible_family(rng, n, degree, true);
    bool mixed = false;
    {
      bool sawp = false, sawn = false;
      for (const auto& m : fam.members) {
        (effective_leading_coeff(m, tol) > 0 ? sawp : sawn) = true;
      }
      mixed = sawp && sawn;
    }
    if (!mixed) continue;
    ++done;
    auto res = common_interleaver(fam, tol);
    if (res.ok()) {
      ++checked;
      for (const auto& m : fam.members) CHECK(interlaces(m, *res.witness, tol));
    } else {
      CHECK(res.failure == InterleaverResult::Failure::RetryBudgetExhausted);
    }
  }
  CHECK(checked >= 28);  // the construction should almost always succeed
}

TEST_CASE("interleaver throws on zero members") {
  CHECK_THROWS_AS(common_interleaver(Familyd({g, Polyd::zero(2)}), tol), ZeroMemberError);
}
