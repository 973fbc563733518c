#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "generators.hpp"
#include "polyfam/interlace.hpp"
#include "polyfam/mobius.hpp"
#include "polyfam/rootfind.hpp"

using namespace polyfam;

namespace {
const Tolerances tol{};
}

TEST_CASE("act: substitution examples") {
  SUBCASE("t -> t + 1") {
    MobiusMap shift{1.0, 1.0, 0.0, 1.0};
    Polyd p{0.0, 0.0, 1.0};  // t^2
    Polyd q = act(shift, p);
    CHECK(q.coeffs[0] == doctest::Approx(1.0));
    CHECK(q.coeffs[1] == doctest::Approx(2.0));
    CHECK(q.coeffs[2] == doctest::Approx(1.0));
  }
  SUBCASE("inversion sends t^2 - 1 to 1 - t^2") {
    MobiusMap inv{0.0, -1.0, 1.0, 0.0};
    Polyd p{-1.0, 0.0, 1.0};
    Polyd q = act(inv, p);
    CHECK(q.coeffs[0] == doctest::Approx(1.0));
    CHECK(q.coeffs[1] == doctest::Approx(0.0));
    CHECK(q.coeffs[2] == doctest::Approx(-1.0));
  }
  SUBCASE("identity") {
    testgen::Rng rng(5);
    Polyd p = testgen::random_real_rooted(rng, 5).poly;
    Polyd q = act(MobiusMap::identity(), p);
    CHECK((q.coeffs - p.coeffs).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  }
}

TEST_CASE("act_point: projective evaluation") {
  MobiusMap inv{0.0, -1.0, 1.0, 0.0};
  CHECK(is_infinite_point(act_point(inv, 0.0)));
  CHECK(act_point(inv, point_at_infinity) == doctest::Approx(0.0));
  CHECK(act_point(MobiusMap::identity(), 2.0) == doctest::Approx(2.0));
}

TEST_CASE("rotation_to_infinity") {
  SUBCASE("t0 = 0 gives the quarter turn") {
    MobiusMap m = rotation_to_infinity(0.0);
    CHECK(m.alpha == doctest::Approx(0.0));
    CHECK(m.beta == doctest::Approx(-1.0));
    CHECK(m.gamma == doctest::Approx(1.0));
    CHECK(m.delta == doctest::Approx(0.0));
  }
  SUBCASE("t0 = 1 matches the closed form") {
    MobiusMap m = rotation_to_infinity(1.0);
    double s = 1.0 / std::sqrt(2.0);
    CHECK(m.alpha == doctest::Approx(-s));
    CHECK(m.beta == doctest::Approx(-s));
    CHECK(m.gamma == doctest::Approx(s));
    CHECK(m.delta == doctest::Approx(-s));
  }
  SUBCASE("defining property, orthonormal rows, det 1") {
    testgen::Rng rng(17);
    for (int trial = 0; trial < 50; ++trial) {
      double t0 = testgen::uniform(rng, -20.0, 20.0);
      MobiusMap m = rotation_to_infinity(t0);
      CHECK(is_infinite_point(act_point(m, t0)));
      CHECK(m.det() == doctest::Approx(1.0).epsilon(tol.tau_zero));
      CHECK(m.alpha * m.alpha + m.beta * m.beta == doctest::Approx(1.0));
      CHECK(m.gamma * m.gamma + m.delta * m.delta == doctest::Approx(1.0));
      CHECK(m.alpha * m.gamma + m.beta * m.delta == doctest::Approx(0.0).epsilon(tol.tau_zero));
    }
  }
}

TEST_CASE("root correspondence under random rotations") {
  testgen::Rng rng(23);
  int done = 0;
  while (done < 60) {
    int degree = testgen::uniform_int(rng, 1, 6);
    int ambient = degree + testgen::uniform_int(rng, 0, 1);
    Polyd p = testgen::random_real_rooted(rng, degree, 3.0, 1e-2).poly.embedded(ambient);
    MobiusMap m = so2_rotation(testgen::uniform(rng, 0.1, 3.0));
    // keep the pole of the transform away from the roots of p
    double pole = act_point(m, point_at_infinity);
    auto rr = real_roots(p, tol);
    bool pole_clear = true;
    for (const auto& e : rr.spectrum->roots)
      if (std::abs(e.value - pole) < 0.1) pole_clear = false;
    if (!pole_clear) continue;
    ++done;

    Polyd q = act(m, p);
    auto qq = real_roots(q, tol);
    REQUIRE(qq.real_rooted());

    // expected: preimages under act_point(m, .) of p's roots, infinity included
    MobiusMap minv = m.inverse();
    std::vector<double> expected;
    int expected_inf = 0;
    for (const auto& e : rr.spectrum->roots)
      for (int k = 0; k < e.multiplicity; ++k) {
        double s = act_point(minv, e.value);
        if (is_infinite_point(s))
          ++expected_inf;
        else
          expected.push_back(s);
      }
    for (Index k = 0; k < rr.spectrum->roots_at_infinity; ++k) {
      double s = act_point(minv, point_at_infinity);
      if (is_infinite_point(s))
        ++expected_inf;
      else
        expected.push_back(s);
    }
    std::sort(expected.begin(), expected.end(), std::greater<double>());
    auto got = qq.spectrum->flattened();
    REQUIRE(got.size() == expected.size());
    CHECK(qq.spectrum->roots_at_infinity == expected_inf);
    for (size_t k = 0; k < got.size(); ++k) {
      double scale = 1.0 + expected[k] * expected[k];
      CHECK(std::abs(got[k] - expected[k]) <= 1e-6 * scale);
    }
  }
}

TEST_CASE("interlacing is invariant under the action") {
  testgen::Rng rng(31);
  int done = 0;
  while (done < 60) {
    int degree = testgen::uniform_int(rng, 1, 6);
    auto [f, g] = testgen::random_interlacing_pair(rng, degree);
    MobiusMap m = so2_rotation(testgen::uniform(rng, 0.05, 3.1));
    double pole = act_point(m, point_at_infinity);
    bool clear = true;
    for (const Polyd* p : {&f, &g}) {
      auto rr = real_roots(*p, tol);
      for (const auto& e : rr.spectrum->roots)
        if (std::abs(e.value - pole) < 0.05) clear = false;
    }
    if (!clear) continue;
    ++done;
    CHECK(interlaces(f, g, tol));
    CHECK(interlaces(act(m, f), act(m, g), tol) == interlaces(f, g, tol));
  }
}

TEST_CASE("wronskian is equivariant at ambient degree 2d-2") {
  testgen::Rng rng(37);
  for (int trial = 0; trial < 60; ++trial) {
    int degree = testgen::uniform_int(rng, 1, 6);
    auto [f, g] = testgen::random_interlacing_pair(rng, degree);
    MobiusMap m = so2_rotation(testgen::uniform(rng, 0.05, 3.1));
    Polyd lhs = wronskian_poly(act(m, f), act(m, g));
    Polyd rhs = act(m, wronskian_poly(f, g));
    double scale = std::max(coeff_scale(lhs), coeff_scale(rhs));
    if (scale == 0.0) continue;
    CHECK((lhs.coeffs - rhs.coeffs).cwiseAbs().maxCoeff() / scale <= 1e-8);
  }
}
