#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "minkcurve/errors.hpp"
#include "minkcurve/norm_plane.hpp"
#include "support.hpp"

#include <cmath>

using namespace mink;
using testing::lp_norm;

namespace {

// Area of the l_p unit ball.
double lp_area(double p) { return 4 * std::pow(std::tgamma(1 + 1 / p), 2) / std::tgamma(1 + 2 / p); }

// Curvature of the implicit curve |x|^p + |y|^p = 1 at a point on it.
double lp_implicit_curvature(const Vec2& x, double p) {
  const double fx = p * std::copysign(std::pow(std::abs(x.x()), p - 1), x.x());
  const double fy = p * std::copysign(std::pow(std::abs(x.y()), p - 1), x.y());
  const double fxx = p * (p - 1) * std::pow(std::abs(x.x()), p - 2);
  const double fyy = p * (p - 1) * std::pow(std::abs(x.y()), p - 2);
  return (fy * fy * fxx + fx * fx * fyy) / std::pow(fx * fx + fy * fy, 1.5);
}

}  // namespace

TEST_CASE("euclidean norm and anti-norm") {
  const NormProfile e = NormProfile::euclidean();
  CHECK(norm_eval({3, 4}, e) == doctest::Approx(5).epsilon(1e-14));
  CHECK(anti_norm_eval({0, 2}, e) == doctest::Approx(2).epsilon(1e-12));
  CHECK(birkhoff_orthogonal({1, 0}, {0, 1}, e, 1e-9));
  CHECK_FALSE(birkhoff_orthogonal({1, 0}, {1, 1}, e, 1e-9));
  const AntiProfile a = anti_profile(e);
  for (double t : testing::uniform(20, 0, kTwoPi, 1)) {
    CHECK((a.psi(t) - Vec2(std::sin(t), -std::cos(t))).norm() < 1e-12);
    CHECK(a.h_psi(t) == doctest::Approx(1).epsilon(1e-12));
  }
  CHECK_THROWS_AS(birkhoff_orthogonal({0, 0}, {1, 0}, e, 1e-9), Error);
}

TEST_CASE("l_p norm matches the closed form") {
  for (double p : {2.0, 3.0, 4.0, 6.0}) {
    const NormProfile n = NormProfile::lp(p);
    const auto xs = testing::uniform(40, -3, 3, 2);
    for (std::size_t i = 0; i + 1 < xs.size(); i += 2) {
      const Vec2 x(xs[i], xs[i + 1]);
      CHECK(n.norm(x) == doctest::Approx(lp_norm(x, p)).epsilon(1e-13));
    }
  }
  CHECK(NormProfile::lp(2).norm({1, 1}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("exponents below 2 are rejected") {
  CHECK_THROWS_AS(NormProfile::lp(1.5), Error);
  try {
    NormProfile::lp(1.5);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidInput);
  }
}

TEST_CASE("anti-norm of l_3 is the l_{3/2} norm") {
  // Dual of l_3 is l_{3/2}; composing with a quarter turn does not change it.
  const NormProfile n = NormProfile::lp(3);
  const auto xs = testing::uniform(40, -2, 2, 3);
  for (std::size_t i = 0; i + 1 < xs.size(); i += 2) {
    const Vec2 x(xs[i], xs[i + 1]);
    CHECK(n.anti_norm(x) == doctest::Approx(lp_norm(x, 1.5)).epsilon(1e-11));
    CHECK(anti_norm_eval(x, n) == doctest::Approx(lp_norm(x, 1.5)).epsilon(1e-11));
  }
}

TEST_CASE("anti-norm against a brute-force supremum") {
  const NormProfile n = testing::smooth_profile();
  for (double t : {0.2, 1.1, 2.5}) {
    const Vec2 x = 1.7 * unit(t);
    double best = 0;
    for (int j = 0; j < 20000; ++j) best = std::max(best, std::abs(n.det(x, n.phi(kTwoPi * j / 20000))));
    CHECK(n.anti_norm(x) == doctest::Approx(best).epsilon(1e-6));
  }
}

TEST_CASE("profile derivatives agree with finite differences") {
  for (const NormProfile& n : {NormProfile::lp(3), NormProfile::lp(4), testing::smooth_profile()}) {
    for (double t : testing::uniform(25, 0.05, 1.5, 4)) {
      const double h = 1e-5;
      CHECK(n.dp(t) == doctest::Approx((n.p(t + h) - n.p(t - h)) / (2 * h)).epsilon(1e-7));
      CHECK(n.d2p(t) == doctest::Approx((n.dp(t + h) - n.dp(t - h)) / (2 * h)).epsilon(1e-6));
    }
  }
}

TEST_CASE("tangent_point inverts tangent_angle") {
  for (const NormProfile& n : {NormProfile::lp(3), NormProfile::lp(4), testing::smooth_profile()}) {
    for (double a : testing::uniform(50, -7, 7, 5)) {
      const double th = n.tangent_angle(a);
      CHECK(std::abs(n.tangent_point(th) - a) < 1e-9);
    }
  }
}

TEST_CASE("curvature of S against the implicit-curve formula") {
  for (double p : {3.0, 4.0}) {
    const NormProfile n = NormProfile::lp(p);
    for (double a : testing::uniform(20, 0.1, 1.4, 6))
      CHECK(n.polar_curvature(a) == doctest::Approx(lp_implicit_curvature(n.phi(a), p)).epsilon(1e-9));
  }
  const NormProfile e = NormProfile::euclidean();
  CHECK(e.k_phi(0.3) == doctest::Approx(1).epsilon(1e-12));
  CHECK(e.anti_radius(0.3) == doctest::Approx(1).epsilon(1e-12));
}

TEST_CASE("support of B is the dual norm") {
  // h_B(nu) = ||e_nu||_q with 1/p + 1/q = 1.
  const NormProfile n = NormProfile::lp(3);
  for (double nu : testing::uniform(20, 0, kTwoPi, 7))
    CHECK(n.support(nu) == doctest::Approx(lp_norm(unit(nu), 1.5)).epsilon(1e-10));
}

TEST_CASE("right normal is unit in the anti-norm and Birkhoff orthogonal") {
  for (const NormProfile& n : {NormProfile::lp(3), testing::smooth_profile(), NormProfile::lp(4).with_sigma(2)}) {
    for (double th : testing::uniform(20, 0, kTwoPi, 8)) {
      // Tangent of unit norm length in direction th.
      const Vec2 e = n.p(th) * unit(th), r = n.right_normal(th);
      CHECK(n.anti_norm(r) == doctest::Approx(1).epsilon(1e-9));
      CHECK(n.det(e, r) == doctest::Approx(1).epsilon(1e-12));
      CHECK(birkhoff_orthogonal(e, r, n, 1e-7));
    }
  }
}

TEST_CASE("circle tables: totals") {
  const ParamTable e = circle_tables(NormProfile::euclidean());
  CHECK(e.total(Column::s) == doctest::Approx(kTwoPi).epsilon(1e-12));
  CHECK(e.total(Column::u) == doctest::Approx(kTwoPi).epsilon(1e-12));
  CHECK(e.total(Column::s_e) == doctest::Approx(kTwoPi).epsilon(1e-12));
  for (double p : {3.0, 4.0}) {
    const NormProfile n = NormProfile::lp(p);
    // u is twice the swept area.
    CHECK(n.circle_table().total(Column::u) == doctest::Approx(2 * lp_area(p)).epsilon(1e-9));
    CHECK(n.circle_length() == doctest::Approx(n.circle_table().total(Column::s)).epsilon(1e-14));
  }
}

TEST_CASE("u parametrization has unit anti-norm speed") {
  const NormProfile n = NormProfile::lp(3);
  const ParamTable& t = n.circle_table();
  for (double a : testing::uniform(20, 0.05, 1.5, 9)) {
    const double du = t.derivative(Column::u).empty() ? 0 : n.det(n.phi(a), n.dphi(a));
    CHECK(n.anti_norm(n.dphi(a)) == doctest::Approx(du).epsilon(1e-9));
  }
}

TEST_CASE("dual profile of l_3 is l_{3/2}") {
  const NormProfile d = NormProfile::dual(NormProfile::lp(3));
  for (double t : testing::uniform(20, 0, kTwoPi, 10))
    CHECK(d.p(t) == doctest::Approx(1 / lp_norm(unit(t), 1.5)).epsilon(1e-12));
}

TEST_CASE("Radon test") {
  const RadonReport e = is_radon(NormProfile::euclidean(), 1e-9);
  CHECK(e.radon);
  CHECK(e.deviation < 1e-12);
  CHECK(is_radon(NormProfile::euclidean(2.0), 1e-9).radon);
  // sigma = 2 doubles the anti-norm, so the best multiplier is 1/2.
  CHECK(is_radon(NormProfile::euclidean(2.0), 1e-9).scale == doctest::Approx(0.5).epsilon(1e-12));
  const RadonReport l3 = is_radon(NormProfile::lp(3), 1e-6);
  CHECK_FALSE(l3.radon);
  CHECK(l3.deviation > 1e-2);
}

TEST_CASE("flat directions of l_3") {
  const NormProfile n = NormProfile::lp(3);
  const auto& f = n.flat_directions();
  REQUIRE(f.size() == 2);
  CHECK(std::abs(f[0]) < 1e-3);
  CHECK(std::abs(f[1] - kPi / 2) < 1e-3);
  CHECK(NormProfile::euclidean().flat_directions().empty());
  CHECK(testing::smooth_profile().flat_directions().empty());
}

TEST_CASE("custom profiles") {
  // Ellipse x^2/4 + y^2 = 1 tabulated on 256 angles.
  std::vector<double> s(256);
  for (int j = 0; j < 256; ++j) {
    const double t = kTwoPi * j / 256;
    s[j] = 1 / std::sqrt(std::cos(t) * std::cos(t) / 4 + std::sin(t) * std::sin(t));
  }
  const NormProfile n = NormProfile::custom(s);
  for (double t : testing::uniform(10, 0, kTwoPi, 11)) {
    const Vec2 x = 1.3 * unit(t);
    CHECK(n.norm(x) == doctest::Approx(std::sqrt(x.x() * x.x() / 4 + x.y() * x.y())).epsilon(1e-6));
  }
  CHECK_THROWS_AS(NormProfile::custom(std::vector<double>(8, 1.0)), Error);
  std::vector<double> asym(64, 1.0);
  asym[3] = 1.1;
  CHECK_THROWS_AS(NormProfile::custom(asym), Error);
}

TEST_CASE("anti profile smoothness and fit") {
  // The l_{3/2} ball is strictly convex but its curvature blows up on the axes.
  std::vector<double> s(4096);
  for (int j = 0; j < 4096; ++j) {
    const double t = kTwoPi * j / 4096;
    s[j] = 1 / lp_norm(unit(t), 1.5);
  }
  try {
    anti_profile(NormProfile::custom(s));
    FAIL("expected NotC2");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotC2);
  }
  const NormProfile fit = fit_anti_profile(testing::smooth_profile());
  const NormProfile smooth = testing::smooth_profile();
  for (double t : testing::uniform(10, 0, kTwoPi, 12))
    CHECK(fit.norm(unit(t)) == doctest::Approx(smooth.anti_norm(unit(t))).epsilon(1e-6));
  try {
    fit_anti_profile(NormProfile::lp(3));
    FAIL("expected AntiProfileFit");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::AntiProfileFit);
  }
}

TEST_CASE("sigma scales the anti-circle") {
  const NormProfile a = NormProfile::lp(4), b = a.with_sigma(2.0);
  for (double t : testing::uniform(10, 0.1, 1.4, 13)) {
    CHECK(b.anti_radius(t) == doctest::Approx(a.anti_radius(t) / 2).epsilon(1e-12));
    CHECK(b.anti_norm(unit(t)) == doctest::Approx(2 * a.anti_norm(unit(t))).epsilon(1e-12));
  }
}
