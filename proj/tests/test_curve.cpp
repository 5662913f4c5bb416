#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "minkcurve/curve.hpp"
#include "minkcurve/errors.hpp"
#include "support.hpp"

#include <cmath>

using namespace mink;
using testing::lp_norm;

namespace {

double lp_area(double p) { return 4 * std::pow(std::tgamma(1 + 1 / p), 2) / std::tgamma(1 + 2 / p); }

// Dense chord sum with the closed-form norm.
double chord_length(const PlaneCurve& c, double p, int n) {
  double L = 0;
  for (int j = 0; j < n; ++j) {
    const double a = c.t0() + c.span() * j / n, b = c.t0() + c.span() * (j + 1) / n;
    L += lp_norm(c.eval(b) - c.eval(a), p);
  }
  return L;
}

}  // namespace

TEST_CASE("euclidean lengths") {
  const NormProfile e = NormProfile::euclidean();
  CHECK(length(curves::circle(1), e, Metric::norm) == doctest::Approx(kTwoPi).epsilon(1e-12));
  CHECK(length(curves::circle(2.5, {1, -3}), e, Metric::euclidean) == doctest::Approx(5 * kPi).epsilon(1e-12));
  CHECK(length(curves::segment({0, 0}, {3, 4}), e, Metric::norm) == doctest::Approx(5).epsilon(1e-12));
  // Cauchy: a convex curve has length equal to the integral of its support function.
  const PlaneCurve c = curves::from_support(1.0, {{3, 0.05, 0.02}, {2, 0.1, 0.0}});
  CHECK(length(c, e, Metric::euclidean) == doctest::Approx(kTwoPi).epsilon(1e-10));
}

TEST_CASE("l_p lengths against dense chords") {
  for (double p : {3.0, 4.0}) {
    const NormProfile n = NormProfile::lp(p);
    for (const PlaneCurve& c : {curves::circle(1.5), curves::ellipse(2, 1)}) {
      const double L = length(c, n, Metric::norm);
      CHECK(L == doctest::Approx(chord_length(c, p, 200000)).epsilon(1e-8));
      CHECK(polygon_length(c, n, Metric::norm, 4000) == doctest::Approx(L).epsilon(1e-5));
      CHECK(polygon_length(c, n, Metric::norm, 4000) <= L);
    }
  }
}

TEST_CASE("unit circle lengths") {
  for (double p : {3.0, 4.0}) {
    const NormProfile n = NormProfile::lp(p);
    const PlaneCurve S = curves::unit_circle(n);
    CHECK(length(S, n, Metric::norm) == doctest::Approx(n.circle_length()).epsilon(1e-9));
    // The anti-norm speed of S is [phi, phi'], so its anti-length is twice the area of B.
    CHECK(length(S, n, Metric::anti_norm) == doctest::Approx(2 * lp_area(p)).epsilon(1e-8));
    for (double t : testing::uniform(10, 0, kTwoPi, 21))
      CHECK(lp_norm(S.eval(t), p) == doctest::Approx(1).epsilon(1e-12));
  }
}

TEST_CASE("ellipse euclidean curvature") {
  const double a = 2, b = 1;
  const PlaneCurve c = curves::ellipse(a, b);
  for (double t : testing::uniform(20, 0, kTwoPi, 22)) {
    const double s = std::sin(t), co = std::cos(t);
    const double k = a * b / std::pow(a * a * s * s + b * b * co * co, 1.5);
    CHECK(euclidean_curvature_at(c, t) == doctest::Approx(k).epsilon(1e-12));
  }
  const CurveSamples ks = euclidean_curvature(curves::circle(4), 64);
  REQUIRE(ks.value.size() == 64);
  for (double v : ks.value) CHECK(v == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("reparametrization by arc length") {
  const NormProfile n = NormProfile::lp(3);
  const Reparametrized r = reparametrize(curves::ellipse(2, 1), n, Target::norm_arclength);
  CHECK(r.curve.span() == doctest::Approx(length(curves::ellipse(2, 1), n, Metric::norm)).epsilon(1e-9));
  for (double s : testing::uniform(30, 0, r.curve.span(), 23))
    CHECK(speed(r.curve, n, Metric::norm, s) == doctest::Approx(1).epsilon(1e-6));

  const NormProfile e = NormProfile::euclidean();
  const Reparametrized c = reparametrize(curves::circle(2), e, Target::euclid_arclength);
  CHECK(c.curve.span() == doctest::Approx(4 * kPi).epsilon(1e-10));
  CHECK(c.curve.closed());

  const Reparametrized a = reparametrize(curves::ellipse(2, 1), n, Target::anti_arclength);
  for (double s : testing::uniform(20, 0, a.curve.span(), 24))
    CHECK(speed(a.curve, n, Metric::anti_norm, s) == doctest::Approx(1).epsilon(1e-6));
}

TEST_CASE("reparametrization by tangent angle") {
  const Reparametrized r = reparametrize(curves::ellipse(3, 1), NormProfile::euclidean(), Target::tangent_angle);
  CHECK(r.curve.span() == doctest::Approx(kTwoPi).epsilon(1e-9));
  const double h = 1e-4;
  for (double t : testing::uniform(20, 0.1, 6.0, 25)) {
    const Vec2 a = r.curve.d1(t - h), b = r.curve.d1(t + h);
    const double turn = std::atan2(a.x() * b.y() - a.y() * b.x(), a.dot(b));
    CHECK(turn / (2 * h) == doctest::Approx(1).epsilon(1e-5));
  }
}

TEST_CASE("orientation and area") {
  const PlaneCurve c = curves::circle(2);
  CHECK(signed_area(c) == doctest::Approx(4 * kPi).epsilon(1e-12));
  CHECK(signed_area(c.reversed()) == doctest::Approx(-4 * kPi).epsilon(1e-12));
  CHECK(signed_area(positively_oriented(c.reversed())) == doctest::Approx(4 * kPi).epsilon(1e-12));
  Eigen::Matrix2d A;
  A << 2, 1, 0.5, 3;
  CHECK(signed_area(c.transformed(A, {5, 5})) == doctest::Approx(A.determinant() * 4 * kPi).epsilon(1e-12));
  CHECK(signed_area(curves::ellipse(3, 2)) == doctest::Approx(6 * kPi).epsilon(1e-12));
}

TEST_CASE("support curves must be convex") {
  try {
    curves::from_support(1.0, {{2, 0.5, 0.0}});
    FAIL("expected NotConvex");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotConvex);
  }
  // h + h'' = 1 - 3 * 0.1 cos 2 theta stays positive.
  CHECK_NOTHROW(curves::from_support(1.0, {{2, 0.1, 0.0}}));
}

TEST_CASE("sampled curves") {
  std::vector<Vec2> pts;
  for (int j = 0; j < 256; ++j) pts.push_back(unit(kTwoPi * j / 256));
  const PlaneCurve c = curves::sampled(pts, true);
  CHECK(c.closed());
  CHECK(length(c, NormProfile::euclidean(), Metric::euclidean) == doctest::Approx(kTwoPi).epsilon(1e-6));
  for (double t : testing::uniform(20, 0, 1, 26)) CHECK(c.eval(t).norm() == doctest::Approx(1).epsilon(1e-6));

  std::vector<Vec2> zig;
  for (int j = 0; j < 10; ++j) zig.emplace_back(j, j % 2);
  const PlaneCurve open = curves::sampled(zig, false);
  CHECK_FALSE(open.closed());
  CHECK((open.eval(open.t1()) - Vec2(9, 1)).norm() < 1e-12);
  CHECK_THROWS_AS(curves::sampled({{0, 0}, {1, 1}, {2, 0}}, false), Error);
}

TEST_CASE("parameter table round trip") {
  const NormProfile n = NormProfile::lp(4);
  const PlaneCurve c = curves::ellipse(2, 1);
  const ParamTable t = param_table(c, n, 512);
  REQUIRE(t.invertible(Column::s));
  CHECK(t.total(Column::s) == doctest::Approx(length(c, n, Metric::norm)).epsilon(1e-8));
  for (double x : testing::uniform(30, 0, c.span(), 27)) {
    const double s = t.map(Column::param, Column::s, x);
    CHECK(s == doctest::Approx(arc_length(c, n, Metric::norm, c.t0(), x)).epsilon(1e-7));
    CHECK(t.map(Column::s, Column::param, s) == doctest::Approx(x).epsilon(1e-9));
  }
}

TEST_CASE("restriction and translation") {
  const PlaneCurve c = curves::circle(1).restricted(0, kPi);
  CHECK_FALSE(c.closed());
  CHECK(length(c, NormProfile::euclidean(), Metric::euclidean) == doctest::Approx(kPi).epsilon(1e-12));
  const PlaneCurve d = curves::circle(1).translated({2, 3});
  CHECK((d.eval(0) - Vec2(3, 3)).norm() < 1e-14);
}
