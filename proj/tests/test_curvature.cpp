#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "minkcurve/curvature.hpp"
#include "minkcurve/errors.hpp"
#include "support.hpp"

#include <cmath>

using namespace mink;
using testing::lp_norm;

TEST_CASE("all curvature types agree with k_e in the euclidean plane") {
  const NormProfile e = NormProfile::euclidean();
  const PlaneCurve c = curves::ellipse(2, 1);
  for (double t : testing::uniform(20, 0, kTwoPi, 31)) {
    const PointCurvature k = curvature_at(c, e, t);
    CHECK(k.k_m == doctest::Approx(k.k_e).epsilon(1e-12));
    CHECK(k.k_n == doctest::Approx(k.k_e).epsilon(1e-12));
    CHECK(k.k_c == doctest::Approx(k.k_e).epsilon(1e-12));
    CHECK(k.k_l == doctest::Approx(k.k_e).epsilon(1e-12));
    CHECK_FALSE(k.flat_phi);
  }
  const CurvatureProfile cp = curvatures(c, e, {512});
  CHECK(cp.size() == 512);
  CHECK(cp.length == doctest::Approx(length(c, e, Metric::norm)).epsilon(1e-10));
  CHECK(cp.flagged() == 0);
}

TEST_CASE("the unit circle has circular curvature 1 and the anti-circle normal curvature 1") {
  for (const NormProfile& n : {NormProfile::lp(4), testing::smooth_profile(), NormProfile::lp(3).with_sigma(1.7)}) {
    const CurvatureProfile s = curvatures(curves::unit_circle(n), n, {400});
    for (std::size_t i = 0; i < s.size(); ++i)
      if (!s.flat_phi[i]) CHECK(s.k_c[i] == doctest::Approx(1).epsilon(1e-7));
    const CurvatureProfile a = curvatures(curves::anti_circle(n), n, {400});
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!a.flat_psi[i]) CHECK(a.k_n[i] == doctest::Approx(1).epsilon(1e-7));
  }
}

TEST_CASE("circles of radius r have curvature 1/r") {
  const NormProfile n = NormProfile::lp(4);
  const PlaneCurve S = curves::unit_circle(n, 2.5);
  for (double t : testing::uniform(10, 0.2, 1.3, 32)) CHECK(curvature_at(S, n, t).k_c == doctest::Approx(0.4).epsilon(1e-9));
}

TEST_CASE("scaling a curve divides every curvature") {
  const NormProfile n = NormProfile::lp(3);
  const PlaneCurve c = curves::ellipse(2, 1);
  Eigen::Matrix2d A = 3 * Eigen::Matrix2d::Identity();
  const PlaneCurve d = c.transformed(A, {1, -2});
  for (double t : testing::uniform(10, 0.2, 1.3, 33)) {
    const PointCurvature a = curvature_at(c, n, t), b = curvature_at(d, n, t);
    CHECK(b.k_m == doctest::Approx(a.k_m / 3).epsilon(1e-12));
    CHECK(b.k_n == doctest::Approx(a.k_n / 3).epsilon(1e-12));
    CHECK(b.k_c == doctest::Approx(a.k_c / 3).epsilon(1e-12));
    CHECK(b.k_l == doctest::Approx(a.k_l / 3).epsilon(1e-12));
  }
}

TEST_CASE("minkowski curvature against [g', g''] in norm arc length") {
  const NormProfile n = NormProfile::lp(4);
  const Reparametrized r = reparametrize(curves::ellipse(2, 1), n, Target::norm_arclength);
  const double h = 1e-4;
  for (double s : testing::uniform(15, 0.1, r.curve.span() - 0.1, 34)) {
    const Vec2 g1 = (r.curve.eval(s + h) - r.curve.eval(s - h)) / (2 * h);
    const Vec2 g2 = (r.curve.eval(s + h) - 2 * r.curve.eval(s) + r.curve.eval(s - h)) / (h * h);
    const double k = g1.x() * g2.y() - g1.y() * g2.x();
    CHECK(curvature_at(r.curve, n, s).k_m == doctest::Approx(k).epsilon(1e-5));
  }
}

TEST_CASE("minkowski curvature from the sector-area table") {
  // Central differences of u(s): the error shrinks by about 4 when the grid doubles.
  const NormProfile n = NormProfile::lp(4);
  const PlaneCurve c = curves::ellipse(2, 1);
  double err[2];
  for (int g : {0, 1}) {
    const int grid = 1024 << g;
    const CurvatureProfile cp = curvatures(c, n, {grid});
    const std::vector<double> km = minkowski_curvature_by_area(c, n, grid);
    REQUIRE(km.size() == cp.size());
    err[g] = 0;
    for (std::size_t i = 0; i < km.size(); ++i) err[g] = std::max(err[g], std::abs(km[i] - cp.k_m[i]));
  }
  CHECK(err[0] < 1e-3);
  CHECK(err[1] < err[0] / 3);
}

TEST_CASE("duality between the norm and the anti-norm") {
  for (const NormProfile& n : {NormProfile::lp(3), testing::smooth_profile()}) {
    const DualityReport r = duality_check(curves::ellipse(2, 1), n, DualMethod::exact, 1024);
    CHECK(r.circular_vs_normal < 1e-6);
    CHECK(r.arclength_vs_minkowski < 1e-6);
    CHECK(r.samples > 0);
  }
  const DualityReport s = duality_check(curves::ellipse(2, 1), testing::smooth_profile(), DualMethod::spline, 1024);
  CHECK(s.method == "spline");
  CHECK(s.circular_vs_normal < 1e-4);
}

TEST_CASE("Frenet relations") {
  const FrenetResiduals e = frenet_residuals(curves::ellipse(2, 1), NormProfile::euclidean(), 2048);
  CHECK(e.r1 < 1e-5);
  CHECK(e.r2 < 1e-5);
  const FrenetResiduals s = frenet_residuals(curves::ellipse(2, 1), testing::smooth_profile(), 2048);
  CHECK(s.r1 < 1e-4);
  CHECK(s.r2 < 1e-4);
  const FrenetResiduals a = frenet_residuals(curves::ellipse(2, 1), testing::smooth_profile(), 512);
  CHECK(s.r1 < a.r1);
}

TEST_CASE("frame is norm-unit and Birkhoff orthogonal") {
  const NormProfile n = NormProfile::lp(4);
  const Reparametrized r = reparametrize(curves::ellipse(2, 1), n, Target::norm_arclength);
  for (const FrameSample& f : frenet_frame(r.curve, n, 64)) {
    CHECK(lp_norm(f.tangent, 4) == doctest::Approx(1).epsilon(1e-6));
    CHECK(n.det(f.tangent, f.right_normal) == doctest::Approx(1).epsilon(1e-9));
    CHECK(birkhoff_orthogonal(f.tangent, f.right_normal, n, 1e-6));
  }
}

TEST_CASE("flat directions are flagged") {
  const NormProfile n = NormProfile::lp(3);
  const CurvatureProfile cp = curvatures(curves::circle(1), n, {1024});
  CHECK(cp.flagged() > 0);
  CHECK(cp.flagged() < cp.size() / 10);
}
