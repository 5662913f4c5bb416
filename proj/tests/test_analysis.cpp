#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "minkcurve/analysis.hpp"
#include "minkcurve/errors.hpp"
#include "support.hpp"

#include <cmath>

using namespace mink;
using testing::lp_norm;

namespace {

const CurvatureType kTypes[] = {CurvatureType::minkowski, CurvatureType::normal, CurvatureType::circular,
                                CurvatureType::arclength};

// Euclidean constant width 2 (h(nu) + h(nu + pi) = 2), not a circle.
PlaneCurve trefoil_width() { return curves::from_support(1.0, {{3, 0.1, 0.0}}); }

}  // namespace

TEST_CASE("four vertices of the euclidean ellipse") {
  const NormProfile e = NormProfile::euclidean();
  for (CurvatureType t : kTypes) {
    const FourVertexReport r = four_vertex_report(curves::ellipse(2, 1), e, t, 1024);
    CHECK(r.count() == 4);
    CHECK(r.holds());
    CHECK_FALSE(r.degenerate);
    CHECK(r.all_opposite_equal);
    int maxima = 0;
    for (const Extremum& x : r.extrema) maxima += x.is_max;
    CHECK(maxima == 2);
  }
}

TEST_CASE("four vertex counts in other norms") {
  for (const NormProfile& n : {NormProfile::lp(3), NormProfile::lp(4), testing::smooth_profile()}) {
    for (CurvatureType t : kTypes) {
      if (t == CurvatureType::normal && n.anti_radius_guard() > 0 && !n.anti_flat_directions().empty()) continue;
      CAPTURE(to_string(t));
      const FourVertexReport r = four_vertex_report(curves::ellipse(2, 1), n, t, 1024);
      CHECK(r.holds());
      CHECK(r.count() % 2 == 0);
    }
  }
}

TEST_CASE("circles are degenerate") {
  const FourVertexReport r = four_vertex_report(curves::circle(3), NormProfile::euclidean(), CurvatureType::minkowski, 256);
  CHECK(r.degenerate);
  CHECK(r.count() == 0);
  CHECK(r.holds());
  const NormProfile n = NormProfile::lp(4);
  CHECK(four_vertex_report(curves::unit_circle(n), n, CurvatureType::circular, 256).degenerate);
}

TEST_CASE("opposite points with equal curvature") {
  // k(theta) - k(theta + pi) changes sign over half a turn, so at least one pair exists.
  const PlaneCurve c = curves::from_support(1.0, {{2, 0.1, 0.05}, {3, 0.04, 0.02}});
  const FourVertexReport r = four_vertex_report(c, NormProfile::euclidean(), CurvatureType::minkowski, 1024);
  CHECK_FALSE(r.all_opposite_equal);
  REQUIRE(r.pairs.size() >= 1);
  const double L = length(c, NormProfile::euclidean(), Metric::norm);
  for (const OppositePair& p : r.pairs) {
    CHECK(std::abs(std::remainder(p.s_b - opposite_s(c, NormProfile::euclidean(), p.s_a), L)) < 1e-6);
    CHECK(p.k > 0);
  }
}

TEST_CASE("opposite point is an involution") {
  const NormProfile n = NormProfile::lp(4);
  const PlaneCurve c = curves::from_support(1.0, {{2, 0.1, 0.05}, {3, 0.04, 0.02}});
  const double L = length(c, n, Metric::norm);
  for (double s : testing::uniform(20, 0, L, 61)) {
    const double o = opposite_s(c, n, s);
    CHECK(std::abs(std::remainder(o - s, L)) > 0.1);
    CHECK(std::abs(std::remainder(opposite_s(c, n, o) - s, L)) < 1e-8);
  }
}

TEST_CASE("line distance is the gap over the dual norm") {
  // The dual of l_3 is l_{3/2}.
  const NormProfile n = NormProfile::lp(3);
  for (double nu : testing::uniform(20, 0, kTwoPi, 62))
    CHECK(line_distance(n, nu, 1.7) == doctest::Approx(1.7 / lp_norm(unit(nu), 1.5)).epsilon(1e-9));
  CHECK(line_distance(NormProfile::euclidean(), 0.4, 2.0) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("support samples") {
  const std::vector<double> nu = testing::uniform(20, 0, kTwoPi, 63);
  const std::vector<double> h = support_samples(curves::ellipse(2, 1), nu);
  for (std::size_t i = 0; i < nu.size(); ++i) {
    const double c = std::cos(nu[i]), s = std::sin(nu[i]);
    CHECK(h[i] == doctest::Approx(std::sqrt(4 * c * c + s * s)).epsilon(1e-10));
  }
}

TEST_CASE("width functions") {
  const NormProfile e = NormProfile::euclidean();
  const WidthReport c = width_function(curves::circle(1.5, {2, 1}), e, 64);
  CHECK(c.constant);
  CHECK(c.min == doctest::Approx(3).epsilon(1e-10));

  const WidthReport el = width_function(curves::ellipse(2, 1), e, 256);
  CHECK_FALSE(el.constant);
  CHECK(el.min == doctest::Approx(2).epsilon(1e-9));
  CHECK(el.max == doctest::Approx(4).epsilon(1e-9));

  const WidthReport t = width_function(trefoil_width(), e, 256);
  CHECK(t.constant);
  CHECK(t.mean == doctest::Approx(2).epsilon(1e-9));

  // A euclidean circle in l_3: width is 2R over the dual norm.
  const NormProfile n = NormProfile::lp(3);
  const WidthReport w = width_function(curves::circle(1), n, 128);
  for (std::size_t i = 0; i < w.nu.size(); ++i)
    CHECK(w.width[i] == doctest::Approx(2 / lp_norm(unit(w.nu[i]), 1.5)).epsilon(1e-8));
}

TEST_CASE("constant width checks") {
  const NormProfile e = NormProfile::euclidean();
  const ConstantWidthReport t = constant_width_checks(trefoil_width(), e, 2.0, 1024);
  CHECK(t.radii_sum < 1e-8);
  // Barbier: length pi d.
  CHECK(t.length_defect < 1e-8);
  CHECK_FALSE(t.is_circle);
  CHECK(t.halving > 1e-2);
  CHECK(t.halving_consistent);

  // S has constant width 2 in its own norm.
  const NormProfile n = testing::smooth_profile();
  const ConstantWidthReport s = constant_width_checks(curves::unit_circle(n), n, 2.0, 1024);
  CHECK(s.radii_sum < 1e-8);
  CHECK(s.length_defect < 1e-8);
  CHECK(s.is_circle);
  CHECK(s.halving < 1e-8);
  CHECK(s.halving_consistent);

  try {
    constant_width_checks(curves::ellipse(2, 1), e, 2.0, 256);
    FAIL("expected NotConstantWidth");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::NotConstantWidth);
  }
}

TEST_CASE("support comparison") {
  const NormProfile e = NormProfile::euclidean();
  const SupportComparison a = support_comparison(curves::circle(2), curves::circle(1), e, 256);
  CHECK(a.contains);
  CHECK(a.margin == doctest::Approx(1).epsilon(1e-10));
  CHECK_FALSE(support_comparison(curves::circle(1), curves::circle(1, {3, 0}), e, 256).contains);
  CHECK_FALSE(support_comparison(curves::circle(1), curves::circle(2), e, 256).contains);
  // Internally tangent Minkowski circles.
  const NormProfile n = NormProfile::lp(4);
  const SupportComparison t =
      support_comparison(curves::unit_circle(n, 2), curves::unit_circle(n).translated({1, 0}), n, 512, 1e-9);
  CHECK(t.contains);
  CHECK(std::abs(t.margin) < 1e-9);
}

TEST_CASE("inclusion of extremal circles") {
  const InclusionReport e = inclusion_check(curves::ellipse(2, 1), NormProfile::euclidean(), 1024);
  CHECK(e.r_min_circle == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(e.r_max_circle == doctest::Approx(4).epsilon(1e-8));
  CHECK(e.worst() >= -1e-9);
  for (const NormProfile& n : {NormProfile::lp(4), testing::smooth_profile()}) {
    const InclusionReport r = inclusion_check(curves::from_support(1.0, {{2, 0.1, 0.05}, {3, 0.04, 0.0}}), n, 1024);
    CHECK(r.worst() >= -1e-8);
    CHECK(r.r_min_circle < r.r_max_circle);
  }
}

TEST_CASE("plane probes") {
  const PlaneProbes e = plane_probes(NormProfile::euclidean(), 512);
  CHECK(e.radon_deviation < 1e-8);
  CHECK(e.km_kn < 1e-8);
  CHECK(e.km_variance < 1e-12);
  const PlaneProbes l = plane_probes(NormProfile::lp(4), 512);
  CHECK(l.radon_deviation > 1e-2);
  CHECK(l.km_variance > 1e-2);
}

TEST_CASE("isometries of l_4 preserve curvature") {
  const NormProfile n = NormProfile::lp(4);
  const PlaneCurve c = curves::from_support(1.0, {{2, 0.1, 0.05}, {3, 0.04, 0.0}});
  const auto group = square_symmetries();
  REQUIRE(group.size() == 8);
  int reflections = 0;
  for (const Eigen::Matrix2d& A : group) {
    const IsometryReport r = isometry_check(c, n, A, 512);
    reflections += r.det < 0;
    CHECK(r.max_abs_diff < 1e-6);
    CHECK(r.sign_ok);
  }
  CHECK(reflections == 4);
  const Eigen::Matrix2d R = Eigen::Rotation2Dd(0.3).toRotationMatrix();
  CHECK_THROWS_AS(isometry_check(c, n, R, 64), Error);
  CHECK_NOTHROW(isometry_check(c, NormProfile::euclidean(), R, 64));
}

TEST_CASE("random convex family") {
  const auto a = random_convex_family(), b = random_convex_family();
  REQUIRE(a.size() == 20);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].eval(0.3) == b[i].eval(0.3));
    CHECK(signed_area(a[i]) > 0);
  }
  CHECK(random_convex_family(3, 7)[0].eval(0.3) != a[0].eval(0.3));
}
