#pragma once

#include "minkcurve/curve.hpp"
#include "minkcurve/norm_plane.hpp"

#include <vector>

namespace mink {

/// Curvature center xi = gamma - rho phi(t) at parameter t of any parametrization of the curve,
/// with rho = 1/k_c and phi(t) the point of S whose tangent is parallel to gamma'(t).
Vec2 evolute_point(const PlaneCurve& curve, const NormProfile& profile, double t);

struct EvoluteResult {
  std::vector<double> s;  ///< norm arc length of the source curve
  std::vector<Vec2> points;
  std::vector<double> rho, drho;
  std::vector<double> cusps;  ///< s of zeros of rho' (sign changes)
  std::vector<Vec2> cusp_points;
  /// s where rho itself vanishes (tangent along a flat direction of S); the evolute touches the
  /// curve there and rho' is unbounded.
  std::vector<double> contacts;
  /// max |xi' + rho' phi(t)| with xi' from central differences, over samples whose stencil stays
  /// clear of contact points.
  double tangency = 0.0;
  /// max |[xi', phi(t)]| / |xi'| over samples with |xi'| > 1e-8.
  double cross_residual = 0.0;
  /// |d+ + d-| at each cusp, with d-, d+ the unit one-sided chord directions of the evolute at
  /// eps = 1e-5 L; zero means exactly antipodal.
  std::vector<double> cusp_antipodality;
  int skipped = 0;  ///< samples left out of the tangency residuals
  double length = 0.0;
  bool closed = false;

  /// Point lists between consecutive cusps.
  std::vector<std::vector<Vec2>> arcs() const;
};

/// Evolute sampled on `grid` points of norm arc length (the curve is reparametrized first).
/// Throws VanishingCurvature where k_c = 0.
EvoluteResult evolute(const PlaneCurve& curve, const NormProfile& profile, int grid = 0);

/// eta(s) = gamma(s) + (c - s) gamma'(s) for gamma by norm arc length. Open curve on [0, L].
PlaneCurve involute(const PlaneCurve& curve, const NormProfile& profile, double c);

struct ParallelResult {
  PlaneCurve curve;
  std::vector<double> s;          ///< sample grid in norm arc length
  std::vector<double> factor;     ///< 1 + d k_c
  std::vector<bool> singular;     ///< |1 + d k_c| <= tol on the grid
  std::vector<double> roots;      ///< zeros of 1 + d k_c (sign changes and touching minima)
  std::vector<Vec2> root_points;
};

/// gamma_d(s) = gamma(s) + d phi(t(s)) by norm arc length of gamma.
ParallelResult left_parallel(const PlaneCurve& curve, const NormProfile& profile, double d, int grid = 0,
                             double tol = 1e-9);

struct OsculatingCircle {
  Vec2 center;
  double radius = 0.0;
};
/// Osculating Minkowski circle at parameter t0 of the given curve.
OsculatingCircle osculating_circle(const PlaneCurve& curve, const NormProfile& profile, double t0);

enum class VertexKind { ordinary, degenerate };

struct Vertex {
  double s = 0.0;
  VertexKind kind = VertexKind::ordinary;
  double k_c = 0.0, dk_c = 0.0, d2k_c = 0.0;
};

struct VertexReport {
  std::vector<Vertex> vertices;
  /// k_c is constant along the whole curve: every point is a vertex and none is listed.
  bool continuum = false;
};

/// Zeros of k_c' in norm arc length, by sign changes on the grid and bisection to 1e-10.
VertexReport vertices(const PlaneCurve& curve, const NormProfile& profile, int grid = 0);

struct SquaredDistanceReport {
  /// Number of leading derivatives f', f'', f''', f'''' that vanish at t0 (4 means 4 or more).
  int order = 0;
  double derivative[4] = {0, 0, 0, 0};
  double threshold[4] = {0, 0, 0, 0};
};

/// f(t) = ||gamma(t) - a||^2 at the parameter t0 of the given curve. Throws PointOnCurve when a
/// lies on the curve.
SquaredDistanceReport squared_distance_singularity(const PlaneCurve& curve, const NormProfile& profile,
                                                   const Vec2& a, double t0);

struct EvoluteLength {
  double signed_length = 0.0;
  double unsigned_length = 0.0;
  /// Signed lengths of the arcs between consecutive cusps and contacts; they sum to signed_length.
  std::vector<double> arcs;
};

/// Quadrature of -rho'(s) over the closed curve. Throws VanishingCurvature.
EvoluteLength signed_evolute_length(const PlaneCurve& curve, const NormProfile& profile, int grid = 0);

/// Closed-form coordinates stated for the first-quadrant evolute of the l_q circle in the l_p
/// norm, 1/p + 1/q = 1, at t in (0, 1).
Vec2 lq_evolute_closed_form(double p, double t);

/// First-quadrant arc t -> (t^(1/q), (1-t)^(1/q)) of the l_q circle on [a, b] within (0, 1).
PlaneCurve lq_quadrant_arc(double q, double a, double b);

}  // namespace mink
