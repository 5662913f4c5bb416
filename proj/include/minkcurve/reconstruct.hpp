#pragma once

#include "minkcurve/curve.hpp"
#include "minkcurve/norm_plane.hpp"

#include <functional>
#include <string>

namespace mink {

enum class CurvatureType { minkowski, normal, circular, arclength };

const char* to_string(CurvatureType t);
/// Accepts "minkowski", "normal", "circular", "arclength" (and the short forms m, n, c, l).
CurvatureType curvature_type_from_string(const std::string& s);

struct ReconstructOptions {
  Vec2 start = Vec2::Zero();
  /// Initial tangent direction; only its direction is used.
  Vec2 start_dir = Vec2(1.0, 0.0);
  int steps = 8192;
};

/// Integrates theta' = v(theta) k_e, gamma' = v(theta) e_theta with classical RK4, where k_e is
/// obtained from k through the curvature bridge and v is p (norm arc length) or q (anti-norm arc
/// length, arclength type only). For the arclength type k is a function of s_a on [0, L] and the
/// result is reparametrized by norm arc length. The returned curve is open.
PlaneCurve curve_from_curvature(const std::function<double(double)>& k, double L, CurvatureType type,
                                const NormProfile& profile, const ReconstructOptions& opt = {});

/// Closed curve of constant curvature `value` of the given type: Minkowski circle (circular),
/// anti-circle (normal), homothet of the centroid curve of S (minkowski) or of S_a (arclength).
PlaneCurve constant_curvature_curve(CurvatureType type, double value, const NormProfile& profile);

/// Support function of the value-1 constant-curvature curve (minkowski or arclength type).
double centroid_support(CurvatureType type, const NormProfile& profile, double nu);

struct Concurrence {
  Vec2 point = Vec2::Zero();
  /// Largest Euclidean distance from `point` to a line of the family.
  double residual = 0.0;
};

struct ConcurrenceReport {
  Concurrence left, right;
};

/// Least-squares common point of the left-normal lines (gamma + lambda phi(t(s))) and of the
/// right-normal lines (gamma + lambda n(s)), sampled on the curve grid.
ConcurrenceReport normal_concurrence_test(const PlaneCurve& curve, const NormProfile& profile, int grid = 0);

}  // namespace mink
