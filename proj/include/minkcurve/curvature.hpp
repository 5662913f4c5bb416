#pragma once

#include "minkcurve/curve.hpp"
#include "minkcurve/norm_plane.hpp"

#include <string>
#include <vector>

namespace mink {

/// Frame at one point of a curve parametrized by norm arc length.
struct FrameSample {
  double s = 0.0;
  /// gamma'(s), unit in the norm.
  Vec2 tangent;
  /// n(s): gamma' is Birkhoff orthogonal to n and [gamma', n] = 1.
  Vec2 right_normal;
  /// Arc length position on S of the point whose tangent is parallel to gamma'(s).
  double t_align = 0.0;
};

/// All curvature types at a single point.
struct PointCurvature {
  double theta = 0.0;  ///< direction of gamma'
  double k_e = 0.0, k_m = 0.0, k_n = 0.0, k_c = 0.0, k_l = 0.0;
  bool flat_phi = false;  ///< k_phi(theta) under guard: k_c unreliable
  bool flat_psi = false;  ///< k_psi(theta) under guard: k_n unreliable
};

/// Curvatures sampled on a uniform grid of norm arc length.
struct CurvatureProfile {
  std::vector<double> s, s_a, theta;
  std::vector<double> k_e, k_m, k_n, k_c, k_l;
  /// 1/k_c and 1/k_n.
  std::vector<double> rho, anti_rho;
  std::vector<bool> flat_phi, flat_psi;
  double length = 0.0;
  bool closed = false;

  std::size_t size() const { return s.size(); }
  std::size_t flagged() const;
};

/// Curvatures at parameter t of an arbitrarily parametrized curve.
PointCurvature curvature_at(const PlaneCurve& curve, const NormProfile& profile, double t);

struct CurvatureOptions {
  /// Number of samples; 0 uses the curve's samples_n.
  int grid = 0;
  bool auto_orient = true;
};

CurvatureProfile curvatures(const PlaneCurve& curve, const NormProfile& profile, const CurvatureOptions& opt = {});

/// k_m computed as du/ds from the sector-area table of S, by central differences on the s grid.
std::vector<double> minkowski_curvature_by_area(const PlaneCurve& curve, const NormProfile& profile, int grid = 0);

std::vector<FrameSample> frenet_frame(const PlaneCurve& curve_s, const NormProfile& profile, int grid = 0);

struct FrenetResiduals {
  double r1 = 0.0;  ///< max |gamma'' - k_m n|
  double r2 = 0.0;  ///< max |n' + k_n gamma'|
};
/// Residuals of the Frenet relations with gamma'' and n' taken by central differences on a
/// uniform s grid. The curve is reparametrized by norm arc length first.
FrenetResiduals frenet_residuals(const PlaneCurve& curve, const NormProfile& profile, int grid = 0);

enum class DualMethod { exact, spline };

struct DualityReport {
  double circular_vs_normal = 0.0;     ///< max |k_c - k_n computed in the anti-norm|
  double arclength_vs_minkowski = 0.0; ///< max |k_l - k_m computed in the anti-norm|
  std::size_t samples = 0, skipped = 0;
  std::string method;
};
/// Compares curvatures pointwise on the curve grid; samples flagged by either guard are skipped.
DualityReport duality_check(const PlaneCurve& curve, const NormProfile& profile, DualMethod method = DualMethod::exact,
                            int grid = 0);

}  // namespace mink
