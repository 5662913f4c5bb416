#pragma once

#include "minkcurve/curvature.hpp"
#include "minkcurve/reconstruct.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace mink {

/// Samples of one curvature type from a profile, in order of s.
std::vector<double> curvature_values(const CurvatureProfile& cp, CurvatureType type);

struct Extremum {
  double s = 0.0, theta = 0.0, value = 0.0;
  bool is_max = false;
};

struct OppositePair {
  double theta = 0.0;  ///< tangent angle at the first point; the second has theta + pi
  double s_a = 0.0, s_b = 0.0;
  double k = 0.0;  ///< common curvature value
};

struct FourVertexReport {
  CurvatureType type = CurvatureType::circular;
  std::vector<Extremum> extrema;
  std::vector<OppositePair> pairs;
  /// The curvature is constant up to 1e-6 relative: no extrema are counted.
  bool degenerate = false;
  std::size_t skipped = 0;  ///< guard-flagged samples left out
  /// k(theta) = k(theta + pi) everywhere (centrally symmetric curve): every point pairs, none listed.
  bool all_opposite_equal = false;

  std::size_t count() const { return extrema.size(); }
  bool holds() const { return degenerate || extrema.size() >= 4; }
};

/// Strict local extrema of the chosen curvature over one period, counted by a zig-zag pass with
/// prominence 1e-8 of the range, plus points with parallel tangents and equal curvature from roots
/// of k(theta) - k(theta + pi). Throws NotConvex.
FourVertexReport four_vertex_report(const PlaneCurve& curve, const NormProfile& profile, CurvatureType type,
                                    int grid = 0);

/// Norm arc length of the point whose tangent is opposite to the tangent at s.
double opposite_s(const PlaneCurve& curve, const NormProfile& profile, double s);

/// Euclidean support function h(nu) = max <gamma, e_nu> of a closed strictly convex curve.
std::vector<double> support_samples(const PlaneCurve& curve, const std::vector<double>& nu);

/// Norm distance between the parallel lines <x, e_nu> = a and <x, e_nu> = a - w, by Brent
/// minimization of ||w e_nu + tau e_nu^perp|| over tau.
double line_distance(const NormProfile& profile, double nu, double w);

struct WidthReport {
  std::vector<double> nu, width;
  double min = 0.0, max = 0.0, mean = 0.0;
  bool constant = false;  ///< (max - min) / mean < tol
};

/// Norm distance between the two supporting lines with outer normals e_nu and -e_nu, on `grid`
/// directions of [0, 2 pi). Throws NotConvex.
WidthReport width_function(const PlaneCurve& curve, const NormProfile& profile, int grid = 0, double tol = 1e-6);

struct ConstantWidthReport {
  double width = 0.0;
  double radii_sum = 0.0;      ///< max |rho(theta) + rho(theta + pi) - d|, rho = 1/k_c
  double length_defect = 0.0;  ///< |l(gamma) - d l(S) / 2|
  double halving = 0.0;        ///< max |length difference of the two arcs between opposite points|
  double k_c_variation = 0.0;  ///< (max - min) / max of k_c
  bool is_circle = false;      ///< k_c_variation < tol
  /// halving below tol exactly when the curve is a Minkowski circle.
  bool halving_consistent = false;
};

/// Radii-sum, length and equal-halving checks for a curve of constant width d. Throws
/// NotConstantWidth when the width deviates from d by more than tol relative.
ConstantWidthReport constant_width_checks(const PlaneCurve& curve, const NormProfile& profile, double d,
                                          int grid = 0, double tol = 1e-6);

struct SupportComparison {
  bool contains = false;
  double margin = 0.0;  ///< min over directions of h_a - h_b
};

/// Whether the region of curve_a contains curve_b, by support functions on `grid` directions.
SupportComparison support_comparison(const PlaneCurve& curve_a, const PlaneCurve& curve_b, const NormProfile& profile,
                                     int grid = 0, double tol = 1e-9);

struct InclusionReport {
  /// Margins: smallest circle inside the curve, curve inside the largest circle, smallest
  /// anti-circle inside the curve, curve inside the largest anti-circle.
  std::array<double, 4> margins{};
  double r_min_circle = 0.0, r_max_circle = 0.0, r_min_anti = 0.0, r_max_anti = 0.0;
  Vec2 c_min_circle = Vec2::Zero(), c_max_circle = Vec2::Zero(), c_min_anti = Vec2::Zero(),
       c_max_anti = Vec2::Zero();

  double worst() const;
};

/// Extremal osculating circles (from k_c) and anti-circles (from k_n) against the curve, compared
/// by support functions. Throws NotConvex.
InclusionReport inclusion_check(const PlaneCurve& curve, const NormProfile& profile, int grid = 0);

struct PlaneProbes {
  double radon_deviation = 0.0;  ///< max |k_n - k_c| on S
  double km_kn = 0.0;            ///< max |k_m - k_n| on S
  double km_variance = 0.0;      ///< variance of k_m on S
  std::size_t skipped = 0;
};

PlaneProbes plane_probes(const NormProfile& profile, int grid = 0);

struct IsometryReport {
  double det = 1.0;
  double max_abs_diff = 0.0;  ///< max over types and samples of ||k'| - |k||
  bool sign_ok = true;        ///< sign(k' k) equals sign(det) at every sample with |k| > 1e-9
  std::size_t skipped = 0;
};

/// Curvatures of A gamma against gamma, sample by sample in norm arc length without reorienting.
/// Throws InvalidInput when A does not preserve the norm to 1e-12.
IsometryReport isometry_check(const PlaneCurve& curve, const NormProfile& profile, const Eigen::Matrix2d& A,
                              int grid = 0);

/// Quarter turns and the reflections in the axes and diagonals.
std::vector<Eigen::Matrix2d> square_symmetries();

/// Seeded family of smooth strictly convex curves: support h = 1 + sum over k = 2..4 of
/// a_k cos k nu + b_k sin k nu with sum (k^2 - 1)(|a_k| + |b_k|) < 0.8.
std::vector<PlaneCurve> random_convex_family(int count = 20, std::uint64_t seed = 20240611);

}  // namespace mink
