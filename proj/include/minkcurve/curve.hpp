#pragma once

#include "minkcurve/norm_plane.hpp"
#include "minkcurve/numeric.hpp"
#include "minkcurve/param_table.hpp"

#include <Eigen/Dense>

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace mink {

/// Parametric C2 plane curve on [t0, t1]. Closed curves are evaluated periodically.
class PlaneCurve {
 public:
  using Fn = std::function<Vec2(double)>;
  static constexpr int kDefaultSamples = 2048;

  PlaneCurve() = default;
  PlaneCurve(Fn eval, Fn d1, Fn d2, double t0, double t1, bool closed, int samples_n = kDefaultSamples);

  Vec2 eval(double t) const { return f_->eval(wrap(t)); }
  Vec2 d1(double t) const { return f_->d1(wrap(t)); }
  Vec2 d2(double t) const { return f_->d2(wrap(t)); }
  double t0() const { return t0_; }
  double t1() const { return t1_; }
  double span() const { return t1_ - t0_; }
  bool closed() const { return closed_; }
  int samples_n() const { return samples_n_; }
  bool empty() const { return !f_; }

  /// Uniform parameter grid: n points without the endpoint for closed curves, n + 1 otherwise.
  std::vector<double> grid(int n = 0) const;

  PlaneCurve with_samples(int n) const;
  PlaneCurve reversed() const;
  /// x -> A x + b.
  PlaneCurve transformed(const Eigen::Matrix2d& A, const Vec2& b = Vec2::Zero()) const;
  PlaneCurve translated(const Vec2& b) const { return transformed(Eigen::Matrix2d::Identity(), b); }
  /// Restriction to [a, b] as an open curve.
  PlaneCurve restricted(double a, double b) const;

 private:
  struct Fns {
    Fn eval, d1, d2;
  };
  std::shared_ptr<const Fns> f_;
  double t0_ = 0.0, t1_ = 1.0;
  bool closed_ = false;
  int samples_n_ = kDefaultSamples;
  double wrap(double t) const;
};

namespace curves {

PlaneCurve circle(double radius, const Vec2& center = Vec2::Zero());
PlaneCurve ellipse(double a, double b);
PlaneCurve segment(const Vec2& a, const Vec2& b);

struct Harmonic {
  int k;
  double c, s;
};
/// Convex curve with support function h = h0 + sum(c cos k theta + s sin k theta), parametrized by
/// the outer normal angle theta. Throws NotConvex when h + h'' <= 0 somewhere.
PlaneCurve from_support(double h0, const std::vector<Harmonic>& harmonics);
/// Same from explicit evaluators of h and its first three derivatives.
PlaneCurve from_support(std::function<double(double)> h, std::function<double(double)> dh,
                        std::function<double(double)> d2h, std::function<double(double)> d3h);

/// Interpolating spline through points taken at uniform parameter values on [0, 1].
PlaneCurve sampled(const std::vector<Vec2>& points, bool closed, int samples_n = PlaneCurve::kDefaultSamples);

/// Unit circle S of the norm scaled by r, polar angle starting at alpha0.
PlaneCurve unit_circle(const NormProfile& profile, double r = 1.0, double alpha0 = 0.1);
/// Anti-circle S_a scaled by r, parametrized by its tangent angle starting at theta0.
PlaneCurve anti_circle(const NormProfile& profile, double r = 1.0, double theta0 = 0.1);
/// Unit circle of l_e (any e >= 1) in polar form starting at alpha0.
PlaneCurve lp_circle(double e, double alpha0 = 0.1);

}  // namespace curves

enum class Metric { norm, anti_norm, euclidean };
enum class Target { norm_arclength, anti_arclength, euclid_arclength, tangent_angle };

const char* to_string(Metric m);
const char* to_string(Target t);

/// Speed of the curve at t in the chosen metric.
double speed(const PlaneCurve& curve, const NormProfile& profile, Metric metric, double t);
/// Length by composite Simpson over samples_n cells.
double length(const PlaneCurve& curve, const NormProfile& profile, Metric metric);
double arc_length(const PlaneCurve& curve, const NormProfile& profile, Metric metric, double a, double b);
/// Inscribed polygon length with n chords.
double polygon_length(const PlaneCurve& curve, const NormProfile& profile, Metric metric, int n);

/// Twice the signed enclosed area is 2 * signed_area; positive for counter-clockwise curves.
double signed_area(const PlaneCurve& curve);
/// Reverses closed curves with negative signed area.
PlaneCurve positively_oriented(const PlaneCurve& curve);

/// Table on the curve's parameter grid with columns s, s_a, s_e and the unwrapped tangent angle.
ParamTable param_table(const PlaneCurve& curve, const NormProfile& profile, int n = 0);

struct Reparametrized {
  PlaneCurve curve;
  ParamTable table;
};

/// Reparametrizes by arc length in the chosen metric, or by tangent angle. Closed curves are
/// oriented positively first unless auto_orient is false.
Reparametrized reparametrize(const PlaneCurve& curve, const NormProfile& profile, Target target,
                             bool auto_orient = true);

struct CurveSamples {
  std::vector<double> t, value;
};
/// k_e = [g', g''] / |g'|^3 on the curve grid.
CurveSamples euclidean_curvature(const PlaneCurve& curve, int n = 0);
double euclidean_curvature_at(const PlaneCurve& curve, double t);

}  // namespace mink
