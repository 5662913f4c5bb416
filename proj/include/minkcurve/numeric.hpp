#pragma once

#include <Eigen/Core>

#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <vector>

namespace mink {

using Vec2 = Eigen::Vector2d;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }
/// Counter-clockwise quarter turn.
inline Vec2 perp(const Vec2& v) { return {-v.y(), v.x()}; }
inline Vec2 unit(double theta) { return {std::cos(theta), std::sin(theta)}; }

/// Composite trapezoid over one period of uniformly spaced samples (the endpoint is not repeated).
double trapezoid_periodic(const std::vector<double>& f, double period);

/// Composite Simpson on [a, b] with n (even) subintervals.
double simpson(const std::function<double(double)>& f, double a, double b, int n);

/// Unwrap a sequence of angles so consecutive differences lie in (-pi, pi].
void unwrap(std::vector<double>& angles);

/// Interpolating C2 cubic spline with period `period`, fitted to n uniform samples on [0, period).
class PeriodicSpline {
 public:
  PeriodicSpline() = default;
  PeriodicSpline(const std::vector<double>& values, double period);

  double operator()(double x) const;
  double prime(double x) const;
  double double_prime(double x) const;
  double period() const { return period_; }
  bool empty() const { return !impl_; }

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  double period_ = 0.0;
  double wrap(double x) const;
};

/// Cubic spline on uniform samples over [a, b]; end slopes are estimated when not given.
class ClampedSpline {
 public:
  ClampedSpline() = default;
  ClampedSpline(const std::vector<double>& values, double a, double b);

  double operator()(double x) const;
  double prime(double x) const;
  double double_prime(double x) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  double a_ = 0.0, b_ = 0.0;
};

/// Cubic Hermite map over strictly increasing abscissae. Slopes, when supplied, are limited
/// with the Fritsch-Carlson conditions (pass limit=false for non-monotone data); otherwise
/// the PCHIP estimate is used.
class MonotoneMap {
 public:
  MonotoneMap() = default;
  MonotoneMap(std::vector<double> x, std::vector<double> y, std::vector<double> dydx = {}, bool limit = true);

  double operator()(double x) const;
  double prime(double x) const;
  double x_front() const { return front_; }
  double x_back() const { return back_; }

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  double front_ = 0.0, back_ = 0.0;
};

/// Derivative of order k (1..4) of f at x: central differences with one Richardson step.
double richardson_derivative(const std::function<double(double)>& f, double x, int order, double h);

}  // namespace mink
