#include "minkcurve/numeric.hpp"
#include "minkcurve/errors.hpp"

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <boost/math/interpolators/cubic_hermite.hpp>
#include <boost/math/interpolators/pchip.hpp>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_spline.h>

#include <algorithm>

namespace mink {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::NotC2: return "NotC2";
    case ErrorKind::NonConvex: return "NonConvex";
    case ErrorKind::NotConvex: return "NotConvex";
    case ErrorKind::DegenerateSpeed: return "DegenerateSpeed";
    case ErrorKind::FlatUnitCircle: return "FlatUnitCircle";
    case ErrorKind::AntiProfileFit: return "AntiProfileFit";
    case ErrorKind::GuardViolation: return "GuardViolation";
    case ErrorKind::ZeroCurvature: return "ZeroCurvature";
    case ErrorKind::VanishingCurvature: return "VanishingCurvature";
    case ErrorKind::PointOnCurve: return "PointOnCurve";
    case ErrorKind::NotConstantWidth: return "NotConstantWidth";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

double trapezoid_periodic(const std::vector<double>& f, double period) {
  double sum = 0.0;
  for (double v : f) sum += v;
  return sum * period / static_cast<double>(f.size());
}

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double sum = f(a) + f(b);
  for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return sum * h / 3.0;
}

void unwrap(std::vector<double>& angles) {
  for (std::size_t i = 1; i < angles.size(); ++i) {
    double d = angles[i] - angles[i - 1];
    d -= kTwoPi * std::round(d / kTwoPi);
    angles[i] = angles[i - 1] + d;
  }
}

// ---- PeriodicSpline (GSL periodic cubic spline) ----

struct PeriodicSpline::Impl {
  gsl_spline* spline = nullptr;
  ~Impl() { gsl_spline_free(spline); }
};

PeriodicSpline::PeriodicSpline(const std::vector<double>& values, double period) : period_(period) {
  const std::size_t n = values.size();
  if (n < 4) throw Error(ErrorKind::InvalidInput, "periodic spline needs at least 4 samples");
  std::vector<double> x(n + 1), y(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    x[i] = period * static_cast<double>(i) / static_cast<double>(n);
    y[i] = values[i % n];
  }
  gsl_set_error_handler_off();
  auto impl = std::make_shared<Impl>();
  impl->spline = gsl_spline_alloc(gsl_interp_cspline_periodic, n + 1);
  if (gsl_spline_init(impl->spline, x.data(), y.data(), n + 1) != GSL_SUCCESS)
    throw Error(ErrorKind::InvalidInput, "periodic spline fit failed");
  impl_ = impl;
}

double PeriodicSpline::wrap(double x) const {
  double r = std::fmod(x, period_);
  if (r < 0) r += period_;
  return r;
}

double PeriodicSpline::operator()(double x) const { return gsl_spline_eval(impl_->spline, wrap(x), nullptr); }
double PeriodicSpline::prime(double x) const { return gsl_spline_eval_deriv(impl_->spline, wrap(x), nullptr); }
double PeriodicSpline::double_prime(double x) const {
  return gsl_spline_eval_deriv2(impl_->spline, wrap(x), nullptr);
}

// ---- ClampedSpline (Boost cardinal cubic B-spline) ----

struct ClampedSpline::Impl {
  boost::math::interpolators::cardinal_cubic_b_spline<double> spline;
};

ClampedSpline::ClampedSpline(const std::vector<double>& values, double a, double b) : a_(a), b_(b) {
  if (values.size() < 5) throw Error(ErrorKind::InvalidInput, "clamped spline needs at least 5 samples");
  const double h = (b - a) / static_cast<double>(values.size() - 1);
  impl_ = std::make_shared<Impl>(Impl{{values.data(), values.size(), a, h}});
}

double ClampedSpline::operator()(double x) const { return impl_->spline(std::clamp(x, a_, b_)); }
double ClampedSpline::prime(double x) const { return impl_->spline.prime(std::clamp(x, a_, b_)); }
double ClampedSpline::double_prime(double x) const { return impl_->spline.double_prime(std::clamp(x, a_, b_)); }

// ---- MonotoneMap ----

struct MonotoneMap::Impl {
  std::function<double(double)> eval, prime;
};

MonotoneMap::MonotoneMap(std::vector<double> x, std::vector<double> y, std::vector<double> dydx, bool limit) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw Error(ErrorKind::InvalidInput, "monotone map needs matching samples");
  for (std::size_t i = 1; i < n; ++i)
    if (!(x[i] > x[i - 1])) throw Error(ErrorKind::InvalidInput, "monotone map abscissae not increasing");
  front_ = x.front();
  back_ = x.back();
  auto impl = std::make_shared<Impl>();
  if (dydx.empty() && n >= 4) {
    auto p = std::make_shared<boost::math::interpolators::pchip<std::vector<double>>>(std::move(x), std::move(y));
    impl->eval = [p](double t) { return (*p)(t); };
    impl->prime = [p](double t) { return p->prime(t); };
  } else {
    if (dydx.empty()) dydx.assign(n, (y.back() - y.front()) / (x.back() - x.front()));
    // Fritsch-Carlson: keep (alpha, beta) inside the circle of radius 3.
    for (std::size_t i = 0; limit && i + 1 < n; ++i) {
      const double delta = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
      if (delta == 0.0) {
        dydx[i] = dydx[i + 1] = 0.0;
        continue;
      }
      if (dydx[i] / delta < 0) dydx[i] = 0.0;
      if (dydx[i + 1] / delta < 0) dydx[i + 1] = 0.0;
      const double a = dydx[i] / delta, b = dydx[i + 1] / delta;
      const double r = a * a + b * b;
      if (r > 9.0) {
        const double tau = 3.0 / std::sqrt(r);
        dydx[i] = tau * a * delta;
        dydx[i + 1] = tau * b * delta;
      }
    }
    auto h = std::make_shared<boost::math::interpolators::cubic_hermite<std::vector<double>>>(
        std::move(x), std::move(y), std::move(dydx));
    impl->eval = [h](double t) { return (*h)(t); };
    impl->prime = [h](double t) { return h->prime(t); };
  }
  impl_ = impl;
}

double MonotoneMap::operator()(double x) const { return impl_->eval(std::clamp(x, front_, back_)); }
double MonotoneMap::prime(double x) const { return impl_->prime(std::clamp(x, front_, back_)); }

// ---- finite differences ----

namespace {
double central(const std::function<double(double)>& f, double x, int order, double h) {
  switch (order) {
    case 1: return (f(x + h) - f(x - h)) / (2 * h);
    case 2: return (f(x + h) - 2 * f(x) + f(x - h)) / (h * h);
    case 3: return (f(x + 2 * h) - 2 * f(x + h) + 2 * f(x - h) - f(x - 2 * h)) / (2 * h * h * h);
    case 4: return (f(x + 2 * h) - 4 * f(x + h) + 6 * f(x) - 4 * f(x - h) + f(x - 2 * h)) / (h * h * h * h);
    default: throw Error(ErrorKind::InvalidInput, "derivative order must be 1..4");
  }
}
}  // namespace

double richardson_derivative(const std::function<double(double)>& f, double x, int order, double h) {
  const double coarse = central(f, x, order, h);
  const double fine = central(f, x, order, h / 2);
  return (4.0 * fine - coarse) / 3.0;
}

}  // namespace mink
