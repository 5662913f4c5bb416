#include "minkcurve/curve.hpp"
#include "minkcurve/errors.hpp"

#include <algorithm>
#include <cmath>

namespace mink {

PlaneCurve::PlaneCurve(Fn eval, Fn d1, Fn d2, double t0, double t1, bool closed, int samples_n)
    : f_(std::make_shared<Fns>(Fns{std::move(eval), std::move(d1), std::move(d2)})),
      t0_(t0),
      t1_(t1),
      closed_(closed),
      samples_n_(samples_n) {
  if (!(t1 > t0)) throw Error(ErrorKind::InvalidInput, "curve domain must have t1 > t0");
  if (samples_n < 8) throw Error(ErrorKind::InvalidInput, "samples_n must be at least 8");
}

double PlaneCurve::wrap(double t) const {
  if (!closed_ || (t >= t0_ && t <= t1_)) return t;
  const double L = t1_ - t0_;
  return t0_ + (t - t0_) - L * std::floor((t - t0_) / L);
}

std::vector<double> PlaneCurve::grid(int n) const {
  if (n <= 0) n = samples_n_;
  std::vector<double> g(closed_ ? n : n + 1);
  for (std::size_t j = 0; j < g.size(); ++j) g[j] = t0_ + span() * static_cast<double>(j) / n;
  return g;
}

PlaneCurve PlaneCurve::with_samples(int n) const {
  PlaneCurve c = *this;
  if (n < 8) throw Error(ErrorKind::InvalidInput, "samples_n must be at least 8");
  c.samples_n_ = n;
  return c;
}

PlaneCurve PlaneCurve::reversed() const {
  auto f = f_;
  const double a = t0_, b = t1_;
  return PlaneCurve([f, a, b](double t) { return f->eval(a + b - t); },
                    [f, a, b](double t) -> Vec2 { return -f->d1(a + b - t); },
                    [f, a, b](double t) { return f->d2(a + b - t); }, a, b, closed_, samples_n_);
}

PlaneCurve PlaneCurve::transformed(const Eigen::Matrix2d& A, const Vec2& b) const {
  auto f = f_;
  return PlaneCurve([f, A, b](double t) -> Vec2 { return A * f->eval(t) + b; },
                    [f, A](double t) -> Vec2 { return A * f->d1(t); },
                    [f, A](double t) -> Vec2 { return A * f->d2(t); }, t0_, t1_, closed_, samples_n_);
}

PlaneCurve PlaneCurve::restricted(double a, double b) const {
  auto self = *this;
  return PlaneCurve([self](double t) { return self.eval(t); }, [self](double t) { return self.d1(t); },
                    [self](double t) { return self.d2(t); }, a, b, false, samples_n_);
}

// ---- factories ----

namespace curves {

PlaneCurve circle(double r, const Vec2& c) {
  if (!(r > 0)) throw Error(ErrorKind::InvalidInput, "circle radius must be positive");
  return PlaneCurve([r, c](double t) -> Vec2 { return c + r * unit(t); },
                    [r](double t) -> Vec2 { return r * perp(unit(t)); },
                    [r](double t) -> Vec2 { return -r * unit(t); }, 0.0, kTwoPi, true);
}

PlaneCurve ellipse(double a, double b) {
  if (!(a > 0 && b > 0)) throw Error(ErrorKind::InvalidInput, "ellipse semi-axes must be positive");
  return PlaneCurve([a, b](double t) { return Vec2(a * std::cos(t), b * std::sin(t)); },
                    [a, b](double t) { return Vec2(-a * std::sin(t), b * std::cos(t)); },
                    [a, b](double t) { return Vec2(-a * std::cos(t), -b * std::sin(t)); }, 0.0, kTwoPi, true);
}

PlaneCurve segment(const Vec2& a, const Vec2& b) {
  if ((b - a).norm() == 0.0) throw Error(ErrorKind::InvalidInput, "degenerate segment");
  return PlaneCurve([a, b](double t) -> Vec2 { return a + t * (b - a); }, [a, b](double) -> Vec2 { return b - a; },
                    [](double) -> Vec2 { return Vec2::Zero(); }, 0.0, 1.0, false);
}

PlaneCurve from_support(std::function<double(double)> h, std::function<double(double)> dh,
                        std::function<double(double)> d2h, std::function<double(double)> d3h) {
  for (int j = 0; j < 4096; ++j) {
    const double t = kTwoPi * j / 4096;
    if (!(h(t) + d2h(t) > 0)) throw Error(ErrorKind::NotConvex, "support function has h + h'' <= 0");
  }
  return PlaneCurve([h, dh](double t) -> Vec2 { return h(t) * unit(t) + dh(t) * perp(unit(t)); },
                    [h, d2h](double t) -> Vec2 { return (h(t) + d2h(t)) * perp(unit(t)); },
                    [h, dh, d2h, d3h](double t) -> Vec2 {
                      return (dh(t) + d3h(t)) * perp(unit(t)) - (h(t) + d2h(t)) * unit(t);
                    },
                    0.0, kTwoPi, true);
}

PlaneCurve from_support(double h0, const std::vector<Harmonic>& hs) {
  auto deriv = [h0, hs](int order) {
    return [h0, hs, order](double t) {
      double v = order == 0 ? h0 : 0.0;
      for (const auto& m : hs) {
        const double k = m.k, c = std::cos(k * t), s = std::sin(k * t);
        const double kk = std::pow(k, order);
        switch (order % 4) {
          case 0: v += kk * (m.c * c + m.s * s); break;
          case 1: v += kk * (-m.c * s + m.s * c); break;
          case 2: v += kk * (-m.c * c - m.s * s); break;
          default: v += kk * (m.c * s - m.s * c); break;
        }
      }
      return v;
    };
  };
  return from_support(deriv(0), deriv(1), deriv(2), deriv(3));
}

PlaneCurve sampled(const std::vector<Vec2>& pts, bool closed, int samples_n) {
  if (pts.size() < 8) throw Error(ErrorKind::InvalidInput, "sampled curve needs at least 8 points");
  std::vector<Vec2> p = pts;
  if (closed && (p.front() - p.back()).norm() < 1e-12 * (1.0 + p.front().norm())) p.pop_back();
  std::vector<double> xs, ys;
  for (const auto& v : p) {
    xs.push_back(v.x());
    ys.push_back(v.y());
  }
  for (std::size_t i = 0; i + 1 < p.size() + (closed ? 1 : 0); ++i)
    if ((p[(i + 1) % p.size()] - p[i]).norm() == 0.0)
      throw Error(ErrorKind::DegenerateSpeed, "repeated consecutive sample points");
  if (closed) {
    PeriodicSpline sx(xs, 1.0), sy(ys, 1.0);
    return PlaneCurve([sx, sy](double t) { return Vec2(sx(t), sy(t)); },
                      [sx, sy](double t) { return Vec2(sx.prime(t), sy.prime(t)); },
                      [sx, sy](double t) { return Vec2(sx.double_prime(t), sy.double_prime(t)); }, 0.0, 1.0, true,
                      samples_n);
  }
  ClampedSpline sx(xs, 0.0, 1.0), sy(ys, 0.0, 1.0);
  return PlaneCurve([sx, sy](double t) { return Vec2(sx(t), sy(t)); },
                    [sx, sy](double t) { return Vec2(sx.prime(t), sy.prime(t)); },
                    [sx, sy](double t) { return Vec2(sx.double_prime(t), sy.double_prime(t)); }, 0.0, 1.0, false,
                    samples_n);
}

PlaneCurve unit_circle(const NormProfile& profile, double r, double alpha0) {
  return PlaneCurve([profile, r](double a) -> Vec2 { return r * profile.phi(a); },
                    [profile, r](double a) -> Vec2 { return r * profile.dphi(a); },
                    [profile, r](double a) -> Vec2 { return r * profile.d2phi(a); }, alpha0, alpha0 + kTwoPi, true);
}

PlaneCurve anti_circle(const NormProfile& profile, double r, double theta0) {
  // psi = (h' e - h e_perp) / sigma with h = 1/p; psi' = (h + h'') e / sigma.
  struct H {
    double h, h1, h2, h3;
  };
  auto hs = [profile](double t) {
    const double p = profile.p(t), p1 = profile.dp(t), p2 = profile.d2p(t), p3 = profile.d3p(t);
    return H{1 / p, -p1 / (p * p), 2 * p1 * p1 / (p * p * p) - p2 / (p * p),
             -p3 / (p * p) + 6 * p1 * p2 / (p * p * p) - 6 * p1 * p1 * p1 / (p * p * p * p)};
  };
  const double k = r / profile.sigma();
  return PlaneCurve(
      [hs, k](double t) -> Vec2 {
        const H h = hs(t);
        return k * (h.h1 * unit(t) - h.h * perp(unit(t)));
      },
      [hs, k](double t) -> Vec2 { return k * (hs(t).h + hs(t).h2) * unit(t); },
      [hs, k](double t) -> Vec2 {
        const H h = hs(t);
        return k * ((h.h1 + h.h3) * unit(t) + (h.h + h.h2) * perp(unit(t)));
      },
      theta0, theta0 + kTwoPi, true);
}

PlaneCurve lp_circle(double e, double alpha0) {
  if (!(e >= 1.0)) throw Error(ErrorKind::InvalidInput, "l_p circle needs exponent >= 1");
  return PlaneCurve(
      [e](double a) -> Vec2 { return lp_polar_radius(e, a)[0] * unit(a); },
      [e](double a) -> Vec2 {
        const auto p = lp_polar_radius(e, a);
        return p[1] * unit(a) + p[0] * perp(unit(a));
      },
      [e](double a) -> Vec2 {
        const auto p = lp_polar_radius(e, a);
        return (p[2] - p[0]) * unit(a) + 2 * p[1] * perp(unit(a));
      },
      alpha0, alpha0 + kTwoPi, true);
}

}  // namespace curves

// ---- metrics ----

const char* to_string(Metric m) {
  switch (m) {
    case Metric::norm: return "norm";
    case Metric::anti_norm: return "anti_norm";
    case Metric::euclidean: return "euclidean";
  }
  return "?";
}

const char* to_string(Target t) {
  switch (t) {
    case Target::norm_arclength: return "norm_arclength";
    case Target::anti_arclength: return "anti_arclength";
    case Target::euclid_arclength: return "euclid_arclength";
    case Target::tangent_angle: return "tangent_angle";
  }
  return "?";
}

namespace {

double metric_of(const Vec2& v, const NormProfile& profile, Metric m) {
  switch (m) {
    case Metric::norm: return profile.norm(v);
    case Metric::anti_norm: return profile.anti_norm(v);
    case Metric::euclidean: return v.norm();
  }
  return 0.0;
}

Metric metric_for(Target t) {
  switch (t) {
    case Target::norm_arclength: return Metric::norm;
    case Target::anti_arclength: return Metric::anti_norm;
    default: return Metric::euclidean;
  }
}

// Speed and its parameter derivative in the chosen metric.
std::pair<double, double> speed_and_rate(const PlaneCurve& c, const NormProfile& profile, Metric m, double t) {
  const Vec2 g1 = c.d1(t), g2 = c.d2(t);
  const double r = g1.norm();
  const double dr = r > 0 ? g1.dot(g2) / r : 0.0;
  if (m == Metric::euclidean) return {r, dr};
  const double ang = std::atan2(g1.y(), g1.x());
  const double dang = r > 0 ? cross(g1, g2) / (r * r) : 0.0;
  if (m == Metric::norm) {
    const double p = profile.p(ang);
    return {r / p, dr / p - r * profile.dp(ang) * dang / (p * p)};
  }
  const auto a = profile.anti_direction(ang);
  return {r * a.a, dr * a.a + r * a.da * dang};
}

double cell_simpson(const std::function<double(double)>& f, double a, double b, double fa, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * f(0.5 * (a + b)) + fb);
}

}  // namespace

double speed(const PlaneCurve& curve, const NormProfile& profile, Metric metric, double t) {
  return metric_of(curve.d1(t), profile, metric);
}

double arc_length(const PlaneCurve& curve, const NormProfile& profile, Metric metric, double a, double b) {
  return simpson([&](double t) { return speed(curve, profile, metric, t); }, a, b, 2 * curve.samples_n());
}

double length(const PlaneCurve& curve, const NormProfile& profile, Metric metric) {
  return arc_length(curve, profile, metric, curve.t0(), curve.t1());
}

double polygon_length(const PlaneCurve& curve, const NormProfile& profile, Metric metric, int n) {
  double sum = 0.0;
  Vec2 prev = curve.eval(curve.t0());
  for (int j = 1; j <= n; ++j) {
    const Vec2 cur = curve.eval(curve.t0() + curve.span() * j / n);
    sum += metric_of(cur - prev, profile, metric);
    prev = cur;
  }
  return sum;
}

double signed_area(const PlaneCurve& curve) {
  return 0.5 * simpson([&](double t) { return cross(curve.eval(t), curve.d1(t)); }, curve.t0(), curve.t1(),
                       2 * curve.samples_n());
}

PlaneCurve positively_oriented(const PlaneCurve& curve) {
  if (curve.closed() && signed_area(curve) < 0) return curve.reversed();
  return curve;
}

ParamTable param_table(const PlaneCurve& curve, const NormProfile& profile, int n) {
  if (n <= 0) n = curve.samples_n();
  std::vector<double> t(n + 1);
  for (int j = 0; j <= n; ++j) t[j] = curve.t0() + curve.span() * j / n;
  ParamTable table(t);
  for (Metric m : {Metric::norm, Metric::anti_norm, Metric::euclidean}) {
    auto v = [&](double x) { return speed(curve, profile, m, x); };
    std::vector<double> val(n + 1), der(n + 1);
    for (int j = 0; j <= n; ++j) {
      der[j] = v(t[j]);
      if (j > 0) val[j] = val[j - 1] + cell_simpson(v, t[j - 1], t[j], der[j - 1], der[j]);
    }
    table.add(m == Metric::norm ? Column::s : m == Metric::anti_norm ? Column::s_a : Column::s_e, val, der);
  }
  std::vector<double> th(n + 1), dth(n + 1);
  for (int j = 0; j <= n; ++j) {
    const Vec2 g1 = curve.d1(t[j]), g2 = curve.d2(t[j]);
    th[j] = std::atan2(g1.y(), g1.x());
    dth[j] = cross(g1, g2) / g1.squaredNorm();
  }
  unwrap(th);
  table.add(Column::theta, th, dth);
  return table;
}

namespace {

struct ReparamState {
  PlaneCurve src;
  NormProfile profile;
  Target target;
  std::vector<double> t, sv;
  MonotoneMap inverse;

  double rate(double x) const {
    if (target == Target::tangent_angle) {
      const Vec2 g1 = src.d1(x), g2 = src.d2(x);
      return cross(g1, g2) / g1.squaredNorm();
    }
    return speed(src, profile, metric_for(target), x);
  }
  double angle(double x) const {
    const Vec2 g1 = src.d1(x);
    return std::atan2(g1.y(), g1.x());
  }

  // Source parameter at new parameter sigma: monotone Hermite guess plus Newton polish.
  double param(double sigma) const {
    const double total = sv.back() - sv.front();
    double shift = 0.0;
    if (src.closed()) {
      const double k = std::floor((sigma - sv.front()) / total);
      shift = k * src.span();
      sigma -= k * total;
    }
    double x = inverse(sigma);
    for (int it = 0; it < 2; ++it) {
      std::size_t j = std::upper_bound(t.begin(), t.end(), x) - t.begin();
      j = std::clamp<std::size_t>(j, 1, t.size() - 1) - 1;
      double cum;
      if (target == Target::tangent_angle) {
        cum = sv[j] + std::remainder(angle(x) - angle(t[j]), kTwoPi);
      } else {
        auto f = [this](double y) { return rate(y); };
        cum = sv[j] + cell_simpson(f, t[j], x, f(t[j]), f(x));
      }
      const double r = rate(x);
      if (!(r > 0)) break;
      x -= (cum - sigma) / r;
    }
    return x + shift;
  }
};

}  // namespace

Reparametrized reparametrize(const PlaneCurve& curve_in, const NormProfile& profile, Target target,
                             bool auto_orient) {
  const PlaneCurve curve = auto_orient ? positively_oriented(curve_in) : curve_in;
  const int n = curve.samples_n();
  ParamTable table = param_table(curve, profile, n);
  const Column col = target == Target::norm_arclength   ? Column::s
                     : target == Target::anti_arclength ? Column::s_a
                     : target == Target::euclid_arclength ? Column::s_e
                                                          : Column::theta;
  const auto& der = table.derivative(col);
  const double mean = std::abs(table.total(col)) / curve.span();
  for (double d : der) {
    if (target == Target::tangent_angle) {
      if (!(d > 0)) throw Error(ErrorKind::NotConvex, "tangent direction is not strictly increasing");
    } else if (!(d >= 1e-10 * mean)) {
      throw Error(ErrorKind::DegenerateSpeed, "speed falls below 1e-10 of its mean");
    }
  }
  if (!table.invertible(col)) throw Error(ErrorKind::DegenerateSpeed, "parameter table is not invertible");

  auto st = std::make_shared<ReparamState>();
  st->src = curve;
  st->profile = profile;
  st->target = target;
  st->sv = table.values(col);
  st->t.resize(st->sv.size());
  std::vector<double> inv(der.size());
  for (std::size_t j = 0; j < der.size(); ++j) {
    st->t[j] = curve.t0() + curve.span() * static_cast<double>(j) / n;
    inv[j] = 1.0 / der[j];
  }
  st->inverse = MonotoneMap(st->sv, st->t, inv);
  const double a = st->sv.front(), b = st->sv.back();

  PlaneCurve::Fn d1, d2;
  if (target == Target::tangent_angle) {
    d1 = [st](double x) -> Vec2 {
      const double t = st->param(x);
      return st->src.d1(t) / st->rate(t);
    };
    d2 = [st, d1](double x) -> Vec2 {
      const double h = 1e-5;
      return (d1(x + h) - d1(x - h)) / (2 * h);
    };
  } else {
    const Metric m = metric_for(target);
    d1 = [st, m](double x) -> Vec2 {
      const double t = st->param(x);
      return st->src.d1(t) / speed_and_rate(st->src, st->profile, m, t).first;
    };
    d2 = [st, m](double x) -> Vec2 {
      const double t = st->param(x);
      const auto [v, dv] = speed_and_rate(st->src, st->profile, m, t);
      return (st->src.d2(t) - st->src.d1(t) * dv / v) / (v * v);
    };
  }
  PlaneCurve out([st](double x) { return st->src.eval(st->param(x)); }, d1, d2, a, b, curve.closed(), n);
  return {out, std::move(table)};
}

double euclidean_curvature_at(const PlaneCurve& curve, double t) {
  const Vec2 g1 = curve.d1(t), g2 = curve.d2(t);
  const double r = g1.norm();
  if (r == 0.0) throw Error(ErrorKind::DegenerateSpeed, "zero velocity at t = " + std::to_string(t));
  return cross(g1, g2) / (r * r * r);
}

CurveSamples euclidean_curvature(const PlaneCurve& curve, int n) {
  CurveSamples out;
  out.t = curve.grid(n);
  for (double t : out.t) out.value.push_back(euclidean_curvature_at(curve, t));
  return out;
}

}  // namespace mink
