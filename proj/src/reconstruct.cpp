#include "minkcurve/reconstruct.hpp"
#include "minkcurve/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace mink {

const char* to_string(CurvatureType t) {
  switch (t) {
    case CurvatureType::minkowski: return "minkowski";
    case CurvatureType::normal: return "normal";
    case CurvatureType::circular: return "circular";
    case CurvatureType::arclength: return "arclength";
  }
  return "?";
}

CurvatureType curvature_type_from_string(const std::string& s) {
  if (s == "minkowski" || s == "m") return CurvatureType::minkowski;
  if (s == "normal" || s == "n") return CurvatureType::normal;
  if (s == "circular" || s == "c") return CurvatureType::circular;
  if (s == "arclength" || s == "l") return CurvatureType::arclength;
  throw Error(ErrorKind::InvalidInput, "unknown curvature type '" + s + "'");
}

namespace {

// Right-hand side of theta' = v(theta) k_e(s, theta).
struct Model {
  NormProfile profile;
  std::function<double(double)> k;
  CurvatureType type;

  bool anti() const { return type == CurvatureType::arclength; }

  // Speed v(theta) and dv/dtheta.
  std::pair<double, double> speed(double theta) const {
    if (!anti()) return {profile.p(theta), profile.dp(theta)};
    const auto a = profile.anti_direction(theta);
    return {1.0 / a.a, -a.da / (a.a * a.a)};
  }

  double k_e(double s, double theta) const {
    const double v = speed(theta).first;
    switch (type) {
      case CurvatureType::minkowski:
      case CurvatureType::arclength: return k(s) / (profile.sigma() * v * v * v);
      case CurvatureType::circular: return k(s) * profile.k_phi(theta);
      case CurvatureType::normal: {
        const double ar = profile.anti_radius(theta);
        if (!(ar >= profile.anti_radius_guard()))
          throw Error(ErrorKind::GuardViolation,
                      "normal curvature needs the anti-circle radius at direction " + std::to_string(theta));
        return k(s) / ar;
      }
    }
    return 0.0;
  }

  double rhs(double s, double theta) const { return speed(theta).first * k_e(s, theta); }
};

bool crosses_direction(double a, double b, const std::vector<double>& dirs) {
  if (a > b) std::swap(a, b);
  for (double d : dirs) {
    const double k = std::ceil((a - d) / kPi);
    if (d + k * kPi <= b) return true;
  }
  return false;
}

}  // namespace

PlaneCurve curve_from_curvature(const std::function<double(double)>& k, double L, CurvatureType type,
                                const NormProfile& profile, const ReconstructOptions& opt) {
  if (!(L > 0)) throw Error(ErrorKind::InvalidInput, "curve length must be positive");
  if (opt.start_dir.norm() == 0.0) throw Error(ErrorKind::ZeroVector, "initial direction is zero");
  if (opt.steps < 16) throw Error(ErrorKind::InvalidInput, "at least 16 integration steps required");
  auto model = std::make_shared<const Model>(Model{profile, k, type});

  const int n = opt.steps;
  const double h = L / n;
  // The circular type integrates the polar angle alpha of the aligned point on S instead of theta:
  // theta' vanishes non-Lipschitz at flat directions of S, while
  // alpha' = k p(theta) / |phi'(alpha)| stays smooth.
  const bool polar = type == CurvatureType::circular;
  auto angle = [&](double a) { return polar ? profile.tangent_angle(a) : a; };
  std::vector<double> s(n + 1), th(n + 1), dth(n + 1), x(n + 1), y(n + 1), dx(n + 1), dy(n + 1);
  std::vector<double> ang(n + 1);
  th[0] = std::atan2(opt.start_dir.y(), opt.start_dir.x());
  ang[0] = polar ? profile.tangent_point(th[0]) : th[0];
  x[0] = opt.start.x();
  y[0] = opt.start.y();
  // State (angle, x, y) with gamma' = v(theta) e_theta; position does not feed back.
  auto deriv = [&](double si, double a) {
    const double t = angle(a), v = model->speed(t).first;
    const double da = polar ? model->k(si) * v / profile.dphi(a).norm() : model->rhs(si, t);
    return Eigen::Vector3d(da, v * std::cos(t), v * std::sin(t));
  };
  for (int j = 0; j < n; ++j) {
    s[j] = j * h;
    const double a = ang[j];
    const Eigen::Vector3d k1 = deriv(s[j], a);
    const Eigen::Vector3d k2 = deriv(s[j] + h / 2, a + h / 2 * k1[0]);
    const Eigen::Vector3d k3 = deriv(s[j] + h / 2, a + h / 2 * k2[0]);
    const Eigen::Vector3d k4 = deriv(s[j] + h, a + h * k3[0]);
    const Eigen::Vector3d w = Eigen::Vector3d(a, x[j], y[j]) + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    ang[j + 1] = w[0];
    th[j + 1] = angle(w[0]);
    x[j + 1] = w[1];
    y[j + 1] = w[2];
    if (type == CurvatureType::normal && crosses_direction(th[j], th[j + 1], profile.anti_flat_directions()))
      throw Error(ErrorKind::GuardViolation, "trajectory crosses a direction where the anti-circle radius vanishes");
  }
  s[n] = L;
  for (int j = 0; j <= n; ++j) {
    const Eigen::Vector3d d = deriv(s[j], ang[j]);
    dth[j] = polar ? model->rhs(s[j], th[j]) : d[0];
    dx[j] = d[1];
    dy[j] = d[2];
  }

  struct Interp {
    MonotoneMap angle, px, py;
  };
  std::vector<double> dang(n + 1);
  for (int j = 0; j <= n; ++j) dang[j] = polar ? deriv(s[j], ang[j])[0] : dth[j];
  auto ip = std::make_shared<const Interp>(
      Interp{MonotoneMap(s, ang, dang, false), MonotoneMap(s, x, dx, false), MonotoneMap(s, y, dy, false)});
  // Derivatives come from the interpolated state angle, so curvature read back from the curve
  // carries the integration and interpolation error. For the polar state,
  // d theta / d alpha = (p^2 + 2 p'^2 - p p'') / (p^2 + p'^2) vanishes with k_phi at flat directions.
  auto turn = [model, polar](double a) -> std::pair<double, double> {
    if (!polar) return {a, 1.0};
    const NormProfile& pr = model->profile;
    const double p = pr.p(a), p1 = pr.dp(a), p2 = pr.d2p(a);
    return {pr.tangent_angle(a), (p * p + 2 * p1 * p1 - p * p2) / (p * p + p1 * p1)};
  };
  PlaneCurve out(
      [ip](double t) { return Vec2(ip->px(t), ip->py(t)); },
      [ip, model, turn](double t) -> Vec2 {
        const double a = turn(ip->angle(t)).first;
        return model->speed(a).first * unit(a);
      },
      [ip, model, turn](double t) -> Vec2 {
        const auto [a, da] = turn(ip->angle(t));
        const auto [v, dv] = model->speed(a);
        return ip->angle.prime(t) * da * (dv * unit(a) + v * perp(unit(a)));
      },
      0.0, L, false);
  if (model->anti()) return reparametrize(out, profile, Target::norm_arclength, false).curve;
  return out;
}

// ---- constant curvature ----

namespace {

constexpr int kCentroidNodes = 4096;

struct Centroid {
  PeriodicSpline h, dh;
};

// Radius of curvature R(nu) = f(nu) of the value-1 curve as a function of the outer normal angle,
// together with f'(nu).
std::pair<double, double> radius_fn(CurvatureType type, const NormProfile& profile, double nu) {
  const double t = nu + 0.5 * kPi, sigma = profile.sigma();
  if (type == CurvatureType::minkowski) {
    const double p = profile.p(t);
    return {sigma * p * p * p, 3 * sigma * p * p * profile.dp(t)};
  }
  const auto a = profile.anti_direction(t);
  const double q = 1.0 / a.a, dq = -a.da / (a.a * a.a);
  return {sigma * q * q * q, 3 * sigma * q * q * dq};
}

// h(nu) = 1/2 int_nu^{nu+pi} f(u) sin(u - nu) du and h'(nu) = -1/2 int f(u) cos(u - nu) du by
// composite Simpson with kCentroidNodes subintervals, tabulated on a uniform nu grid.
Centroid build_centroid(CurvatureType type, const NormProfile& profile) {
  const int n = kCentroidNodes, m = kCentroidNodes;
  const double du = kPi / m;
  // f at u_k = k * du covers [0, 3 pi]; nu_i = 2 pi i / n = u_{2i}.
  std::vector<double> f(3 * m + 1);
  for (int k = 0; k <= 3 * m; ++k) f[k] = radius_fn(type, profile, k * du).first;
  std::vector<double> sn(m + 1), cs(m + 1), w(m + 1);
  for (int k = 0; k <= m; ++k) {
    sn[k] = std::sin(k * du);
    cs[k] = std::cos(k * du);
    w[k] = (k == 0 || k == m) ? 1.0 : (k % 2 ? 4.0 : 2.0);
  }
  std::vector<double> h(n), dh(n);
  for (int i = 0; i < n; ++i) {
    double a = 0, b = 0;
    for (int k = 0; k <= m; ++k) {
      const double fk = w[k] * f[2 * i + k];
      a += fk * sn[k];
      b += fk * cs[k];
    }
    h[i] = 0.5 * a * du / 3.0;
    dh[i] = -0.5 * b * du / 3.0;
  }
  return {PeriodicSpline(h, kTwoPi), PeriodicSpline(dh, kTwoPi)};
}

}  // namespace

double centroid_support(CurvatureType type, const NormProfile& profile, double nu) {
  if (type != CurvatureType::minkowski && type != CurvatureType::arclength)
    throw Error(ErrorKind::InvalidInput, "centroid support is defined for minkowski and arclength types");
  return build_centroid(type, profile).h(nu);
}

PlaneCurve constant_curvature_curve(CurvatureType type, double value, const NormProfile& profile) {
  if (value == 0.0 || !std::isfinite(value))
    throw Error(ErrorKind::ZeroCurvature, "constant curvature must be finite and nonzero");
  const double r = 1.0 / std::abs(value);
  PlaneCurve c;
  switch (type) {
    case CurvatureType::circular: c = curves::unit_circle(profile, r); break;
    case CurvatureType::normal: c = curves::unit_circle(NormProfile::dual(profile), r); break;
    case CurvatureType::minkowski:
    case CurvatureType::arclength: {
      auto cen = std::make_shared<const Centroid>(build_centroid(type, profile));
      const NormProfile prof = profile;
      c = PlaneCurve(
          [cen, r](double nu) -> Vec2 { return r * (cen->h(nu) * unit(nu) + cen->dh(nu) * perp(unit(nu))); },
          [prof, type, r](double nu) -> Vec2 { return r * radius_fn(type, prof, nu).first * perp(unit(nu)); },
          [prof, type, r](double nu) -> Vec2 {
            const auto [f, df] = radius_fn(type, prof, nu);
            return r * (df * perp(unit(nu)) - f * unit(nu));
          },
          0.0, kTwoPi, true);
      break;
    }
  }
  return value < 0 ? c.reversed() : c;
}

// ---- normal lines ----

namespace {

Concurrence concurrence(const std::vector<Vec2>& pts, const std::vector<Vec2>& dirs) {
  Eigen::Matrix2d A = Eigen::Matrix2d::Zero();
  Eigen::Vector2d b = Eigen::Vector2d::Zero();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Vec2 d = dirs[i].normalized();
    const Eigen::Matrix2d P = Eigen::Matrix2d::Identity() - d * d.transpose();
    A += P;
    b += P * pts[i];
  }
  Concurrence c;
  c.point = A.ldlt().solve(b);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Vec2 d = dirs[i].normalized();
    c.residual = std::max(c.residual, std::abs(cross(d, c.point - pts[i])));
  }
  return c;
}

}  // namespace

ConcurrenceReport normal_concurrence_test(const PlaneCurve& curve, const NormProfile& profile, int grid) {
  std::vector<Vec2> pts, left, right;
  for (double t : curve.grid(grid)) {
    const Vec2 d = curve.d1(t);
    if (d.norm() == 0.0) throw Error(ErrorKind::DegenerateSpeed, "zero velocity");
    const double theta = std::atan2(d.y(), d.x());
    pts.push_back(curve.eval(t));
    left.push_back(profile.aligned_point(theta));
    right.push_back(profile.right_normal(theta));
  }
  return {concurrence(pts, left), concurrence(pts, right)};
}

}  // namespace mink
