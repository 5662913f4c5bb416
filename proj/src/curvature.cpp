#include "minkcurve/curvature.hpp"
#include "minkcurve/errors.hpp"

#include <algorithm>
#include <cmath>

namespace mink {

std::size_t CurvatureProfile::flagged() const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < s.size(); ++i) n += flat_phi[i] || flat_psi[i];
  return n;
}

namespace {

PointCurvature from_direction(const NormProfile& profile, double theta, double k_e) {
  PointCurvature c;
  c.theta = theta;
  c.k_e = k_e;
  const double sigma = profile.sigma();
  const double p = profile.p(theta);
  const double kphi = profile.k_phi(theta);
  const double ar = profile.anti_radius(theta);
  const double q = 1.0 / profile.anti_direction(theta).a;
  c.k_m = sigma * k_e * p * p * p;
  c.k_n = k_e * ar;
  c.k_c = k_e / kphi;
  c.k_l = sigma * k_e * q * q * q;
  c.flat_phi = !(kphi >= profile.k_phi_guard());
  c.flat_psi = ar > 0 && !(1.0 / ar >= profile.k_psi_guard());
  return c;
}

}  // namespace

PointCurvature curvature_at(const PlaneCurve& curve, const NormProfile& profile, double t) {
  const Vec2 g1 = curve.d1(t);
  return from_direction(profile, std::atan2(g1.y(), g1.x()), euclidean_curvature_at(curve, t));
}

CurvatureProfile curvatures(const PlaneCurve& curve, const NormProfile& profile, const CurvatureOptions& opt) {
  const int n = opt.grid > 0 ? opt.grid : curve.samples_n();
  const auto rp = reparametrize(curve, profile, Target::norm_arclength, opt.auto_orient);
  const PlaneCurve& g = rp.curve;
  CurvatureProfile out;
  out.length = g.span();
  out.closed = g.closed();
  out.s = g.grid(n);
  for (double s : out.s) {
    const Vec2 d1 = g.d1(s), d2 = g.d2(s);
    const double r = d1.norm();
    if (r == 0.0) throw Error(ErrorKind::DegenerateSpeed, "zero velocity");
    const double theta = std::atan2(d1.y(), d1.x());
    const PointCurvature c = from_direction(profile, theta, cross(d1, d2) / (r * r * r));
    out.theta.push_back(theta);
    out.k_e.push_back(c.k_e);
    out.k_m.push_back(c.k_m);
    out.k_n.push_back(c.k_n);
    out.k_c.push_back(c.k_c);
    out.k_l.push_back(c.k_l);
    out.rho.push_back(1.0 / c.k_c);
    out.anti_rho.push_back(1.0 / c.k_n);
    out.flat_phi.push_back(c.flat_phi);
    out.flat_psi.push_back(c.flat_psi);
    out.s_a.push_back(rp.table.map(Column::s, Column::s_a, s) - rp.table.values(Column::s_a).front());
  }
  unwrap(out.theta);
  return out;
}

std::vector<double> minkowski_curvature_by_area(const PlaneCurve& curve, const NormProfile& profile, int grid) {
  const int n = grid > 0 ? grid : curve.samples_n();
  const auto rp = reparametrize(curve, profile, Target::norm_arclength);
  const PlaneCurve& g = rp.curve;
  const double h = g.span() / n;
  // u of the point gamma'(s) on S; the polar angle is continued across periods.
  const ParamTable& table = profile.circle_table();
  const double U = table.total(Column::u);
  auto u_of = [&](double s) {
    const Vec2 d = g.d1(s);
    const double a = std::atan2(d.y(), d.x());
    const double k = std::floor(a / kTwoPi);
    return table.map(Column::param, Column::u, a - k * kTwoPi) + k * U;
  };
  std::vector<double> out;
  for (double s : g.grid(n)) {
    double du = u_of(s + h) - u_of(s - h);
    du -= U * std::round(du / U);
    out.push_back(du / (2 * h));
  }
  return out;
}

std::vector<FrameSample> frenet_frame(const PlaneCurve& curve, const NormProfile& profile, int grid) {
  std::vector<FrameSample> out;
  for (double s : curve.grid(grid)) {
    const Vec2 d1 = curve.d1(s);
    if (d1.norm() == 0.0) throw Error(ErrorKind::DegenerateSpeed, "zero velocity");
    const double theta = std::atan2(d1.y(), d1.x());
    FrameSample f;
    f.s = s;
    f.tangent = d1;
    f.right_normal = profile.right_normal(theta);
    f.t_align = profile.circle_arclength(profile.tangent_point(theta));
    out.push_back(f);
  }
  return out;
}

FrenetResiduals frenet_residuals(const PlaneCurve& curve, const NormProfile& profile, int grid) {
  const int n = grid > 0 ? grid : curve.samples_n();
  const auto rp = reparametrize(curve, profile, Target::norm_arclength);
  const PlaneCurve& g = rp.curve;
  const double h = g.span() / n;
  const auto s = g.grid(n);
  const std::size_t m = s.size();
  std::vector<Vec2> pos(m), nrm(m), tan(m);
  std::vector<PointCurvature> k(m);
  for (std::size_t j = 0; j < m; ++j) {
    pos[j] = g.eval(s[j]);
    tan[j] = g.d1(s[j]);
    const double theta = std::atan2(tan[j].y(), tan[j].x());
    nrm[j] = profile.right_normal(theta);
    const double r = tan[j].norm();
    k[j] = from_direction(profile, theta, cross(tan[j], g.d2(s[j])) / (r * r * r));
    if (k[j].flat_psi) throw Error(ErrorKind::FlatUnitCircle, "anti-circle curvature under guard at s = " + std::to_string(s[j]));
  }
  FrenetResiduals r;
  const bool closed = g.closed();
  // Fourth-order central stencils; open curves skip two samples at each end.
  for (std::size_t j = 0; j < m; ++j) {
    if (!closed && (j < 2 || j + 2 >= m)) continue;
    const std::size_t a2 = (j + m - 2) % m, a = (j + m - 1) % m, b = (j + 1) % m, b2 = (j + 2) % m;
    const Vec2 g2 = (-pos[b2] + 16 * pos[b] - 30 * pos[j] + 16 * pos[a] - pos[a2]) / (12 * h * h);
    const Vec2 n1 = (-nrm[b2] + 8 * nrm[b] - 8 * nrm[a] + nrm[a2]) / (12 * h);
    r.r1 = std::max(r.r1, (g2 - k[j].k_m * nrm[j]).norm());
    r.r2 = std::max(r.r2, (n1 + k[j].k_n * tan[j]).norm());
  }
  return r;
}

DualityReport duality_check(const PlaneCurve& curve, const NormProfile& profile, DualMethod method, int grid) {
  const NormProfile dual =
      method == DualMethod::exact ? NormProfile::dual(profile) : fit_anti_profile(profile);
  DualityReport rep;
  rep.method = method == DualMethod::exact ? "exact" : "spline";
  for (double t : curve.grid(grid)) {
    const PointCurvature a = curvature_at(curve, profile, t);
    const PointCurvature b = curvature_at(curve, dual, t);
    ++rep.samples;
    if (a.flat_phi || a.flat_psi || b.flat_phi || b.flat_psi) {
      ++rep.skipped;
      continue;
    }
    rep.circular_vs_normal = std::max(rep.circular_vs_normal, std::abs(a.k_c - b.k_n));
    rep.arclength_vs_minkowski = std::max(rep.arclength_vs_minkowski, std::abs(a.k_l - b.k_m));
  }
  return rep;
}

}  // namespace mink
