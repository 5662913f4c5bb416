#include "minkcurve/evolute.hpp"
#include "minkcurve/curvature.hpp"
#include "minkcurve/errors.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>

namespace mink {

namespace {

double rho_at(const PlaneCurve& c, const NormProfile& profile, double t) {
  const Vec2 d = c.d1(t);
  const double theta = std::atan2(d.y(), d.x());
  return profile.k_phi(theta) / euclidean_curvature_at(c, t);
}

// d rho / dt with dk_phi/dtheta in closed form. k_phi vanishes at flat directions of S like a
// fractional power, so rho' has integrable poles there that finite differences resolve badly.
double drho_at(const PlaneCurve& c, const NormProfile& profile, double t, double ht) {
  const Vec2 g1 = c.d1(t), g2 = c.d2(t);
  const double theta = std::atan2(g1.y(), g1.x());
  const double k_e = cross(g1, g2) / std::pow(g1.norm(), 3);
  const double theta_t = cross(g1, g2) / g1.squaredNorm();
  const double a = profile.tangent_point(theta);
  const double p = profile.p(a), p1 = profile.dp(a), p2 = profile.d2p(a), p3 = profile.d3p(a);
  const double N = p * p + 2 * p1 * p1 - p * p2, D = p * p + p1 * p1;
  const double dN = 2 * p * p1 + 3 * p1 * p2 - p * p3, dD = 2 * p1 * (p + p2);
  const double k_phi = N / std::pow(D, 1.5);
  const double dk_phi = dN / (N * std::sqrt(D)) - 1.5 * dD / std::pow(D, 1.5);
  const double dk_e = richardson_derivative([&](double x) { return euclidean_curvature_at(c, x); }, t, 1, ht);
  return dk_phi * theta_t / k_e - k_phi * dk_e / (k_e * k_e);
}

// Tangent angle theta lies on a flat direction of S (mod pi).
bool on_flat_direction(const NormProfile& profile, double theta) {
  for (double d : profile.flat_directions())
    if (std::abs(std::remainder(theta - d, kPi)) < 1e-6) return true;
  return false;
}

double kc_at(const PlaneCurve& c, const NormProfile& profile, double t) {
  return curvature_at(c, profile, t).k_c;
}

// Bisection on a sign change of f in [a, b] down to width tol.
double bisect(const std::function<double(double)>& f, double a, double b, double tol) {
  double fa = f(a);
  while (b - a > tol) {
    const double m = 0.5 * (a + b), fm = f(m);
    if (fm == 0.0) return m;
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

// Closed curves are walked with wrap-around; open curves stop at the last sample.
std::size_t cells(std::size_t n, bool closed) { return closed ? n : n - 1; }

// Cells (j, k) of consecutive samples that hold a zero of d: a strict sign change, or (j, j)
// for an exact zero at node j between opposite signs. Values below `floor` count as zero.
std::vector<std::pair<std::size_t, std::size_t>> sign_changes(const std::vector<double>& d, bool closed,
                                                              double floor) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t m = d.size();
  auto sgn = [&](std::size_t i) { return std::abs(d[i]) <= floor ? 0 : (d[i] > 0 ? 1 : -1); };
  for (std::size_t j = 0; j < cells(m, closed); ++j) {
    const std::size_t k = (j + 1) % m;
    if (sgn(j) * sgn(k) < 0) {
      out.emplace_back(j, k);
    } else if (sgn(k) == 0 && (closed || k + 1 < m)) {
      // Walk over the run of zeros and keep it only when the sign flips across it.
      std::size_t e = k;
      std::size_t steps = 0;
      while (sgn(e) == 0 && steps++ < m) e = (e + 1) % m;
      if (sgn(j) * sgn(e) < 0 && steps == 1) out.emplace_back(k, k);
    }
  }
  return out;
}

void require_curvature(const std::vector<double>& k_e) {
  double mx = 0;
  for (double k : k_e) mx = std::max(mx, std::abs(k));
  for (double k : k_e)
    if (!(std::abs(k) > 1e-12 * mx)) throw Error(ErrorKind::VanishingCurvature, "k_c vanishes on the curve");
}

}  // namespace

Vec2 evolute_point(const PlaneCurve& curve, const NormProfile& profile, double t) {
  const Vec2 d = curve.d1(t);
  const double theta = std::atan2(d.y(), d.x());
  const double k_e = euclidean_curvature_at(curve, t);
  if (k_e == 0.0) throw Error(ErrorKind::VanishingCurvature, "k_c vanishes at t = " + std::to_string(t));
  return curve.eval(t) - (profile.k_phi(theta) / k_e) * profile.aligned_point(theta);
}

std::vector<std::vector<Vec2>> EvoluteResult::arcs() const {
  std::vector<std::vector<Vec2>> out(1);
  std::size_t c = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    while (c < cusps.size() && cusps[c] <= s[i]) {
      out.back().push_back(cusp_points[c]);
      out.emplace_back();
      out.back().push_back(cusp_points[c]);
      ++c;
    }
    out.back().push_back(points[i]);
  }
  if (closed && out.size() > 1) {
    // The last arc continues into the first one.
    out.back().insert(out.back().end(), out.front().begin(), out.front().end());
    out.erase(out.begin());
  }
  return out;
}

EvoluteResult evolute(const PlaneCurve& curve_in, const NormProfile& profile, int grid) {
  const PlaneCurve curve = positively_oriented(curve_in);
  const int n = grid > 0 ? grid : curve.samples_n();
  const ParamTable table = param_table(curve, profile);
  const double L = table.total(Column::s);
  const double s0 = table.values(Column::s).front();
  const double ht = 1e-4 * curve.span();
  auto t_of = [&](double s) { return table.map(Column::s, Column::param, s0 + s); };
  auto s_of = [&](double t) {
    const double s = table.map(Column::param, Column::s, t > curve.t1() ? t - curve.span() : t) - s0;
    return curve.closed() ? std::fmod(s + L, L) : s;
  };
  auto speed_at = [&](double t) { return speed(curve, profile, Metric::norm, t); };
  auto rho = [&](double t) { return rho_at(curve, profile, t); };
  auto drho_t = [&](double t) { return richardson_derivative(rho, t, 1, ht); };
  auto xi = [&](double t) { return evolute_point(curve, profile, t); };

  EvoluteResult r;
  r.length = L;
  r.closed = curve.closed();
  std::vector<double> ts, k_e;
  for (int j = 0; j < (r.closed ? n : n + 1); ++j) {
    const double s = L * j / n;
    ts.push_back(t_of(s));
    r.s.push_back(s);
    k_e.push_back(euclidean_curvature_at(curve, ts.back()));
  }
  require_curvature(k_e);
  double rho_max = 0;
  for (double t : ts) {
    r.points.push_back(xi(t));
    r.rho.push_back(rho(t));
    r.drho.push_back(drho_t(t) / speed_at(t));
    rho_max = std::max(rho_max, std::abs(r.rho.back()));
  }
  const double floor = 1e-8 * rho_max * kTwoPi / L;
  std::vector<double> contact_t;
  for (const auto& [j, k] : sign_changes(r.drho, r.closed, floor)) {
    double tc = ts[j];
    if (j != k) {
      double b = ts[k];
      if (b < tc) b += curve.span();
      tc = bisect(drho_t, tc, b, 1e-10 * curve.span() / L);
    }
    const Vec2 dc = curve.d1(tc);
    if (std::abs(rho(tc)) <= 1e-6 * rho_max || on_flat_direction(profile, std::atan2(dc.y(), dc.x()))) {
      // rho' changes sign through a pole here, not through zero.
      contact_t.push_back(tc);
      r.contacts.push_back(s_of(tc));
      continue;
    }
    r.cusps.push_back(s_of(tc));
    r.cusp_points.push_back(xi(tc));
    const double eps = 1e-5 * curve.span();
    const Vec2 dm = (xi(tc) - xi(tc - eps)).normalized(), dp = (xi(tc + eps) - xi(tc)).normalized();
    r.cusp_antipodality.push_back((dm + dp).norm());
  }
  for (std::size_t j = 0; j < ts.size(); ++j) {
    const double t = ts[j];
    bool near = false;
    for (double c : contact_t) {
      const double d = std::abs(std::remainder(t - c, curve.closed() ? curve.span() : 1e300));
      near = near || d < 1e-2 * curve.span();
    }
    if (near) {
      ++r.skipped;
      continue;
    }
    const Vec2 d = curve.d1(t);
    const Vec2 phi = profile.aligned_point(std::atan2(d.y(), d.x()));
    const Vec2 dxi(richardson_derivative([&](double x) { return xi(x).x(); }, t, 1, ht),
                   richardson_derivative([&](double x) { return xi(x).y(); }, t, 1, ht));
    const Vec2 dxi_s = dxi / speed_at(t);
    r.tangency = std::max(r.tangency, (dxi_s + r.drho[j] * phi).norm());
    if (dxi_s.norm() > 1e-8)
      r.cross_residual = std::max(r.cross_residual, std::abs(cross(dxi_s, phi)) / dxi_s.norm() / phi.norm());
  }
  // Keep cusps ordered by s for arc splitting.
  std::vector<std::size_t> idx(r.cusps.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return r.cusps[a] < r.cusps[b]; });
  EvoluteResult sorted = r;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    sorted.cusps[i] = r.cusps[idx[i]];
    sorted.cusp_points[i] = r.cusp_points[idx[i]];
    sorted.cusp_antipodality[i] = r.cusp_antipodality[idx[i]];
  }
  std::sort(sorted.contacts.begin(), sorted.contacts.end());
  return sorted;
}

PlaneCurve involute(const PlaneCurve& curve, const NormProfile& profile, double c) {
  const PlaneCurve g = reparametrize(curve, profile, Target::norm_arclength).curve;
  const double h = 1e-3 * g.span() / kTwoPi;
  auto d3 = [g, h](double s) -> Vec2 {
    return {richardson_derivative([&](double x) { return g.d2(x).x(); }, s, 1, h),
            richardson_derivative([&](double x) { return g.d2(x).y(); }, s, 1, h)};
  };
  return PlaneCurve([g, c](double s) -> Vec2 { return g.eval(s) + (c - s) * g.d1(s); },
                    [g, c](double s) -> Vec2 { return (c - s) * g.d2(s); },
                    [g, c, d3](double s) -> Vec2 { return -g.d2(s) + (c - s) * d3(s); }, g.t0(), g.t1(), false,
                    g.samples_n());
}

ParallelResult left_parallel(const PlaneCurve& curve, const NormProfile& profile, double d, int grid, double tol) {
  const PlaneCurve g = reparametrize(curve, profile, Target::norm_arclength).curve;
  const double h = 1e-3 * g.span() / kTwoPi;
  auto kc = [g, profile](double s) { return kc_at(g, profile, s); };
  auto align = [g, profile](double s) {
    const Vec2 v = g.d1(s);
    return profile.aligned_point(std::atan2(v.y(), v.x()));
  };
  ParallelResult r;
  r.curve = PlaneCurve([g, d, align](double s) -> Vec2 { return g.eval(s) + d * align(s); },
                       [g, d, kc](double s) -> Vec2 { return (1 + d * kc(s)) * g.d1(s); },
                       [g, d, kc, h](double s) -> Vec2 {
                         const double dk = richardson_derivative(kc, s, 1, h);
                         return d * dk * g.d1(s) + (1 + d * kc(s)) * g.d2(s);
                       },
                       g.t0(), g.t1(), g.closed(), g.samples_n());
  r.s = g.grid(grid);
  bool all = true;
  for (double s : r.s) {
    r.factor.push_back(1 + d * kc(s));
    r.singular.push_back(std::abs(r.factor.back()) <= tol);
    all = all && r.singular.back();
  }
  if (all) return r;
  const std::size_t m = r.s.size();
  auto f = [&](double s) { return 1 + d * kc(s); };
  for (std::size_t j = 0; j < cells(m, g.closed()); ++j) {
    const std::size_t k = (j + 1) % m;
    const double a = r.s[j], b = k == 0 ? g.t1() : r.s[k];
    if (std::isfinite(r.factor[j]) && std::isfinite(r.factor[k]) && (r.factor[j] < 0) != (r.factor[k] < 0)) {
      r.roots.push_back(bisect(f, a, b, 1e-12 * g.span()));
      continue;
    }
    // A touching zero shows up as a local minimum of |1 + d k_c|.
    const std::size_t i = (j + m - 1) % m;
    if (!g.closed() && j == 0) continue;
    const double fa = std::abs(r.factor[i]), fj = std::abs(r.factor[j]), fb = std::abs(r.factor[k]);
    // Both neighbouring cells keep their sign; otherwise the zero is already bracketed.
    const bool same_sign = (r.factor[i] < 0) == (r.factor[j] < 0);
    if (same_sign && fj <= fa && fj < fb && fj < 1e-3) {
      const double lo = j == 0 ? r.s[j] - (r.s[1] - r.s[0]) : r.s[i];
      const auto res = boost::math::tools::brent_find_minima([&](double s) { return std::abs(f(s)); }, lo, b, 52);
      if (res.second <= 1e2 * tol) r.roots.push_back(res.first);
    }
  }
  std::sort(r.roots.begin(), r.roots.end());
  for (double s : r.roots) r.root_points.push_back(r.curve.eval(s));
  return r;
}

OsculatingCircle osculating_circle(const PlaneCurve& curve, const NormProfile& profile, double t0) {
  const PointCurvature k = curvature_at(curve, profile, t0);
  if (k.k_e == 0.0) throw Error(ErrorKind::VanishingCurvature, "k_c vanishes at t = " + std::to_string(t0));
  return {evolute_point(curve, profile, t0), std::abs(1.0 / k.k_c)};
}

VertexReport vertices(const PlaneCurve& curve, const NormProfile& profile, int grid) {
  const PlaneCurve c = positively_oriented(curve);
  const ParamTable table = param_table(c, profile);
  const double L = table.total(Column::s), s0 = table.values(Column::s).front();
  const double ht = 1e-4 * c.span();
  auto kc = [&](double t) { return kc_at(c, profile, t); };
  auto dk = [&](double t) { return richardson_derivative(kc, t, 1, ht); };
  VertexReport rep;
  std::vector<double> ts, k, d;
  std::vector<bool> ok;
  double kmax = 0, kmin = std::numeric_limits<double>::infinity();
  for (double t : c.grid(grid)) {
    const PointCurvature p = curvature_at(c, profile, t);
    ts.push_back(t);
    k.push_back(p.k_c);
    ok.push_back(!p.flat_phi && std::isfinite(p.k_c));
    if (ok.back()) {
      kmax = std::max(kmax, std::abs(p.k_c));
      kmin = std::min(kmin, std::abs(p.k_c));
    }
  }
  if (kmax - kmin <= 1e-5 * kmax) {
    rep.continuum = true;
    return rep;
  }
  for (std::size_t j = 0; j < ts.size(); ++j) d.push_back(ok[j] ? dk(ts[j]) : 0.0);
  const double ell = L / kTwoPi;
  for (const auto& [j, i] : sign_changes(d, c.closed(), 1e-10 * kmax / ell)) {
    if (!ok[j] || !ok[i]) continue;
    double a = ts[j], b = ts[i];
    if (b < a) b += c.span();
    // A sign change of k_c' across an infinite spike of k_c is a pole, not a vertex.
    if (std::abs(k[i] - k[j]) > 0.5 * (kmax - kmin)) continue;
    const double t = j == i ? a : bisect(dk, a, b, 1e-10 * c.span() / L);
    const double v = speed(c, profile, Metric::norm, t);
    Vertex vx;
    const double tw = t > c.t1() ? t - c.span() : t;
    vx.s = table.map(Column::param, Column::s, tw) - s0;
    vx.k_c = kc(t);
    vx.dk_c = dk(t) / v;
    vx.d2k_c = richardson_derivative(kc, t, 2, 10 * ht) / (v * v);
    vx.kind = std::abs(vx.d2k_c) > 1e-6 * kmax / (ell * ell) ? VertexKind::ordinary : VertexKind::degenerate;
    rep.vertices.push_back(vx);
  }
  std::sort(rep.vertices.begin(), rep.vertices.end(), [](const Vertex& a, const Vertex& b) { return a.s < b.s; });
  return rep;
}

SquaredDistanceReport squared_distance_singularity(const PlaneCurve& curve, const NormProfile& profile,
                                                   const Vec2& a, double t0) {
  const double ell = curve.span() / kTwoPi;
  double closest = std::numeric_limits<double>::infinity(), size = 0, t_best = t0;
  const auto ts = curve.grid();
  for (double t : ts) {
    const double d = profile.norm(curve.eval(t) - a);
    if (d < closest) {
      closest = d;
      t_best = t;
    }
    size = std::max(size, profile.norm(curve.eval(t) - curve.eval(curve.t0())));
  }
  // Refine the nearest grid sample with Newton on the Euclidean foot point condition
  // (gamma - a) . gamma' = 0; a point between samples would otherwise slip through.
  for (int it = 0; it < 20; ++it) {
    const Vec2 r = curve.eval(t_best) - a, v = curve.d1(t_best);
    const double g = r.dot(v), dg = v.squaredNorm() + r.dot(curve.d2(t_best));
    if (!(dg > 0)) break;
    const double step = std::clamp(g / dg, -0.01 * curve.span(), 0.01 * curve.span());
    t_best -= step;
    if (!curve.closed()) t_best = std::clamp(t_best, curve.t0(), curve.t1());
    if (std::abs(step) <= 1e-15 * curve.span()) break;
  }
  closest = std::min(closest, profile.norm(curve.eval(t_best) - a));
  if (closest <= 1e-9 * std::max(size, 1e-300))
    throw Error(ErrorKind::PointOnCurve, "the reference point lies on the curve");
  auto f = [&](double t) {
    const double r = profile.norm(curve.eval(t) - a);
    return r * r;
  };
  const double S = std::max(f(t0), size * size);
  static constexpr double kStep[4] = {1e-4, 1e-3, 4e-3, 1e-2};
  SquaredDistanceReport rep;
  bool vanishing = true;
  for (int k = 0; k < 4; ++k) {
    rep.derivative[k] = richardson_derivative(f, t0, k + 1, kStep[k] * curve.span());
    rep.threshold[k] = 1e-5 * S / std::pow(ell, k + 1);
    vanishing = vanishing && std::abs(rep.derivative[k]) <= rep.threshold[k];
    if (vanishing) rep.order = k + 1;
  }
  return rep;
}

EvoluteLength signed_evolute_length(const PlaneCurve& curve_in, const NormProfile& profile, int grid) {
  const PlaneCurve curve = positively_oriented(curve_in);
  if (!curve.closed()) throw Error(ErrorKind::InvalidInput, "signed evolute length needs a closed curve");
  const int n = grid > 0 ? grid : curve.samples_n();
  const double ht = 1e-4 * curve.span(), T = curve.span();
  auto drho = [&](double t) { return drho_at(curve, profile, t, ht); };
  auto theta = [&](double t) {
    const Vec2 d = curve.d1(t);
    return std::atan2(d.y(), d.x());
  };
  const auto ts = curve.grid(n);
  std::vector<double> k_e, th, d;
  for (double t : ts) {
    k_e.push_back(euclidean_curvature_at(curve, t));
    th.push_back(theta(t));
  }
  require_curvature(k_e);
  unwrap(th);

  // Break points: contacts where the tangent crosses a flat direction of S, then cusps where rho'
  // changes sign in the remaining cells. Every piece between break points has one sign.
  const std::size_t m = ts.size();
  std::vector<std::pair<double, bool>> breaks;  // (t, is contact)
  std::vector<bool> contact_cell(m, false);
  for (std::size_t j = 0; j < m; ++j) {
    const double a = th[j], b = j + 1 < m ? th[j + 1] : th[0] + kTwoPi;
    for (double f : profile.flat_directions()) {
      for (double c = f + kPi * std::ceil((a - f) / kPi); c < b; c += kPi) {
        const double tb = j + 1 < m ? ts[j + 1] : ts[0] + T;
        auto g = [&](double t) { return std::remainder(theta(t) - c, kTwoPi); };
        breaks.emplace_back(c == a ? ts[j] : bisect(g, ts[j], tb, 1e-14 * T), true);
        contact_cell[j] = true;
        if (c == a) contact_cell[(j + m - 1) % m] = true;
      }
    }
  }
  for (double t : ts) d.push_back(drho(t));
  for (const auto& [j, i] : sign_changes(d, true, 0.0)) {
    // A sign change through a pole is a contact, already listed.
    if (contact_cell[j] || (i == j && contact_cell[(j + m - 1) % m])) continue;
    breaks.emplace_back(j == i ? ts[j] : bisect(drho, ts[j], i == 0 ? ts[0] + T : ts[i], 1e-14 * T), false);
  }
  for (auto& b : breaks) b.first = curve.t0() + std::fmod(b.first - curve.t0() + T, T);
  std::sort(breaks.begin(), breaks.end());

  // rho' has an algebraic pole at a contact, and t cannot resolve it closer than a few ulps. The
  // quadrature stops a small gap short of a contact; the sliver adds rho(t_c +- gap), because
  // rho = k_phi / k_e vanishes at the contact itself.
  const double gap = 1e-9 * T;
  auto rho = [&](double t) { return rho_at(curve, profile, t); };
  boost::math::quadrature::tanh_sinh<double> q;
  auto piece = [&](double a, bool ca, double b, bool cb) {
    double v = 0.0;
    if (ca) {
      a += gap;
      v -= rho(a);
    }
    if (cb) {
      b -= gap;
      v += rho(b);
    }
    return v - q.integrate(drho, a, b, 1e-13);
  };
  EvoluteLength out;
  if (breaks.empty()) {
    const double h = 0.5 * T;
    out.arcs.push_back(piece(curve.t0(), false, curve.t0() + h, false) + piece(curve.t0() + h, false, curve.t1(), false));
  } else {
    for (std::size_t c = 0; c < breaks.size(); ++c) {
      const auto [a, ca] = breaks[c];
      const auto [b, cb] = c + 1 < breaks.size() ? breaks[c + 1] : std::pair{breaks[0].first + T, breaks[0].second};
      if (b > a) out.arcs.push_back(piece(a, ca, b, cb));
    }
  }
  for (double x : out.arcs) {
    out.signed_length += x;
    out.unsigned_length += std::abs(x);
  }
  return out;
}

Vec2 lq_evolute_closed_form(double p, double t) {
  const double q = p / (p - 1), r = p / q;
  const double f = std::pow(1 + std::pow(t / (1 - t), r), 1 / p - 2);
  const double x = std::pow(t, 1 / q) - r * r * std::pow(t, r - 1 / q) / std::pow(1 - t, r - 1 / q + 1) * f;
  const double y = std::pow(1 - t, 1 / q) - r * r * std::pow(t, r - 1) / std::pow(1 - t, r) * f;
  return {x, y};
}

PlaneCurve lq_quadrant_arc(double q, double a, double b) {
  if (!(q > 1 && a > 0 && b < 1 && a < b)) throw Error(ErrorKind::InvalidInput, "need q > 1 and 0 < a < b < 1");
  const double e = 1 / q;
  return PlaneCurve([e](double t) { return Vec2(std::pow(t, e), std::pow(1 - t, e)); },
                    [e](double t) { return Vec2(e * std::pow(t, e - 1), -e * std::pow(1 - t, e - 1)); },
                    [e](double t) {
                      return Vec2(e * (e - 1) * std::pow(t, e - 2), e * (e - 1) * std::pow(1 - t, e - 2));
                    },
                    a, b, false);
}

}  // namespace mink
