#include "minkcurve/analysis.hpp"
#include "minkcurve/errors.hpp"
#include "minkcurve/evolute.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace mink {

std::vector<double> curvature_values(const CurvatureProfile& cp, CurvatureType type) {
  switch (type) {
    case CurvatureType::minkowski: return cp.k_m;
    case CurvatureType::normal: return cp.k_n;
    case CurvatureType::circular: return cp.k_c;
    case CurvatureType::arclength: return cp.k_l;
  }
  return {};
}

namespace {

double pick(const PointCurvature& p, CurvatureType type) {
  switch (type) {
    case CurvatureType::minkowski: return p.k_m;
    case CurvatureType::normal: return p.k_n;
    case CurvatureType::circular: return p.flat_phi ? std::numeric_limits<double>::quiet_NaN() : p.k_c;
    case CurvatureType::arclength: return p.k_l;
  }
  return 0.0;
}

double tangent_rate(const PlaneCurve& c, double t) {
  const Vec2 g1 = c.d1(t), g2 = c.d2(t);
  return cross(g1, g2) / g1.squaredNorm();
}

// Positively oriented strictly convex closed curve with its parameter table; lookups by tangent
// angle and by norm arc length are polished with Newton steps on the exact curve.
class ConvexCurve {
 public:
  ConvexCurve(const PlaneCurve& curve, const NormProfile& profile, int n = 0)
      : c_(positively_oriented(curve)), profile_(profile), table_(param_table(c_, profile, n)) {
    if (!c_.closed()) throw Error(ErrorKind::InvalidInput, "a closed curve is required");
    for (double d : table_.derivative(Column::theta))
      if (!(d > 0)) throw Error(ErrorKind::NotConvex, "tangent direction is not strictly increasing");
    th0_ = table_.values(Column::theta).front();
    s0_ = table_.values(Column::s).front();
    L_ = table_.total(Column::s);
  }

  const PlaneCurve& curve() const { return c_; }
  double length() const { return L_; }
  double theta0() const { return th0_; }

  // Source parameter where the tangent angle is theta.
  double t_at_angle(double theta) const {
    const double x = th0_ + std::fmod(std::fmod(theta - th0_, kTwoPi) + kTwoPi, kTwoPi);
    double t = table_.map(Column::theta, Column::param, std::min(x, th0_ + kTwoPi));
    for (int it = 0; it < 3; ++it) {
      const Vec2 d = c_.d1(t);
      t -= std::remainder(std::atan2(d.y(), d.x()) - x, kTwoPi) / tangent_rate(c_, t);
    }
    return t;
  }

  // Norm arc length from the start of the curve to parameter t, in [0, L).
  double s_at(double t) const {
    const auto& tv = table_.values(Column::param);
    const double x = c_.t0() + std::fmod(std::fmod(t - c_.t0(), c_.span()) + c_.span(), c_.span());
    std::size_t j = std::upper_bound(tv.begin(), tv.end(), x) - tv.begin();
    j = std::clamp<std::size_t>(j, 1, tv.size() - 1) - 1;
    auto v = [&](double y) { return speed(c_, profile_, Metric::norm, y); };
    const double s = table_.values(Column::s)[j] - s0_ + simpson(v, tv[j], x, 8);
    return std::fmod(s + L_, L_);
  }

  double t_at_s(double s) const {
    double t = table_.map(Column::s, Column::param, s0_ + std::fmod(std::fmod(s, L_) + L_, L_));
    for (int it = 0; it < 2; ++it) {
      const double r = std::remainder(s_at(t) - s, L_);
      t -= r / speed(c_, profile_, Metric::norm, t);
    }
    return t;
  }

 private:
  PlaneCurve c_;
  NormProfile profile_;
  ParamTable table_;
  double th0_ = 0, s0_ = 0, L_ = 0;
};

// Indices of strict local extrema of a periodic sequence, with prominence above thr.
std::vector<std::pair<std::size_t, bool>> zigzag(const std::vector<double>& v, double thr) {
  const std::size_t n = v.size();
  std::vector<std::pair<std::size_t, bool>> out;
  if (n < 3) return out;
  const std::size_t m = std::max_element(v.begin(), v.end()) - v.begin();
  out.emplace_back(m, true);
  bool seek_min = true;
  std::size_t cand = m;
  for (std::size_t step = 1; step <= n; ++step) {
    const std::size_t i = (m + step) % n;
    if (seek_min) {
      if (v[i] < v[cand]) {
        cand = i;
      } else if (v[i] - v[cand] > thr) {
        out.emplace_back(cand, false);
        seek_min = false;
        cand = i;
      }
    } else {
      if (v[i] > v[cand]) {
        cand = i;
      } else if (v[cand] - v[i] > thr) {
        out.emplace_back(cand, true);
        seek_min = true;
        cand = i;
      }
    }
  }
  // A trailing maximum candidate is the starting maximum again.
  if (!out.empty() && out.back().first == m && out.size() > 1) out.pop_back();
  return out;
}

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

std::vector<double> direction_grid(int n) {
  std::vector<double> nu(n);
  for (int j = 0; j < n; ++j) nu[j] = kTwoPi * j / n;
  return nu;
}

int even_grid(const PlaneCurve& c, int grid) {
  const int n = grid > 0 ? grid : c.samples_n();
  return n + (n % 2);
}

}  // namespace

FourVertexReport four_vertex_report(const PlaneCurve& curve, const NormProfile& profile, CurvatureType type,
                                    int grid) {
  const ConvexCurve cc(curve, profile);
  const PlaneCurve& c = cc.curve();
  CurvatureOptions opt;
  opt.grid = grid;
  const CurvatureProfile cp = curvatures(c, profile, opt);
  const std::vector<double> all = curvature_values(cp, type);

  FourVertexReport rep;
  rep.type = type;
  std::vector<double> v;
  std::vector<std::size_t> where;
  for (std::size_t j = 0; j < all.size(); ++j) {
    if (!std::isfinite(all[j]) || (type == CurvatureType::circular && cp.flat_phi[j])) {
      ++rep.skipped;
      continue;
    }
    v.push_back(all[j]);
    where.push_back(j);
  }
  if (v.empty()) throw Error(ErrorKind::GuardViolation, "every sample is flagged by the guard");
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  const double range = *hi - *lo, scale = std::max(std::abs(*lo), std::abs(*hi));
  if (range <= 1e-6 * scale) {
    rep.degenerate = true;
  } else {
    for (const auto& [i, is_max] : zigzag(v, 1e-8 * range)) {
      const std::size_t j = where[i];
      rep.extrema.push_back({cp.s[j], cp.theta[j], v[i], is_max});
    }
    std::sort(rep.extrema.begin(), rep.extrema.end(), [](const Extremum& a, const Extremum& b) { return a.s < b.s; });
  }

  // Parallel tangents with equal curvature: zeros of g(theta) = k(theta) - k(theta + pi) on half a turn.
  auto k_at = [&](double theta) { return pick(curvature_at(c, profile, cc.t_at_angle(theta)), type); };
  auto g = [&](double theta) { return k_at(theta) - k_at(theta + kPi); };
  const int m = std::max(64, static_cast<int>(cp.size()) / 2);
  std::vector<double> th(m + 1), gv(m + 1);
  double gmax = 0;
  for (int j = 0; j <= m; ++j) {
    th[j] = cc.theta0() + kPi * j / m;
    gv[j] = g(th[j]);
    if (std::isfinite(gv[j])) gmax = std::max(gmax, std::abs(gv[j]));
  }
  if (gmax <= 1e-8 * scale) {
    rep.all_opposite_equal = true;
    return rep;
  }
  // g(theta + pi) = -g(theta), so the node at theta0 + pi repeats the one at theta0.
  for (int j = 0; j < m; ++j) {
    const double a = gv[j], b = gv[j + 1];
    if (!std::isfinite(a) || !std::isfinite(b)) continue;
    double root;
    if (a == 0.0) {
      root = th[j];
    } else if ((a < 0) != (b < 0) && b != 0.0) {
      root = bisect(g, th[j], th[j + 1], 1e-12);
    } else {
      continue;
    }
    const double t = cc.t_at_angle(root);
    rep.pairs.push_back({root, cc.s_at(t), cc.s_at(cc.t_at_angle(root + kPi)), k_at(root)});
  }
  return rep;
}

double opposite_s(const PlaneCurve& curve, const NormProfile& profile, double s) {
  const ConvexCurve cc(curve, profile);
  const Vec2 d = cc.curve().d1(cc.t_at_s(s));
  return cc.s_at(cc.t_at_angle(std::atan2(d.y(), d.x()) + kPi));
}

std::vector<double> support_samples(const PlaneCurve& curve, const std::vector<double>& nu) {
  const ConvexCurve cc(curve, NormProfile::euclidean());
  std::vector<double> h;
  h.reserve(nu.size());
  for (double a : nu) h.push_back(cc.curve().eval(cc.t_at_angle(a + 0.5 * kPi)).dot(unit(a)));
  return h;
}

double line_distance(const NormProfile& profile, double nu, double w) {
  w = std::abs(w);
  if (w == 0.0) return 0.0;
  const Vec2 e = unit(nu), f = perp(e);
  // ||w e + tau f|| >= |tau| / p_max, so the minimizer lies within w p_max / p(nu).
  double pmax = 0;
  for (int j = 0; j < 360; ++j) pmax = std::max(pmax, profile.p(kPi * j / 360));
  const double R = 1.01 * w * pmax / profile.p(nu);
  const auto r = boost::math::tools::brent_find_minima([&](double tau) { return profile.norm(w * e + tau * f); },
                                                       -R, R, 40);
  return r.second;
}

WidthReport width_function(const PlaneCurve& curve, const NormProfile& profile, int grid, double tol) {
  const int n = even_grid(curve, grid);
  WidthReport rep;
  rep.nu = direction_grid(n);
  const std::vector<double> h = support_samples(curve, rep.nu);
  rep.width.resize(n);
  for (int j = 0; j < n / 2; ++j) {
    rep.width[j] = line_distance(profile, rep.nu[j], h[j] + h[j + n / 2]);
    rep.width[j + n / 2] = rep.width[j];
  }
  rep.min = *std::min_element(rep.width.begin(), rep.width.end());
  rep.max = *std::max_element(rep.width.begin(), rep.width.end());
  double sum = 0;
  for (double w : rep.width) sum += w;
  rep.mean = sum / n;
  rep.constant = (rep.max - rep.min) / rep.mean < tol;
  return rep;
}

ConstantWidthReport constant_width_checks(const PlaneCurve& curve, const NormProfile& profile, double d, int grid,
                                          double tol) {
  const WidthReport wr = width_function(curve, profile, grid, tol);
  if (std::abs(wr.max - d) > tol * d || std::abs(wr.min - d) > tol * d)
    throw Error(ErrorKind::NotConstantWidth, "width ranges over [" + std::to_string(wr.min) + ", " +
                                                 std::to_string(wr.max) + "], expected " + std::to_string(d));
  const ConvexCurve cc(curve, profile);
  const PlaneCurve& c = cc.curve();
  const int n = even_grid(curve, grid);
  ConstantWidthReport rep;
  rep.width = wr.mean;
  auto rho = [&](double theta) {
    const PointCurvature p = curvature_at(c, profile, cc.t_at_angle(theta));
    return p.flat_phi ? std::numeric_limits<double>::quiet_NaN() : 1.0 / p.k_c;
  };
  const double L = cc.length();
  double kmin = std::numeric_limits<double>::infinity(), kmax = 0;
  for (int j = 0; j < n / 2; ++j) {
    const double theta = cc.theta0() + kPi * j / (n / 2);
    // Where S is flat the radius is 0/0; those directions are skipped.
    const double sum = rho(theta) + rho(theta + kPi);
    if (std::isfinite(sum)) rep.radii_sum = std::max(rep.radii_sum, std::abs(sum - d));
    const double sa = cc.s_at(cc.t_at_angle(theta)), sb = cc.s_at(cc.t_at_angle(theta + kPi));
    const double arc = std::fmod(sb - sa + L, L);
    rep.halving = std::max(rep.halving, std::abs(2 * arc - L));
  }
  CurvatureOptions opt;
  opt.grid = n;
  const CurvatureProfile cp = curvatures(c, profile, opt);
  for (std::size_t j = 0; j < cp.size(); ++j) {
    if (cp.flat_phi[j] || !std::isfinite(cp.k_c[j])) continue;
    kmin = std::min(kmin, cp.k_c[j]);
    kmax = std::max(kmax, cp.k_c[j]);
  }
  rep.length_defect = std::abs(L - d * profile.circle_length() / 2);
  rep.k_c_variation = (kmax - kmin) / kmax;
  rep.is_circle = rep.k_c_variation < 1e-5;
  rep.halving_consistent = (rep.halving < tol * L) == rep.is_circle;
  return rep;
}

SupportComparison support_comparison(const PlaneCurve& curve_a, const PlaneCurve& curve_b, const NormProfile&,
                                     int grid, double tol) {
  const std::vector<double> nu = direction_grid(even_grid(curve_a, grid));
  const std::vector<double> ha = support_samples(curve_a, nu), hb = support_samples(curve_b, nu);
  SupportComparison r;
  r.margin = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < nu.size(); ++j) r.margin = std::min(r.margin, ha[j] - hb[j]);
  r.contains = r.margin >= -tol;
  return r;
}

double InclusionReport::worst() const { return *std::min_element(margins.begin(), margins.end()); }

InclusionReport inclusion_check(const PlaneCurve& curve, const NormProfile& profile, int grid) {
  const ConvexCurve cc(curve, profile);
  const PlaneCurve g = reparametrize(cc.curve(), profile, Target::norm_arclength).curve;
  CurvatureOptions opt;
  opt.grid = grid;
  const CurvatureProfile cp = curvatures(cc.curve(), profile, opt);
  const std::size_t n = cp.size();
  const double ds = cp.length / n;

  // Grid extremum of a curvature column refined by Brent on the neighbouring cells.
  auto extremum = [&](CurvatureType type, bool want_max) {
    const std::vector<double> v = curvature_values(cp, type);
    std::size_t best = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(v[j]) || (type == CurvatureType::circular && cp.flat_phi[j])) continue;
      if (best == n || (want_max ? v[j] > v[best] : v[j] < v[best])) best = j;
    }
    if (best == n) throw Error(ErrorKind::GuardViolation, "every sample is flagged by the guard");
    auto f = [&](double s) {
      const double k = pick(curvature_at(g, profile, s), type);
      if (!std::isfinite(k)) return want_max ? -std::numeric_limits<double>::max() : std::numeric_limits<double>::max();
      return want_max ? -k : k;
    };
    const auto r = boost::math::tools::brent_find_minima(f, cp.s[best] - ds, cp.s[best] + ds, 40);
    return f(r.first) <= f(cp.s[best]) ? r.first : cp.s[best];
  };

  const std::vector<double> nu = direction_grid(even_grid(curve, grid));
  const std::vector<double> hg = support_samples(cc.curve(), nu);
  const AntiProfile ap = anti_profile(profile);

  InclusionReport rep;
  auto circle_at = [&](double s, Vec2& center, double& r) {
    const PointCurvature p = curvature_at(g, profile, s);
    r = p.flat_phi ? 0.0 : 1.0 / p.k_c;
    center = p.flat_phi ? g.eval(s) : evolute_point(g, profile, s);
  };
  auto anti_at = [&](double s, Vec2& center, double& r) {
    const PointCurvature p = curvature_at(g, profile, s);
    r = 1.0 / p.k_n;
    center = g.eval(s) + r * profile.right_normal(p.theta);
  };
  circle_at(extremum(CurvatureType::circular, true), rep.c_min_circle, rep.r_min_circle);
  anti_at(extremum(CurvatureType::normal, true), rep.c_min_anti, rep.r_min_anti);
  struct Large {
    bool half_plane = false;
    Vec2 point = Vec2::Zero();
    double nu = 0.0;
  } large_circle, large_anti;
  auto largest = [&](CurvatureType type, Vec2& center, double& r, Large& big) {
    const double s = extremum(type, false);
    const PointCurvature p = curvature_at(g, profile, s);
    const double k = type == CurvatureType::circular ? p.k_c : p.k_n;
    const double kmax = type == CurvatureType::circular ? 1.0 / rep.r_min_circle : 1.0 / rep.r_min_anti;
    if (k <= 1e-6 * kmax) {
      big = {true, g.eval(s), p.theta - 0.5 * kPi};
      r = std::numeric_limits<double>::infinity();
      center = g.eval(s);
    } else if (type == CurvatureType::circular) {
      circle_at(s, center, r);
    } else {
      anti_at(s, center, r);
    }
  };
  largest(CurvatureType::circular, rep.c_max_circle, rep.r_max_circle, large_circle);
  largest(CurvatureType::normal, rep.c_max_anti, rep.r_max_anti, large_anti);

  rep.margins.fill(std::numeric_limits<double>::infinity());
  for (std::size_t j = 0; j < nu.size(); ++j) {
    const Vec2 e = unit(nu[j]);
    const double H = profile.support(nu[j]), Ha = ap.h_psi(nu[j]);
    rep.margins[0] = std::min(rep.margins[0], hg[j] - (rep.c_min_circle.dot(e) + rep.r_min_circle * H));
    rep.margins[2] = std::min(rep.margins[2], hg[j] - (rep.c_min_anti.dot(e) + rep.r_min_anti * Ha));
    if (!large_circle.half_plane)
      rep.margins[1] = std::min(rep.margins[1], rep.c_max_circle.dot(e) + rep.r_max_circle * H - hg[j]);
    if (!large_anti.half_plane)
      rep.margins[3] = std::min(rep.margins[3], rep.c_max_anti.dot(e) + rep.r_max_anti * Ha - hg[j]);
  }
  // A vanishing curvature makes the largest circle a supporting half-plane; only its own normal
  // direction constrains the curve.
  for (const auto* big : {&large_circle, &large_anti}) {
    if (!big->half_plane) continue;
    const double hn = support_samples(cc.curve(), {big->nu}).front();
    rep.margins[big == &large_circle ? 1 : 3] = big->point.dot(unit(big->nu)) - hn;
  }
  return rep;
}

PlaneProbes plane_probes(const NormProfile& profile, int grid) {
  CurvatureOptions opt;
  opt.grid = grid;
  const CurvatureProfile cp = curvatures(curves::unit_circle(profile), profile, opt);
  PlaneProbes r;
  std::vector<double> km;
  for (std::size_t j = 0; j < cp.size(); ++j) {
    if (cp.flat_phi[j] || cp.flat_psi[j]) {
      ++r.skipped;
      continue;
    }
    r.radon_deviation = std::max(r.radon_deviation, std::abs(cp.k_n[j] - cp.k_c[j]));
    r.km_kn = std::max(r.km_kn, std::abs(cp.k_m[j] - cp.k_n[j]));
    km.push_back(cp.k_m[j]);
  }
  double mean = 0;
  for (double k : km) mean += k;
  mean /= static_cast<double>(km.size());
  for (double k : km) r.km_variance += (k - mean) * (k - mean);
  r.km_variance /= static_cast<double>(km.size());
  return r;
}

IsometryReport isometry_check(const PlaneCurve& curve, const NormProfile& profile, const Eigen::Matrix2d& A,
                              int grid) {
  for (int j = 0; j < 64; ++j) {
    const Vec2 x = unit(kTwoPi * (j + 0.37) / 64);
    if (std::abs(profile.norm(A * x) - profile.norm(x)) > 1e-12 * profile.norm(x))
      throw Error(ErrorKind::InvalidInput, "the map is not an isometry of the norm");
  }
  CurvatureOptions opt;
  opt.grid = grid;
  opt.auto_orient = false;
  const CurvatureProfile a = curvatures(curve, profile, opt);
  const CurvatureProfile b = curvatures(curve.transformed(A), profile, opt);
  IsometryReport r;
  r.det = A.determinant();
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a.flat_phi[j] || a.flat_psi[j] || b.flat_phi[j] || b.flat_psi[j]) {
      ++r.skipped;
      continue;
    }
    const double ka[4] = {a.k_m[j], a.k_n[j], a.k_c[j], a.k_l[j]};
    const double kb[4] = {b.k_m[j], b.k_n[j], b.k_c[j], b.k_l[j]};
    for (int i = 0; i < 4; ++i) {
      r.max_abs_diff = std::max(r.max_abs_diff, std::abs(std::abs(kb[i]) - std::abs(ka[i])));
      if (std::abs(ka[i]) > 1e-9 && ((ka[i] * kb[i] > 0) != (r.det > 0))) r.sign_ok = false;
    }
  }
  return r;
}

std::vector<Eigen::Matrix2d> square_symmetries() {
  std::vector<Eigen::Matrix2d> out;
  Eigen::Matrix2d m;
  m << 1, 0, 0, 1;
  out.push_back(m);
  m << 0, -1, 1, 0;
  out.push_back(m);
  m << -1, 0, 0, -1;
  out.push_back(m);
  m << 0, 1, -1, 0;
  out.push_back(m);
  m << 1, 0, 0, -1;
  out.push_back(m);
  m << -1, 0, 0, 1;
  out.push_back(m);
  m << 0, 1, 1, 0;
  out.push_back(m);
  m << 0, -1, -1, 0;
  out.push_back(m);
  return out;
}

std::vector<PlaneCurve> random_convex_family(int count, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0), budget(0.2, 0.75);
  std::vector<PlaneCurve> out;
  for (int i = 0; i < count; ++i) {
    std::vector<curves::Harmonic> hs;
    double weight = 0;
    for (int k = 2; k <= 4; ++k) {
      hs.push_back({k, coef(gen), coef(gen)});
      weight += (k * k - 1) * (std::abs(hs.back().c) + std::abs(hs.back().s));
    }
    const double scale = budget(gen) / weight;
    for (auto& h : hs) {
      h.c *= scale;
      h.s *= scale;
    }
    out.push_back(curves::from_support(1.0, hs));
  }
  return out;
}

}  // namespace mink
