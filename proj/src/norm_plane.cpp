#include "minkcurve/norm_plane.hpp"
#include "minkcurve/errors.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <array>
#include <cstdio>
#include <cmath>
#include <limits>

namespace mink {

const char* to_string(NormKind k) {
  switch (k) {
    case NormKind::euclidean: return "euclidean";
    case NormKind::lp: return "lp";
    case NormKind::custom: return "custom";
    case NormKind::dual: return "dual";
  }
  return "?";
}

struct NormProfile::Impl {
  NormKind kind = NormKind::custom;
  double exponent = 2.0;
  double sigma = 1.0;
  int grid_n = kDefaultGrid;
  std::string label;
  ProfileFunctions f;
  std::vector<double> samples;
  // Tangent-angle table over one period of polar angle (grid_n + 1 nodes).
  std::vector<double> alpha, beta;
  double kphi_max = 0.0, anti_radius_max = 0.0, kpsi_max = 0.0;
  std::vector<double> flat_dirs, anti_flat_dirs;
  ParamTable table;
};

namespace {

constexpr double kGuard = 1e-8;

// x^k with the conventions 0^0 = 1 and 0^(negative) = +inf.
double pw(double x, double k) {
  if (x == 0.0) return k > 0 ? 0.0 : (k == 0 ? 1.0 : std::numeric_limits<double>::infinity());
  return std::pow(x, k);
}

double sgn(double x) { return (x > 0) - (x < 0); }

// x^e, x^(e-1), x^(e-2), x^(e-3) from one pow call; zero keeps the pw conventions.
std::array<double, 4> pw4(double x, double e) {
  if (x == 0.0) return {pw(x, e), pw(x, e - 1), pw(x, e - 2), pw(x, e - 3)};
  const double r = std::pow(x, e - 3);
  return {r * x * x * x, r * x * x, r * x, r};
}

// Derivatives of g = |cos|^e + |sin|^e up to third order.
std::array<double, 4> lp_g(double e, double th) {
  const double c = std::cos(th), s = std::sin(th);
  const double ac = std::abs(c), as = std::abs(s), sc = sgn(c), ss = sgn(s);
  const auto pa = pw4(ac, e), pb = pw4(as, e);
  const double a = pa[0], b = pb[0];
  const double a1 = -e * pa[1] * sc * s;
  const double b1 = e * pb[1] * ss * c;
  const double a2 = e * (e - 1) * pa[2] * s * s - e * a;
  const double b2 = e * (e - 1) * pb[2] * c * c - e * b;
  const double ta = (e == 2.0 || s == 0.0) ? 0.0 : -(e - 2) * pa[3] * sc * s * s * s;
  const double tb = (e == 2.0 || c == 0.0) ? 0.0 : (e - 2) * pb[3] * ss * c * c * c;
  const double a3 = e * (e - 1) * (ta + 2 * pa[2] * s * c) + e * e * pa[1] * sc * s;
  const double b3 = e * (e - 1) * (tb - 2 * pb[2] * s * c) - e * e * pb[1] * ss * c;
  return {a + b, a1 + b1, a2 + b2, a3 + b3};
}

}  // namespace

std::array<double, 4> lp_polar_radius(double e, double th) {
  const auto [g, g1, g2, g3] = lp_g(e, th);
  const double m = -1.0 / e;
  // g is bounded away from zero, so lower powers follow by division.
  const double p = std::pow(g, m), q1 = p / g, q2 = q1 / g, q3 = q2 / g;
  const double p1 = m * q1 * g1;
  const double p2 = m * (m - 1) * q2 * g1 * g1 + m * q1 * g2;
  const double p3 = m * (m - 1) * (m - 2) * q3 * g1 * g1 * g1 + 3 * m * (m - 1) * q2 * g1 * g2 + m * q1 * g3;
  return {p, p1, p2, p3};
}

namespace {

double reduce_pi(double a) {
  double r = std::fmod(a, kPi);
  if (r < 0) r += kPi;
  return r;
}

}  // namespace

NormProfile NormProfile::build(std::shared_ptr<Impl> impl) {
  if (!(impl->sigma > 0)) throw Error(ErrorKind::InvalidInput, "determinant scale must be positive");
  if (impl->grid_n < 16) throw Error(ErrorKind::InvalidInput, "grid_n must be at least 16");
  if (!impl->f.d3p) {
    auto d2 = impl->f.d2p;
    impl->f.d3p = [d2](double t) {
      const double h = 1e-5;
      return (d2(t + h) - d2(t - h)) / (2 * h);
    };
  }
  const auto& f = impl->f;
  const int n = impl->grid_n;
  const double sigma = impl->sigma;

  auto polar_k = [&](double a) {
    const double p = f.p(a), p1 = f.dp(a), p2 = f.d2p(a);
    return (p * p + 2 * p1 * p1 - p * p2) / std::pow(p * p + p1 * p1, 1.5);
  };
  auto beta_of = [&](double a) { return a + std::atan2(f.p(a), f.dp(a)); };
  auto dphi_len = [&](double a) { return std::hypot(f.p(a), f.dp(a)); };

  impl->alpha.resize(n + 1);
  impl->beta.resize(n + 1);
  std::vector<double> kp(n + 1), ar(n + 1);
  for (int j = 0; j <= n; ++j) {
    const double a = kTwoPi * j / n;
    const double p = f.p(a);
    if (!(p > 0) || !std::isfinite(p)) throw Error(ErrorKind::InvalidInput, "polar profile must be positive");
    impl->alpha[j] = a;
    impl->beta[j] = beta_of(a);
    kp[j] = polar_k(a);
    const double p1 = f.dp(a), p2 = f.d2p(a);
    ar[j] = (p * p + 2 * p1 * p1 - p * p2) / (p * p * p * sigma);
  }
  // Guard scales are taken at cell midpoints so that isolated singular directions on the
  // axes (l_p with p > 2 and its dual) do not dominate the maximum.
  for (int j = 0; j < n; ++j) {
    const double a = kTwoPi * (j + 0.5) / n;
    const double p = f.p(a), p1 = f.dp(a), p2 = f.d2p(a);
    const double k = polar_k(a), r = (p * p + 2 * p1 * p1 - p * p2) / (p * p * p * sigma);
    if (std::isfinite(k)) impl->kphi_max = std::max(impl->kphi_max, k);
    if (std::isfinite(r)) impl->anti_radius_max = std::max(impl->anti_radius_max, r);
    if (r > 0 && std::isfinite(1.0 / r)) impl->kpsi_max = std::max(impl->kpsi_max, 1.0 / r);
  }
  for (int j = 0; j < n; ++j) {
    if (kp[j] < -1e-9 * impl->kphi_max)
      throw Error(ErrorKind::NonConvex, "unit circle bends inward near polar angle " + std::to_string(impl->alpha[j]));
    if (kp[j] < kGuard * impl->kphi_max) impl->flat_dirs.push_back(reduce_pi(impl->beta[j]));
    if (ar[j] < kGuard * impl->anti_radius_max) impl->anti_flat_dirs.push_back(reduce_pi(impl->alpha[j]));
  }
  for (auto* v : {&impl->flat_dirs, &impl->anti_flat_dirs}) {
    std::sort(v->begin(), v->end());
    v->erase(std::unique(v->begin(), v->end(), [](double a, double b) { return std::abs(a - b) < 1e-12; }),
             v->end());
  }

  // Circle tables: composite Simpson per cell.
  NormProfile self(impl);
  auto s_speed = [&](double a) { return dphi_len(a) / f.p(beta_of(a)); };
  auto u_speed = [&](double a) { return sigma * f.p(a) * f.p(a); };
  std::vector<double> s(n + 1), u(n + 1), se(n + 1), ds(n + 1), du(n + 1), dse(n + 1), dth(n + 1);
  for (int j = 0; j <= n; ++j) {
    const double a = impl->alpha[j];
    ds[j] = s_speed(a);
    du[j] = u_speed(a);
    dse[j] = dphi_len(a);
    dth[j] = kp[j] * dse[j];
    if (j == 0) continue;
    const double a0 = impl->alpha[j - 1], m = 0.5 * (a0 + a), h = a - a0;
    s[j] = s[j - 1] + h / 6 * (ds[j - 1] + 4 * s_speed(m) + ds[j]);
    u[j] = u[j - 1] + h / 6 * (du[j - 1] + 4 * u_speed(m) + du[j]);
    se[j] = se[j - 1] + h / 6 * (dse[j - 1] + 4 * dphi_len(m) + dse[j]);
  }
  ParamTable table(impl->alpha);
  table.add(Column::s, s, ds);
  table.add(Column::u, u, du);
  table.add(Column::s_e, se, dse);
  table.add(Column::theta, impl->beta, dth);
  impl->table = std::move(table);
  return self;
}

NormProfile::NormProfile() {
  static const NormProfile e = euclidean();
  impl_ = e.impl_;
}

NormProfile NormProfile::euclidean(double sigma, int grid_n) {
  auto impl = std::make_shared<Impl>();
  impl->kind = NormKind::euclidean;
  impl->sigma = sigma;
  impl->grid_n = grid_n;
  impl->label = "euclidean";
  impl->f.p = [](double) { return 1.0; };
  impl->f.dp = impl->f.d2p = impl->f.d3p = [](double) { return 0.0; };
  return build(impl);
}

NormProfile NormProfile::lp(double exponent, double sigma, int grid_n) {
  if (!(exponent >= 2.0) || !std::isfinite(exponent))
    throw Error(ErrorKind::InvalidInput, "l_p exponent must be >= 2 (got " + std::to_string(exponent) + ")");
  auto impl = std::make_shared<Impl>();
  impl->kind = NormKind::lp;
  impl->exponent = exponent;
  impl->sigma = sigma;
  impl->grid_n = grid_n;
  char buf[64];
  std::snprintf(buf, sizeof buf, "lp:%g", exponent);
  impl->label = buf;
  const double e = exponent;
  impl->f.p = [e](double t) { return lp_polar_radius(e, t)[0]; };
  impl->f.dp = [e](double t) { return lp_polar_radius(e, t)[1]; };
  impl->f.d2p = [e](double t) { return lp_polar_radius(e, t)[2]; };
  impl->f.d3p = [e](double t) { return lp_polar_radius(e, t)[3]; };
  return build(impl);
}

NormProfile NormProfile::custom(std::vector<double> p_samples, double sigma) {
  const std::size_t n = p_samples.size();
  if (n < 16) throw Error(ErrorKind::InvalidInput, "custom profile needs at least 16 samples");
  if (n % 2 == 0) {
    double scale = 0, asym = 0;
    for (std::size_t j = 0; j < n; ++j) {
      scale = std::max(scale, std::abs(p_samples[j]));
      asym = std::max(asym, std::abs(p_samples[j] - p_samples[(j + n / 2) % n]));
    }
    if (asym > 1e-9 * scale) throw Error(ErrorKind::InvalidInput, "profile is not origin-symmetric");
  }
  PeriodicSpline spline(p_samples, kTwoPi);
  auto impl = std::make_shared<Impl>();
  impl->kind = NormKind::custom;
  impl->sigma = sigma;
  impl->grid_n = static_cast<int>(n);
  impl->label = "custom";
  impl->samples = std::move(p_samples);
  impl->f.p = [spline](double t) { return spline(t); };
  impl->f.dp = [spline](double t) { return spline.prime(t); };
  impl->f.d2p = [spline](double t) { return spline.double_prime(t); };
  return build(impl);
}

NormProfile NormProfile::analytic(ProfileFunctions f, std::string label, double sigma, int grid_n) {
  auto impl = std::make_shared<Impl>();
  impl->kind = NormKind::custom;
  impl->sigma = sigma;
  impl->grid_n = grid_n;
  impl->label = std::move(label);
  impl->f = std::move(f);
  return build(impl);
}

NormProfile NormProfile::dual(const NormProfile& base) {
  auto impl = std::make_shared<Impl>();
  impl->kind = NormKind::dual;
  impl->sigma = base.sigma();
  impl->grid_n = base.grid_n();
  impl->label = "anti(" + base.label() + ")";
  // q = 1/A with A(theta) = ||e_theta||_a of the base norm.
  impl->f.p = [base](double t) { return 1.0 / base.anti_direction(t).a; };
  impl->f.dp = [base](double t) {
    const auto d = base.anti_direction(t);
    return -d.da / (d.a * d.a);
  };
  impl->f.d2p = [base](double t) {
    const auto d = base.anti_direction(t);
    return 2 * d.da * d.da / (d.a * d.a * d.a) - d.d2a / (d.a * d.a);
  };
  return build(impl);
}

NormProfile NormProfile::with_sigma(double sigma) const {
  auto impl = std::make_shared<Impl>();
  impl->kind = impl_->kind;
  impl->exponent = impl_->exponent;
  impl->sigma = sigma;
  impl->grid_n = impl_->grid_n;
  impl->label = impl_->label;
  impl->f = impl_->f;
  impl->samples = impl_->samples;
  return build(impl);
}

NormKind NormProfile::kind() const { return impl_->kind; }
double NormProfile::exponent() const { return impl_->exponent; }
double NormProfile::sigma() const { return impl_->sigma; }
int NormProfile::grid_n() const { return impl_->grid_n; }
const std::string& NormProfile::label() const { return impl_->label; }
const std::vector<double>& NormProfile::samples() const { return impl_->samples; }

double NormProfile::p(double t) const { return impl_->f.p(t); }
double NormProfile::dp(double t) const { return impl_->f.dp(t); }
double NormProfile::d2p(double t) const { return impl_->f.d2p(t); }
double NormProfile::d3p(double t) const { return impl_->f.d3p(t); }

Vec2 NormProfile::phi(double t) const { return p(t) * unit(t); }
Vec2 NormProfile::dphi(double t) const { return dp(t) * unit(t) + p(t) * perp(unit(t)); }
Vec2 NormProfile::d2phi(double t) const { return (d2p(t) - p(t)) * unit(t) + 2 * dp(t) * perp(unit(t)); }

double NormProfile::det(const Vec2& a, const Vec2& b) const { return impl_->sigma * cross(a, b); }

double NormProfile::norm(const Vec2& x) const {
  const double r = x.norm();
  if (r == 0.0) return 0.0;
  return r / p(std::atan2(x.y(), x.x()));
}

double NormProfile::anti_norm(const Vec2& x) const {
  const double r = x.norm();
  if (r == 0.0) return 0.0;
  return r * anti_direction(std::atan2(x.y(), x.x())).a;
}

double NormProfile::tangent_angle(double a) const { return a + std::atan2(p(a), dp(a)); }

double NormProfile::tangent_point(double theta) const {
  if (!std::isfinite(theta)) return theta;
  const auto& al = impl_->alpha;
  const auto& be = impl_->beta;
  const int n = impl_->grid_n;
  const double k = std::floor((theta - be[0]) / kTwoPi);
  const double th = theta - kTwoPi * k;
  int j = static_cast<int>(std::upper_bound(be.begin(), be.end(), th) - be.begin()) - 1;
  j = std::clamp(j, 0, n - 1);
  auto fn = [&](double a) { return tangent_angle(a) - th; };
  double lo = al[j], hi = al[j + 1];
  double flo = fn(lo), fhi = fn(hi);
  if (flo == 0.0) return lo + kTwoPi * k;
  if (fhi == 0.0) return hi + kTwoPi * k;
  if (flo * fhi > 0) return (std::abs(flo) < std::abs(fhi) ? lo : hi) + kTwoPi * k;
  std::uintmax_t it = 100;
  auto r = boost::math::tools::toms748_solve(fn, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(52), it);
  return 0.5 * (r.first + r.second) + kTwoPi * k;
}

double NormProfile::polar_curvature(double a) const {
  const double q = p(a), q1 = dp(a), q2 = d2p(a);
  return (q * q + 2 * q1 * q1 - q * q2) / std::pow(q * q + q1 * q1, 1.5);
}

double NormProfile::k_phi(double theta) const { return polar_curvature(tangent_point(theta)); }

double NormProfile::anti_radius(double theta) const {
  const double q = p(theta), q1 = dp(theta), q2 = d2p(theta);
  return (q * q + 2 * q1 * q1 - q * q2) / (q * q * q * impl_->sigma);
}

NormProfile::AntiDirection NormProfile::anti_direction(double theta) const {
  const double a = tangent_point(theta);
  const Vec2 e = unit(theta), ep = perp(e), ph = phi(a);
  const double s = impl_->sigma;
  const double A = -s * cross(e, ph);
  const double dA = -s * cross(ep, ph);
  const double d2A = -A + s / polar_curvature(a);
  return {A, dA, d2A};
}

double NormProfile::support(double nu) const { return aligned_point(nu + 0.5 * kPi).dot(unit(nu)); }

Vec2 NormProfile::right_normal(double theta) const {
  const double q = p(theta), q1 = dp(theta);
  return ((q1 / (q * q)) * unit(theta) + (1.0 / q) * perp(unit(theta))) / impl_->sigma;
}

double NormProfile::k_phi_max() const { return impl_->kphi_max; }
double NormProfile::anti_radius_max() const { return impl_->anti_radius_max; }
double NormProfile::k_phi_guard() const { return kGuard * impl_->kphi_max; }
double NormProfile::anti_radius_guard() const { return kGuard * impl_->anti_radius_max; }
double NormProfile::k_psi_max() const { return impl_->kpsi_max; }
double NormProfile::k_psi_guard() const { return kGuard * impl_->kpsi_max; }
const std::vector<double>& NormProfile::flat_directions() const { return impl_->flat_dirs; }
const std::vector<double>& NormProfile::anti_flat_directions() const { return impl_->anti_flat_dirs; }
const ParamTable& NormProfile::circle_table() const { return impl_->table; }

double NormProfile::circle_length() const { return impl_->table.total(Column::s); }

double NormProfile::circle_arclength(double alpha) const {
  const double k = std::floor(alpha / kTwoPi);
  return impl_->table.map(Column::param, Column::s, alpha - kTwoPi * k) + k * circle_length();
}

// ---- AntiProfile ----

Vec2 AntiProfile::psi(double theta) const {
  const Vec2 d = base.dphi(theta);
  return -d / base.det(base.phi(theta), d);
}

double AntiProfile::h_psi(double theta) const { return 1.0 / (base.sigma() * base.p(theta + 0.5 * kPi)); }

double AntiProfile::q(double theta) const { return 1.0 / base.anti_direction(theta).a; }

// ---- free operations ----

double norm_eval(const Vec2& x, const NormProfile& profile) { return profile.norm(x); }
double anti_norm_eval(const Vec2& x, const NormProfile& profile) { return profile.anti_norm(x); }

bool birkhoff_orthogonal(const Vec2& x, const Vec2& y, const NormProfile& profile, double tol) {
  if (x.norm() == 0.0 || y.norm() == 0.0) throw Error(ErrorKind::ZeroVector, "Birkhoff orthogonality of a zero vector");
  const double beta = profile.tangent_angle(std::atan2(x.y(), x.x()));
  const double d = reduce_pi(std::atan2(y.y(), y.x()) - beta);
  return std::min(d, kPi - d) <= tol;
}

AntiProfile anti_profile(const NormProfile& profile) {
  const auto& v = profile.samples();
  if (!v.empty()) {
    // Tabulated profiles carry no derivative evaluators: sanity-check third differences.
    const std::size_t n = v.size();
    const double h = kTwoPi / static_cast<double>(n);
    double scale = 0, worst = 0;
    for (std::size_t j = 0; j < n; ++j) {
      scale = std::max(scale, std::abs(v[j]));
      const double d3 = v[(j + 2) % n] - 3 * v[(j + 1) % n] + 3 * v[j] - v[(j + n - 1) % n];
      worst = std::max(worst, std::abs(d3) / (h * h * h));
    }
    if (worst > 1e3 * (1.0 + scale))
      throw Error(ErrorKind::NotC2, "tabulated profile fails the third-difference smoothness bound");
  }
  return AntiProfile{profile};
}

NormProfile fit_anti_profile(const NormProfile& profile, int n, double tol) {
  std::vector<double> r(n);
  for (int j = 0; j < n; ++j) r[j] = 1.0 / profile.anti_direction(kTwoPi * j / n).a;
  const PeriodicSpline spline(r, kTwoPi);
  double err = 0;
  for (int j = 0; j < n; ++j) {
    const double w = kTwoPi * (j + 0.5) / n;
    err = std::max(err, std::abs(spline(w) - 1.0 / profile.anti_direction(w).a));
  }
  if (err > tol)
    throw Error(ErrorKind::AntiProfileFit, "anti-circle spline fit error " + std::to_string(err) + " exceeds tolerance");
  return NormProfile::custom(std::move(r), profile.sigma());
}

RadonReport is_radon(const NormProfile& profile, double tol) {
  const int n = profile.grid_n();
  double lo = std::numeric_limits<double>::infinity(), hi = 0;
  for (int j = 0; j < n; ++j) {
    const double a = profile.anti_norm(profile.phi(kTwoPi * j / n));
    lo = std::min(lo, a);
    hi = std::max(hi, a);
  }
  // The minimax of max_j |c a_j - 1| over c > 0 is attained where c lo - 1 = 1 - c hi.
  RadonReport r;
  r.scale = 2.0 / (lo + hi);
  r.deviation = (hi - lo) / (hi + lo);
  r.radon = r.deviation <= tol;
  return r;
}

ParamTable circle_tables(const NormProfile& profile) { return profile.circle_table(); }

}  // namespace mink
