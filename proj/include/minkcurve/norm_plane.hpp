#pragma once

#include "minkcurve/numeric.hpp"
#include "minkcurve/param_table.hpp"

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace mink {

enum class NormKind { euclidean, lp, custom, dual };

const char* to_string(NormKind k);

/// Polar profile p and its derivatives; p must be pi-periodic and positive.
struct ProfileFunctions {
  std::function<double(double)> p, dp, d2p;
  /// Optional. Falls back to a central difference of d2p.
  std::function<double(double)> d3p;
};

/// A smooth, origin-symmetric norm given by the polar radius p(theta) of its unit circle
/// S = {phi(theta) = p(theta)(cos theta, sin theta)} together with the determinant form
/// sigma * (x1 y2 - x2 y1). Immutable; copies share state.
class NormProfile {
 public:
  static constexpr int kDefaultGrid = 4096;

  /// The Euclidean norm with sigma = 1.
  NormProfile();

  static NormProfile euclidean(double sigma = 1.0, int grid_n = kDefaultGrid);
  /// l_p norm. Exponents below 2 are rejected: the unit circle is not C2 at the axes.
  static NormProfile lp(double exponent, double sigma = 1.0, int grid_n = kDefaultGrid);
  /// Tabulated profile: samples of p on the uniform grid 2*pi*j/n, j = 0..n-1.
  static NormProfile custom(std::vector<double> p_samples, double sigma = 1.0);
  static NormProfile analytic(ProfileFunctions f, std::string label, double sigma = 1.0,
                              int grid_n = kDefaultGrid);
  /// The anti-norm as a profile in its own right, evaluated through the support function of B.
  static NormProfile dual(const NormProfile& base);

  NormProfile with_sigma(double sigma) const;

  NormKind kind() const;
  double exponent() const;
  double sigma() const;
  int grid_n() const;
  const std::string& label() const;
  /// Samples of p for tabulated profiles (empty otherwise).
  const std::vector<double>& samples() const;

  double p(double theta) const;
  double dp(double theta) const;
  double d2p(double theta) const;
  double d3p(double theta) const;

  Vec2 phi(double theta) const;
  Vec2 dphi(double theta) const;
  Vec2 d2phi(double theta) const;

  double det(const Vec2& a, const Vec2& b) const;
  double norm(const Vec2& x) const;
  double anti_norm(const Vec2& x) const;

  /// Euclidean tangent angle of S at phi(alpha); continuous, nondecreasing, beta(alpha+2pi) = beta(alpha)+2pi.
  double tangent_angle(double alpha) const;
  /// Polar angle alpha of the point of S whose oriented tangent has direction theta.
  double tangent_point(double theta) const;
  /// Euclidean curvature of S at polar angle alpha.
  double polar_curvature(double alpha) const;
  /// Euclidean curvature of S at the point where the direction theta supports it.
  double k_phi(double theta) const;
  /// Euclidean curvature radius of the anti-circle where theta supports it: (h''+h)/sigma, h = 1/p.
  double anti_radius(double theta) const;
  /// Euclidean curvature of the anti-circle where theta supports it.
  double k_psi(double theta) const { return 1.0 / anti_radius(theta); }

  struct AntiDirection {
    double a, da, d2a;
  };
  /// Anti-norm of the unit vector at angle theta, with first and second angular derivatives.
  AntiDirection anti_direction(double theta) const;
  /// Support function of the unit ball B.
  double support(double nu) const;
  /// Point of S where the oriented tangent has direction theta.
  Vec2 aligned_point(double theta) const { return phi(tangent_point(theta)); }
  /// Right normal n = (p'/p^2)(cos, sin) + (1/p)(-sin, cos), scaled by 1/sigma so [e, n] = 1 for unit e.
  Vec2 right_normal(double theta) const;

  double k_phi_max() const;
  double anti_radius_max() const;
  /// Guard thresholds: 1e-8 times the maximal curvature of S, resp. of the anti-circle's radius scale.
  double k_phi_guard() const;
  double anti_radius_guard() const;
  /// Largest finite curvature of the anti-circle on the grid and 1e-8 of it.
  double k_psi_max() const;
  double k_psi_guard() const;
  /// Tangent directions in [0, pi) where S is flat (k_phi below guard).
  const std::vector<double>& flat_directions() const;
  /// Tangent directions in [0, pi) where the anti-circle radius of curvature falls below guard.
  const std::vector<double>& anti_flat_directions() const;

  /// Tables along S indexed by the polar angle: s, u, s_e and the tangent angle theta.
  const ParamTable& circle_table() const;
  /// Minkowski arc length of S from polar angle 0 to alpha (alpha may exceed 2pi).
  double circle_arclength(double alpha) const;
  double circle_length() const;

  struct Impl;

 private:
  std::shared_ptr<const Impl> impl_;
  explicit NormProfile(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  static NormProfile build(std::shared_ptr<Impl> impl);
};

/// Anti-circle S_a = {x : ||x||_a = 1} described through its tangent-angle parametrization.
struct AntiProfile {
  NormProfile base;
  /// psi(theta) = -phi'(theta) / [phi(theta), phi'(theta)].
  Vec2 psi(double theta) const;
  /// Support function of S_a: 1 / (sigma p(theta + pi/2)).
  double h_psi(double theta) const;
  /// Polar radius of S_a in direction theta.
  double q(double theta) const;
};

/// Polar radius of the l_e unit circle with three angular derivatives. Any e >= 1 is accepted;
/// for e < 2 the second and third derivatives are infinite on the axes.
std::array<double, 4> lp_polar_radius(double e, double theta);

double norm_eval(const Vec2& x, const NormProfile& profile);
double anti_norm_eval(const Vec2& x, const NormProfile& profile);
/// x is Birkhoff orthogonal to y: the supporting line of B at x/||x|| is parallel to y within angle tol.
bool birkhoff_orthogonal(const Vec2& x, const Vec2& y, const NormProfile& profile, double tol);
AntiProfile anti_profile(const NormProfile& profile);

/// Periodic-spline fit of the polar radius of S_a sampled through psi; throws AntiProfileFit
/// when the sup error against the exact anti-norm exceeds tol.
NormProfile fit_anti_profile(const NormProfile& profile, int n = NormProfile::kDefaultGrid, double tol = 1e-7);

struct RadonReport {
  bool radon = false;
  double deviation = 0.0;
  /// Multiplier c minimizing max |c ||phi||_a - 1|.
  double scale = 1.0;
};
RadonReport is_radon(const NormProfile& profile, double tol);

/// Tables along S: s (Minkowski arc length), u (twice sector area), s_e and theta, all
/// indexed by polar angle. Throws NonConvex if [phi, phi'] <= 0 or S bends the wrong way.
ParamTable circle_tables(const NormProfile& profile);

}  // namespace mink
