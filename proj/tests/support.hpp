#pragma once

#include "minkcurve/curve.hpp"
#include "minkcurve/norm_plane.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace testing {

// p = 1/(1 + 0.15 cos 2 theta): smooth, strictly convex, not Radon.
inline mink::NormProfile smooth_profile() {
  mink::ProfileFunctions f;
  f.p = [](double t) { return 1 / (1 + 0.15 * std::cos(2 * t)); };
  f.dp = [](double t) {
    const double g = 1 + 0.15 * std::cos(2 * t), g1 = -0.3 * std::sin(2 * t);
    return -g1 / (g * g);
  };
  f.d2p = [](double t) {
    const double g = 1 + 0.15 * std::cos(2 * t), g1 = -0.3 * std::sin(2 * t), g2 = -0.6 * std::cos(2 * t);
    return -g2 / (g * g) + 2 * g1 * g1 / (g * g * g);
  };
  f.d3p = [](double t) {
    const double g = 1 + 0.15 * std::cos(2 * t), g1 = -0.3 * std::sin(2 * t), g2 = -0.6 * std::cos(2 * t),
                 g3 = 1.2 * std::sin(2 * t);
    return -g3 / (g * g) + 6 * g1 * g2 / (g * g * g) - 6 * g1 * g1 * g1 / (g * g * g * g);
  };
  return mink::NormProfile::analytic(f, "smooth");
}

// Closed-form l_p norm, independent of the profile machinery.
inline double lp_norm(const mink::Vec2& x, double p) {
  return std::pow(std::pow(std::abs(x.x()), p) + std::pow(std::abs(x.y()), p), 1 / p);
}

inline std::vector<double> uniform(int n, double a, double b, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> d(a, b);
  std::vector<double> v(n);
  for (double& x : v) x = d(gen);
  return v;
}

}  // namespace testing
