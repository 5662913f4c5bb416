#pragma once

#include "minkcurve/analysis.hpp"
#include "minkcurve/curvature.hpp"
#include "minkcurve/evolute.hpp"
#include "minkcurve/norm_plane.hpp"

#include <json.hpp>

#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace mink::io {

inline constexpr const char* kVersion = "0.1.0";

/// "euclidean", "lp:<p>", or a JSON file {"kind": "euclidean" | "lp" | "custom", "p": .., "samples": [..],
/// "sigma": ..}. A sigma in the file wins over the argument.
NormProfile parse_norm(const std::string& spec, double sigma = 1.0);

/// Presets "circle:R", "ellipse:a,b", "segment:x0,y0,x1,y1", "unit-circle", "anti-circle",
/// "lq-circle[:q]" (q defaults to the conjugate exponent of an l_p profile), "support:h0,k/c/s,...",
/// or a JSON/CSV file. CSV files need x and y columns; the curve is closed when the first and last
/// rows coincide.
PlaneCurve parse_curve(const std::string& spec, const NormProfile& profile, int samples_n = 0);

/// "const:v", "sin:a,b,w" (a + b sin(w s)), "cos:a,b,w", "poly:c0,c1,..." in s.
std::function<double(double)> parse_curvature_function(const std::string& spec);

/// Numeric CSV with a header row.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> cols;

  bool has(const std::string& name) const;
  const std::vector<double>& col(const std::string& name) const;
  std::size_t rows() const { return cols.empty() ? 0 : cols.front().size(); }
  void add(const std::string& name, std::vector<double> values);
};

Table read_csv(const std::string& path);
/// Values with 17 significant digits; booleans are written by the caller as 0/1.
void write_csv(std::ostream& os, const Table& t);
std::string format_double(double x);

struct SvgScene {
  std::vector<std::vector<Vec2>> polylines;
  std::vector<std::string> colors;  ///< one per polyline; defaults to black
  std::vector<bool> closed;         ///< one per polyline; defaults to open
  std::vector<Vec2> crosses;        ///< marked with small crosses (cusps)
  std::string title;
};

/// 800x800 viewport, auto-scaled with a 5% margin, y axis up. The first line is a version comment.
void write_svg(std::ostream& os, const SvgScene& scene);

/// key = value lines; '#' starts a comment, [section] headers are ignored, values may be quoted.
std::map<std::string, std::string> read_config(const std::string& path);

nlohmann::json to_json(const NormProfile& profile);
nlohmann::json to_json(const FrenetResiduals& r);
nlohmann::json to_json(const DualityReport& r);
nlohmann::json to_json(const EvoluteResult& r);
nlohmann::json to_json(const EvoluteLength& r);
nlohmann::json to_json(const ParallelResult& r);
nlohmann::json to_json(const FourVertexReport& r);
nlohmann::json to_json(const WidthReport& r);
nlohmann::json to_json(const ConstantWidthReport& r);
nlohmann::json to_json(const InclusionReport& r);
nlohmann::json to_json(const PlaneProbes& r);
nlohmann::json to_json(const RadonReport& r);

/// Curvature samples as a table: s, s_a, theta, x, y, k_e, k_m, k_n, k_c, k_l, flat_phi, flat_psi.
/// Positions come from the norm arc length parametrization the profile was computed on.
Table curvature_table(const CurvatureProfile& cp, const PlaneCurve& curve, const NormProfile& profile,
                      bool auto_orient = true);

}  // namespace mink::io
