#include "minkcurve/io.hpp"
#include "minkcurve/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace mink::io {

using nlohmann::json;

namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

double to_double(const std::string& s) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != s.size()) throw Error(ErrorKind::InvalidInput, "not a number: '" + s + "'");
  return v;
}

std::vector<double> numbers(const std::string& s) {
  std::vector<double> out;
  for (const auto& item : split(s, ',')) out.push_back(to_double(item));
  return out;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, "bad JSON in '" + path + "': " + e.what());
  }
}

// Splits "name:args" at the first colon.
std::pair<std::string, std::string> head(const std::string& spec) {
  const auto c = spec.find(':');
  if (c == std::string::npos) return {spec, ""};
  return {spec.substr(0, c), spec.substr(c + 1)};
}

NormProfile norm_from_json(const json& j, double sigma) {
  sigma = j.value("sigma", sigma);
  const std::string kind = j.value("kind", "");
  if (kind == "euclidean") return NormProfile::euclidean(sigma);
  if (kind == "lp") return NormProfile::lp(j.at("p").get<double>(), sigma);
  if (kind == "custom") return NormProfile::custom(j.at("samples").get<std::vector<double>>(), sigma);
  throw Error(ErrorKind::InvalidInput, "unknown norm kind '" + kind + "'");
}

std::vector<curves::Harmonic> harmonics_from(const std::vector<std::string>& items) {
  std::vector<curves::Harmonic> hs;
  for (const auto& item : items) {
    const auto f = split(item, '/');
    if (f.size() != 3) throw Error(ErrorKind::InvalidInput, "harmonic must be k/c/s, got '" + item + "'");
    hs.push_back({static_cast<int>(to_double(f[0])), to_double(f[1]), to_double(f[2])});
  }
  return hs;
}

PlaneCurve points_curve(std::vector<Vec2> pts, bool closed, int samples_n) {
  if (pts.size() < 4) throw Error(ErrorKind::InvalidInput, "a sampled curve needs at least 4 points");
  return curves::sampled(pts, closed, samples_n > 0 ? samples_n : PlaneCurve::kDefaultSamples);
}

PlaneCurve curve_from_json(const json& j, const NormProfile& profile, int samples_n) {
  const std::string type = j.value("type", "");
  PlaneCurve c;
  if (type == "circle") {
    const auto ctr = j.value("center", std::vector<double>{0.0, 0.0});
    c = curves::circle(j.at("radius").get<double>(), Vec2(ctr.at(0), ctr.at(1)));
  } else if (type == "ellipse") {
    c = curves::ellipse(j.at("a").get<double>(), j.at("b").get<double>());
  } else if (type == "support") {
    std::vector<curves::Harmonic> hs;
    for (const auto& h : j.at("harmonics")) hs.push_back({h.at(0).get<int>(), h.at(1).get<double>(), h.at(2).get<double>()});
    c = curves::from_support(j.value("h0", 1.0), hs);
  } else if (type == "points") {
    std::vector<Vec2> pts;
    for (const auto& p : j.at("points")) pts.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    return points_curve(pts, j.value("closed", true), samples_n);
  } else if (type == "unit-circle") {
    c = curves::unit_circle(profile, j.value("radius", 1.0));
  } else {
    throw Error(ErrorKind::InvalidInput, "unknown curve type '" + type + "'");
  }
  return samples_n > 0 ? c.with_samples(samples_n) : c;
}

}  // namespace

NormProfile parse_norm(const std::string& spec, double sigma) {
  if (ends_with(spec, ".json")) return norm_from_json(read_json(spec), sigma);
  const auto [name, args] = head(spec);
  if (name == "euclidean" && args.empty()) return NormProfile::euclidean(sigma);
  if (name == "lp" && !args.empty()) return NormProfile::lp(to_double(args), sigma);
  throw Error(ErrorKind::InvalidInput, "unknown norm '" + spec + "'");
}

PlaneCurve parse_curve(const std::string& spec, const NormProfile& profile, int samples_n) {
  if (ends_with(spec, ".json")) return curve_from_json(read_json(spec), profile, samples_n);
  if (ends_with(spec, ".csv")) {
    const Table t = read_csv(spec);
    std::vector<Vec2> pts;
    for (std::size_t i = 0; i < t.rows(); ++i) pts.emplace_back(t.col("x")[i], t.col("y")[i]);
    const bool closed = pts.size() > 1 && (pts.front() - pts.back()).norm() <= 1e-12 * (1 + pts.front().norm());
    if (closed) pts.pop_back();
    return points_curve(pts, closed, samples_n);
  }
  const auto [name, args] = head(spec);
  PlaneCurve c;
  if (name == "circle") {
    const auto v = numbers(args);
    if (v.size() != 1 && v.size() != 3) throw Error(ErrorKind::InvalidInput, "circle:R or circle:R,x,y");
    c = curves::circle(v[0], v.size() == 3 ? Vec2(v[1], v[2]) : Vec2::Zero());
  } else if (name == "ellipse") {
    const auto v = numbers(args);
    if (v.size() != 2) throw Error(ErrorKind::InvalidInput, "ellipse:a,b");
    c = curves::ellipse(v[0], v[1]);
  } else if (name == "segment") {
    const auto v = numbers(args);
    if (v.size() != 4) throw Error(ErrorKind::InvalidInput, "segment:x0,y0,x1,y1");
    c = curves::segment({v[0], v[1]}, {v[2], v[3]});
  } else if (name == "unit-circle") {
    c = curves::unit_circle(profile, args.empty() ? 1.0 : to_double(args));
  } else if (name == "anti-circle") {
    c = curves::anti_circle(profile, args.empty() ? 1.0 : to_double(args));
  } else if (name == "lq-circle") {
    double q;
    if (!args.empty()) {
      q = to_double(args);
    } else if (profile.kind() == NormKind::lp) {
      q = profile.exponent() / (profile.exponent() - 1);
    } else {
      throw Error(ErrorKind::InvalidInput, "lq-circle needs an exponent unless the norm is l_p");
    }
    c = curves::lp_circle(q);
  } else if (name == "support") {
    const auto items = split(args, ',');
    if (items.empty()) throw Error(ErrorKind::InvalidInput, "support:h0,k/c/s,...");
    c = curves::from_support(to_double(items[0]), harmonics_from({items.begin() + 1, items.end()}));
  } else {
    throw Error(ErrorKind::InvalidInput, "unknown curve '" + spec + "'");
  }
  return samples_n > 0 ? c.with_samples(samples_n) : c;
}

std::function<double(double)> parse_curvature_function(const std::string& spec) {
  const auto [name, args] = head(spec);
  const auto v = args.empty() ? std::vector<double>{} : numbers(args);
  if (name == "const" && v.size() == 1) return [k = v[0]](double) { return k; };
  if (name == "sin" && v.size() == 3) return [a = v[0], b = v[1], w = v[2]](double s) { return a + b * std::sin(w * s); };
  if (name == "cos" && v.size() == 3) return [a = v[0], b = v[1], w = v[2]](double s) { return a + b * std::cos(w * s); };
  if (name == "poly" && !v.empty())
    return [v](double s) {
      double r = 0;
      for (auto it = v.rbegin(); it != v.rend(); ++it) r = r * s + *it;
      return r;
    };
  throw Error(ErrorKind::InvalidInput, "unknown curvature function '" + spec + "'");
}

bool Table::has(const std::string& name) const {
  return std::find(header.begin(), header.end(), name) != header.end();
}

const std::vector<double>& Table::col(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw Error(ErrorKind::InvalidInput, "missing column '" + name + "'");
  return cols[it - header.begin()];
}

void Table::add(const std::string& name, std::vector<double> values) {
  header.push_back(name);
  cols.push_back(std::move(values));
}

Table read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open '" + path + "'");
  Table t;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto f = split(line, ',');
    if (t.header.empty()) {
      t.header = f;
      t.cols.resize(f.size());
      continue;
    }
    if (f.size() != t.header.size()) throw Error(ErrorKind::InvalidInput, "ragged row in '" + path + "'");
    for (std::size_t i = 0; i < f.size(); ++i) t.cols[i].push_back(to_double(f[i]));
  }
  if (t.header.empty()) throw Error(ErrorKind::InvalidInput, "empty CSV '" + path + "'");
  return t;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
  os << '\n';
  for (std::size_t r = 0; r < t.rows(); ++r) {
    for (std::size_t i = 0; i < t.cols.size(); ++i) os << (i ? "," : "") << format_double(t.cols[i][r]);
    os << '\n';
  }
}

void write_svg(std::ostream& os, const SvgScene& scene) {
  constexpr double W = 800.0, margin = 0.05 * W;
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  auto grow = [&](const Vec2& p) {
    if (!std::isfinite(p.x()) || !std::isfinite(p.y())) return;
    x0 = std::min(x0, p.x());
    x1 = std::max(x1, p.x());
    y0 = std::min(y0, p.y());
    y1 = std::max(y1, p.y());
  };
  for (const auto& pl : scene.polylines)
    for (const auto& p : pl) grow(p);
  for (const auto& p : scene.crosses) grow(p);
  if (!(x0 <= x1)) x0 = x1 = y0 = y1 = 0.0;
  const double span = std::max({x1 - x0, y1 - y0, 1e-12});
  const double k = (W - 2 * margin) / span;
  const double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);
  auto X = [&](const Vec2& p) { return W / 2 + k * (p.x() - cx); };
  auto Y = [&](const Vec2& p) { return W / 2 - k * (p.y() - cy); };
  char buf[96];

  os << "<!-- minkcurve " << kVersion << " -->\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n";
  os << "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
  if (!scene.title.empty()) os << "<title>" << scene.title << "</title>\n";
  for (std::size_t i = 0; i < scene.polylines.size(); ++i) {
    const std::string color = i < scene.colors.size() ? scene.colors[i] : "black";
    const bool closed = i < scene.closed.size() && scene.closed[i];
    os << (closed ? "<polygon" : "<polyline") << " fill=\"none\" stroke=\"" << color
       << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (const auto& p : scene.polylines[i]) {
      if (!std::isfinite(p.x()) || !std::isfinite(p.y())) continue;
      std::snprintf(buf, sizeof buf, "%s%.3f,%.3f", first ? "" : " ", X(p), Y(p));
      os << buf;
      first = false;
    }
    os << "\"/>\n";
  }
  for (const auto& p : scene.crosses) {
    const double a = X(p), b = Y(p), r = 6.0;
    std::snprintf(buf, sizeof buf, "<path stroke=\"red\" stroke-width=\"1.5\" d=\"M%.3f %.3fL%.3f %.3f", a - r, b - r,
                  a + r, b + r);
    os << buf;
    std::snprintf(buf, sizeof buf, "M%.3f %.3fL%.3f %.3f\"/>\n", a - r, b + r, a + r, b - r);
    os << buf;
  }
  os << "</svg>\n";
}

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open config '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty() || line.front() == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorKind::InvalidInput, path + ":" + std::to_string(no) + ": expected key = value");
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') && value.back() == value.front())
      value = value.substr(1, value.size() - 2);
    out[trim(line.substr(0, eq))] = value;
  }
  return out;
}

json to_json(const NormProfile& profile) {
  return {{"kind", to_string(profile.kind())},
          {"label", profile.label()},
          {"sigma", profile.sigma()},
          {"circle_length", profile.circle_length()},
          {"k_phi_max", profile.k_phi_max()},
          {"anti_radius_max", profile.anti_radius_max()},
          {"flat_directions", profile.flat_directions()},
          {"anti_flat_directions", profile.anti_flat_directions()}};
}

json to_json(const FrenetResiduals& r) { return {{"r1", r.r1}, {"r2", r.r2}}; }

json to_json(const DualityReport& r) {
  return {{"circular_vs_normal", r.circular_vs_normal},
          {"arclength_vs_minkowski", r.arclength_vs_minkowski},
          {"samples", r.samples},
          {"skipped", r.skipped},
          {"method", r.method}};
}

json to_json(const EvoluteResult& r) {
  json cusps = json::array();
  for (std::size_t i = 0; i < r.cusps.size(); ++i)
    cusps.push_back({{"s", r.cusps[i]},
                     {"x", r.cusp_points[i].x()},
                     {"y", r.cusp_points[i].y()},
                     {"antipodality", r.cusp_antipodality[i]}});
  return {{"length", r.length},          {"samples", r.s.size()}, {"cusps", cusps},
          {"contacts", r.contacts},      {"tangency", r.tangency}, {"cross_residual", r.cross_residual},
          {"skipped", r.skipped}};
}

json to_json(const EvoluteLength& r) {
  return {{"signed_length", r.signed_length}, {"unsigned_length", r.unsigned_length}, {"arcs", r.arcs}};
}

json to_json(const ParallelResult& r) {
  std::size_t singular = 0;
  for (bool b : r.singular) singular += b;
  json pts = json::array();
  for (const auto& p : r.root_points) pts.push_back({p.x(), p.y()});
  return {{"samples", r.s.size()}, {"singular_samples", singular}, {"roots", r.roots}, {"root_points", pts}};
}

json to_json(const FourVertexReport& r) {
  json ex = json::array();
  for (const auto& e : r.extrema)
    ex.push_back({{"s", e.s}, {"theta", e.theta}, {"value", e.value}, {"kind", e.is_max ? "max" : "min"}});
  json pairs = json::array();
  for (const auto& p : r.pairs) pairs.push_back({{"theta", p.theta}, {"s_a", p.s_a}, {"s_b", p.s_b}, {"k", p.k}});
  return {{"type", to_string(r.type)}, {"count", r.count()},       {"holds", r.holds()},
          {"degenerate", r.degenerate}, {"skipped", r.skipped},     {"extrema", ex},
          {"opposite_pairs", pairs},    {"all_opposite_equal", r.all_opposite_equal}};
}

json to_json(const WidthReport& r) {
  return {{"min", r.min}, {"max", r.max}, {"mean", r.mean}, {"constant", r.constant}, {"samples", r.nu.size()}};
}

json to_json(const ConstantWidthReport& r) {
  return {{"width", r.width},
          {"radii_sum", r.radii_sum},
          {"length_defect", r.length_defect},
          {"halving", r.halving},
          {"k_c_variation", r.k_c_variation},
          {"is_circle", r.is_circle},
          {"halving_consistent", r.halving_consistent}};
}

json to_json(const InclusionReport& r) {
  auto circle = [](const Vec2& c, double radius) {
    return json{{"center", {c.x(), c.y()}}, {"radius", std::isfinite(radius) ? json(radius) : json("inf")}};
  };
  return {{"margins",
           {{"min_circle_inside", r.margins[0]},
            {"inside_max_circle", r.margins[1]},
            {"min_anti_circle_inside", r.margins[2]},
            {"inside_max_anti_circle", r.margins[3]}}},
          {"worst", r.worst()},
          {"min_circle", circle(r.c_min_circle, r.r_min_circle)},
          {"max_circle", circle(r.c_max_circle, r.r_max_circle)},
          {"min_anti_circle", circle(r.c_min_anti, r.r_min_anti)},
          {"max_anti_circle", circle(r.c_max_anti, r.r_max_anti)}};
}

json to_json(const PlaneProbes& r) {
  return {{"radon_deviation", r.radon_deviation},
          {"km_kn", r.km_kn},
          {"km_variance", r.km_variance},
          {"skipped", r.skipped}};
}

json to_json(const RadonReport& r) { return {{"radon", r.radon}, {"deviation", r.deviation}, {"scale", r.scale}}; }

Table curvature_table(const CurvatureProfile& cp, const PlaneCurve& curve, const NormProfile& profile,
                      bool auto_orient) {
  const PlaneCurve g = reparametrize(curve, profile, Target::norm_arclength, auto_orient).curve;
  std::vector<double> x, y, fp, fq;
  for (std::size_t j = 0; j < cp.size(); ++j) {
    const Vec2 p = g.eval(cp.s[j]);
    x.push_back(p.x());
    y.push_back(p.y());
    fp.push_back(cp.flat_phi[j] ? 1.0 : 0.0);
    fq.push_back(cp.flat_psi[j] ? 1.0 : 0.0);
  }
  Table t;
  t.add("s", cp.s);
  t.add("s_a", cp.s_a);
  t.add("theta", cp.theta);
  t.add("x", x);
  t.add("y", y);
  t.add("k_e", cp.k_e);
  t.add("k_m", cp.k_m);
  t.add("k_n", cp.k_n);
  t.add("k_c", cp.k_c);
  t.add("k_l", cp.k_l);
  t.add("flat_phi", fp);
  t.add("flat_psi", fq);
  return t;
}

}  // namespace mink::io
