#include "minkcurve/analysis.hpp"
#include "minkcurve/curvature.hpp"
#include "minkcurve/errors.hpp"
#include "minkcurve/evolute.hpp"
#include "minkcurve/io.hpp"
#include "minkcurve/reconstruct.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace mink;
using nlohmann::json;

namespace {

struct Globals {
  std::string norm = "euclidean";
  std::string curve = "circle:1";
  std::string out;
  std::string config;
  int grid = 0;
  double tol = 1e-6;
  double sigma = 1.0;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Config values fill in any global flag that was not given on the command line.
void apply_config(CLI::App& app, Globals& g) {
  if (g.config.empty()) return;
  for (const auto& [key, value] : io::read_config(g.config)) {
    CLI::Option* opt = nullptr;
    try {
      opt = app.get_option("--" + key);
    } catch (const CLI::OptionNotFound&) {
      throw UsageError("unknown config key '" + key + "'");
    }
    if (opt->count() > 0) continue;
    std::istringstream in(value);
    try {
      if (key == "norm") g.norm = value;
      else if (key == "curve") g.curve = value;
      else if (key == "out") g.out = value;
      else if (key == "grid") g.grid = std::stoi(value);
      else if (key == "tol") g.tol = std::stod(value);
      else if (key == "sigma") g.sigma = std::stod(value);
      else throw UsageError("config key '" + key + "' is not supported");
    } catch (const std::invalid_argument&) {
      throw UsageError("bad value for config key '" + key + "'");
    }
  }
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw Error(ErrorKind::InvalidInput, "cannot write '" + out + "'");
  f << text;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::vector<Vec2> polyline(const PlaneCurve& c, int n) {
  std::vector<Vec2> pts;
  for (double t : c.grid(n)) pts.push_back(c.eval(t));
  return pts;
}

std::string points_csv(const std::vector<double>& s, const std::vector<Vec2>& pts) {
  io::Table t;
  std::vector<double> x, y;
  for (const auto& p : pts) {
    x.push_back(p.x());
    y.push_back(p.y());
  }
  t.add("s", s);
  t.add("x", x);
  t.add("y", y);
  std::ostringstream os;
  io::write_csv(os, t);
  return os.str();
}

std::string svg(const io::SvgScene& scene) {
  std::ostringstream os;
  io::write_svg(os, scene);
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature of curves in normed planes"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--norm", g.norm, "euclidean, lp:<p> or a JSON file");
  app.add_option("--curve", g.curve, "circle:R, ellipse:a,b, lq-circle, unit-circle, support:..., or a JSON/CSV file");
  app.add_option("--out", g.out, "output file (.csv, .json or .svg); stdout when omitted");
  app.add_option("--grid", g.grid, "number of samples (0 uses the curve default)")->check(CLI::NonNegativeNumber);
  app.add_option("--tol", g.tol, "tolerance for pass/fail style flags")->check(CLI::PositiveNumber);
  app.add_option("--sigma", g.sigma, "determinant scale")->check(CLI::PositiveNumber);
  app.add_option("--config", g.config, "key = value file for the global flags");

  auto* norm_cmd = app.add_subcommand("norm", "norm information");
  norm_cmd->require_subcommand(1);
  auto* norm_show = norm_cmd->add_subcommand("show", "profile summary, Radon test and plane probes");

  bool no_orient = false;
  auto* curv = app.add_subcommand("curvature", "all four curvatures on a norm arc length grid (CSV)");
  curv->add_flag("--no-orient", no_orient, "keep the given orientation");

  auto* frenet = app.add_subcommand("frenet-check", "Frenet relation residuals (JSON)");

  std::string type = "minkowski", kspec, kcsv;
  double length = 0.0;
  int steps = 8192;
  std::vector<double> start{0.0, 0.0}, dir{1.0, 0.0};
  auto* recon = app.add_subcommand("reconstruct", "curve from a prescribed curvature");
  recon->add_option("--type", type, "minkowski|normal|circular|arclength (or m|n|c|l)");
  auto* kopt = recon->add_option("--k", kspec, "const:v, sin:a,b,w, cos:a,b,w, poly:c0,c1,...");
  auto* kcsv_opt = recon->add_option("--k-csv", kcsv, "CSV with s (or s_a) and k or k_m/k_n/k_c/k_l columns");
  kopt->excludes(kcsv_opt);
  recon->add_option("--length", length, "length of the curve (with --k)");
  recon->add_option("--steps", steps, "RK4 steps")->check(CLI::Range(16, 1 << 22));
  recon->add_option("--start", start, "initial point x y")->expected(2);
  recon->add_option("--dir", dir, "initial direction x y")->expected(2);

  auto* evo = app.add_subcommand("evolute", "evolute with cusps (SVG, JSON or CSV)");

  double c_param = 0.0;
  auto* inv = app.add_subcommand("involute", "involute eta(s) = gamma(s) + (c - s) gamma'(s)");
  inv->add_option("--c", c_param, "constant c")->required();

  double dist = 0.0;
  auto* par = app.add_subcommand("parallel", "left parallel curve at distance d");
  par->add_option("--d", dist, "distance d")->required();

  auto* an = app.add_subcommand("analyze", "global curve and norm analyses (JSON)");
  an->require_subcommand(1);
  std::string fv_type = "circular";
  auto* an_fv = an->add_subcommand("four-vertex", "extrema of a curvature function");
  an_fv->add_option("--type", fv_type, "curvature type");
  double width_d = 0.0;
  auto* an_w = an->add_subcommand("width", "width function; with --d also the constant-width checks");
  an_w->add_option("--d", width_d, "expected constant width");
  auto* an_inc = an->add_subcommand("inclusion", "extremal circles and anti-circles against the curve");
  auto* an_pr = an->add_subcommand("probes", "Radon and Euclidean probes of the norm");

  std::string method = "exact";
  auto* dual = app.add_subcommand("duality-check", "circular vs normal and arclength vs Minkowski in the anti-norm");
  dual->add_option("--method", method, "exact|spline")->check(CLI::IsMember({"exact", "spline"}));

  try {
    app.parse(argc, argv);
    apply_config(app, g);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    const NormProfile profile = io::parse_norm(g.norm, g.sigma);
    auto curve = [&] { return io::parse_curve(g.curve, profile); };

    if (norm_show->parsed()) {
      json j = io::to_json(profile);
      j["radon_test"] = io::to_json(is_radon(profile, g.tol));
      j["probes"] = io::to_json(plane_probes(profile, g.grid));
      emit(dump(j), g.out);
    } else if (curv->parsed()) {
      const PlaneCurve c = curve();
      CurvatureOptions opt;
      opt.grid = g.grid;
      opt.auto_orient = !no_orient;
      const CurvatureProfile cp = curvatures(c, profile, opt);
      std::ostringstream os;
      io::write_csv(os, io::curvature_table(cp, c, profile, opt.auto_orient));
      emit(os.str(), g.out);
    } else if (frenet->parsed()) {
      emit(dump(io::to_json(frenet_residuals(curve(), profile, g.grid))), g.out);
    } else if (recon->parsed()) {
      const CurvatureType ty = curvature_type_from_string(type);
      ReconstructOptions opt;
      opt.steps = steps;
      opt.start = Vec2(start[0], start[1]);
      opt.start_dir = Vec2(dir[0], dir[1]);
      std::function<double(double)> k;
      double s0 = 0.0;
      if (!kcsv.empty()) {
        const io::Table t = io::read_csv(kcsv);
        const std::string s_col = ty == CurvatureType::arclength && t.has("s_a") ? "s_a" : "s";
        const std::string names[] = {"k_m", "k_n", "k_c", "k_l"};
        const std::string k_col = t.has("k") ? "k" : names[static_cast<int>(ty)];
        const auto& sv = t.col(s_col);
        if (sv.size() < 4) throw Error(ErrorKind::InvalidInput, "need at least 4 curvature samples");
        s0 = sv.front();
        length = sv.back() - s0;
        const MonotoneMap interp(sv, t.col(k_col), {}, false);
        k = [interp, s0](double s) { return interp(s + s0); };
        if (recon->get_option("--start")->count() == 0 && t.has("x") && t.has("y"))
          opt.start = Vec2(t.col("x").front(), t.col("y").front());
        if (recon->get_option("--dir")->count() == 0 && t.has("theta")) opt.start_dir = unit(t.col("theta").front());
      } else if (!kspec.empty()) {
        k = io::parse_curvature_function(kspec);
        if (!(length > 0)) throw UsageError("--length is required with --k");
      } else {
        throw UsageError("one of --k or --k-csv is required");
      }
      const PlaneCurve c = curve_from_curvature(k, length, ty, profile, opt);
      const int n = g.grid > 0 ? g.grid : 1024;
      if (ends_with(g.out, ".svg")) {
        emit(svg({{polyline(c, n)}, {"black"}, {false}, {}, "reconstructed curve"}), g.out);
      } else {
        std::vector<double> s = c.grid(n);
        std::vector<Vec2> pts;
        for (double x : s) pts.push_back(c.eval(x));
        for (double& x : s) x += s0;
        emit(points_csv(s, pts), g.out);
      }
    } else if (evo->parsed()) {
      const PlaneCurve c = curve();
      const EvoluteResult r = evolute(c, profile, g.grid);
      json j = io::to_json(r);
      if (c.closed()) j["signed_length"] = io::to_json(signed_evolute_length(c, profile, g.grid));
      if (ends_with(g.out, ".svg")) {
        io::SvgScene scene;
        scene.title = "evolute";
        scene.polylines.push_back(polyline(c, 2048));
        scene.colors.push_back("black");
        scene.closed.push_back(c.closed());
        for (auto& arc : r.arcs()) {
          scene.polylines.push_back(std::move(arc));
          scene.colors.push_back("blue");
          scene.closed.push_back(false);
        }
        scene.crosses = r.cusp_points;
        emit(svg(scene), g.out);
        std::cout << dump(j);
      } else if (ends_with(g.out, ".csv")) {
        io::Table t;
        std::vector<double> x, y;
        for (const auto& p : r.points) {
          x.push_back(p.x());
          y.push_back(p.y());
        }
        t.add("s", r.s);
        t.add("x", x);
        t.add("y", y);
        t.add("rho", r.rho);
        t.add("drho", r.drho);
        std::ostringstream os;
        io::write_csv(os, t);
        emit(os.str(), g.out);
      } else {
        emit(dump(j), g.out);
      }
    } else if (inv->parsed()) {
      const PlaneCurve eta = involute(curve(), profile, c_param);
      const int n = g.grid > 0 ? g.grid : 1024;
      const std::vector<Vec2> pts = polyline(eta, n);
      if (ends_with(g.out, ".svg"))
        emit(svg({{polyline(curve(), 2048), pts}, {"black", "blue"}, {curve().closed(), false}, {}, "involute"}),
             g.out);
      else
        emit(points_csv(eta.grid(n), pts), g.out);
    } else if (par->parsed()) {
      const ParallelResult r = left_parallel(curve(), profile, dist, g.grid);
      const std::vector<Vec2> pts = polyline(r.curve, r.s.size());
      if (ends_with(g.out, ".svg")) {
        emit(svg({{polyline(curve(), 2048), pts}, {"black", "blue"}, {curve().closed(), r.curve.closed()},
                  r.root_points, "left parallel"}),
             g.out);
        std::cout << dump(io::to_json(r));
      } else if (ends_with(g.out, ".csv")) {
        emit(points_csv(r.curve.grid(r.s.size()), pts), g.out);
      } else {
        emit(dump(io::to_json(r)), g.out);
      }
    } else if (an_fv->parsed()) {
      emit(dump(io::to_json(four_vertex_report(curve(), profile, curvature_type_from_string(fv_type), g.grid))),
           g.out);
    } else if (an_w->parsed()) {
      const PlaneCurve c = curve();
      json j = io::to_json(width_function(c, profile, g.grid, g.tol));
      if (an_w->get_option("--d")->count() > 0)
        j["constant_width"] = io::to_json(constant_width_checks(c, profile, width_d, g.grid, g.tol));
      emit(dump(j), g.out);
    } else if (an_inc->parsed()) {
      emit(dump(io::to_json(inclusion_check(curve(), profile, g.grid))), g.out);
    } else if (an_pr->parsed()) {
      emit(dump(io::to_json(plane_probes(profile, g.grid))), g.out);
    } else if (dual->parsed()) {
      const DualMethod m = method == "spline" ? DualMethod::spline : DualMethod::exact;
      emit(dump(io::to_json(duality_check(curve(), profile, m, g.grid))), g.out);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
