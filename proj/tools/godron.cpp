// godron: characteristic points and index identities of surfaces.
//
//   godron analyze catalog:perturbed_torus eps=0.05 --report out.json --svg out.svg
//   godron check surfaces/radial_sphere.json
//   godron localize catalog:platonova rho=2 --at 0.05,0.02

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "godron/analysis.hpp"
#include "godron/error.hpp"
#include "godron/localize.hpp"
#include "godron/report.hpp"
#include "godron/spec_file.hpp"
#include "godron/svg.hpp"

using namespace godron;

namespace {

struct RunConfig {
  std::vector<std::string> args;
  std::string surface;
  int grid = 0;
  int seed_grid = 0;
  double tol_parabolic = 0.0;
  std::string report;
  std::string svg;
  bool no_windings = false;
  bool quiet = false;
  std::vector<double> at;
  int chart = 0;
  double radius = 0.02;
};

SurfaceSource source_of(const RunConfig& c) {
  std::vector<std::string> extra = c.args;
  std::string surface = c.surface;
  if (surface.empty()) {
    if (extra.empty()) throw ValidationError("no surface given (catalog:NAME or a spec file)");
    surface = extra.front();
    extra.erase(extra.begin());
  }
  return resolve_surface(surface, extra);
}

AnalysisOptions options_of(const RunConfig& c, const SurfaceSource& src) {
  AnalysisOptions o;
  if (src.grid) o.grid = *src.grid;
  if (src.seed_grid) o.seed_grid = *src.seed_grid;
  if (src.tol_parabolic) o.tol_parabolic = *src.tol_parabolic;
  if (c.grid) o.grid = c.grid;
  if (c.seed_grid) o.seed_grid = c.seed_grid;
  if (c.tol_parabolic != 0.0) o.tol_parabolic = c.tol_parabolic;
  if (o.grid < 16 || (o.seed_grid != 0 && o.seed_grid < 16)) throw ValidationError("grid resolution must be >= 16");
  if (!(o.tol_parabolic > 0.0)) throw ValidationError("--tol-parabolic must be positive");
  o.windings = !c.no_windings;
  return o;
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) throw Error("cannot write '" + path + "'");
}

std::string opt_rational(const std::optional<Rational>& r) { return r ? r->to_string() : "-"; }

void print_summary(const Analysis& a) {
  std::printf("surface   %s\n", a.surface_id.c_str());
  std::printf("grid      %d (seeds %d)\n", a.options.grid, a.options.seed_grid ? a.options.seed_grid : a.options.grid);
  std::printf("traces    parabolic %zu polylines, flecnodal %zu polylines\n", a.parabolic.polylines.size(),
              a.flecnodal.polylines.size());
  std::printf("points    %zu nodes, %zu godrons\n", a.nodes.size(), a.godrons.size());
  for (const auto* list : {&a.nodes, &a.godrons}) {
    for (const auto& p : *list) {
      std::printf("  %-11s chart %d (%+.6f, %+.6f) sign %+d index %-5s winding %-5s", to_string(p.kind), p.param.chart,
                  p.param.s, p.param.t, p.sign, p.index.to_string().c_str(), opt_rational(p.winding).c_str());
      if (p.kind == CharKind::godron)
        std::printf(" asymptotic %-5s rho %.6g", opt_rational(p.asymptotic_winding).c_str(),
                    p.rho_platonova.value_or(0.0));
      if (p.rho) std::printf(" rho %.6g sigma %+d", *p.rho, p.sigma.value_or(0));
      std::printf("\n");
    }
  }
  for (const auto& r : a.verification.regions) {
    std::printf("region %d  %s chi %d\n", r.id, to_string(r.kind), r.chi);
    for (const auto& c : r.checks)
      std::printf("  %-4s %-36s %s = %s\n", c.pass ? "ok" : "FAIL", c.name.c_str(), c.lhs.to_string().c_str(),
                  c.rhs.to_string().c_str());
  }
  for (const auto& c : a.verification.global)
    std::printf("global  %-4s %-30s %s = %s\n", c.pass ? "ok" : "FAIL", c.name.c_str(), c.lhs.to_string().c_str(),
                c.rhs.to_string().c_str());
  for (const auto& w : a.warnings) std::printf("warning   %s\n", w.c_str());
  std::printf("verdict   %s (exit %d)\n", a.verification.verdict.c_str(), a.exit_code);
}

int cmd_analyze(const RunConfig& c, bool with_svg) {
  const SurfaceSource src = source_of(c);
  const AnalysisOptions opts = options_of(c, src);
  const Analysis a = analyze(std::make_shared<const SurfaceSpec>(src.spec), src.id, opts);
  if (!c.report.empty()) write_text(c.report, write_report_json(make_report(a)));
  if (with_svg && !c.svg.empty()) write_svg(a, c.svg);
  if (c.report != "-") {
    if (c.quiet)
      std::printf("%s: %s (exit %d)\n", a.surface_id.c_str(), a.verification.verdict.c_str(), a.exit_code);
    else
      print_summary(a);
  }
  return a.exit_code;
}

void print_form(const char* name, const BinaryForm& f) {
  static const char* mono[4][4] = {{"", "", "", ""},
                                   {"dx", "dy", "", ""},
                                   {"dx^2", "dxdy", "dy^2", ""},
                                   {"dx^3", "dx^2dy", "dxdy^2", "dy^3"}};
  std::printf("%-4s", name);
  for (int i = 0; i <= f.degree; ++i) std::printf("  %+.12e %s", f.c[i], mono[f.degree][i]);
  std::printf("\n");
}

int cmd_localize(const RunConfig& c) {
  const SurfaceSource src = source_of(c);
  ChartPoint p{c.chart, 0.0, 0.0};
  if (!c.at.empty()) {
    p.s = c.at[0];
    p.t = c.at[1];
  } else if (src.spec.closed()) {
    throw ValidationError("--at s,t is required on closed surfaces");
  }
  LocalizeOptions lo;
  lo.radius = c.radius;
  const PointReport r = localize(src.spec, p, lo);
  std::printf("surface   %s\n", src.id.c_str());
  std::printf("point     chart %d (%.12g, %.12g) -> (%.12g, %.12g, %.12g)\n", r.param.chart, r.param.s, r.param.t,
              r.position.x, r.position.y, r.position.z);
  std::printf("frame     %s\n", r.jet.frame == FrameKind::parametric ? "parametric" : "orthonormal");
  std::printf("f_ij\n");
  for (int n = 2; n <= 4; ++n) {
    std::printf(" ");
    for (int i = n; i >= 0; --i) std::printf("  f%d%d %+.10e", i, n - i, r.jet.fij(i, n - i));
    std::printf("\n");
  }
  print_form("Q", r.forms.Q);
  print_form("C", r.forms.C);
  std::printf("H0    %+.12e\n", r.forms.H0);
  print_form("dH", r.forms.dH);
  print_form("W", r.forms.W);
  std::printf("class     %s, |W|/|Q|^3 = %.3e\n", to_string(r.point_class), r.node_residual);
  if (r.feature) {
    const CharPoint& f = *r.feature;
    std::printf("feature   %s sign %+d\n", to_string(f.kind), f.sign);
    std::printf("index     %s (closed form)\n", f.index.to_string().c_str());
    std::printf("winding   %s\n", opt_rational(f.winding).c_str());
    if (f.kind == CharKind::godron) {
      std::printf("asymptotic winding %s\n", opt_rational(f.asymptotic_winding).c_str());
      if (f.rho_platonova) std::printf("rho       %.12g\n", *f.rho_platonova);
    }
    if (f.rho) std::printf("rho       %.12g\n", *f.rho);
    if (f.sigma) std::printf("sigma     %+d\n", *f.sigma);
  } else {
    std::printf("feature   none\n");
  }
  if (!r.note.empty()) std::printf("note      %s\n", r.note.c_str());
  return exit_pass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Characteristic points, indices and Euler-characteristic identities of surfaces"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("args", cfg.args, "catalog:NAME or spec file, then key=value parameters");
    sub->add_option("--surface", cfg.surface, "catalog:NAME[,key=value...] or a spec file path");
  };
  auto add_analysis = [&](CLI::App* sub) {
    sub->add_option("--grid", cfg.grid, "Grid resolution per chart (default 128)");
    sub->add_option("--seed-grid", cfg.seed_grid, "Grid of the node seed scan (default: --grid)");
    sub->add_option("--tol-parabolic", cfg.tol_parabolic, "Parabolic band excluded from node search, relative");
    sub->add_option("--report", cfg.report, "Write the JSON report here ('-' for stdout)");
    sub->add_flag("--no-windings", cfg.no_windings, "Skip the numeric winding indices");
  };

  auto* analyze_cmd = app.add_subcommand("analyze", "Full analysis with report and optional SVG map");
  add_common(analyze_cmd);
  add_analysis(analyze_cmd);
  analyze_cmd->add_option("--svg", cfg.svg, "Write an SVG map of the parameter domain");
  analyze_cmd->add_flag("-q,--quiet", cfg.quiet, "One-line summary");

  auto* check_cmd = app.add_subcommand("check", "Analysis without SVG; exit code only plus one line");
  add_common(check_cmd);
  add_analysis(check_cmd);

  auto* localize_cmd = app.add_subcommand("localize", "Forms, classification and indices at one point");
  add_common(localize_cmd);
  localize_cmd->add_option("--at", cfg.at, "Parameter point s,t (default: origin of a patch)")
      ->delimiter(',')
      ->expected(2);
  localize_cmd->add_option("--chart", cfg.chart, "Chart of a cube-sphere point");
  localize_cmd->add_option("--radius", cfg.radius, "Starting radius of the winding loops");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_input;
  }

  try {
    if (*analyze_cmd) return cmd_analyze(cfg, true);
    if (*check_cmd) {
      cfg.quiet = true;
      return cmd_analyze(cfg, false);
    }
    return cmd_localize(cfg);
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_input;
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_input;
  } catch (const ResolutionError& e) {
    std::fprintf(stderr, "resolution failure: %s\n", e.what());
    return exit_identity;
  } catch (const DegenerateInputError& e) {
    std::fprintf(stderr, "degenerate input: %s\n", e.what());
    return exit_degenerate;
  } catch (const NonGenericError& e) {
    std::fprintf(stderr, "degenerate input: %s\n", e.what());
    return exit_degenerate;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_input;
  }
}
