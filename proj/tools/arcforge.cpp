// arcforge: maximal arcs from ovoids and their minimum-degree covering curves.

#include <bit>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "arcforge/parallel.hpp"
#include "arcforge/pipeline.hpp"

using namespace arcforge;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kStageError = 3, kNoSpread = 4 };

struct Options {
  std::uint32_t q = 8;
  std::string ovoid = "suzuki-tits";
  std::string cache;
  std::string out;
  std::string arc;
  std::string curve;
  std::string arc_out;
  std::string curve_out;
  std::string format = "text";
  int max_degree = 0;
  int verbosity = 0;
};

PipelineConfig config_from(const Options& o) {
  PipelineConfig cfg;
  cfg.q = o.q;
  try {
    cfg.kind = parse_ovoid_kind(o.ovoid);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (o.max_degree > 0) cfg.max_degree = o.max_degree;
  if (!o.cache.empty()) cfg.cache_dir = o.cache;
  cfg.verbosity = o.verbosity;
  return cfg;
}

Workspace workspace_for(std::uint32_t q) {
  if (q < 4 || (q & (q - 1)) != 0) throw ConfigError("q = " + std::to_string(q) + " is not a power of 2 >= 4");
  return Workspace(std::countr_zero(q));
}

void print_histogram(const std::map<int, std::size_t>& h) {
  for (const auto& [k, c] : h) std::cout << "  " << c << " lines meet the set in " << k << " points\n";
}

int cmd_build(const Options& o) {
  const PipelineConfig cfg = config_from(o);
  const Workspace w(validate_config(cfg));
  PipelineReport r;
  const MaximalArc arc = construct_arc(cfg, w, r);
  if (!o.out.empty()) write_json(o.out, arc_to_json(arc));
  std::cout << "arc: " << arc.points.size() << " points of PG(2," << w.tower.q2() << "), degree " << arc.degree
            << ", hash " << arc_hash(arc) << (r.spread_cached ? " (spread from cache)" : "") << "\n";
  print_histogram(r.arc_histogram);
  if (!r.arc_maximal) {
    std::cout << "FAIL: the point set is not a maximal arc\n";
    return kVerifyFailed;
  }
  return kOk;
}

int cmd_spread(const Options& o) {
  const PipelineConfig cfg = config_from(o);
  const Workspace w(validate_config(cfg));
  const Ovoid ov = build_ovoid(cfg.kind, w.geometry);
  std::optional<Spread> s;
  bool cached = false;
  if (cfg.cache_dir) {
    s = spread_cache_get(*cfg.cache_dir, ov, w);
    cached = s.has_value();
  }
  if (!s) {
    s = find_tangent_spread(tangent_complex(ov, w.geometry), ov, w.geometry);
    if (!s) throw SpreadNotFound("no regular spread of tangent lines was found");
    s->carrier = carrier_line(s->lines, w.geometry, w.ext);
    if (cfg.cache_dir) spread_cache_put(*cfg.cache_dir, *s, ov, w);
  }
  if (!o.out.empty()) write_json(o.out, spread_to_json(*s, ov, w));
  std::cout << "spread: " << s->lines.size() << " tangent lines, regular " << (s->regular ? "yes" : "no") << ", carrier "
            << (s->carrier ? "found" : "missing") << (cached ? " (from cache)" : "") << "\n";
  return s->regular && s->carrier ? kOk : kVerifyFailed;
}

int cmd_verify(const Options& o) {
  const MaximalArc arc = arc_from_json(read_json(o.arc));
  const Workspace w = workspace_for(arc.q);
  const PointTable plane(2, w.tower.ext_ptr());
  const ArcVerification v = verify_maximal_arc(arc.points, plane, arc.degree);
  const bool secants = check_arc(arc.points, plane, arc.degree);
  std::cout << "arc: " << arc.points.size() << " points, degree " << arc.degree << "\n";
  print_histogram(v.histogram);
  std::cout << "every line meets in 0 or " << arc.degree << " points: " << (v.pass ? "yes" : "no") << "\n";
  std::cout << "secant check: " << (secants ? "yes" : "no") << "\n";
  if (v.degenerate) std::cout << "note: the point set is empty\n";
  const bool ok = v.is_maximal_arc() && secants;
  std::cout << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? kOk : kVerifyFailed;
}

int cmd_mincurve(const Options& o) {
  const MaximalArc arc = arc_from_json(read_json(o.arc));
  const Workspace w = workspace_for(arc.q);
  const int max_degree = o.max_degree > 0 ? o.max_degree : static_cast<int>(w.tower.q2());
  const auto c = fit_curve(arc, max_degree, w.tower);
  if (!c) {
    std::cout << "no curve of degree <= " << max_degree << " contains the arc\n";
    return kVerifyFailed;
  }
  for (const auto& p : c->probes)
    std::cout << "degree " << p.degree << ": rank " << p.rank << " of " << p.monomials << "\n";
  std::cout << "minimum degree " << c->poly.degree() << ", nullity " << c->nullity << "\n";
  std::cout << "f = " << to_string(c->poly, w.tower.ext()) << "\n";
  if (!o.out.empty()) write_json(o.out, curve_to_json(*c));
  return kOk;
}

int cmd_factor(const Options& o) {
  const CurveArtifact c = curve_from_json(read_json(o.curve));
  const Workspace w = workspace_for(c.q);
  const Field& f = w.tower.ext();
  const LinearSplit s = extract_linear_factors(c.poly, f);
  std::cout << "linear factors: " << s.factors.size() << "\n";
  for (const auto& lf : s.factors)
    std::cout << "  " << to_string(lf.form, f) << (lf.multiplicity > 1 ? "  ^" + std::to_string(lf.multiplicity) : "")
              << "\n";
  std::cout << "residual degree " << s.residual.degree() << "\n  " << to_string(s.residual, f) << "\n";
  if (!o.arc.empty() && s.residual.degree() > 0) {
    const MaximalArc arc = arc_from_json(read_json(o.arc));
    if (arc_hash(arc) != c.arc_hash) std::cerr << "arcforge: warning: curve was fitted to a different arc\n";
    const CurvePoints cp = curve_points(s.residual, f, arc.points);
    std::cout << "residual: " << cp.zeros.size() << " affine zeros, " << cp.on_set << " on the arc\n";
  }
  if (!o.out.empty()) write_json(o.out, split_to_json(s, f));
  return kOk;
}

int cmd_report(const Options& o) {
  PipelineConfig cfg = config_from(o);
  if (!o.arc_out.empty()) cfg.arc_out = o.arc_out;
  if (!o.curve_out.empty()) cfg.curve_out = o.curve_out;
  const PipelineReport r = run_pipeline(cfg);
  const std::string text = emit_report(r, o.format == "json" ? ReportFormat::Json : ReportFormat::Text);
  if (!o.out.empty()) {
    std::ofstream(o.out) << text;
    if (o.format != "json") std::cout << (r.ok() ? "result: PASS\n" : "result: FAIL\n");
  } else {
    std::cout << text;
  }
  return r.ok() ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"arcforge: maximal arcs from ovoids and their minimum-degree curves"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");
  Options o;
  int workers = 0;
  app.add_option("-j,--workers", workers, "worker threads (default: $ARCFORGE_WORKERS or all cores)");
  app.add_flag("-v,--verbose", o.verbosity, "more output");

  auto add_geometry = [&](CLI::App* sub) {
    sub->add_option("--q", o.q, "order of the base field")->capture_default_str();
    sub->add_option("--ovoid", o.ovoid, "suzuki-tits or elliptic-quadric")
        ->check(CLI::IsMember({"suzuki-tits", "elliptic-quadric"}))
        ->capture_default_str();
    sub->add_option("--cache", o.cache, "spread cache directory");
  };

  auto* build = app.add_subcommand("build", "construct the maximal arc and write it as JSON");
  add_geometry(build);
  build->add_option("--out", o.out, "arc JSON output");

  auto* spread = app.add_subcommand("spread", "find and certify the regular spread of tangent lines");
  add_geometry(spread);
  spread->add_option("--out", o.out, "spread JSON output");

  auto* verify = app.add_subcommand("verify", "check that an arc file is a maximal arc");
  verify->add_option("--arc", o.arc, "arc JSON")->required();

  auto* mincurve = app.add_subcommand("mincurve", "fit a minimum-degree curve through an arc");
  mincurve->add_option("--arc", o.arc, "arc JSON")->required();
  mincurve->add_option("--max-degree", o.max_degree, "largest degree tried (default q^2)");
  mincurve->add_option("--out", o.out, "curve JSON output");

  auto* factor = app.add_subcommand("factor-linear", "split linear factors off a fitted curve");
  factor->add_option("--curve", o.curve, "curve JSON")->required();
  factor->add_option("--arc", o.arc, "arc JSON, to count residual points on the arc");
  factor->add_option("--out", o.out, "factor JSON output");

  auto* report = app.add_subcommand("report", "run the whole pipeline and print a report");
  add_geometry(report);
  report->add_option("--max-degree", o.max_degree, "largest degree tried (default q^2)");
  report->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  report->add_option("--out", o.out, "write the report here instead of stdout");
  report->add_option("--arc-out", o.arc_out, "arc JSON output");
  report->add_option("--curve-out", o.curve_out, "curve JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }
  if (workers > 0) set_worker_count(workers);

  try {
    if (*build) return cmd_build(o);
    if (*spread) return cmd_spread(o);
    if (*verify) return cmd_verify(o);
    if (*mincurve) return cmd_mincurve(o);
    if (*factor) return cmd_factor(o);
    if (*report) return cmd_report(o);
  } catch (const ConfigError& e) {
    std::cerr << "arcforge: " << e.what() << "\n";
    return kUsage;
  } catch (const SpreadNotFound& e) {
    std::cerr << "arcforge: " << e.what() << "\n";
    return kNoSpread;
  } catch (const PipelineError& e) {
    std::cerr << "arcforge: stage " << e.what() << "\n";
    return kStageError;
  } catch (const std::exception& e) {
    std::cerr << "arcforge: " << e.what() << "\n";
    return kStageError;
  }
  return kUsage;
}
