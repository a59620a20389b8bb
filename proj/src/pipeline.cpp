#include "arcforge/pipeline.hpp"

#include <bit>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace arcforge {

namespace {

template <class F>
auto in_stage(const std::string& name, std::vector<StageTiming>* timings, F&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  auto done = [&] {
    if (timings)
      timings->push_back({name, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()});
  };
  try {
    if constexpr (std::is_void_v<decltype(fn())>) {
      fn();
      done();
    } else {
      auto r = fn();
      done();
      return r;
    }
  } catch (const PipelineError&) {
    throw;
  } catch (const std::exception& e) {
    throw PipelineError(name, e.what());
  }
}

void warn(const std::string& msg) { std::cerr << "arcforge: warning: " << msg << "\n"; }

json points_json(std::span<const PointId> pts) { return json(std::vector<PointId>(pts.begin(), pts.end())); }

json terms_json(const BivariatePoly& p) {
  json out = json::array();
  for (const auto& [m, c] : p.terms()) out.push_back({m.x, m.y, c});
  return out;
}

BivariatePoly terms_from_json(const json& j, Elem order) {
  BivariatePoly p;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 3) throw std::invalid_argument("term is not [i, j, c]");
    const int i = t[0].get<int>(), k = t[1].get<int>();
    const Elem c = t[2].get<Elem>();
    if (c >= order) throw std::invalid_argument("coefficient outside the field");
    p.add_term({i, k}, c);
  }
  return p;
}

json probes_json(const std::vector<DegreeProbe>& probes) {
  json out = json::array();
  for (const auto& p : probes) out.push_back({p.degree, p.rank, p.monomials});
  return out;
}

std::vector<DegreeProbe> probes_from_json(const json& j) {
  std::vector<DegreeProbe> out;
  for (const auto& p : j) out.push_back({p.at(0).get<int>(), p.at(1).get<std::size_t>(), p.at(2).get<std::size_t>()});
  return out;
}

int log2_exact(std::uint32_t q) {
  if (q < 2 || !std::has_single_bit(q)) throw std::invalid_argument("q = " + std::to_string(q) + " is not a power of 2");
  return std::countr_zero(q);
}

std::string elem_string(Elem e, const Field& f) {
  if (e == 0) return "0";
  if (e == 1) return "1";
  return "g^" + std::to_string(f.log(e));
}

// Minimum degrees reported in earlier work for this construction.
std::optional<int> previously_reported(std::uint32_t q, OvoidKind kind) {
  if (q != 8) return std::nullopt;
  return kind == OvoidKind::SuzukiTits ? 22 : 7;
}

}  // namespace

int validate_config(const PipelineConfig& cfg) {
  int m = 0;
  try {
    m = log2_exact(cfg.q);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (m < 2) throw ConfigError("q must be at least 4");
  if (m > 8) throw ConfigError("q must be at most 256");
  if (cfg.kind == OvoidKind::SuzukiTits && (m % 2 == 0 || m < 3))
    throw ConfigError("the Suzuki-Tits ovoid needs q = 2^(2t+1) with t >= 1");
  if (cfg.max_degree && *cfg.max_degree < 1) throw ConfigError("max degree must be positive");
  return m;
}

Workspace::Workspace(int m) : tower(FieldTower::build(m)), geometry(tower), ext(3, tower.ext_ptr()) {}

std::string spread_cache_name(std::uint32_t q, OvoidKind kind, std::uint32_t param) {
  return "spread-q" + std::to_string(q) + "-" + std::string(to_string(kind)) + "-p" + std::to_string(param) + ".json";
}

json spread_to_json(const Spread& s, const Ovoid& o, const Workspace& w) {
  const FieldTower& t = w.tower;
  json j;
  j["format"] = "arcforge-spread";
  j["q"] = t.q();
  j["ovoid"] = std::string(to_string(o.kind));
  j["ovoid_param"] = o.param;
  j["table"] = {{"space", "PG(3,q)"},
                {"order", "lexicographic, left-normalized"},
                {"modulus", t.base().modulus()},
                {"nu", t.nu()}};
  json lines = json::array();
  for (LineId l : s.lines) lines.push_back(points_json(w.geometry.line(l)));
  j["lines"] = std::move(lines);
  j["regular"] = s.regular;
  if (s.carrier) j["carrier"] = *s.carrier;
  else j["carrier"] = nullptr;
  return j;
}

std::optional<Spread> spread_from_json(const json& j, const Ovoid& o, const Workspace& w) {
  const Pg3Geometry& g = w.geometry;
  const FieldTower& t = w.tower;
  auto reject = [](const std::string& why) -> std::optional<Spread> {
    warn("ignoring cached spread: " + why);
    return std::nullopt;
  };
  try {
    if (j.at("format") != "arcforge-spread") return reject("wrong format tag");
    if (j.at("q").get<std::uint32_t>() != t.q()) return reject("q mismatch");
    if (j.at("ovoid").get<std::string>() != to_string(o.kind)) return reject("ovoid kind mismatch");
    if (j.at("ovoid_param").get<std::uint32_t>() != o.param) return reject("ovoid parameter mismatch");
    if (j.at("table").at("modulus").get<std::uint32_t>() != t.base().modulus() ||
        j.at("table").at("nu").get<Elem>() != t.nu())
      return reject("field representation mismatch");
    Spread s;
    for (const auto& lj : j.at("lines")) {
      auto pts = lj.get<std::vector<PointId>>();
      for (PointId p : pts)
        if (p >= g.num_points()) return reject("point index out of range");
      std::sort(pts.begin(), pts.end());
      const auto l = g.find(pts);
      if (!l) return reject("a stored point set is not a line");
      s.lines.push_back(*l);
    }
    std::sort(s.lines.begin(), s.lines.end());
    if (!is_partition(s.lines, g)) return reject("lines do not partition PG(3,q)");
    std::vector<std::uint8_t> on(g.num_points(), 0);
    for (PointId p : o.points) on[p] = 1;
    for (LineId l : s.lines) {
      const auto pts = g.line(l);
      if (std::count_if(pts.begin(), pts.end(), [&](PointId p) { return on[p] != 0; }) != 1)
        return reject("a line is not tangent to the ovoid");
    }
    if (!j.at("regular").get<bool>() || !is_regular_spread(s.lines, g)) return reject("spread is not regular");
    s.regular = true;
    if (j.at("carrier").is_null()) return reject("no carrier line");
    auto carrier = j.at("carrier").get<LineSet>();
    for (PointId p : carrier)
      if (p >= w.ext.size()) return reject("carrier point out of range");
    std::sort(carrier.begin(), carrier.end());
    if (carrier.size() < 2 ||
        line_through_ext(w.ext, w.ext.point_at(carrier[0]), w.ext.point_at(carrier[1])) != carrier)
      return reject("carrier is not a line of PG(3,q^2)");
    for (PointId p : carrier)
      if (is_rational(t, w.ext.point_at(p))) return reject("carrier has a rational point");
    if (spread_from_carrier(carrier, g, w.ext) != s.lines) return reject("carrier does not reproduce the spread");
    s.carrier = std::move(carrier);
    return s;
  } catch (const std::exception& e) {
    return reject(std::string("malformed entry (") + e.what() + ")");
  }
}

std::optional<Spread> spread_cache_get(const fs::path& dir, const Ovoid& o, const Workspace& w) {
  const fs::path p = dir / spread_cache_name(w.tower.q(), o.kind, o.param);
  if (!fs::exists(p)) return std::nullopt;
  json j;
  try {
    j = read_json(p);
  } catch (const std::exception& e) {
    warn("ignoring cached spread: " + std::string(e.what()));
    return std::nullopt;
  }
  return spread_from_json(j, o, w);
}

void spread_cache_put(const fs::path& dir, const Spread& s, const Ovoid& o, const Workspace& w) {
  fs::create_directories(dir);
  write_json(dir / spread_cache_name(w.tower.q(), o.kind, o.param), spread_to_json(s, o, w));
}

std::string arc_hash(const MaximalArc& arc) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&](std::uint32_t v) {
    for (int k = 0; k < 4; ++k) {
      h ^= (v >> (8 * k)) & 0xffu;
      h *= 0x100000001b3ull;
    }
  };
  mix(arc.q);
  for (const ProjPoint& p : arc.points)
    for (Elem c : p) mix(c);
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

json arc_to_json(const MaximalArc& arc) {
  json j;
  j["format"] = "arcforge-arc";
  j["q"] = arc.q;
  j["degree"] = arc.degree;
  j["ovoid"] = std::string(to_string(arc.kind));
  j["epsilon"] = arc.epsilon;
  json pts = json::array();
  for (const ProjPoint& p : arc.points) pts.push_back({p[0], p[1], p[2]});
  j["points"] = std::move(pts);
  j["provenance"] = {{"size", arc.points.size()},
                     {"hash", arc_hash(arc)},
                     {"collineation", arc.collineation.a},
                     {"epsilon_rule", "first candidate in encoding order"}};
  return j;
}

MaximalArc arc_from_json(const json& j) {
  try {
    if (j.at("format") != "arcforge-arc") throw std::invalid_argument("not an arc document");
    MaximalArc arc;
    arc.q = j.at("q").get<std::uint32_t>();
    const int m = log2_exact(arc.q);
    const Elem order = Elem{1} << (2 * m);
    arc.degree = j.at("degree").get<std::uint32_t>();
    arc.kind = parse_ovoid_kind(j.at("ovoid").get<std::string>());
    arc.epsilon = j.at("epsilon").get<Elem>();
    for (const auto& pj : j.at("points")) {
      if (!pj.is_array() || pj.size() != 3) throw std::invalid_argument("point is not [z, x, y]");
      ProjPoint p{pj[0].get<Elem>(), pj[1].get<Elem>(), pj[2].get<Elem>()};
      if (p[0] >= order || p[1] >= order || p[2] >= order) throw std::invalid_argument("coordinate outside GF(q^2)");
      arc.points.push_back(p);
    }
    if (const auto it = j.find("provenance"); it != j.end()) {
      if (it->contains("collineation")) arc.collineation.a = it->at("collineation").get<std::array<Elem, 16>>();
      if (it->contains("hash") && it->at("hash").get<std::string>() != arc_hash(arc))
        throw std::invalid_argument("point list does not match the recorded hash");
    }
    return arc;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed arc document: ") + e.what());
  }
}

std::optional<CurveArtifact> fit_curve(const MaximalArc& arc, int max_degree, const FieldTower& t) {
  const MinDegree md = min_cover_degree(arc.points, max_degree, t.ext());
  if (!md.degree) return std::nullopt;
  const Nullspace ns = nullspace_vector(eval_matrix(arc.points, *md.degree, t.ext()), t.ext());
  CurveArtifact c;
  c.q = arc.q;
  c.poly = vector_to_poly(ns.vector, *md.degree);
  c.arc_hash = arc_hash(arc);
  c.nullity = ns.nullity;
  c.probes = md.probes;
  return c;
}

json curve_to_json(const CurveArtifact& c) {
  json j;
  j["format"] = "arcforge-curve";
  j["q"] = c.q;
  j["degree"] = c.poly.degree();
  j["terms"] = terms_json(c.poly);
  j["provenance"] = {{"arc_hash", c.arc_hash},
                     {"found_degree", c.poly.degree()},
                     {"nullity", c.nullity},
                     {"probes", probes_json(c.probes)}};
  return j;
}

CurveArtifact curve_from_json(const json& j) {
  try {
    if (j.at("format") != "arcforge-curve") throw std::invalid_argument("not a curve document");
    CurveArtifact c;
    c.q = j.at("q").get<std::uint32_t>();
    const int m = log2_exact(c.q);
    c.poly = terms_from_json(j.at("terms"), Elem{1} << (2 * m));
    if (c.poly.degree() != j.at("degree").get<int>()) throw std::invalid_argument("degree does not match the terms");
    const json& prov = j.at("provenance");
    c.arc_hash = prov.at("arc_hash").get<std::string>();
    c.nullity = prov.at("nullity").get<std::size_t>();
    c.probes = probes_from_json(prov.at("probes"));
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed curve document: ") + e.what());
  }
}

json split_to_json(const LinearSplit& s, const Field& f) {
  json factors = json::array();
  for (const auto& lf : s.factors)
    factors.push_back({{"form", to_string(lf.form, f)},
                       {"vertical", lf.form.vertical},
                       {"a", lf.form.a},
                       {"b", lf.form.b},
                       {"multiplicity", lf.multiplicity}});
  json j;
  j["factors"] = std::move(factors);
  j["residual"] = {{"degree", s.residual.degree()}, {"terms", terms_json(s.residual)}};
  return j;
}

MaximalArc construct_arc(const PipelineConfig& cfg, const Workspace& w, PipelineReport& r) {
  const Pg3Geometry& g = w.geometry;
  r.q = w.tower.q();
  r.kind = cfg.kind;
  r.pg3_points = g.num_points();
  r.pg3_lines = g.num_lines();

  const Ovoid o = in_stage("ovoid", &r.timings, [&] {
    Ovoid ov = build_ovoid(cfg.kind, g);
    const OvoidReport rep = verify_ovoid(ov.points, g);
    r.ovoid_ok = rep.pass;
    if (!rep.pass) throw PipelineError("ovoid", "not an ovoid: " + rep.reason);
    return ov;
  });
  r.ovoid_param = o.param;
  r.ovoid_size = o.points.size();

  const TangentComplex tc = in_stage("tangents", &r.timings, [&] { return tangent_complex(o, g); });
  r.tangents = tc.lines.size();

  const Spread spread = in_stage("spread", &r.timings, [&] {
    if (cfg.cache_dir)
      if (auto s = spread_cache_get(*cfg.cache_dir, o, w)) {
        r.spread_cached = true;
        return *s;
      }
    auto s = find_tangent_spread(tc, o, g);
    if (!s) throw SpreadNotFound("no regular spread of tangent lines was found");
    if (!s->carrier) s->carrier = carrier_line(s->lines, g, w.ext);
    if (cfg.cache_dir) spread_cache_put(*cfg.cache_dir, *s, o, w);
    return *s;
  });
  r.spread_size = spread.lines.size();
  r.spread_regular = spread.regular;
  if (!spread.regular) throw PipelineError("spread", "the spread found is not regular");

  struct Framed {
    Collineation4 m;
    Ovoid ovoid;
    LineList lines;
  };
  const Framed framed = in_stage("canonical", &r.timings, [&] {
    const CanonicalSpread canon = canonical_spread(g, w.ext);
    Framed f{canonicalizing_collineation(spread, canon, g, w.ext), o, {}};
    f.ovoid.points = apply_collineation(f.m, g, o.points);
    std::sort(f.ovoid.points.begin(), f.ovoid.points.end());
    f.lines = apply_collineation_lines(f.m, g, spread.lines);
    if (f.lines != canon.spread.lines)
      throw PipelineError("canonical", "collineation does not map the spread onto the canonical spread");
    return f;
  });

  MaximalArc arc = in_stage("arc", &r.timings, [&] {
    r.epsilon_candidates = find_epsilon(framed.lines, g);
    if (r.epsilon_candidates.empty()) throw PipelineError("arc", "no epsilon collapses the spread lines");
    r.epsilon = r.epsilon_candidates.front();
    MaximalArc a = build_arc(framed.ovoid, framed.lines, r.epsilon, g);
    a.collineation = framed.m;
    return a;
  });
  r.arc_size = arc.points.size();
  r.arc_hash = arc_hash(arc);

  in_stage("verify", &r.timings, [&] {
    const PointTable plane(2, w.tower.ext_ptr());
    const ArcVerification v = verify_maximal_arc(arc.points, plane, arc.degree);
    r.arc_histogram = v.histogram;
    r.arc_maximal = v.is_maximal_arc();
  });
  return arc;
}

PipelineReport run_pipeline(const PipelineConfig& cfg) {
  const int m = validate_config(cfg);
  PipelineReport r;
  const Workspace w = in_stage("geometry", &r.timings, [&] { return Workspace(m); });
  const MaximalArc arc = construct_arc(cfg, w, r);
  if (cfg.arc_out) write_json(*cfg.arc_out, arc_to_json(arc));

  const Field& f = w.tower.ext();
  const int max_degree = cfg.max_degree.value_or(static_cast<int>(w.tower.q2()));
  const auto curve = in_stage("mincurve", &r.timings, [&] { return fit_curve(arc, max_degree, w.tower); });
  if (!curve) {
    r.notes.push_back("no curve of degree <= " + std::to_string(max_degree) + " contains the arc");
    return r;
  }
  r.min_degree = curve->poly.degree();
  r.nullity = curve->nullity;
  r.probes = curve->probes;
  r.polynomial = to_string(curve->poly, f);
  r.curve_vanishes = curve_points(curve->poly, f, arc.points).on_set == arc.points.size();
  if (cfg.curve_out) write_json(*cfg.curve_out, curve_to_json(*curve));

  in_stage("factor", &r.timings, [&] {
    const LinearSplit split = extract_linear_factors(curve->poly, f);
    BivariatePoly product = split.residual;
    for (const auto& lf : split.factors) {
      r.factors.push_back({to_string(lf.form, f), lf.form.vertical, lf.form.a, lf.form.b, lf.multiplicity});
      for (int k = 0; k < lf.multiplicity; ++k) product = multiply(product, lf.form.poly(), f);
    }
    r.factors_reassemble = product == curve->poly;
    r.residual_degree = split.residual.degree();
    if (r.residual_degree > 0) {
      const CurvePoints cp = curve_points(split.residual, f, arc.points);
      r.residual_zeros = cp.zeros.size();
      r.residual_on_arc = cp.on_set;
    }
  });

  if (const auto prev = previously_reported(r.q, r.kind); prev && *prev != *r.min_degree) {
    std::string note = "minimum degree " + std::to_string(*r.min_degree) + " differs from the previously reported value " +
                       std::to_string(*prev);
    const std::uint64_t bound = std::uint64_t(*prev) * (w.tower.q2() + 1);
    if (bound < r.arc_size)
      note += "; a curve of degree " + std::to_string(*prev) + " has at most " + std::to_string(bound) +
              " points, fewer than the " + std::to_string(r.arc_size) + " arc points";
    r.notes.push_back(std::move(note));
  }
  return r;
}

json report_to_json(const PipelineReport& r) {
  json j;
  j["q"] = r.q;
  j["ovoid"] = std::string(to_string(r.kind));
  j["ovoid_param"] = r.ovoid_param;
  json timings = json::array();
  for (const auto& t : r.timings) timings.push_back({{"stage", t.stage}, {"seconds", t.seconds}});
  j["timings"] = std::move(timings);
  j["sizes"] = {{"pg3_points", r.pg3_points}, {"pg3_lines", r.pg3_lines}, {"ovoid", r.ovoid_size},
                {"tangents", r.tangents},     {"spread", r.spread_size},   {"arc", r.arc_size}};
  j["spread_cached"] = r.spread_cached;
  json hist = json::array();
  for (const auto& [k, c] : r.arc_histogram) hist.push_back({k, c});
  j["arc_histogram"] = std::move(hist);
  j["epsilon"] = r.epsilon;
  j["epsilon_candidates"] = r.epsilon_candidates;
  j["arc_hash"] = r.arc_hash;
  j["min_degree"] = r.min_degree ? json(*r.min_degree) : json(nullptr);
  j["probes"] = probes_json(r.probes);
  j["nullity"] = r.nullity;
  j["polynomial"] = r.polynomial;
  json factors = json::array();
  for (const auto& fe : r.factors)
    factors.push_back({{"form", fe.form}, {"vertical", fe.vertical}, {"a", fe.a}, {"b", fe.b}, {"multiplicity", fe.multiplicity}});
  j["factors"] = std::move(factors);
  j["residual"] = {{"degree", r.residual_degree}, {"affine_zeros", r.residual_zeros}, {"on_arc", r.residual_on_arc}};
  j["verdicts"] = {{"ovoid", r.ovoid_ok},
                   {"spread_regular", r.spread_regular},
                   {"maximal_arc", r.arc_maximal},
                   {"curve_vanishes", r.curve_vanishes},
                   {"factors_reassemble", r.factors_reassemble}};
  j["notes"] = r.notes;
  j["ok"] = r.ok();
  return j;
}

PipelineReport report_from_json(const json& j) {
  PipelineReport r;
  r.q = j.at("q").get<std::uint32_t>();
  r.kind = parse_ovoid_kind(j.at("ovoid").get<std::string>());
  r.ovoid_param = j.at("ovoid_param").get<std::uint32_t>();
  for (const auto& t : j.at("timings")) r.timings.push_back({t.at("stage").get<std::string>(), t.at("seconds").get<double>()});
  const json& s = j.at("sizes");
  r.pg3_points = s.at("pg3_points").get<std::size_t>();
  r.pg3_lines = s.at("pg3_lines").get<std::size_t>();
  r.ovoid_size = s.at("ovoid").get<std::size_t>();
  r.tangents = s.at("tangents").get<std::size_t>();
  r.spread_size = s.at("spread").get<std::size_t>();
  r.arc_size = s.at("arc").get<std::size_t>();
  r.spread_cached = j.at("spread_cached").get<bool>();
  for (const auto& h : j.at("arc_histogram")) r.arc_histogram[h.at(0).get<int>()] = h.at(1).get<std::size_t>();
  r.epsilon = j.at("epsilon").get<Elem>();
  r.epsilon_candidates = j.at("epsilon_candidates").get<std::vector<Elem>>();
  r.arc_hash = j.at("arc_hash").get<std::string>();
  if (!j.at("min_degree").is_null()) r.min_degree = j.at("min_degree").get<int>();
  r.probes = probes_from_json(j.at("probes"));
  r.nullity = j.at("nullity").get<std::size_t>();
  r.polynomial = j.at("polynomial").get<std::string>();
  for (const auto& fe : j.at("factors"))
    r.factors.push_back({fe.at("form").get<std::string>(), fe.at("vertical").get<bool>(), fe.at("a").get<Elem>(),
                         fe.at("b").get<Elem>(), fe.at("multiplicity").get<int>()});
  r.residual_degree = j.at("residual").at("degree").get<int>();
  r.residual_zeros = j.at("residual").at("affine_zeros").get<std::size_t>();
  r.residual_on_arc = j.at("residual").at("on_arc").get<std::size_t>();
  const json& v = j.at("verdicts");
  r.ovoid_ok = v.at("ovoid").get<bool>();
  r.spread_regular = v.at("spread_regular").get<bool>();
  r.arc_maximal = v.at("maximal_arc").get<bool>();
  r.curve_vanishes = v.at("curve_vanishes").get<bool>();
  r.factors_reassemble = v.at("factors_reassemble").get<bool>();
  r.notes = j.at("notes").get<std::vector<std::string>>();
  return r;
}

std::string emit_report(const PipelineReport& r, ReportFormat format) {
  if (format == ReportFormat::Json) return report_to_json(r).dump(2) + "\n";

  std::shared_ptr<const Field> f;
  if (r.q >= 2 && std::has_single_bit(r.q)) f = FieldTower::build(std::countr_zero(r.q)).ext_ptr();
  auto el = [&](Elem e) { return f ? elem_string(e, *f) : std::to_string(e); };
  auto verdict = [](bool b) { return b ? "PASS" : "FAIL"; };

  std::ostringstream os;
  if (!r.ok()) os << "==================== FAIL ====================\n";
  os << "arcforge report: q = " << r.q << ", ovoid = " << to_string(r.kind) << " (parameter " << r.ovoid_param << ")\n";
  os << "\nstages\n";
  for (const auto& t : r.timings) os << "  " << std::left << std::setw(12) << t.stage << std::fixed << std::setprecision(3) << t.seconds << " s\n";
  os << "\nsizes\n";
  os << "  PG(3,q): " << r.pg3_points << " points, " << r.pg3_lines << " lines\n";
  os << "  ovoid: " << r.ovoid_size << " points, " << r.tangents << " tangent lines\n";
  os << "  spread: " << r.spread_size << " lines" << (r.spread_cached ? " (from cache)" : "") << "\n";
  os << "  arc: " << r.arc_size << " points, hash " << r.arc_hash << "\n";
  os << "  epsilon: " << el(r.epsilon) << " (candidates:";
  for (Elem e : r.epsilon_candidates) os << " " << el(e);
  os << ")\n";
  os << "  line intersections:";
  for (const auto& [k, c] : r.arc_histogram) os << " " << c << " lines meet in " << k << ";";
  os << "\n\ncurve\n";
  for (const auto& p : r.probes)
    os << "  degree " << p.degree << ": rank " << p.rank << " of " << p.monomials << " monomials\n";
  if (r.min_degree) {
    os << "  minimum degree " << *r.min_degree << ", nullity " << r.nullity << "\n";
    os << "  f = " << r.polynomial << "\n";
    os << "  linear factors (" << r.factors.size() << "):";
    for (const auto& fe : r.factors) {
      os << " (" << fe.form << ")";
      if (fe.multiplicity > 1) os << "^" << fe.multiplicity;
    }
    os << "\n  residual degree " << r.residual_degree << ": " << r.residual_zeros << " affine zeros, " << r.residual_on_arc
       << " on the arc\n";
  } else {
    os << "  no curve found within the degree limit\n";
  }
  os << "\nverdicts\n";
  os << "  ovoid              " << verdict(r.ovoid_ok) << "\n";
  os << "  spread regular     " << verdict(r.spread_regular) << "\n";
  os << "  maximal arc        " << verdict(r.arc_maximal) << "\n";
  os << "  curve vanishes     " << verdict(r.curve_vanishes) << "\n";
  os << "  factors reassemble " << verdict(r.factors_reassemble) << "\n";
  if (!r.notes.empty()) {
    os << "\nnotes\n";
    for (const auto& n : r.notes) os << "  - " << n << "\n";
  }
  os << "\nresult: " << verdict(r.ok()) << "\n";
  return os.str();
}

json read_json(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw std::runtime_error("cannot open " + p.string());
  try {
    return json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(p.string() + ": " + e.what());
  }
}

void write_json(const fs::path& p, const json& j) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << j.dump(2) << "\n";
}

}  // namespace arcforge
