#include "arcforge/plane.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "arcforge/kernels.hpp"

namespace arcforge {

std::vector<Elem> find_epsilon(std::span<const LineId> spread, const Pg3Geometry& g) {
  const FieldTower& t = g.tower();
  const auto ref = reference_lines(g);
  const LineList r1 = regulus(ref[0], ref[1], ref[2], g);
  LineList rest;
  std::set_difference(spread.begin(), spread.end(), r1.begin(), r1.end(), std::back_inserter(rest));
  if (rest.empty()) return {};
  std::vector<ProjPoint> pts;
  for (PointId p : g.line(rest.front())) pts.push_back(g.points().point_at(p));

  const Field& f = t.ext();
  std::vector<Elem> out;
  for (Elem eps = 0; eps < f.order(); ++eps) {
    if (t.in_base(eps)) continue;
    auto image = [&](const ProjPoint& p) {
      return std::pair{p[0] ^ f.mul(p[1], eps), f.mul(p[2], eps) ^ p[3]};
    };
    const auto [u0, v0] = image(pts[0]);
    const bool constant = std::all_of(pts.begin() + 1, pts.end(), [&](const ProjPoint& p) {
      const auto [u, v] = image(p);
      return f.mul(u0, v) == f.mul(u, v0);
    });
    if (constant) out.push_back(eps);
  }
  return out;
}

ProjPoint theta_map(const FieldTower& t, const ProjPoint& p, Elem eps) {
  if (p.size() != 5) throw std::invalid_argument("theta_map expects a point of PG(4, q)");
  const Field& f = t.ext();
  return normalized(f, ProjPoint{p[0], p[1] ^ f.mul(eps, p[2]), f.mul(eps, p[3]) ^ p[4]});
}

MaximalArc build_arc(const Ovoid& o, std::span<const LineId> spread, Elem eps, const Pg3Geometry& g) {
  const FieldTower& t = g.tower();
  std::vector<std::uint8_t> on_ovoid(g.num_points(), 0);
  for (PointId p : o.points) on_ovoid.at(p) = 1;
  for (LineId l : spread) {
    const auto pts = g.line(l);
    if (std::count_if(pts.begin(), pts.end(), [&](PointId p) { return on_ovoid[p] != 0; }) != 1)
      throw std::invalid_argument("spread line " + std::to_string(l) + " is not tangent to the ovoid");
  }
  const PointTable pg4(4, t.base_ptr());
  const ProjPoint vertex{1, 0, 0, 0, 0};
  std::vector<PointId> embedded;
  std::vector<PointId> cone;
  for (PointId p : o.points) {
    const ProjPoint e = embed_in_pg4(g.points().point_at(p));
    embedded.push_back(pg4.index_of(e));
    const LineSet l = line_through(pg4, e, vertex);
    cone.insert(cone.end(), l.begin(), l.end());
  }
  std::sort(cone.begin(), cone.end());
  cone.erase(std::unique(cone.begin(), cone.end()), cone.end());
  std::sort(embedded.begin(), embedded.end());
  std::vector<PointId> affine;
  std::set_difference(cone.begin(), cone.end(), embedded.begin(), embedded.end(), std::back_inserter(affine));

  const PointTable plane(2, t.ext_ptr());
  std::vector<PointId> ids;
  ids.reserve(affine.size());
  for (PointId p : affine) ids.push_back(plane.index_of(theta_map(t, pg4.point_at(p), eps)));
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  MaximalArc arc;
  arc.q = t.q();
  arc.degree = t.q();
  arc.kind = o.kind;
  arc.epsilon = eps;
  for (PointId id : ids) arc.points.push_back(plane.point_at(id));
  return arc;
}

SecantCheck check_secants(std::span<const ProjPoint> x, const PointTable& plane, std::uint32_t n) {
  SecantCheck res;
  const std::size_t k = x.size();
  if (k < 2) return res;
  std::vector<PointId> ids;
  for (const ProjPoint& p : x) ids.push_back(plane.locate(p));
  std::sort(ids.begin(), ids.end());
  std::unordered_map<PointId, std::size_t> pos;
  for (std::size_t i = 0; i < k; ++i) pos.emplace(ids[i], i);

  // covered[i * k + j]: the pair already lies on a recorded secant
  std::vector<std::uint8_t> covered(k * k, 0);
  std::vector<std::size_t> on;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      if (covered[i * k + j]) continue;
      LineSet l = line_through(plane, plane.point_at(ids[i]), plane.point_at(ids[j]));
      on.clear();
      for (PointId p : l)
        if (auto it = pos.find(p); it != pos.end()) on.push_back(it->second);
      if (on.size() != n) {
        res.bad_line = std::move(l);
        return res;
      }
      for (std::size_t a : on)
        for (std::size_t b : on) covered[a * k + b] = 1;
      res.secants.push_back(std::move(l));
    }
  res.ok = true;
  return res;
}

bool check_arc(std::span<const ProjPoint> x, const PointTable& plane, std::uint32_t n) {
  const SecantCheck sc = check_secants(x, plane, n);
  if (!sc.ok) return false;
  std::unordered_map<PointId, std::size_t> through;
  for (const ProjPoint& p : x) through[plane.locate(p)] = 0;
  for (const LineSet& l : sc.secants)
    for (PointId p : l)
      if (auto it = through.find(p); it != through.end()) ++it->second;
  const std::uint64_t need = plane.field().order() + 1;
  return std::all_of(through.begin(), through.end(), [&](const auto& kv) { return kv.second >= need; });
}

ArcVerification verify_maximal_arc(std::span<const ProjPoint> x, const PointTable& plane, std::uint32_t n) {
  if (plane.dimension() != 2) throw std::invalid_argument("verify_maximal_arc needs a plane table");
  // lines of PG(2, F) are the normalized dual coordinate vectors
  std::vector<Elem> lines3, points3;
  lines3.reserve(3 * plane.size());
  for (PointId i = 0; i < plane.size(); ++i) {
    const ProjPoint l = plane.point_at(i);
    lines3.insert(lines3.end(), l.begin(), l.end());
  }
  for (const ProjPoint& p : x) {
    const ProjPoint np = normalized(plane.field(), p);
    points3.insert(points3.end(), np.begin(), np.end());
  }
  const auto counts = kernels::incidence_counts(plane.field(), lines3, points3);
  ArcVerification v;
  v.lines = counts.size();
  for (int c : counts) ++v.histogram[c];
  v.degenerate = x.empty();
  v.pass = std::all_of(v.histogram.begin(), v.histogram.end(),
                       [&](const auto& kv) { return kv.first == 0 || kv.first == static_cast<int>(n); });
  return v;
}

}  // namespace arcforge
