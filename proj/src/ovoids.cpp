#include "arcforge/ovoids.hpp"

#include <algorithm>
#include <stdexcept>

#include "arcforge/kernels.hpp"

namespace arcforge {

namespace {

std::vector<std::uint8_t> membership(std::span<const PointId> points, const Pg3Geometry& g) {
  std::vector<std::uint8_t> m(g.num_points(), 0);
  for (PointId p : points) m.at(p) = 1;
  return m;
}

}  // namespace

std::string_view to_string(OvoidKind k) {
  return k == OvoidKind::SuzukiTits ? "suzuki-tits" : "elliptic-quadric";
}

OvoidKind parse_ovoid_kind(std::string_view s) {
  if (s == "suzuki-tits") return OvoidKind::SuzukiTits;
  if (s == "elliptic-quadric") return OvoidKind::EllipticQuadric;
  throw std::invalid_argument("unknown ovoid kind '" + std::string(s) + "'");
}

Ovoid suzuki_tits_ovoid(const Pg3Geometry& g) {
  const int m = g.tower().m();
  if (m < 3 || m % 2 == 0)
    throw std::invalid_argument("Suzuki-Tits ovoid needs q = 2^(2t+1) with t >= 1, got q = " +
                                std::to_string(g.tower().q()));
  const int t = (m - 1) / 2;
  const std::uint64_t sigma = std::uint64_t{1} << (t + 1);
  const Field& f = g.tower().base();
  const auto q = static_cast<Elem>(g.tower().q());
  Ovoid o{OvoidKind::SuzukiTits, {}, static_cast<std::uint32_t>(sigma)};
  o.points.push_back(g.points().index_of(ProjPoint{0, 0, 0, 1}));
  for (Elem s = 0; s < q; ++s) {
    for (Elem u = 0; u < q; ++u) {
      const Elem z = f.mul(s, u) ^ f.pow(s, sigma + 2) ^ f.pow(u, sigma);
      o.points.push_back(g.points().index_of(ProjPoint{1, s, u, z}));
    }
  }
  std::sort(o.points.begin(), o.points.end());
  return o;
}

Ovoid elliptic_quadric_ovoid(const Pg3Geometry& g) {
  if (g.tower().m() < 2) throw std::invalid_argument("elliptic quadric ovoid needs q >= 4");
  const Field& f = g.tower().base();
  Elem delta = 1;
  while (delta < f.order() && f.trace(delta) != 1) ++delta;
  if (delta >= f.order()) throw std::logic_error("no trace-1 element in GF(q)");
  Ovoid o{OvoidKind::EllipticQuadric, {}, delta};
  for (PointId i = 0; i < g.num_points(); ++i) {
    const ProjPoint p = g.points().point_at(i);
    const Elem v = f.mul(p[0], p[1]) ^ f.square(p[2]) ^ f.mul(p[2], p[3]) ^ f.mul(delta, f.square(p[3]));
    if (v == 0) o.points.push_back(i);
  }
  return o;
}

Ovoid build_ovoid(OvoidKind kind, const Pg3Geometry& g) {
  return kind == OvoidKind::SuzukiTits ? suzuki_tits_ovoid(g) : elliptic_quadric_ovoid(g);
}

OvoidReport verify_ovoid(std::span<const PointId> points, const Pg3Geometry& g) {
  OvoidReport r;
  std::vector<PointId> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  r.size = sorted.size();
  const std::size_t q = g.tower().q();
  const auto member = membership(sorted, g);
  const auto counts = kernels::count_members(g.flat_lines(), g.line_size(), member);
  for (LineId l = 0; l < counts.size(); ++l) {
    if (counts[l] < 3) continue;
    std::array<PointId, 3> w{};
    std::size_t k = 0;
    for (PointId p : g.line(l))
      if (member[p] && k < 3) w[k++] = p;
    r.collinear_witness = w;
    r.reason = "line " + std::to_string(l) + " meets the set in " + std::to_string(counts[l]) + " points";
    return r;
  }
  if (r.size != q * q + 1) {
    r.reason = "size " + std::to_string(r.size) + " differs from q^2+1 = " + std::to_string(q * q + 1);
    return r;
  }
  r.pass = true;
  return r;
}

std::map<int, std::size_t> line_spectrum(std::span<const PointId> points, const Pg3Geometry& g) {
  const auto counts = kernels::count_members(g.flat_lines(), g.line_size(), membership(points, g));
  std::map<int, std::size_t> spectrum;
  for (int c : counts) ++spectrum[c];
  return spectrum;
}

TangentComplex tangent_complex(const Ovoid& o, const Pg3Geometry& g) {
  const auto member = membership(o.points, g);
  const auto counts = kernels::count_members(g.flat_lines(), g.line_size(), member);
  TangentComplex tc;
  for (LineId l = 0; l < counts.size(); ++l)
    if (counts[l] == 1) tc.lines.push_back(l);
  tc.pencils.resize(o.points.size());
  for (LineId l : tc.lines) {
    for (PointId p : g.line(l)) {
      if (!member[p]) continue;
      const auto k = static_cast<std::size_t>(std::lower_bound(o.points.begin(), o.points.end(), p) - o.points.begin());
      tc.pencils[k].push_back(l);
    }
  }
  return tc;
}

}  // namespace arcforge
