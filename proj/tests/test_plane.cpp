#include <doctest.h>

#include <set>

#include "arcforge/plane.hpp"
#include "oracles.hpp"

using namespace arcforge;

namespace {

struct Built {
  explicit Built(int m, OvoidKind k) : t(FieldTower::build(m)), g(t), ext(3, t.ext_ptr()), plane(2, t.ext_ptr()) {
    const Ovoid raw = build_ovoid(k, g);
    const auto s = find_tangent_spread(tangent_complex(raw, g), raw, g);
    REQUIRE(s.has_value());
    const CanonicalSpread canon = canonical_spread(g, ext);
    m_ = canonicalizing_collineation(*s, canon, g, ext);
    ovoid = raw;
    ovoid.points = apply_collineation(m_, g, raw.points);
    std::sort(ovoid.points.begin(), ovoid.points.end());
    spread = apply_collineation_lines(m_, g, s->lines);
    eps = find_epsilon(spread, g);
    REQUIRE_FALSE(eps.empty());
    arc = build_arc(ovoid, spread, eps.front(), g);
  }
  FieldTower t;
  Pg3Geometry g;
  PointTable ext;
  PointTable plane;
  Collineation4 m_;
  Ovoid ovoid;
  LineList spread;
  std::vector<Elem> eps;
  MaximalArc arc;
};

std::vector<std::array<Elem, 3>> raw(const MaximalArc& a) {
  std::vector<std::array<Elem, 3>> out;
  for (const ProjPoint& p : a.points) out.push_back({p[0], p[1], p[2]});
  return out;
}

}  // namespace

TEST_CASE("epsilon candidates lie outside GF(q)") {
  const Built b(3, OvoidKind::SuzukiTits);
  REQUIRE(b.eps.size() == 2);
  CHECK(std::is_sorted(b.eps.begin(), b.eps.end()));
  for (Elem e : b.eps) CHECK_FALSE(b.t.in_base(e));
  // the two candidates are the primitive cube roots of unity
  for (Elem e : b.eps) {
    CHECK(b.t.ext().pow(e, 3) == 1);
    CHECK(e != 1);
  }
  CHECK(b.t.ext().log(b.eps[0]) == 21);
  CHECK(b.t.ext().log(b.eps[1]) == 42);
}

TEST_CASE("theta is a bijection from AG(4,q) onto AG(2,q^2)") {
  for (int m : {2, 3}) {
    const Built b(m, OvoidKind::EllipticQuadric);
    const Elem q = b.t.q();
    for (Elem eps : b.eps) {
      std::vector<std::uint8_t> hit(b.plane.size(), 0);
      std::size_t n = 0;
      for (Elem x1 = 0; x1 < q; ++x1)
        for (Elem x2 = 0; x2 < q; ++x2)
          for (Elem y1 = 0; y1 < q; ++y1)
            for (Elem y2 = 0; y2 < q; ++y2) {
              const ProjPoint img = theta_map(b.t, ProjPoint{1, x1, x2, y1, y2}, eps);
              REQUIRE(img[0] == 1);
              const PointId id = b.plane.index_of(img);
              REQUIRE(hit[id] == 0);
              hit[id] = 1;
              ++n;
            }
      CHECK(n == std::size_t{q} * q * q * q);
    }
  }
}

TEST_CASE("theta collapses each spread line to one point at infinity") {
  const Built b(3, OvoidKind::SuzukiTits);
  std::set<PointId> images;
  for (LineId l : b.spread) {
    std::set<PointId> img;
    for (PointId p : b.g.line(l))
      img.insert(b.plane.index_of(theta_map(b.t, embed_in_pg4(b.g.points().point_at(p)), b.eps.front())));
    REQUIRE(img.size() == 1);
    CHECK(b.plane.point_at(*img.begin())[0] == 0);
    images.insert(*img.begin());
  }
  CHECK(images.size() == 65);
}

TEST_CASE("arc sizes q^3 - q^2 + q") {
  CHECK(Built(2, OvoidKind::EllipticQuadric).arc.points.size() == 52);
  CHECK(Built(3, OvoidKind::EllipticQuadric).arc.points.size() == 456);
  CHECK(Built(3, OvoidKind::SuzukiTits).arc.points.size() == 456);
}

TEST_CASE("the two verifiers and the brute-force histogram agree") {
  for (auto [m, k] : {std::pair{2, OvoidKind::EllipticQuadric}, std::pair{3, OvoidKind::SuzukiTits},
                      std::pair{3, OvoidKind::EllipticQuadric}}) {
    const Built b(m, k);
    const std::uint32_t n = b.t.q();
    const ArcVerification v = verify_maximal_arc(b.arc.points, b.plane, n);
    CHECK(v.is_maximal_arc());
    CHECK(v.lines == b.plane.size());
    CHECK(check_arc(b.arc.points, b.plane, n));
    const oracle::Quadratic f{{m, b.t.base().modulus()}, b.t.nu()};
    CHECK(oracle::line_histogram(f, raw(b.arc)) == v.histogram);
    for (const ProjPoint& p : b.arc.points) CHECK(p[0] == 1);
  }
  const Built b(3, OvoidKind::SuzukiTits);
  CHECK(verify_maximal_arc(b.arc.points, b.plane, 8).histogram == std::map<int, std::size_t>{{0, 456}, {8, 3705}});
}

TEST_CASE("moving one point breaks the arc") {
  const Built b(2, OvoidKind::EllipticQuadric);
  std::vector<ProjPoint> moved = b.arc.points;
  std::set<PointId> in;
  for (const ProjPoint& p : moved) in.insert(b.plane.index_of(p));
  for (PointId i = 0; i < b.plane.size(); ++i) {
    const ProjPoint p = b.plane.point_at(i);
    if (p[0] == 1 && !in.count(i)) {
      moved.front() = p;
      break;
    }
  }
  const ArcVerification v = verify_maximal_arc(moved, b.plane, 4);
  CHECK_FALSE(v.pass);
  const SecantCheck sc = check_secants(moved, b.plane, 4);
  CHECK_FALSE(sc.ok);
  CHECK(sc.bad_line.has_value());
  CHECK_FALSE(check_arc(moved, b.plane, 4));
}

TEST_CASE("an empty set passes vacuously and is flagged") {
  const FieldTower t = FieldTower::build(2);
  const PointTable plane(2, t.ext_ptr());
  const ArcVerification v = verify_maximal_arc({}, plane, 4);
  CHECK(v.pass);
  CHECK(v.degenerate);
  CHECK_FALSE(v.is_maximal_arc());
  CHECK(v.histogram == std::map<int, std::size_t>{{0, 273}});
}

TEST_CASE("build_arc rejects a spread that is not tangent") {
  const FieldTower t = FieldTower::build(2);
  const Pg3Geometry g(t);
  const Ovoid o = build_ovoid(OvoidKind::EllipticQuadric, g);
  const std::vector<LineId> secant{g.line_of(o.points[0], o.points[1])};
  CHECK_THROWS_AS(build_arc(o, secant, 0, g), std::invalid_argument);
}
