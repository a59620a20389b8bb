#include <doctest.h>

#include "arcforge/ovoids.hpp"
#include "oracles.hpp"

using namespace arcforge;

namespace {

// No three points collinear, by 3x4 rank over the shift-and-reduce field.
bool no_three_collinear(const Ovoid& o, const Pg3Geometry& g) {
  const FieldTower& t = g.tower();
  const oracle::Binary f{t.m(), t.base().modulus()};
  std::vector<ProjPoint> pts;
  for (PointId p : o.points) pts.push_back(g.points().point_at(p));
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b)
      for (std::size_t c = b + 1; c < pts.size(); ++c) {
        std::vector<Elem> m;
        for (const ProjPoint* p : {&pts[a], &pts[b], &pts[c]}) m.insert(m.end(), p->begin(), p->end());
        if (oracle::rank(f, m, 3, 4) < 3) return false;
      }
  return true;
}

}  // namespace

TEST_CASE("ovoid kinds parse and print") {
  CHECK(parse_ovoid_kind("suzuki-tits") == OvoidKind::SuzukiTits);
  CHECK(parse_ovoid_kind("elliptic-quadric") == OvoidKind::EllipticQuadric);
  CHECK(to_string(OvoidKind::SuzukiTits) == "suzuki-tits");
  CHECK_THROWS_AS(parse_ovoid_kind("hyperbolic"), std::invalid_argument);
}

TEST_CASE("Suzuki-Tits ovoid at q = 8") {
  const FieldTower t = FieldTower::build(3);
  const Pg3Geometry g(t);
  const Ovoid o = suzuki_tits_ovoid(g);
  CHECK(o.param == 4);
  CHECK(o.points.size() == 65);
  CHECK(std::is_sorted(o.points.begin(), o.points.end()));
  CHECK(verify_ovoid(o.points, g).pass);
  CHECK(no_three_collinear(o, g));
  // the defining equation, recomputed with oracle arithmetic
  const oracle::Binary f{3, t.base().modulus()};
  for (PointId id : o.points) {
    const ProjPoint p = g.points().point_at(id);
    if (p[0] == 0) {
      CHECK(p == ProjPoint{0, 0, 0, 1});
      continue;
    }
    const Elem z = f.mul(p[1], p[2]) ^ oracle::pow(f, p[1], 6) ^ oracle::pow(f, p[2], 4);
    CHECK(p[3] == z);
  }
}

TEST_CASE("Suzuki-Tits needs an odd power of 2 of at least 8") {
  for (int m : {1, 2, 4}) {
    const Pg3Geometry g(FieldTower::build(m));
    CHECK_THROWS_AS(suzuki_tits_ovoid(g), std::invalid_argument);
  }
}

TEST_CASE("elliptic quadric ovoids") {
  for (int m : {2, 3}) {
    const FieldTower t = FieldTower::build(m);
    const Pg3Geometry g(t);
    const Ovoid o = elliptic_quadric_ovoid(g);
    CHECK(o.points.size() == t.q() * t.q() + 1);
    CHECK(t.base().trace(o.param) == 1);
    CHECK(verify_ovoid(o.points, g).pass);
    CHECK(no_three_collinear(o, g));
  }
  CHECK_THROWS_AS(elliptic_quadric_ovoid(Pg3Geometry(FieldTower::build(1))), std::invalid_argument);
}

TEST_CASE("line spectrum of an ovoid") {
  const FieldTower t = FieldTower::build(3);
  const Pg3Geometry g(t);
  for (OvoidKind k : {OvoidKind::SuzukiTits, OvoidKind::EllipticQuadric}) {
    const auto spectrum = line_spectrum(build_ovoid(k, g).points, g);
    CHECK(spectrum == std::map<int, std::size_t>{{0, 2080}, {1, 585}, {2, 2080}});
  }
}

TEST_CASE("verify_ovoid rejects collinear triples and wrong sizes") {
  const FieldTower t = FieldTower::build(3);
  const Pg3Geometry g(t);
  Ovoid o = build_ovoid(OvoidKind::EllipticQuadric, g);
  const LineId l = g.line_of(o.points[0], o.points[1]);
  PointId extra = 0;
  for (PointId p : g.line(l))
    if (!std::binary_search(o.points.begin(), o.points.end(), p)) {
      extra = p;
      break;
    }
  std::vector<PointId> bad = o.points;
  bad.back() = extra;
  const OvoidReport r = verify_ovoid(bad, g);
  CHECK_FALSE(r.pass);
  REQUIRE(r.collinear_witness.has_value());
  const auto w = *r.collinear_witness;
  CHECK(g.line_of(w[0], w[1]) == g.line_of(w[1], w[2]));

  std::vector<PointId> small(o.points.begin(), o.points.end() - 1);
  const OvoidReport s = verify_ovoid(small, g);
  CHECK_FALSE(s.pass);
  CHECK(s.size == 64);
  CHECK_FALSE(s.collinear_witness.has_value());
}

TEST_CASE("tangent complex: one plane pencil of q+1 lines per point") {
  const FieldTower t = FieldTower::build(3);
  const Pg3Geometry g(t);
  const oracle::Binary f{3, t.base().modulus()};
  for (OvoidKind k : {OvoidKind::SuzukiTits, OvoidKind::EllipticQuadric}) {
    const Ovoid o = build_ovoid(k, g);
    const TangentComplex tc = tangent_complex(o, g);
    CHECK(tc.lines.size() == 585);
    REQUIRE(tc.pencils.size() == 65);
    for (std::size_t i = 0; i < 65; ++i) {
      REQUIRE(tc.pencils[i].size() == 9);
      std::vector<Elem> m;
      std::size_t rows = 0;
      for (LineId l : tc.pencils[i]) {
        CHECK(g.on_line(o.points[i], l));
        for (PointId p : g.line(l)) {
          const ProjPoint c = g.points().point_at(p);
          m.insert(m.end(), c.begin(), c.end());
          ++rows;
        }
      }
      CHECK(oracle::rank(f, m, rows, 4) == 3);
    }
  }
}
