#include <doctest.h>

#include <random>

#include "arcforge/parallel.hpp"
#include "arcforge/spreads.hpp"
#include "oracles.hpp"

using namespace arcforge;

namespace {

struct Fixture {
  explicit Fixture(int m) : t(FieldTower::build(m)), g(t), ext(3, t.ext_ptr()) {}
  FieldTower t;
  Pg3Geometry g;
  PointTable ext;
};

std::array<LineId, 3> random_skew_triple(const Pg3Geometry& g, std::mt19937_64& rng) {
  std::uniform_int_distribution<LineId> pick(0, static_cast<LineId>(g.num_lines() - 1));
  for (;;) {
    const LineId a = pick(rng), b = pick(rng), c = pick(rng);
    if (a != b && a != c && b != c && !g.meet(a, b) && !g.meet(a, c) && !g.meet(b, c)) return {a, b, c};
  }
}

LineId line_off(const LineList& r, const Pg3Geometry& g, std::mt19937_64& rng) {
  std::vector<std::uint8_t> used(g.num_points(), 0);
  for (LineId l : r)
    for (PointId p : g.line(l)) used[p] = 1;
  std::uniform_int_distribution<LineId> pick(0, static_cast<LineId>(g.num_lines() - 1));
  for (;;) {
    const LineId d = pick(rng);
    const auto pts = g.line(d);
    if (std::none_of(pts.begin(), pts.end(), [&](PointId p) { return used[p] != 0; })) return d;
  }
}

oracle::Line4 as_coords(LineId l, const Pg3Geometry& g) {
  oracle::Line4 out;
  for (PointId p : g.line(l)) {
    const ProjPoint c = g.points().point_at(p);
    out.push_back({c[0], c[1], c[2], c[3]});
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("regulus axioms") {
  Fixture fx(3);
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 10; ++trial) {
    const auto [a, b, c] = random_skew_triple(fx.g, rng);
    const LineList r = regulus(a, b, c, fx.g);
    const LineList o = opposite_regulus(a, b, c, fx.g);
    CHECK(r.size() == 9);
    CHECK(o.size() == 9);
    CHECK(std::is_sorted(r.begin(), r.end()));
    for (LineId l : {a, b, c}) CHECK(std::binary_search(r.begin(), r.end(), l));
    for (LineId x : r)
      for (LineId y : o) CHECK(fx.g.meet(x, y));
    CHECK(opposite_regulus(o[0], o[1], o[2], fx.g) == r);
    CHECK(regulus(b, c, a, fx.g) == r);
    CHECK(regulus(c, a, b, fx.g) == r);
    CHECK(regulus(b, a, c, fx.g) == r);
    CHECK(regulus(a, c, b, fx.g) == r);
    CHECK(regulus(c, b, a, fx.g) == r);
    CHECK(regulus(r[3], r[5], r[8], fx.g) == r);
  }
}

TEST_CASE("regulus agrees with brute-force transversals") {
  Fixture fx(2);
  const auto all = oracle::lines_pg3(oracle::Binary{2, fx.t.base().modulus()});
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 5; ++trial) {
    const auto [a, b, c] = random_skew_triple(fx.g, rng);
    std::vector<oracle::Line4> ours;
    for (LineId l : regulus(a, b, c, fx.g)) ours.push_back(as_coords(l, fx.g));
    std::sort(ours.begin(), ours.end());
    CHECK(ours == oracle::regulus(all, as_coords(a, fx.g), as_coords(b, fx.g), as_coords(c, fx.g)));
  }
}

TEST_CASE("meeting lines are rejected") {
  Fixture fx(2);
  const LineId a = fx.g.lines_through(0)[0], b = fx.g.lines_through(0)[1];
  LineId c = 0;
  while (fx.g.meet(c, a) || fx.g.meet(c, b)) ++c;
  CHECK_THROWS_AS(regulus(a, b, c, fx.g), DegenerateLines);
  CHECK_THROWS_AS(opposite_regulus(a, a, c, fx.g), DegenerateLines);
  std::vector<LineId> gens{a, b, c};
  CHECK_THROWS_AS(regular_closure(gens, fx.g), DegenerateLines);
}

TEST_CASE("quad_span size and containment in the closure") {
  for (int m : {2, 3}) {
    Fixture fx(m);
    const std::size_t q = fx.t.q();
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 5; ++trial) {
      const auto [a, b, c] = random_skew_triple(fx.g, rng);
      const LineId d = line_off(regulus(a, b, c, fx.g), fx.g, rng);
      const LineList s = quad_span(a, b, c, d, fx.g);
      CHECK(s.size() == q * q - q + 2);
      const std::vector<LineId> gens{a, b, c, d};
      const ClosureResult cl = regular_closure(gens, fx.g);
      REQUIRE(cl.ok);
      CHECK(std::includes(cl.lines.begin(), cl.lines.end(), s.begin(), s.end()));
    }
  }
}

TEST_CASE("regular closure of four generic lines is a unique regular spread") {
  for (int m : {2, 3}) {
    Fixture fx(m);
    std::mt19937_64 rng(4 + m);
    for (int trial = 0; trial < 6; ++trial) {
      const auto [a, b, c] = random_skew_triple(fx.g, rng);
      const LineId d = line_off(regulus(a, b, c, fx.g), fx.g, rng);
      const std::vector<LineId> gens{a, b, c, d};
      ClosureResult one, four;
      {
        ScopedWorkers w(1);
        one = regular_closure(gens, fx.g);
      }
      {
        ScopedWorkers w(4);
        four = regular_closure(std::vector<LineId>{d, c, b, a}, fx.g);
      }
      REQUIRE(one.ok);
      CHECK(one.lines.size() == fx.t.q2() + 1);
      CHECK(is_partition(one.lines, fx.g));
      CHECK(is_regular_spread(one.lines, fx.g));
      CHECK(one.lines == four.lines);
      CHECK(reference::regular_closure(gens, fx.g).lines == one.lines);
    }
  }
}

TEST_CASE("closure reports a conflict when the generators force meeting lines") {
  Fixture fx(2);
  std::mt19937_64 rng(5);
  const auto [a, b, c] = random_skew_triple(fx.g, rng);
  const LineList o = opposite_regulus(a, b, c, fx.g);
  const LineList r = regulus(a, b, c, fx.g);
  // a line skew to a, b, c but meeting other lines of their regulus
  LineId d = 0;
  bool found = false;
  for (LineId l = 0; l < fx.g.num_lines() && !found; ++l) {
    if (std::binary_search(r.begin(), r.end(), l) || std::binary_search(o.begin(), o.end(), l)) continue;
    if (fx.g.meet(l, a) || fx.g.meet(l, b) || fx.g.meet(l, c)) continue;
    if (std::any_of(r.begin(), r.end(), [&](LineId x) { return fx.g.meet(l, x); })) {
      d = l;
      found = true;
    }
  }
  REQUIRE(found);
  const ClosureResult cl = regular_closure(std::vector<LineId>{a, b, c, d}, fx.g);
  CHECK_FALSE(cl.ok);
  REQUIRE(cl.conflict.has_value());
  CHECK(fx.g.meet(cl.conflict->first, cl.conflict->second));
}

TEST_CASE("canonical spread, carrier and reconstruction") {
  for (int m : {2, 3}) {
    Fixture fx(m);
    const CanonicalSpread c = canonical_spread(fx.g, fx.ext);
    CHECK(c.spread.lines.size() == fx.t.q2() + 1);
    CHECK(c.spread.regular);
    CHECK(is_regular_spread(c.spread.lines, fx.g));
    const auto ref = reference_lines(fx.g);
    CHECK(ref == c.generators);
    for (LineId l : ref) CHECK(std::binary_search(c.spread.lines.begin(), c.spread.lines.end(), l));
    CHECK(c.carrier.size() == fx.t.q2() + 1);
    for (PointId p : c.carrier) CHECK_FALSE(is_rational(fx.t, fx.ext.point_at(p)));
    CHECK(spread_from_carrier(c.carrier, fx.g, fx.ext) == c.spread.lines);
  }
}

TEST_CASE("a Hall spread partitions PG(3,q) but is not regular") {
  Fixture fx(3);
  const CanonicalSpread c = canonical_spread(fx.g, fx.ext);
  const auto& s = c.spread.lines;
  const LineList r = regulus(s[0], s[1], s[2], fx.g);
  REQUIRE(std::includes(s.begin(), s.end(), r.begin(), r.end()));
  LineList hall;
  std::set_difference(s.begin(), s.end(), r.begin(), r.end(), std::back_inserter(hall));
  const LineList o = opposite_regulus(s[0], s[1], s[2], fx.g);
  hall.insert(hall.end(), o.begin(), o.end());
  std::sort(hall.begin(), hall.end());
  CHECK(hall.size() == 65);
  CHECK(is_partition(hall, fx.g));
  CHECK_FALSE(is_regular_spread(hall, fx.g));
  CHECK_FALSE(carrier_line(hall, fx.g, fx.ext).has_value());
}

TEST_CASE("is_regular_spread requires a partition") {
  Fixture fx(2);
  const LineList some{0, 1, 2};
  CHECK_THROWS_AS(is_regular_spread(some, fx.g), std::invalid_argument);
}

TEST_CASE("tangent spreads for both ovoids at q = 8") {
  Fixture fx(3);
  const CanonicalSpread canon = canonical_spread(fx.g, fx.ext);
  for (OvoidKind k : {OvoidKind::SuzukiTits, OvoidKind::EllipticQuadric}) {
    const Ovoid o = build_ovoid(k, fx.g);
    const TangentComplex tc = tangent_complex(o, fx.g);
    const auto s = find_tangent_spread(tc, o, fx.g);
    REQUIRE(s.has_value());
    CHECK(s->regular);
    CHECK(s->lines.size() == 65);
    CHECK(is_partition(s->lines, fx.g));
    CHECK(std::includes(tc.lines.begin(), tc.lines.end(), s->lines.begin(), s->lines.end()));
    const auto carrier = carrier_line(s->lines, fx.g, fx.ext);
    REQUIRE(carrier.has_value());
    CHECK(spread_from_carrier(*carrier, fx.g, fx.ext) == s->lines);

    const Collineation4 mtx = canonicalizing_collineation(*s, canon, fx.g, fx.ext);
    CHECK(is_invertible(mtx, fx.t.base()));
    for (Elem e : mtx.a) CHECK(fx.t.in_base(e));
    CHECK(apply_collineation_lines(mtx, fx.g, s->lines) == canon.spread.lines);
    auto image = apply_collineation(mtx, fx.g, o.points);
    std::sort(image.begin(), image.end());
    CHECK(image.size() == 65);
    CHECK(std::adjacent_find(image.begin(), image.end()) == image.end());
    CHECK(verify_ovoid(image, fx.g).pass);
  }
}

TEST_CASE("collineations") {
  Fixture fx(2);
  const Collineation4 id = Collineation4::identity();
  CHECK(is_invertible(id, fx.t.base()));
  for (PointId p = 0; p < fx.g.num_points(); ++p) CHECK(apply_collineation(id, fx.g, p) == p);
  CHECK_FALSE(is_invertible(Collineation4{}, fx.t.base()));
  Collineation4 swap{};
  swap.at(0, 1) = swap.at(1, 0) = swap.at(2, 3) = swap.at(3, 2) = 1;
  for (LineId l = 0; l < fx.g.num_lines(); l += 13) {
    const LineId img = apply_collineation_line(swap, fx.g, l);
    CHECK(apply_collineation_line(swap, fx.g, img) == l);
  }
}
