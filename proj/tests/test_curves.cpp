#include <doctest.h>

#include <random>
#include <set>

#include "arcforge/curves.hpp"
#include "arcforge/pipeline.hpp"
#include "oracles.hpp"

using namespace arcforge;

namespace {

oracle::Quadratic oracle_field(const FieldTower& t) { return {{t.m(), t.base().modulus()}, t.nu()}; }

MaximalArc arc_for(const Workspace& w, OvoidKind k) {
  PipelineConfig cfg;
  cfg.q = w.tower.q();
  cfg.kind = k;
  PipelineReport r;
  return construct_arc(cfg, w, r);
}

BivariatePoly lin(Elem cx, Elem cy, Elem c0) {
  BivariatePoly p;
  p.add_term({1, 0}, cx);
  p.add_term({0, 1}, cy);
  p.add_term({0, 0}, c0);
  return p;
}

std::vector<std::array<Elem, 3>> raw_terms(const BivariatePoly& p) {
  std::vector<std::array<Elem, 3>> out;
  for (const auto& [m, c] : p.terms()) out.push_back({static_cast<Elem>(m.x), static_cast<Elem>(m.y), c});
  return out;
}

}  // namespace

TEST_CASE("monomial enumeration") {
  for (int i = 0; i <= 30; ++i) CHECK(monomials_upto(i).size() == static_cast<std::size_t>((i + 1) * (i + 2) / 2));
  const auto m2 = monomials_upto(2);
  const std::vector<Monomial> want{{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {2, 0}};
  CHECK(m2 == want);
  CHECK(monomials_upto(22).size() == 276);
  CHECK_THROWS(monomials_upto(-1));
  CHECK(Monomial{0, 3} < Monomial{1, 2});
  CHECK(Monomial{2, 0} < Monomial{0, 3});
}

TEST_CASE("polynomial arithmetic and printing") {
  const FieldTower t = FieldTower::build(3);
  const Field& f = t.ext();
  BivariatePoly p;
  CHECK(p.is_zero());
  CHECK(p.degree() == -1);
  CHECK(to_string(p, f) == "0");
  p.add_term({2, 1}, 1);
  p.add_term({1, 0}, f.pow(f.generator(), 5));
  p.add_term({0, 0}, 1);
  CHECK(p.degree() == 3);
  CHECK(to_string(p, f) == "x^2*y + g^5*x + 1");
  p.add_term({1, 0}, f.pow(f.generator(), 5));
  CHECK(p.coeff({1, 0}) == 0);
  CHECK(p.terms().size() == 2);
  const BivariatePoly x = lin(1, 0, 0), y = lin(0, 1, 0);
  const BivariatePoly xy = multiply(x, y, f);
  CHECK(to_string(xy, f) == "x*y");
  CHECK(multiply(lin(1, 0, 1), lin(1, 0, 1), f) == [&] {
    BivariatePoly s;
    s.add_term({2, 0}, 1);
    s.add_term({0, 0}, 1);
    return s;
  }());
  CHECK_THROWS(p.add_term({-1, 0}, 1));
}

TEST_CASE("evaluation matrix matches naive evaluation") {
  const FieldTower t = FieldTower::build(3);
  const auto of = oracle_field(t);
  std::mt19937 rng(9);
  std::uniform_int_distribution<Elem> d(0, 63);
  std::vector<ProjPoint> pts;
  for (int k = 0; k < 40; ++k) pts.push_back(ProjPoint{1, d(rng), d(rng)});
  const Matrix m = eval_matrix(pts, 6, t.ext());
  const auto mons = monomials_upto(6);
  REQUIRE(m.cols() == mons.size());
  for (std::size_t r = 0; r < pts.size(); ++r)
    for (std::size_t c = 0; c < mons.size(); ++c)
      CHECK(m.at(r, c) == of.mul(oracle::pow(of, pts[r][1], mons[c].x), oracle::pow(of, pts[r][2], mons[c].y)));
  std::vector<ProjPoint> bad{ProjPoint{0, 1, 2}};
  CHECK_THROWS_AS(eval_matrix(bad, 2, t.ext()), std::invalid_argument);
}

TEST_CASE("rank agrees with fraction-free elimination") {
  const FieldTower t = FieldTower::build(3);
  const auto of = oracle_field(t);
  std::mt19937 rng(10);
  std::uniform_int_distribution<Elem> d(0, 63);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t rows = 1 + rng() % 30, cols = 1 + rng() % 30;
    Matrix m(rows, cols);
    // low-rank products mixed with sparse noise
    const std::size_t k = 1 + rng() % std::min(rows, cols);
    std::vector<Elem> a(rows * k), b(k * cols);
    for (Elem& e : a) e = d(rng);
    for (Elem& e : b) e = d(rng);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) {
        Elem s = 0;
        for (std::size_t j = 0; j < k; ++j) s ^= t.ext().mul(a[r * k + j], b[j * cols + c]);
        m.at(r, c) = s;
      }
    const std::vector<Elem> data(m.data().begin(), m.data().end());
    CHECK(matrix_rank(m, t.ext()) == oracle::rank(of, data, rows, cols));
  }
  CHECK(matrix_rank(Matrix::identity(7), t.ext()) == 7);
  CHECK(matrix_rank(Matrix(5, 4), t.ext()) == 0);
}

TEST_CASE("nullspace vectors") {
  const FieldTower t = FieldTower::build(3);
  const Field& f = t.ext();
  const Nullspace z = nullspace_vector(Matrix(3, 5), f);
  CHECK(z.nullity == 5);
  CHECK(z.vector == std::vector<Elem>{1, 0, 0, 0, 0});
  CHECK_THROWS_AS(nullspace_vector(Matrix::identity(4), f), std::invalid_argument);
  std::mt19937 rng(11);
  std::uniform_int_distribution<Elem> d(0, 63);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t rows = 1 + rng() % 20, cols = rows + 1 + rng() % 5;
    Matrix m(rows, cols);
    for (Elem& e : m.data()) e = d(rng);
    const Nullspace ns = nullspace_vector(m, f);
    CHECK(ns.rank + ns.nullity == cols);
    CHECK(std::any_of(ns.vector.begin(), ns.vector.end(), [](Elem e) { return e != 0; }));
    for (std::size_t r = 0; r < rows; ++r) {
      Elem s = 0;
      for (std::size_t c = 0; c < cols; ++c) s ^= f.mul(m.at(r, c), ns.vector[c]);
      CHECK(s == 0);
    }
  }
}

TEST_CASE("coefficient vectors") {
  const std::vector<Elem> zero(10, 0);
  CHECK(vector_to_poly(zero, 3).is_zero());
  CHECK_THROWS_AS(vector_to_poly(std::vector<Elem>(9, 1), 3), std::invalid_argument);
  std::mt19937 rng(12);
  for (int i = 0; i <= 8; ++i) {
    std::vector<Elem> v(monomials_upto(i).size());
    for (Elem& e : v) e = rng() % 64;
    CHECK(poly_to_vector(vector_to_poly(v, i), i) == v);
  }
  BivariatePoly p;
  p.add_term({3, 3}, 1);
  CHECK_THROWS(poly_to_vector(p, 5));
}

TEST_CASE("curve points") {
  const FieldTower t = FieldTower::build(3);
  const Field& f = t.ext();
  const CurvePoints line = curve_points(lin(1, 0, 0), f);
  CHECK(line.zeros.size() == 64);
  for (const auto& [x, y] : line.zeros) CHECK(x == 0);
  CHECK_THROWS_AS(curve_points(BivariatePoly{}, f), std::invalid_argument);
  const std::vector<ProjPoint> set{ProjPoint{1, 0, 5}, ProjPoint{1, 3, 5}, ProjPoint{0, 1, 0}};
  CHECK(curve_points(lin(1, 0, 0), f, set).on_set == 1);
}

TEST_CASE("min degree by bisection equals a linear scan on small point sets") {
  const FieldTower t = FieldTower::build(3);
  const auto of = oracle_field(t);
  std::mt19937 rng(13);
  std::uniform_int_distribution<Elem> d(0, 63);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng() % 30;
    std::set<std::pair<Elem, Elem>> s;
    while (s.size() < n) s.emplace(d(rng), d(rng));
    const std::vector<std::pair<Elem, Elem>> pts(s.begin(), s.end());
    std::vector<ProjPoint> pp;
    for (const auto& [x, y] : pts) pp.push_back(ProjPoint{1, x, y});
    const MinDegree md = min_cover_degree(pp, 6, t.ext());
    const int scan = oracle::min_degree_scan(of, pts, 6);
    if (scan < 0) CHECK_FALSE(md.degree.has_value());
    else CHECK(md.degree == scan);
  }
}

TEST_CASE("min degree needs a positive bound") {
  const FieldTower t = FieldTower::build(2);
  CHECK_THROWS_AS(min_cover_degree({}, 0, t.ext()), std::invalid_argument);
}

TEST_CASE("q = 4 elliptic arc: degree 7, curve vanishes on the arc, monotone rank gap") {
  const Workspace w(2);
  const MaximalArc arc = arc_for(w, OvoidKind::EllipticQuadric);
  REQUIRE(arc.points.size() == 52);
  const Field& f = w.tower.ext();
  const MinDegree md = min_cover_degree(arc.points, 16, f);
  CHECK(md.degree == 7);
  const Nullspace ns = nullspace_vector(eval_matrix(arc.points, 7, f), f);
  CHECK(ns.nullity == 2);
  const BivariatePoly p = vector_to_poly(ns.vector, 7);
  CHECK(p.degree() == 7);
  const auto of = oracle_field(w.tower);
  for (const ProjPoint& pt : arc.points) CHECK(oracle::evaluate(of, raw_terms(p), pt[1], pt[2]) == 0);
  long prev = 1;
  for (int i = 1; i <= 16; ++i) {
    const Matrix m = eval_matrix(arc.points, i, f);
    const long xi = static_cast<long>(matrix_rank(m, f)) - static_cast<long>(m.cols());
    CHECK(xi <= prev);
    prev = xi;
  }
}

TEST_CASE("linear factor extraction") {
  const FieldTower t = FieldTower::build(3);
  const Field& f = t.ext();
  const BivariatePoly x = lin(1, 0, 0), y = lin(0, 1, 0), xy1 = lin(1, 1, 0);
  const LinearSplit s = extract_linear_factors(multiply(multiply(x, y, f), xy1, f), f);
  REQUIRE(s.factors.size() == 3);
  CHECK(s.residual == lin(0, 0, 1));
  std::set<std::tuple<bool, Elem, Elem>> got;
  for (const auto& lf : s.factors) {
    CHECK(lf.multiplicity == 1);
    got.emplace(lf.form.vertical, lf.form.a, lf.form.b);
  }
  CHECK(got == std::set<std::tuple<bool, Elem, Elem>>{{false, 0, 0}, {false, 1, 0}, {true, 0, 0}});
  // y-forms come before x-forms
  CHECK(s.factors.back().form.vertical);

  BivariatePoly conic;
  conic.add_term({2, 0}, 1);
  conic.add_term({0, 1}, 1);
  const LinearSplit c = extract_linear_factors(conic, f);
  CHECK(c.factors.empty());
  CHECK(c.residual == conic);

  const BivariatePoly xp1 = lin(1, 0, 1);
  const BivariatePoly sq = multiply(multiply(xp1, xp1, f), conic, f);
  const LinearSplit m = extract_linear_factors(sq, f);
  REQUIRE(m.factors.size() == 1);
  CHECK(m.factors[0].form == LinearForm{true, 0, 1});
  CHECK(m.factors[0].multiplicity == 2);
  CHECK(m.residual == conic);

  CHECK_THROWS_AS(extract_linear_factors(BivariatePoly{}, f), std::invalid_argument);
  CHECK_THROWS_AS(divide(conic, LinearForm{true, 0, 0}, f), std::invalid_argument);
  CHECK(divides(LinearForm{false, 1, 0}, xy1, f));
  CHECK(divide(xy1, LinearForm{false, 1, 0}, f) == lin(0, 0, 1));
  CHECK(to_string(LinearForm{false, 1, 0}, f) == "x + y");
  CHECK(to_string(LinearForm{true, 0, 0}, f) == "x");
}

TEST_CASE("divisibility agrees with substitution over every candidate") {
  const FieldTower t = FieldTower::build(2);
  const Field& f = t.ext();
  const auto of = oracle_field(t);
  std::mt19937 rng(14);
  for (int trial = 0; trial < 10; ++trial) {
    BivariatePoly p = lin(rng() % 16, 1, rng() % 16);
    for (int k = 0; k < 2; ++k) {
      BivariatePoly r;
      for (const Monomial& mo : monomials_upto(2)) r.add_term(mo, rng() % 16);
      p = multiply(p, r, f);
    }
    if (p.is_zero()) continue;
    const auto terms = raw_terms(p);
    for (Elem a = 0; a < 16; ++a)
      for (Elem b = 0; b < 16; ++b) {
        bool vanishes = true;
        for (Elem x = 0; x < 16 && vanishes; ++x) {
          // the substitution has degree <= 5 < 16, so vanishing everywhere means it is zero
          vanishes = oracle::evaluate(of, terms, x, of.mul(a, x) ^ b) == 0;
        }
        CHECK(divides(LinearForm{false, a, b}, p, f) == vanishes);
      }
  }
}
