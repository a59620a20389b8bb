#include "arcforge/curves.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "arcforge/kernels.hpp"
#include "arcforge/parallel.hpp"

namespace arcforge {

namespace {

using UPoly = std::vector<Elem>;  // coefficients in increasing degree

void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

void add_into(UPoly& acc, const UPoly& p) {
  if (acc.size() < p.size()) acc.resize(p.size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) acc[i] ^= p[i];
}

// p * (a u + b)
UPoly mul_linear(const UPoly& p, Elem a, Elem b, const Field& f) {
  UPoly out(p.size() + 1, 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    out[i] ^= f.mul(b, p[i]);
    out[i + 1] ^= f.mul(a, p[i]);
  }
  trim(out);
  return out;
}

// Slices along the main variable of the form: x for vertical forms, y otherwise.
std::vector<UPoly> slice(const BivariatePoly& p, bool main_y) {
  std::vector<UPoly> s;
  for (const auto& [m, c] : p.terms()) {
    const int major = main_y ? m.y : m.x, minor = main_y ? m.x : m.y;
    if (s.size() <= static_cast<std::size_t>(major)) s.resize(static_cast<std::size_t>(major) + 1);
    UPoly& u = s[static_cast<std::size_t>(major)];
    if (u.size() <= static_cast<std::size_t>(minor)) u.resize(static_cast<std::size_t>(minor) + 1, 0);
    u[static_cast<std::size_t>(minor)] ^= c;
  }
  return s;
}

BivariatePoly unslice(const std::vector<UPoly>& s, bool main_y) {
  BivariatePoly p;
  for (std::size_t major = 0; major < s.size(); ++major)
    for (std::size_t minor = 0; minor < s[major].size(); ++minor) {
      const int mj = static_cast<int>(major), mn = static_cast<int>(minor);
      p.add_term(main_y ? Monomial{mn, mj} : Monomial{mj, mn}, s[major][minor]);
    }
  return p;
}

// The form is v + h(u) with h = a u + b (a = 0 for vertical forms).
std::pair<Elem, Elem> shift_of(const LinearForm& l) { return l.vertical ? std::pair{Elem{0}, l.b} : std::pair{l.a, l.b}; }

}  // namespace

std::vector<Monomial> monomials_upto(int i) {
  if (i < 0) throw std::invalid_argument("monomials_upto: negative degree");
  std::vector<Monomial> out;
  out.reserve(static_cast<std::size_t>((i + 1) * (i + 2) / 2));
  for (int a = 0; a <= i; ++a)
    for (int b = 0; a + b <= i; ++b) out.push_back({a, b});
  return out;
}

void BivariatePoly::add_term(Monomial m, Elem c) {
  if (m.x < 0 || m.y < 0) throw std::invalid_argument("negative exponent");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second ^= c;
    if (it->second == 0) terms_.erase(it);
  }
}

Elem BivariatePoly::coeff(Monomial m) const {
  const auto it = terms_.find(m);
  return it == terms_.end() ? 0 : it->second;
}

std::vector<Term> BivariatePoly::term_list() const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [m, c] : terms_) out.push_back({m.x, m.y, c});
  return out;
}

Elem BivariatePoly::evaluate(const Field& f, Elem x, Elem y) const {
  Elem s = 0;
  for (const auto& [m, c] : terms_)
    s ^= f.mul(c, f.mul(f.pow(x, static_cast<std::uint64_t>(m.x)), f.pow(y, static_cast<std::uint64_t>(m.y))));
  return s;
}

BivariatePoly multiply(const BivariatePoly& a, const BivariatePoly& b, const Field& f) {
  BivariatePoly out;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) out.add_term({ma.x + mb.x, ma.y + mb.y}, f.mul(ca, cb));
  return out;
}

namespace {

std::string coeff_string(Elem c, const Field& f) {
  if (f.tabled()) return "g^" + std::to_string(f.log(c));
  return "[" + std::to_string(c) + "]";
}

std::string monomial_string(Monomial m) {
  std::string s;
  auto var = [&](const char* name, int e) {
    if (e == 0) return;
    if (!s.empty()) s += "*";
    s += name;
    if (e > 1) s += "^" + std::to_string(e);
  };
  var("x", m.x);
  var("y", m.y);
  return s;
}

}  // namespace

std::string to_string(const BivariatePoly& p, const Field& f) {
  if (p.is_zero()) return "0";
  std::string out;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    if (!out.empty()) out += " + ";
    const std::string mono = monomial_string(m);
    if (mono.empty()) out += c == 1 ? "1" : coeff_string(c, f);
    else if (c == 1) out += mono;
    else out += coeff_string(c, f) + "*" + mono;
  }
  return out;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix eval_matrix(std::span<const ProjPoint> points, int i, const Field& f) {
  const auto mons = monomials_upto(i);
  Matrix m(points.size(), mons.size());
  std::vector<Elem> xp(static_cast<std::size_t>(i) + 1), yp(static_cast<std::size_t>(i) + 1);
  for (std::size_t r = 0; r < points.size(); ++r) {
    const ProjPoint& p = points[r];
    if (p.size() != 3 || p[0] != 1) throw std::invalid_argument("eval_matrix: point is not affine (1, x, y)");
    xp[0] = yp[0] = 1;
    for (int k = 1; k <= i; ++k) {
      xp[static_cast<std::size_t>(k)] = f.mul(xp[static_cast<std::size_t>(k - 1)], p[1]);
      yp[static_cast<std::size_t>(k)] = f.mul(yp[static_cast<std::size_t>(k - 1)], p[2]);
    }
    for (std::size_t c = 0; c < mons.size(); ++c)
      m.at(r, c) = f.mul(xp[static_cast<std::size_t>(mons[c].x)], yp[static_cast<std::size_t>(mons[c].y)]);
  }
  return m;
}

std::size_t matrix_rank(const Matrix& m, const Field& f) {
  Matrix work = m;
  return kernels::reduce_rows(f, work.data(), work.rows(), work.cols()).size();
}

MinDegree min_cover_degree(std::span<const ProjPoint> points, int max_i, const Field& f) {
  if (max_i < 1) throw std::invalid_argument("min_cover_degree: max degree must be at least 1");
  MinDegree res;
  auto deficient = [&](int c) {
    for (const DegreeProbe& p : res.probes)
      if (p.degree == c) return p.rank < p.monomials;
    const Matrix m = eval_matrix(points, c, f);
    const std::size_t r = matrix_rank(m, f);
    res.probes.push_back({c, r, m.cols()});
    return r < m.cols();
  };
  int lo = 1, hi = max_i;
  while (lo < hi) {
    const int c = (lo + hi) / 2;
    if (deficient(c)) hi = c;
    else lo = c + 1;
  }
  if (deficient(lo)) res.degree = lo;
  return res;
}

Nullspace nullspace_vector(const Matrix& m, const Field& f) {
  Matrix work = m;
  const auto pivots = kernels::reduce_rows(f, work.data(), work.rows(), work.cols());
  Nullspace ns;
  ns.rank = pivots.size();
  ns.nullity = m.cols() - ns.rank;
  if (ns.nullity == 0) throw std::invalid_argument("nullspace_vector: matrix has full column rank");
  std::size_t free_col = 0;
  for (std::size_t k = 0; k < pivots.size() && pivots[k] == free_col; ++k) ++free_col;
  ns.vector.assign(m.cols(), 0);
  ns.vector[free_col] = 1;
  for (std::size_t r = 0; r < pivots.size(); ++r) ns.vector[pivots[r]] = work.at(r, free_col);
  return ns;
}

BivariatePoly vector_to_poly(std::span<const Elem> v, int i) {
  const auto mons = monomials_upto(i);
  if (v.size() != mons.size()) throw std::invalid_argument("vector_to_poly: length does not match the monomial count");
  BivariatePoly p;
  for (std::size_t k = 0; k < v.size(); ++k) p.add_term(mons[k], v[k]);
  return p;
}

std::vector<Elem> poly_to_vector(const BivariatePoly& p, int i) {
  if (p.degree() > i) throw std::invalid_argument("poly_to_vector: polynomial degree exceeds i");
  const auto mons = monomials_upto(i);
  std::vector<Elem> v(mons.size(), 0);
  for (std::size_t k = 0; k < mons.size(); ++k) v[k] = p.coeff(mons[k]);
  return v;
}

CurvePoints curve_points(const BivariatePoly& p, const Field& f, std::span<const ProjPoint> set) {
  if (p.is_zero()) throw std::invalid_argument("curve_points: zero polynomial");
  const auto terms = p.term_list();
  const auto mask = kernels::grid_zeros(f, terms);
  const auto n = static_cast<Elem>(f.order());
  CurvePoints cp;
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      if (mask[std::size_t{x} * n + y]) cp.zeros.emplace_back(x, y);
  for (const ProjPoint& q : set) {
    if (q.size() != 3 || q[0] == 0) continue;
    const ProjPoint a = normalized(f, q);
    cp.on_set += mask[std::size_t{a[1]} * n + a[2]];
  }
  return cp;
}

BivariatePoly LinearForm::poly() const {
  BivariatePoly p;
  if (vertical) {
    p.add_term({1, 0}, 1);
  } else {
    p.add_term({0, 1}, 1);
    p.add_term({1, 0}, a);
  }
  p.add_term({0, 0}, b);
  return p;
}

std::string to_string(const LinearForm& l, const Field& f) { return to_string(l.poly(), f); }

bool divides(const LinearForm& l, const BivariatePoly& p, const Field& f) {
  const bool main_y = !l.vertical;
  const auto s = slice(p, main_y);
  const auto [a, b] = shift_of(l);
  // remainder p(u, h(u)) by Horner in the main variable
  UPoly r;
  for (std::size_t k = s.size(); k-- > 0;) {
    r = mul_linear(r, a, b, f);
    add_into(r, s[k]);
    trim(r);
  }
  return r.empty();
}

BivariatePoly divide(const BivariatePoly& p, const LinearForm& l, const Field& f) {
  const bool main_y = !l.vertical;
  const auto s = slice(p, main_y);
  const auto [a, b] = shift_of(l);
  if (s.empty()) return {};
  const std::size_t d = s.size() - 1;
  std::vector<UPoly> quot(d);
  UPoly carry = s[d];
  for (std::size_t k = d; k-- > 0;) {
    quot[k] = carry;
    carry = mul_linear(carry, a, b, f);
    add_into(carry, s[k]);
    trim(carry);
  }
  if (!carry.empty()) throw std::invalid_argument("divide: linear form does not divide the polynomial");
  return unslice(quot, main_y);
}

LinearSplit extract_linear_factors(const BivariatePoly& p, const Field& f) {
  if (p.is_zero()) throw std::invalid_argument("extract_linear_factors: zero polynomial");
  const auto n = static_cast<Elem>(f.order());
  std::vector<LinearForm> candidates;
  candidates.reserve(std::size_t{n} * n + n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) candidates.push_back({false, a, b});
  for (Elem b = 0; b < n; ++b) candidates.push_back({true, 0, b});

  std::vector<std::uint8_t> hit(candidates.size(), 0);
  const auto nc = static_cast<std::int64_t>(candidates.size());
#pragma omp parallel for schedule(dynamic, 64) num_threads(worker_count())
  for (std::int64_t k = 0; k < nc; ++k) hit[static_cast<std::size_t>(k)] = divides(candidates[static_cast<std::size_t>(k)], p, f);

  LinearSplit split;
  split.residual = p;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    if (!hit[k]) continue;
    LinearFactor lf{candidates[k], 0};
    while (split.residual.degree() > 0 && divides(lf.form, split.residual, f)) {
      split.residual = divide(split.residual, lf.form, f);
      ++lf.multiplicity;
    }
    if (lf.multiplicity > 0) split.factors.push_back(lf);
  }

  BivariatePoly check = split.residual;
  for (const auto& lf : split.factors)
    for (int k = 0; k < lf.multiplicity; ++k) check = multiply(check, lf.form.poly(), f);
  if (!(check == p)) throw std::logic_error("linear factor split does not reassemble the polynomial");
  return split;
}

}  // namespace arcforge
