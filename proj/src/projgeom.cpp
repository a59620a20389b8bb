#include "arcforge/projgeom.hpp"

#include <algorithm>
#include <stdexcept>

#include "arcforge/parallel.hpp"

namespace arcforge {

ProjPoint::ProjPoint(std::initializer_list<Elem> coords) : n_(static_cast<int>(coords.size())) {
  if (coords.size() > kMaxLen) throw std::invalid_argument("too many coordinates");
  std::copy(coords.begin(), coords.end(), c_.begin());
}

bool ProjPoint::is_zero() const {
  return std::all_of(begin(), end(), [](Elem e) { return e == 0; });
}

ProjPoint normalized(const Field& f, ProjPoint v) {
  int k = 0;
  while (k < v.size() && v[k] == 0) ++k;
  if (k == v.size()) throw std::invalid_argument("zero vector is not a projective point");
  if (v[k] != 1) {
    const Elem s = f.inv(v[k]);
    for (int i = k; i < v.size(); ++i) v[i] = f.mul(s, v[i]);
  }
  return v;
}

bool is_normalized(const ProjPoint& v) {
  for (Elem e : v)
    if (e != 0) return e == 1;
  return false;
}

PointTable::PointTable(int n, std::shared_ptr<const Field> field)
    : n_(n), field_(std::move(field)), order_(field_->order()) {
  if (n < 1 || n >= ProjPoint::kMaxLen) throw std::invalid_argument("projective dimension out of range");
  std::uint64_t s = 0, pw = 1;
  for (int i = 0; i <= n; ++i, pw *= order_) s += pw;
  if (s > 0xffffffffULL) throw std::invalid_argument("projective space too large to index");
  size_ = s;
}

ProjPoint PointTable::point_at(PointId idx) const {
  if (idx >= size_) throw std::out_of_range("point index out of range");
  // blocks by position k of the leading 1: k = n first (1 point), then n-1 (Q points), ...
  std::uint64_t i = idx, block = 1;
  int k = n_;
  while (i >= block) {
    i -= block;
    block *= order_;
    --k;
  }
  ProjPoint p(n_ + 1);
  p[k] = 1;
  for (int pos = n_; pos > k; --pos) {
    p[pos] = static_cast<Elem>(i % order_);
    i /= order_;
  }
  return p;
}

PointId PointTable::index_of(const ProjPoint& p) const {
  if (p.size() != n_ + 1 || !is_normalized(p)) throw std::invalid_argument("point is not left-normalized");
  int k = 0;
  while (p[k] == 0) ++k;
  std::uint64_t offset = 0, block = 1;
  for (int kk = n_; kk > k; --kk) {
    offset += block;
    block *= order_;
  }
  std::uint64_t rank = 0;
  for (int pos = k + 1; pos <= n_; ++pos) {
    if (!field_->contains(p[pos])) throw std::invalid_argument("coordinate outside the field");
    rank = rank * order_ + p[pos];
  }
  return static_cast<PointId>(offset + rank);
}

LineSet line_through(const PointTable& t, const ProjPoint& a, const ProjPoint& b) {
  const Field& f = t.field();
  const ProjPoint na = normalized(f, a), nb = normalized(f, b);
  if (na == nb) throw std::invalid_argument("line_through: the two points coincide");
  LineSet out;
  out.reserve(f.order() + 1);
  out.push_back(t.index_of(na));
  const auto q = static_cast<Elem>(f.order());
  for (Elem x = 0; x < q; ++x) {
    ProjPoint v(na.size());
    for (int i = 0; i < na.size(); ++i) v[i] = f.mul(x, na[i]) ^ nb[i];
    out.push_back(t.locate(v));
  }
  std::sort(out.begin(), out.end());
  return out;
}

LineSet line_through_ext(const PointTable& t2, const ProjPoint& a, const ProjPoint& b) {
  if (!t2.field().is_extension()) throw std::invalid_argument("line_through_ext needs a table over GF(q^2)");
  return line_through(t2, a, b);
}

ProjPoint conjugate_point(const FieldTower& t, const ProjPoint& p) {
  ProjPoint c(p.size());
  for (int i = 0; i < p.size(); ++i) c[i] = t.frobenius(p[i]);
  return normalized(t.ext(), c);
}

bool is_rational(const FieldTower& t, const ProjPoint& p) {
  const ProjPoint n = normalized(t.ext(), p);
  return std::all_of(n.begin(), n.end(), [&](Elem e) { return t.in_base(e); });
}

std::vector<LineSet> all_lines_pg3(const PointTable& t) {
  if (t.dimension() != 3) throw std::invalid_argument("all_lines_pg3 needs a PG(3, q) table");
  const auto n = static_cast<std::int64_t>(t.size());
  std::vector<std::vector<LineSet>> by_min(static_cast<std::size_t>(n));
#pragma omp parallel num_threads(worker_count())
  {
    // stamp[j] == i + 1 marks j as already joined to point i
    std::vector<std::int64_t> stamp(static_cast<std::size_t>(n), 0);
#pragma omp for schedule(dynamic, 8)
    for (std::int64_t i = 0; i < n; ++i) {
      const ProjPoint a = t.point_at(static_cast<PointId>(i));
      for (std::int64_t j = i + 1; j < n; ++j) {
        if (stamp[static_cast<std::size_t>(j)] == i + 1) continue;
        LineSet l = line_through(t, a, t.point_at(static_cast<PointId>(j)));
        for (PointId p : l) stamp[p] = i + 1;
        if (l.front() == static_cast<PointId>(i)) by_min[static_cast<std::size_t>(i)].push_back(std::move(l));
      }
      std::sort(by_min[static_cast<std::size_t>(i)].begin(), by_min[static_cast<std::size_t>(i)].end());
    }
  }
  std::vector<LineSet> out;
  for (auto& bucket : by_min)
    for (auto& l : bucket) out.push_back(std::move(l));
  return out;
}

ProjPoint embed_in_pg4(const ProjPoint& p) {
  if (p.size() != 4) throw std::invalid_argument("embed_in_pg4 expects a point of PG(3, q)");
  return ProjPoint{0, p[0], p[1], p[2], p[3]};
}

Pg3Geometry::Pg3Geometry(const FieldTower& tower)
    : tower_(tower), points_(3, tower.base_ptr()), line_size_(tower.q() + 1) {
  const std::size_t q = tower.q();
  pencil_size_ = q * q + q + 1;
  const auto lines = all_lines_pg3(points_);
  num_lines_ = lines.size();
  flat_lines_.reserve(num_lines_ * line_size_);
  for (const auto& l : lines) flat_lines_.insert(flat_lines_.end(), l.begin(), l.end());

  const std::size_t n = points_.size();
  lines_through_.assign(n * pencil_size_, 0);
  std::vector<std::size_t> fill(n, 0);
  for (LineId l = 0; l < num_lines_; ++l)
    for (PointId p : line(l)) lines_through_[p * pencil_size_ + fill[p]++] = l;

  if (n <= 4500) {
    pair_line_.assign(n * n, 0xffffffffu);
    for (LineId l = 0; l < num_lines_; ++l) {
      const auto pts = line(l);
      for (PointId a : pts)
        for (PointId b : pts)
          if (a != b) pair_line_[std::size_t{a} * n + b] = l;
    }
  }
}

bool Pg3Geometry::on_line(PointId p, LineId l) const {
  const auto pts = line(l);
  return std::binary_search(pts.begin(), pts.end(), p);
}

LineId Pg3Geometry::line_of(PointId a, PointId b) const {
  if (a == b) throw std::invalid_argument("line_of: the two points coincide");
  if (!pair_line_.empty()) return pair_line_[std::size_t{a} * num_points() + b];
  for (LineId l : lines_through(a))
    if (on_line(b, l)) return l;
  throw std::logic_error("line_of: incidence table is inconsistent");
}

bool Pg3Geometry::meet(LineId a, LineId b) const {
  const auto x = line(a), y = line(b);
  std::size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    if (x[i] == y[j]) return true;
    if (x[i] < y[j]) ++i;
    else ++j;
  }
  return false;
}

std::optional<LineId> Pg3Geometry::find(std::span<const PointId> pts) const {
  if (pts.size() != line_size_) return std::nullopt;
  for (PointId p : pts)
    if (p >= num_points()) return std::nullopt;
  if (pts[0] == pts[1]) return std::nullopt;
  const LineId l = line_of(pts[0], pts[1]);
  const auto ref = line(l);
  if (!std::equal(ref.begin(), ref.end(), pts.begin(), pts.end())) return std::nullopt;
  return l;
}

}  // namespace arcforge
