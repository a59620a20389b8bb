#pragma once

// Projective spaces PG(n, F) for n in {2, 3, 4} over the fields of a FieldTower.
//
// Points are left-normalized coordinate vectors (first nonzero coordinate 1),
// indexed by their lexicographic position among all normalized vectors. The
// index is computed arithmetically, so even PG(3, q^2) needs no stored table.

#include <array>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "arcforge/gf.hpp"

namespace arcforge {

using PointId = std::uint32_t;
using LineId = std::uint32_t;

/// Sorted point indices into a PointTable.
using LineSet = std::vector<PointId>;

class ProjPoint {
 public:
  static constexpr int kMaxLen = 5;

  ProjPoint() = default;
  explicit ProjPoint(int len) : n_(len) {}
  ProjPoint(std::initializer_list<Elem> coords);

  int size() const { return n_; }
  Elem operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  Elem& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
  const Elem* begin() const { return c_.data(); }
  const Elem* end() const { return c_.data() + n_; }
  bool is_zero() const;

  friend bool operator==(const ProjPoint& a, const ProjPoint& b) {
    if (a.n_ != b.n_) return false;
    for (int i = 0; i < a.n_; ++i)
      if (a[i] != b[i]) return false;
    return true;
  }

 private:
  std::array<Elem, kMaxLen> c_{};
  int n_ = 0;
};

/// Scales v so that its first nonzero coordinate is 1. Throws on the zero vector.
ProjPoint normalized(const Field& f, ProjPoint v);
bool is_normalized(const ProjPoint& v);

class PointTable {
 public:
  PointTable(int n, std::shared_ptr<const Field> field);

  int dimension() const { return n_; }
  std::uint64_t size() const { return size_; }
  const Field& field() const { return *field_; }
  std::shared_ptr<const Field> field_ptr() const { return field_; }

  ProjPoint point_at(PointId i) const;
  /// Index of a left-normalized point; throws std::invalid_argument otherwise.
  PointId index_of(const ProjPoint& p) const;
  /// Index of the projective point spanned by a nonzero vector.
  PointId locate(const ProjPoint& v) const { return index_of(normalized(*field_, v)); }

 private:
  int n_;
  std::shared_ptr<const Field> field_;
  std::uint64_t order_;
  std::uint64_t size_;
};

/// {a} together with {x*a + b : x in F}, as sorted indices. Throws on a = b.
LineSet line_through(const PointTable& t, const ProjPoint& a, const ProjPoint& b);
/// line_through on a table over the quadratic extension.
LineSet line_through_ext(const PointTable& t2, const ProjPoint& a, const ProjPoint& b);

/// Coordinate-wise Frobenius x -> x^q, renormalized.
ProjPoint conjugate_point(const FieldTower& t, const ProjPoint& p);

/// True iff every coordinate of the normalized point lies in GF(q).
bool is_rational(const FieldTower& t, const ProjPoint& p);

/// Every line of PG(3, q) once, sorted lexicographically as index sets.
std::vector<LineSet> all_lines_pg3(const PointTable& t);

/// (x0, ..., x3) -> (0, x0, ..., x3).
ProjPoint embed_in_pg4(const ProjPoint& p);

/// PG(3, q) with its full line set and point-line incidence.
class Pg3Geometry {
 public:
  explicit Pg3Geometry(const FieldTower& tower);

  const FieldTower& tower() const { return tower_; }
  const PointTable& points() const { return points_; }
  std::size_t num_points() const { return points_.size(); }
  std::size_t num_lines() const { return num_lines_; }
  std::size_t line_size() const { return line_size_; }

  std::span<const PointId> line(LineId l) const {
    return {flat_lines_.data() + std::size_t{l} * line_size_, line_size_};
  }
  std::span<const std::uint32_t> flat_lines() const { return flat_lines_; }
  std::span<const LineId> lines_through(PointId p) const {
    return {lines_through_.data() + std::size_t{p} * pencil_size_, pencil_size_};
  }

  /// The line joining two distinct points.
  LineId line_of(PointId a, PointId b) const;
  LineId line_of(const ProjPoint& a, const ProjPoint& b) const {
    return line_of(points_.index_of(a), points_.index_of(b));
  }
  bool meet(LineId a, LineId b) const;
  bool on_line(PointId p, LineId l) const;
  /// The id of a sorted point set, if it is a line.
  std::optional<LineId> find(std::span<const PointId> pts) const;

 private:
  FieldTower tower_;
  PointTable points_;
  std::size_t line_size_;
  std::size_t pencil_size_;
  std::size_t num_lines_ = 0;
  std::vector<std::uint32_t> flat_lines_;
  std::vector<LineId> lines_through_;
  std::vector<LineId> pair_line_;  // dense N x N table when N is small
};

}  // namespace arcforge
