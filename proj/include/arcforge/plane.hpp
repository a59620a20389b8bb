#pragma once

// From PG(4, q) to PG(2, q^2): the coordinate map
//   (z, x1, x2, y1, y2) -> (z, x1 + eps*x2, eps*y1 + y2),
// the affine cone over an ovoid at infinity, and maximal-arc verification.

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "arcforge/ovoids.hpp"
#include "arcforge/projgeom.hpp"
#include "arcforge/spreads.hpp"

namespace arcforge {

struct MaximalArc {
  std::uint32_t q = 0;
  std::uint32_t degree = 0;
  OvoidKind kind = OvoidKind::SuzukiTits;
  Elem epsilon = 0;
  Collineation4 collineation = Collineation4::identity();
  /// Points of PG(2, q^2), sorted by table index; all affine (z = 1).
  std::vector<ProjPoint> points;
};

/// Every eps in GF(q^2) \ GF(q) for which the first spread line outside the
/// regulus of the reference lines has a constant image (x1 + eps x2 : eps y1 + y2).
/// Sorted by encoding; empty if there is none.
std::vector<Elem> find_epsilon(std::span<const LineId> spread, const Pg3Geometry& g);

ProjPoint theta_map(const FieldTower& t, const ProjPoint& p, Elem eps);

/// The image under theta of the cone with vertex (1,0,0,0,0) over the ovoid
/// embedded at infinity, minus the ovoid itself. Throws std::invalid_argument if
/// some spread line is not tangent to the ovoid.
MaximalArc build_arc(const Ovoid& o, std::span<const LineId> spread, Elem eps, const Pg3Geometry& g);

struct SecantCheck {
  bool ok = false;
  std::vector<LineSet> secants;  // as indices of the plane table
  std::optional<LineSet> bad_line;
};

/// Every line through two points of X meets X in exactly n points.
SecantCheck check_secants(std::span<const ProjPoint> x, const PointTable& plane, std::uint32_t n);

/// check_secants plus: every point of X lies on at least Q + 1 secants (Q = |field|).
bool check_arc(std::span<const ProjPoint> x, const PointTable& plane, std::uint32_t n);

struct ArcVerification {
  std::map<int, std::size_t> histogram;  // intersection size -> number of lines
  std::size_t lines = 0;
  /// Every line meets X in 0 or n points.
  bool pass = false;
  /// X is empty, so `pass` holds vacuously.
  bool degenerate = false;
  bool is_maximal_arc() const { return pass && !degenerate; }
};

/// Scans every line of the plane.
ArcVerification verify_maximal_arc(std::span<const ProjPoint> x, const PointTable& plane, std::uint32_t n);

}  // namespace arcforge
