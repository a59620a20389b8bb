#pragma once

// Reguli, regular spreads and their carrier lines in PG(3, q).
//
// Lines are referred to by LineId in a Pg3Geometry; every returned line set is
// sorted. Search failures are ordinary results (std::nullopt or ok == false);
// exceptions are reserved for inputs that violate a precondition.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "arcforge/ovoids.hpp"
#include "arcforge/projgeom.hpp"

namespace arcforge {

using LineList = std::vector<LineId>;

/// Thrown when the lines handed to a regulus operation are not pairwise skew
/// (or otherwise in degenerate position).
class DegenerateLines : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// All lines meeting each of three pairwise skew lines (q + 1 of them).
LineList opposite_regulus(LineId a, LineId b, LineId c, const Pg3Geometry& g);

/// The unique regulus through three pairwise skew lines, as the opposite of the opposite.
LineList regulus(LineId a, LineId b, LineId c, const Pg3Geometry& g);

/// Union over x in R(l1,l2,l3) \ {l1} of R(l1, x, l4): q^2 - q + 2 pairwise skew lines.
LineList quad_span(LineId l1, LineId l2, LineId l3, LineId l4, const Pg3Geometry& g);

struct ClosureResult {
  LineList lines;
  bool ok = true;
  /// Set when a generated regulus contains a line meeting a member.
  std::optional<std::pair<LineId, LineId>> conflict;
};

/// Smallest regulus-closed superset of `s`. Stops as soon as q^2 + 1 lines are
/// reached. Reguli of each round are computed in parallel and merged in
/// lexicographic triple order, so the result does not depend on worker_count().
/// Throws DegenerateLines if `s` is not pairwise skew.
ClosureResult regular_closure(std::span<const LineId> s, const Pg3Geometry& g);

/// True iff the lines are pairwise skew and cover every point exactly once.
bool is_partition(std::span<const LineId> lines, const Pg3Geometry& g);

/// True iff the regulus of every member triple lies in the spread. Throws
/// std::invalid_argument if the lines do not partition PG(3, q).
bool is_regular_spread(std::span<const LineId> lines, const Pg3Geometry& g);

struct Spread {
  LineList lines;
  bool regular = false;
  /// Points of a carrier line in PG(3, q^2), as sorted indices of the extension table.
  std::optional<LineSet> carrier;
};

/// Regular spread of tangent lines: skew triples from the first three tangent
/// pencils whose regulus is tangent, extended by a disjoint tangent line whose
/// span is tangent, then closed. std::nullopt if the search is exhausted.
std::optional<Spread> find_tangent_spread(const TangentComplex& tc, const Ovoid& o, const Pg3Geometry& g);

/// A line L of PG(3, q^2) disjoint from PG(3, q) such that L and its conjugate
/// meet every extended spread line. `ext` is the PG(3, q^2) point table.
std::optional<LineSet> carrier_line(std::span<const LineId> spread, const Pg3Geometry& g, const PointTable& ext);

/// The spread lines {P P^q : P in carrier} recovered from a carrier.
LineList spread_from_carrier(const LineSet& carrier, const Pg3Geometry& g, const PointTable& ext);

struct CanonicalSpread {
  Spread spread;
  LineSet carrier;
  std::array<LineId, 3> generators{};  // <(1,0,0,1),(0,1,1,0)>, <(1,0,0,0),(0,1,0,0)>, <(0,0,1,0),(0,0,0,1)>
  LineId fourth = 0;
};

/// The three reference lines above.
std::array<LineId, 3> reference_lines(const Pg3Geometry& g);

/// Regular closure of the reference lines plus the first line (in id order)
/// disjoint from their regulus, with its carrier.
CanonicalSpread canonical_spread(const Pg3Geometry& g, const PointTable& ext);

/// 4 x 4 matrix over GF(q) acting on column coordinate vectors.
struct Collineation4 {
  std::array<Elem, 16> a{};
  Elem at(int i, int j) const { return a[static_cast<std::size_t>(4 * i + j)]; }
  Elem& at(int i, int j) { return a[static_cast<std::size_t>(4 * i + j)]; }
  static Collineation4 identity();
  friend bool operator==(const Collineation4&, const Collineation4&) = default;
};

bool is_invertible(const Collineation4& m, const Field& f);

/// M = N0 * M0^-1, where M0 has columns (P1, P1^q, P2, P2^q) for the first two
/// carrier points of `s` and N0 the same for the canonical carrier.
Collineation4 canonicalizing_collineation(const Spread& s, const CanonicalSpread& canon, const Pg3Geometry& g,
                                          const PointTable& ext);

/// Throws std::invalid_argument for a singular matrix.
ProjPoint apply_collineation(const Collineation4& m, const Field& f, const ProjPoint& p);
PointId apply_collineation(const Collineation4& m, const Pg3Geometry& g, PointId p);
LineId apply_collineation_line(const Collineation4& m, const Pg3Geometry& g, LineId l);
std::vector<PointId> apply_collineation(const Collineation4& m, const Pg3Geometry& g, std::span<const PointId> pts);
LineList apply_collineation_lines(const Collineation4& m, const Pg3Geometry& g, std::span<const LineId> lines);

namespace reference {

/// Closure by repeated full recombination of all member triples.
ClosureResult regular_closure(std::span<const LineId> s, const Pg3Geometry& g);

}  // namespace reference

}  // namespace arcforge
