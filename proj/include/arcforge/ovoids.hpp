#pragma once

// Ovoids of PG(3, q), q even: the Suzuki-Tits ovoid (q = 2^(2t+1)) and the
// elliptic quadric, together with their tangent-line complexes.

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "arcforge/projgeom.hpp"

namespace arcforge {

enum class OvoidKind { SuzukiTits, EllipticQuadric };

std::string_view to_string(OvoidKind k);
/// Accepts "suzuki-tits" and "elliptic-quadric".
OvoidKind parse_ovoid_kind(std::string_view s);

struct Ovoid {
  OvoidKind kind = OvoidKind::SuzukiTits;
  std::vector<PointId> points;  // sorted
  /// sigma = 2^(t+1) for Suzuki-Tits, the quadric coefficient delta otherwise.
  std::uint32_t param = 0;
};

struct OvoidReport {
  bool pass = false;
  std::size_t size = 0;
  std::string reason;
  std::optional<std::array<PointId, 3>> collinear_witness;
};

struct TangentComplex {
  std::vector<LineId> lines;  // sorted
  /// pencils[k] holds the tangents at the k-th ovoid point (sorted ovoid order).
  std::vector<std::vector<LineId>> pencils;
};

/// {(1, s, u, su + s^(sigma+2) + u^sigma)} + {(0,0,0,1)} with sigma = 2^(t+1).
/// Throws std::invalid_argument unless q = 2^(2t+1) with t >= 1.
Ovoid suzuki_tits_ovoid(const Pg3Geometry& g);

/// Zero set of x0 x1 + x2^2 + x2 x3 + delta x3^2, delta the least trace-1 element.
/// Requires q >= 4.
Ovoid elliptic_quadric_ovoid(const Pg3Geometry& g);

Ovoid build_ovoid(OvoidKind kind, const Pg3Geometry& g);

OvoidReport verify_ovoid(std::span<const PointId> points, const Pg3Geometry& g);

/// Number of lines meeting the point set in exactly k points, for each k that occurs.
std::map<int, std::size_t> line_spectrum(std::span<const PointId> points, const Pg3Geometry& g);

TangentComplex tangent_complex(const Ovoid& o, const Pg3Geometry& g);

}  // namespace arcforge
