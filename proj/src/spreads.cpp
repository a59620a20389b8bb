#include "arcforge/spreads.hpp"

#include <algorithm>
#include <exception>
#include <functional>
#include <unordered_map>

#include "arcforge/parallel.hpp"

namespace arcforge {

namespace {

std::size_t spread_size(const Pg3Geometry& g) {
  const std::size_t q = g.tower().q();
  return q * q + 1;
}

void require_skew(LineId a, LineId b, const Pg3Geometry& g) {
  if (a == b || g.meet(a, b))
    throw DegenerateLines("lines " + std::to_string(a) + " and " + std::to_string(b) + " are not skew");
}

// Regulus built from lines x, y, z, rejecting it as soon as a member fails `keep`.
std::optional<LineList> regulus_if(LineId a, LineId b, LineId c, const Pg3Geometry& g,
                                   const std::function<bool(LineId)>& keep) {
  LineList r = regulus(a, b, c, g);
  for (LineId l : r)
    if (!keep(l)) return std::nullopt;
  return r;
}

std::optional<LineList> quad_span_if(LineId l1, LineId l2, LineId l3, LineId l4, const Pg3Geometry& g,
                                     const std::function<bool(LineId)>& keep) {
  const LineList first = regulus(l1, l2, l3, g);
  if (std::binary_search(first.begin(), first.end(), l4))
    throw DegenerateLines("fourth line lies in the regulus of the first three");
  LineList out;
  for (LineId x : first) {
    if (x == l1) continue;
    auto r = regulus_if(l1, x, l4, g, keep);
    if (!r) return std::nullopt;
    out.insert(out.end(), r->begin(), r->end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<std::array<Elem, 16>> invert4(std::array<Elem, 16> m, const Field& f) {
  std::array<Elem, 16> inv{};
  for (int i = 0; i < 4; ++i) inv[static_cast<std::size_t>(5 * i)] = 1;
  auto at = [](std::array<Elem, 16>& a, int i, int j) -> Elem& { return a[static_cast<std::size_t>(4 * i + j)]; };
  for (int c = 0; c < 4; ++c) {
    int p = c;
    while (p < 4 && at(m, p, c) == 0) ++p;
    if (p == 4) return std::nullopt;
    for (int j = 0; j < 4; ++j) {
      std::swap(at(m, p, j), at(m, c, j));
      std::swap(at(inv, p, j), at(inv, c, j));
    }
    const Elem s = f.inv(at(m, c, c));
    for (int j = 0; j < 4; ++j) {
      at(m, c, j) = f.mul(s, at(m, c, j));
      at(inv, c, j) = f.mul(s, at(inv, c, j));
    }
    for (int i = 0; i < 4; ++i) {
      if (i == c) continue;
      const Elem k = at(m, i, c);
      if (k == 0) continue;
      for (int j = 0; j < 4; ++j) {
        at(m, i, j) ^= f.mul(k, at(m, c, j));
        at(inv, i, j) ^= f.mul(k, at(inv, c, j));
      }
    }
  }
  return inv;
}

std::array<Elem, 16> multiply4(const std::array<Elem, 16>& a, const std::array<Elem, 16>& b, const Field& f) {
  std::array<Elem, 16> c{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Elem s = 0;
      for (int k = 0; k < 4; ++k) s ^= f.mul(a[static_cast<std::size_t>(4 * i + k)], b[static_cast<std::size_t>(4 * k + j)]);
      c[static_cast<std::size_t>(4 * i + j)] = s;
    }
  return c;
}

// Columns (P1, P1^q, P2, P2^q) for the first two carrier points.
std::array<Elem, 16> carrier_frame(const LineSet& carrier, const FieldTower& t, const PointTable& ext) {
  if (carrier.size() < 2) throw std::invalid_argument("carrier line has fewer than two points");
  const ProjPoint p1 = ext.point_at(carrier[0]), p2 = ext.point_at(carrier[1]);
  std::array<Elem, 16> m{};
  for (int i = 0; i < 4; ++i) {
    m[static_cast<std::size_t>(4 * i + 0)] = p1[i];
    m[static_cast<std::size_t>(4 * i + 1)] = t.frobenius(p1[i]);
    m[static_cast<std::size_t>(4 * i + 2)] = p2[i];
    m[static_cast<std::size_t>(4 * i + 3)] = t.frobenius(p2[i]);
  }
  return m;
}

LineSet extended_line(LineId l, const Pg3Geometry& g, const PointTable& ext) {
  const auto pts = g.line(l);
  return line_through_ext(ext, g.points().point_at(pts[0]), g.points().point_at(pts[1]));
}

}  // namespace

LineList opposite_regulus(LineId a, LineId b, LineId c, const Pg3Geometry& g) {
  require_skew(a, b, g);
  require_skew(a, c, g);
  require_skew(b, c, g);
  LineList out;
  out.reserve(g.line_size());
  const auto lb = g.line(b);
  for (PointId p : g.line(a)) {
    // exactly one transversal passes through each point of a
    for (PointId r : lb) {
      const LineId l = g.line_of(p, r);
      if (g.meet(l, c)) {
        out.push_back(l);
        break;
      }
    }
  }
  std::sort(out.begin(), out.end());
  if (out.size() != g.line_size()) throw std::logic_error("opposite regulus has the wrong size");
  return out;
}

LineList regulus(LineId a, LineId b, LineId c, const Pg3Geometry& g) {
  const LineList opp = opposite_regulus(a, b, c, g);
  return opposite_regulus(opp[0], opp[1], opp[2], g);
}

LineList quad_span(LineId l1, LineId l2, LineId l3, LineId l4, const Pg3Geometry& g) {
  for (LineId x : {l1, l2, l3}) require_skew(x, l4, g);
  return *quad_span_if(l1, l2, l3, l4, g, [](LineId) { return true; });
}

ClosureResult regular_closure(std::span<const LineId> s, const Pg3Geometry& g) {
  const std::size_t target = spread_size(g);
  LineList members(s.begin(), s.end());
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());

  std::vector<std::uint8_t> in_set(g.num_lines(), 0);
  std::vector<std::int64_t> owner(g.num_points(), -1);
  for (LineId l : members) {
    in_set.at(l) = 1;
    for (PointId p : g.line(l)) {
      if (owner[p] >= 0) throw DegenerateLines("closure input lines are not pairwise skew");
      owner[p] = l;
    }
  }

  ClosureResult res;
  auto finish = [&](ClosureResult& r) {
    r.lines = members;
    std::sort(r.lines.begin(), r.lines.end());
    return r;
  };
  if (members.size() < 3 || members.size() >= target) return finish(res);

  std::size_t first_new = 0;
  while (true) {
    const std::size_t n = members.size();
    std::vector<std::array<std::uint32_t, 3>> triples;
    for (std::size_t k = std::max<std::size_t>(first_new, 2); k < n; ++k)
      for (std::size_t j = 1; j < k; ++j)
        for (std::size_t i = 0; i < j; ++i)
          triples.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(k)});

    std::vector<LineList> reguli(triples.size());
    std::exception_ptr failure;
    const auto nt = static_cast<std::int64_t>(triples.size());
#pragma omp parallel for schedule(dynamic, 64) num_threads(worker_count())
    for (std::int64_t t = 0; t < nt; ++t) {
      const auto& tr = triples[static_cast<std::size_t>(t)];
      try {
        reguli[static_cast<std::size_t>(t)] = regulus(members[tr[0]], members[tr[1]], members[tr[2]], g);
      } catch (...) {
#pragma omp critical(closure_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);

    for (const LineList& r : reguli) {
      for (LineId l : r) {
        if (in_set[l]) continue;
        for (PointId p : g.line(l)) {
          if (owner[p] >= 0) {
            res.ok = false;
            res.conflict = std::make_pair(static_cast<LineId>(owner[p]), l);
            return finish(res);
          }
        }
        in_set[l] = 1;
        for (PointId p : g.line(l)) owner[p] = l;
        members.push_back(l);
        if (members.size() == target) return finish(res);
      }
    }
    if (members.size() == n) return finish(res);
    first_new = n;
  }
}

namespace reference {

ClosureResult regular_closure(std::span<const LineId> s, const Pg3Geometry& g) {
  const std::size_t target = spread_size(g);
  LineList cur(s.begin(), s.end());
  std::sort(cur.begin(), cur.end());
  cur.erase(std::unique(cur.begin(), cur.end()), cur.end());
  ClosureResult res;
  try {
    while (true) {
      LineList next = cur;
      bool full = false;
      for (std::size_t i = 0; i < cur.size() && !full; ++i)
        for (std::size_t j = i + 1; j < cur.size() && !full; ++j)
          for (std::size_t k = j + 1; k < cur.size() && !full; ++k) {
            const LineList r = regulus(cur[i], cur[j], cur[k], g);
            LineList u;
            std::set_union(next.begin(), next.end(), r.begin(), r.end(), std::back_inserter(u));
            next = std::move(u);
            full = next.size() == target;
          }
      if (full || next == cur) {
        res.lines = std::move(next);
        break;
      }
      cur = std::move(next);
    }
  } catch (const DegenerateLines&) {
    res.ok = false;
    res.lines = cur;
    return res;
  }
  for (std::size_t i = 0; i < res.lines.size() && res.ok; ++i)
    for (std::size_t j = i + 1; j < res.lines.size(); ++j)
      if (g.meet(res.lines[i], res.lines[j])) {
        res.ok = false;
        res.conflict = std::make_pair(res.lines[i], res.lines[j]);
        break;
      }
  return res;
}

}  // namespace reference

bool is_partition(std::span<const LineId> lines, const Pg3Geometry& g) {
  if (lines.size() != spread_size(g)) return false;
  std::vector<std::uint8_t> hit(g.num_points(), 0);
  for (LineId l : lines) {
    if (l >= g.num_lines()) return false;
    for (PointId p : g.line(l)) {
      if (hit[p]) return false;
      hit[p] = 1;
    }
  }
  return std::all_of(hit.begin(), hit.end(), [](std::uint8_t h) { return h != 0; });
}

bool is_regular_spread(std::span<const LineId> lines, const Pg3Geometry& g) {
  if (!is_partition(lines, g)) throw std::invalid_argument("is_regular_spread: lines do not partition PG(3, q)");
  const std::size_t n = lines.size();
  std::vector<std::int32_t> pos(g.num_lines(), -1);
  for (std::size_t i = 0; i < n; ++i) pos[lines[i]] = static_cast<std::int32_t>(i);
  // covered[(i*n + j)*n + k], i < j < k: triple already known to span a contained regulus
  std::vector<bool> covered(n * n * n, false);
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        if (covered[(i * n + j) * n + k]) continue;
        const LineList r = regulus(lines[i], lines[j], lines[k], g);
        idx.clear();
        for (LineId l : r) {
          if (pos[l] < 0) return false;
          idx.push_back(static_cast<std::size_t>(pos[l]));
        }
        std::sort(idx.begin(), idx.end());
        for (std::size_t a = 0; a < idx.size(); ++a)
          for (std::size_t b = a + 1; b < idx.size(); ++b)
            for (std::size_t c = b + 1; c < idx.size(); ++c) covered[(idx[a] * n + idx[b]) * n + idx[c]] = true;
      }
  return true;
}

std::optional<Spread> find_tangent_spread(const TangentComplex& tc, const Ovoid& o, const Pg3Geometry& g) {
  if (tc.pencils.size() != o.points.size())
    throw std::invalid_argument("tangent complex does not belong to this ovoid");
  std::vector<std::uint8_t> tangent(g.num_lines(), 0);
  for (LineId l : tc.lines) tangent.at(l) = 1;
  auto is_tangent = [&](LineId l) { return tangent[l] != 0; };

  auto pencils = tc.pencils;
  for (auto& p : pencils) std::sort(p.begin(), p.end());
  std::sort(pencils.begin(), pencils.end());
  if (pencils.size() < 3) return std::nullopt;

  for (LineId a : pencils[0])
    for (LineId b : pencils[1])
      for (LineId c : pencils[2]) {
        if (g.meet(a, b) || g.meet(a, c) || g.meet(b, c)) continue;
        const auto first = regulus_if(a, b, c, g, is_tangent);
        if (!first) continue;
        std::vector<std::uint8_t> used(g.num_points(), 0);
        for (LineId l : *first)
          for (PointId p : g.line(l)) used[p] = 1;
        for (LineId y : tc.lines) {
          const auto pts = g.line(y);
          if (std::any_of(pts.begin(), pts.end(), [&](PointId p) { return used[p] != 0; })) continue;
          const auto span = quad_span_if(a, b, c, y, g, is_tangent);
          if (!span) continue;
          ClosureResult closed = regular_closure(*span, g);
          if (!closed.ok || closed.lines.size() != spread_size(g)) continue;
          if (!std::all_of(closed.lines.begin(), closed.lines.end(), is_tangent)) continue;
          if (!is_partition(closed.lines, g) || !is_regular_spread(closed.lines, g)) continue;
          return Spread{std::move(closed.lines), true, std::nullopt};
        }
      }
  return std::nullopt;
}

std::optional<LineSet> carrier_line(std::span<const LineId> spread, const Pg3Geometry& g, const PointTable& ext) {
  const FieldTower& t = g.tower();
  if (spread.size() < 2) return std::nullopt;
  const std::size_t n = spread.size();
  std::unordered_map<PointId, std::uint32_t> member_of;
  std::vector<LineSet> extended;
  extended.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    extended.push_back(extended_line(spread[k], g, ext));
    for (PointId p : extended.back())
      if (!is_rational(t, ext.point_at(p))) member_of.emplace(p, static_cast<std::uint32_t>(k));
  }

  std::vector<std::uint32_t> seen(n, 0);
  std::uint32_t stamp = 0;
  auto covers_all = [&](const auto& pts) {
    ++stamp;
    std::size_t hit = 0;
    for (PointId p : pts) {
      const auto it = member_of.find(p);
      if (it == member_of.end() || seen[it->second] == stamp) continue;
      seen[it->second] = stamp;
      ++hit;
    }
    return hit == n;
  };

  for (PointId x1 : extended[0]) {
    const ProjPoint a = ext.point_at(x1);
    if (is_rational(t, a)) continue;
    for (PointId x2 : extended[1]) {
      const ProjPoint b = ext.point_at(x2);
      if (is_rational(t, b)) continue;
      const LineSet cand = line_through_ext(ext, a, b);
      bool disjoint = true;
      for (PointId p : cand)
        if (is_rational(t, ext.point_at(p))) {
          disjoint = false;
          break;
        }
      if (!disjoint || !covers_all(cand)) continue;
      LineSet conj;
      conj.reserve(cand.size());
      for (PointId p : cand) conj.push_back(ext.index_of(conjugate_point(t, ext.point_at(p))));
      if (!covers_all(conj)) continue;
      return cand;
    }
  }
  return std::nullopt;
}

LineList spread_from_carrier(const LineSet& carrier, const Pg3Geometry& g, const PointTable& ext) {
  const FieldTower& t = g.tower();
  LineList out;
  for (PointId id : carrier) {
    const ProjPoint p = ext.point_at(id);
    const ProjPoint pq = conjugate_point(t, p);
    if (p == pq) throw std::invalid_argument("carrier point is rational");
    LineSet pts;
    for (PointId e : line_through_ext(ext, p, pq)) {
      const ProjPoint v = ext.point_at(e);
      if (is_rational(t, v)) pts.push_back(g.points().index_of(v));
    }
    std::sort(pts.begin(), pts.end());
    const auto l = g.find(pts);
    if (!l) throw std::logic_error("P P^q does not meet PG(3, q) in a line");
    out.push_back(*l);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::array<LineId, 3> reference_lines(const Pg3Geometry& g) {
  return {g.line_of(ProjPoint{1, 0, 0, 1}, ProjPoint{0, 1, 1, 0}), g.line_of(ProjPoint{1, 0, 0, 0}, ProjPoint{0, 1, 0, 0}),
          g.line_of(ProjPoint{0, 0, 1, 0}, ProjPoint{0, 0, 0, 1})};
}

CanonicalSpread canonical_spread(const Pg3Geometry& g, const PointTable& ext) {
  CanonicalSpread c;
  c.generators = reference_lines(g);
  const LineList r = regulus(c.generators[0], c.generators[1], c.generators[2], g);
  std::vector<std::uint8_t> used(g.num_points(), 0);
  for (LineId l : r)
    for (PointId p : g.line(l)) used[p] = 1;
  LineId fourth = 0;
  for (; fourth < g.num_lines(); ++fourth) {
    const auto pts = g.line(fourth);
    if (std::none_of(pts.begin(), pts.end(), [&](PointId p) { return used[p] != 0; })) break;
  }
  c.fourth = fourth;
  const LineId gens[] = {c.generators[0], c.generators[1], c.generators[2], fourth};
  ClosureResult closed = regular_closure(gens, g);
  if (!closed.ok || closed.lines.size() != spread_size(g))
    throw std::logic_error("closure of the reference lines is not a spread");
  c.spread.lines = std::move(closed.lines);
  c.spread.regular = is_regular_spread(c.spread.lines, g);
  auto carrier = carrier_line(c.spread.lines, g, ext);
  if (!carrier) throw std::logic_error("canonical spread has no carrier line");
  c.carrier = *carrier;
  c.spread.carrier = std::move(carrier);
  return c;
}

Collineation4 Collineation4::identity() {
  Collineation4 m;
  for (int i = 0; i < 4; ++i) m.at(i, i) = 1;
  return m;
}

bool is_invertible(const Collineation4& m, const Field& f) { return invert4(m.a, f).has_value(); }

Collineation4 canonicalizing_collineation(const Spread& s, const CanonicalSpread& canon, const Pg3Geometry& g,
                                          const PointTable& ext) {
  const FieldTower& t = g.tower();
  LineSet carrier;
  if (s.carrier) {
    carrier = *s.carrier;
  } else {
    auto found = carrier_line(s.lines, g, ext);
    if (!found) throw std::invalid_argument("spread has no carrier line (not regular?)");
    carrier = std::move(*found);
  }
  const auto m0 = carrier_frame(carrier, t, ext);
  const auto n0 = carrier_frame(canon.carrier, t, ext);
  const auto m0_inv = invert4(m0, t.ext());
  if (!m0_inv || !invert4(n0, t.ext())) throw std::logic_error("carrier frame matrix is singular");
  Collineation4 m;
  m.a = multiply4(n0, *m0_inv, t.ext());
  for (Elem e : m.a)
    if (!t.in_base(e)) throw std::logic_error("canonicalizing collineation is not defined over GF(q)");
  return m;
}

ProjPoint apply_collineation(const Collineation4& m, const Field& f, const ProjPoint& p) {
  if (p.size() != 4) throw std::invalid_argument("collineation acts on PG(3, .) points");
  if (!is_invertible(m, f)) throw std::invalid_argument("collineation matrix is singular");
  ProjPoint y(4);
  for (int i = 0; i < 4; ++i) {
    Elem s = 0;
    for (int j = 0; j < 4; ++j) s ^= f.mul(m.at(i, j), p[j]);
    y[i] = s;
  }
  return normalized(f, y);
}

PointId apply_collineation(const Collineation4& m, const Pg3Geometry& g, PointId p) {
  return g.points().index_of(apply_collineation(m, g.tower().base(), g.points().point_at(p)));
}

std::vector<PointId> apply_collineation(const Collineation4& m, const Pg3Geometry& g, std::span<const PointId> pts) {
  std::vector<PointId> out;
  out.reserve(pts.size());
  for (PointId p : pts) out.push_back(apply_collineation(m, g, p));
  std::sort(out.begin(), out.end());
  return out;
}

LineId apply_collineation_line(const Collineation4& m, const Pg3Geometry& g, LineId l) {
  const auto pts = g.line(l);
  return g.line_of(apply_collineation(m, g, pts[0]), apply_collineation(m, g, pts[1]));
}

LineList apply_collineation_lines(const Collineation4& m, const Pg3Geometry& g, std::span<const LineId> lines) {
  LineList out;
  out.reserve(lines.size());
  for (LineId l : lines) out.push_back(apply_collineation_line(m, g, l));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace arcforge
