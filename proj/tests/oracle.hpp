#pragma once

// Plane-unfolding walkers used as independent oracles for the tracer. They step
// through the square grid using only the neighbour permutations and the corner orbits.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "kvol/surface.hpp"

namespace oracle {

using kvol::Corner;
using kvol::CornerRef;
using kvol::Origami;
using kvol::Rational;

// The corner of a square from which a ray with direction (dx, dy) leaves, quadrants
// taken half-open as [k*pi/2, (k+1)*pi/2).
inline Corner departure_corner(std::int64_t dx, std::int64_t dy) {
  if (dx > 0 && dy >= 0) return Corner::BL;
  if (dx <= 0 && dy > 0) return Corner::BR;
  if (dx < 0 && dy <= 0) return Corner::TR;
  return Corner::TL;
}

// The corner a ray with direction (dx, dy) arrives at when it hits a lattice point.
inline Corner arrival_corner(std::int64_t dx, std::int64_t dy) {
  if (dx > 0 && dy > 0) return Corner::TR;
  if (dx < 0 && dy > 0) return Corner::TL;
  if (dx < 0 && dy < 0) return Corner::BL;
  return Corner::BR;
}

struct SaddleHit {
  CornerRef start;
  std::int64_t hx = 0;
  std::int64_t hy = 0;
};

// Does the straight segment with holonomy (hx, hy) leaving the singular vertex from
// square `s` (at its departure corner) end at a singular vertex with no vertex of
// any kind that is singular in its interior?
inline bool is_saddle_connection(const Origami& o, int s, std::int64_t hx, std::int64_t hy) {
  const std::int64_t ax = hx < 0 ? -hx : hx;
  const std::int64_t ay = hy < 0 ? -hy : hy;
  if (ay == 0 || ax == 0) {
    // Runs along a grid line; every integer step is a lattice point.
    const std::int64_t steps = ax + ay;
    for (std::int64_t k = 1; k <= steps; ++k) {
      Corner c;
      if (hx > 0) c = Corner::BR;
      else if (hx < 0) c = Corner::TL;
      else if (hy > 0) c = Corner::TR;
      else c = Corner::BL;
      const bool sing = o.is_singular(o.vertex_of({s, c}));
      if (k == steps) return sing;
      if (sing) return false;
      if (hx > 0) s = o.right(s);
      else if (hx < 0) s = o.left(s);
      else if (hy > 0) s = o.up(s);
      else s = o.down(s);
    }
    return false;
  }
  // Vertical grid lines are crossed at t = k/ax, horizontal ones at t = m/ay.
  std::int64_t k = 1, m = 1;
  while (true) {
    const std::int64_t lhs = k * ay, rhs = m * ax;
    if (lhs == rhs) {
      const bool sing = o.is_singular(o.vertex_of({s, arrival_corner(hx, hy)}));
      if (k == ax) return sing;
      if (sing) return false;
      s = hx > 0 ? o.right(s) : o.left(s);
      s = hy > 0 ? o.up(s) : o.down(s);
      ++k;
      ++m;
    } else if (lhs < rhs) {
      s = hx > 0 ? o.right(s) : o.left(s);
      ++k;
    } else {
      s = hy > 0 ? o.up(s) : o.down(s);
      ++m;
    }
  }
}

// Every (departure ray, holonomy) of a saddle connection with hx^2 + hy^2 <= bound.
// Each connection appears twice, once from each end.
inline std::vector<SaddleHit> all_saddle_rays(const Origami& o, std::int64_t bound) {
  std::vector<SaddleHit> out;
  std::int64_t r = 0;
  while ((r + 1) * (r + 1) <= bound) ++r;
  for (std::int64_t hx = -r; hx <= r; ++hx) {
    for (std::int64_t hy = -r; hy <= r; ++hy) {
      if ((hx == 0 && hy == 0) || hx * hx + hy * hy > bound) continue;
      const Corner c = departure_corner(hx, hy);
      for (int s = 0; s < o.num_squares(); ++s) {
        if (!o.is_singular(o.vertex_of({s, c}))) continue;
        if (is_saddle_connection(o, s, hx, hy)) out.push_back({{s, c}, hx, hy});
      }
    }
  }
  return out;
}

// Holonomy up to sign, normalised to hy > 0 or (hx > 0, hy == 0).
inline std::pair<std::int64_t, std::int64_t> unsigned_holonomy(std::int64_t hx, std::int64_t hy) {
  if (hy < 0 || (hy == 0 && hx < 0)) return {-hx, -hy};
  return {hx, hy};
}

struct WalkEnd {
  bool met_singular = false;
  int square = 0;
  Rational x, y;
  std::vector<int> squares;  // squares entered, in order
  // Crossings with the mid-line y = 1/2 (or x = 1/2 when `vertical_mid`), as (square,
  // coordinate along the mid-line), counted on half-open time intervals.
  std::vector<std::pair<int, Rational>> mid_hits;
};

inline std::optional<Corner> corner_at(const Rational& x, const Rational& y) {
  const Rational zero(0), one(1);
  if (x == zero && y == zero) return Corner::BL;
  if (x == one && y == zero) return Corner::BR;
  if (x == one && y == one) return Corner::TR;
  if (x == zero && y == one) return Corner::TL;
  return std::nullopt;
}

// Walk from the point (x, y) of square s along holonomy (hx, hy). Regular vertices are
// passed straight through; a singular one stops the walk.
inline WalkEnd walk(const Origami& o, int s, Rational x, Rational y, std::int64_t hx,
                    std::int64_t hy, bool vertical_mid = false) {
  WalkEnd w;
  Rational left(1);
  const Rational zero(0), one(1);
  while (true) {
    std::optional<Rational> tx, ty;
    if (hx > 0) tx = (one - x) / Rational(hx);
    if (hx < 0) tx = x / Rational(-hx);
    if (hy > 0) ty = (one - y) / Rational(hy);
    if (hy < 0) ty = y / Rational(-hy);
    Rational dt = left;
    if (tx && *tx < dt) dt = *tx;
    if (ty && *ty < dt) dt = *ty;
    const Rational half(1, 2);
    if (!vertical_mid && hy != 0) {
      const Rational t = (half - y) / Rational(hy);
      if (t >= zero && t < dt) w.mid_hits.emplace_back(s, x + t * Rational(hx));
    }
    if (vertical_mid && hx != 0) {
      const Rational t = (half - x) / Rational(hx);
      if (t >= zero && t < dt) w.mid_hits.emplace_back(s, y + t * Rational(hy));
    }
    x += dt * Rational(hx);
    y += dt * Rational(hy);
    left -= dt;
    const bool cross_x = tx && *tx == dt;
    const bool cross_y = ty && *ty == dt;
    if (!cross_x && !cross_y) break;
    if (auto c = corner_at(x, y); c && dt > zero) {
      if (o.is_singular(o.vertex_of({s, *c}))) {
        w.met_singular = true;
        break;
      }
    }
    if (cross_x) {
      s = hx > 0 ? o.right(s) : o.left(s);
      x = hx > 0 ? zero : one;
    }
    if (cross_y) {
      s = hy > 0 ? o.up(s) : o.down(s);
      y = hy > 0 ? zero : one;
    }
    w.squares.push_back(s);
    if (left == zero) break;
  }
  w.square = s;
  w.x = x;
  w.y = y;
  return w;
}

struct ClosedOrbit {
  bool met_singular = false;
  std::int64_t period = 0;     // holonomy = period * (p, q); 0 if it never closed
  std::vector<int> itinerary;  // rotated to its lexicographically smallest form
  std::vector<std::pair<int, Rational>> mid_hits;
};

// Follow the flow from a point until it closes or meets the singular vertex.
inline ClosedOrbit closed_orbit(const Origami& o, int s, Rational x, Rational y, std::int64_t p,
                                std::int64_t q, std::int64_t max_period = 1000,
                                bool vertical_mid = false) {
  ClosedOrbit orb;
  int cur = s;
  Rational cx = x, cy = y;
  const kvol::SurfacePoint home = kvol::canonical(o, {s, x, y});
  for (std::int64_t k = 1; k <= max_period; ++k) {
    const WalkEnd w = walk(o, cur, cx, cy, p, q, vertical_mid);
    if (w.met_singular) {
      orb.met_singular = true;
      return orb;
    }
    orb.itinerary.insert(orb.itinerary.end(), w.squares.begin(), w.squares.end());
    orb.mid_hits.insert(orb.mid_hits.end(), w.mid_hits.begin(), w.mid_hits.end());
    cur = w.square;
    cx = w.x;
    cy = w.y;
    if (kvol::canonical(o, {cur, cx, cy}) == home) {
      orb.period = k;
      auto& it = orb.itinerary;
      std::vector<int> best = it;
      for (std::size_t r = 1; r < it.size(); ++r) {
        std::vector<int> rot(it.begin() + r, it.end());
        rot.insert(rot.end(), it.begin(), it.begin() + r);
        best = std::min(best, rot);
      }
      it = best;
      return orb;
    }
  }
  return orb;
}

// Cylinders in primitive direction (p, q), found from closed orbits through sample
// points on a mid-line transversal. Samples are joined when one orbit passes through
// both, and neighbouring samples are joined when the single candidate point between
// them is not on a separatrix. Returns the period of each cylinder, and false in
// `consistent` if a component mixed periods or an orbit missed the samples.
struct SampledCylinders {
  std::vector<std::int64_t> periods;
  bool consistent = true;
};

inline SampledCylinders sampled_cylinders(const Origami& o, std::int64_t p, std::int64_t q) {
  const std::int64_t den = q != 0 ? (q < 0 ? -q : q) : 1;
  const std::int64_t per = 2 * den;  // samples per square
  const int n = o.num_squares();
  auto point = [&](int s, std::int64_t num) {
    const Rational t(num, 4 * den);
    return q != 0 ? kvol::SurfacePoint{s, t, Rational(1, 2)} : kvol::SurfacePoint{s, Rational(1, 2), t};
  };
  const bool vertical = q == 0;
  auto on_separatrix = [&](const kvol::SurfacePoint& c) {
    return closed_orbit(o, c.square, c.x, c.y, p, q, 1000, vertical).met_singular;
  };
  std::vector<std::size_t> parent(static_cast<std::size_t>(n * per));
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int s = 0; s < n; ++s) {
    for (std::int64_t j = 0; j + 1 < per; ++j) {
      if (!on_separatrix(point(s, 2 * j + 2))) parent[find(s * per + j)] = find(s * per + j + 1);
    }
    // Across the edge into the next square along the transversal.
    const int next = q != 0 ? o.right(s) : o.up(s);
    if (!on_separatrix(point(next, 0))) parent[find(s * per + per - 1)] = find(next * per);
  }
  SampledCylinders out;
  std::vector<std::int64_t> period(parent.size(), 0);
  for (int s = 0; s < n; ++s) {
    for (std::int64_t j = 0; j < per; ++j) {
      const kvol::SurfacePoint pt = point(s, 2 * j + 1);
      const ClosedOrbit orb = closed_orbit(o, s, pt.x, pt.y, p, q, 1000, vertical);
      if (orb.period == 0) {
        out.consistent = false;
        continue;
      }
      period[s * per + j] = orb.period;
      for (const auto& [hs, c] : orb.mid_hits) {
        const Rational scaled = c * Rational(4 * den);
        if (scaled.denominator() != 1 || scaled.numerator() % 2 == 0) {
          out.consistent = false;
          continue;
        }
        const std::size_t idx = hs * per + (scaled.numerator() - 1) / 2;
        parent[find(idx)] = find(s * per + j);
      }
    }
  }
  std::map<std::size_t, std::int64_t> comp;
  for (std::size_t i = 0; i < parent.size(); ++i) {
    if (period[i] == 0) continue;
    auto [it, fresh] = comp.emplace(find(i), period[i]);
    if (!fresh && it->second != period[i]) out.consistent = false;
  }
  for (const auto& [root, period] : comp) out.periods.push_back(period);
  std::sort(out.periods.begin(), out.periods.end());
  return out;
}

}  // namespace oracle
