#include "kvol/intersection.hpp"

#include <algorithm>
#include <map>
#include <thread>
#include <tuple>

namespace kvol {

namespace {

Rational cross(const Rational& ax, const Rational& ay, const Rational& bx, const Rational& by) {
  return ax * by - ay * bx;
}

bool at_corner(const Rational& x, const Rational& y) {
  const Rational zero(0), one(1);
  return (x == zero || x == one) && (y == zero || y == one);
}

/// Curve time modulo one period, so a meeting found at t = 0 and t = period counts once.
Rational reduce_time(const Rational& t, std::int64_t period) {
  if (period <= 0) return t;
  const Rational p(period);
  const Rational q = t / p;
  const std::int64_t whole = q.numerator() / q.denominator() - (q < Rational(0) ? 1 : 0);
  Rational r = t - p * Rational(whole);
  if (r >= p) r -= p;
  return r;
}

// A crossing is identified by its point and the two curve times, so an iterate that
// passes the same point several times counts every passage.
using CrossingKey = std::tuple<int, Rational, Rational, Rational, Rational>;

/// x lies strictly inside the counter-clockwise arc from a to b.
bool strictly_between(const RayKey& a, const RayKey& x, const RayKey& b) {
  if (ray_less(a, b)) return ray_less(a, x) && ray_less(x, b);
  return ray_less(a, x) || ray_less(x, b);
}

}  // namespace

int passage_term(const ConePassage& p1, const ConePassage& p2) {
  if (p1.vertex != p2.vertex) return 0;
  if (p2.in == p1.in || p2.in == p1.out || p2.out == p1.in || p2.out == p1.out) {
    throw DegeneratePair("curves share a ray at a vertex");
  }
  // L: arc from out1 to in1; R: arc from in1 to out1.
  const bool in_left = strictly_between(p1.out, p2.in, p1.in);
  const bool out_left = strictly_between(p1.out, p2.out, p1.in);
  if (!in_left && out_left) return 1;
  if (in_left && !out_left) return -1;
  return 0;
}

std::vector<CrossingPoint> interior_crossings(const Origami& o, const TracedCurve& c1,
                                              const TracedCurve& c2) {
  if (c1.key == c2.key) throw DegeneratePair("a curve paired with itself");
  std::multimap<int, const Segment*> by_square;
  for (const Segment& s : c2.crossings) by_square.emplace(s.square, &s);

  const Rational p1(c1.direction.p), q1(c1.direction.q);
  const Rational p2(c2.direction.p), q2(c2.direction.q);
  const Rational cr = cross(p1, q1, p2, q2);
  const int sign = cr > Rational(0) ? 1 : (cr < Rational(0) ? -1 : 0);

  std::map<CrossingKey, CrossingPoint> found;
  for (const Segment& s1 : c1.crossings) {
    const Rational len1 = s1.t1 - s1.t0;
    auto [lo, hi] = by_square.equal_range(s1.square);
    for (auto it = lo; it != hi; ++it) {
      const Segment& s2 = *it->second;
      const Rational len2 = s2.t1 - s2.t0;
      const Rational wx = s2.x0 - s1.x0;
      const Rational wy = s2.y0 - s1.y0;
      if (sign == 0) {
        if (cross(wx, wy, p1, q1) != Rational(0)) continue;
        // Collinear: compare parameter ranges along d1.
        const Rational norm = p1 * p1 + q1 * q1;
        const Rational a = (wx * p1 + wy * q1) / norm;
        const Rational dir = (p2 * p1 + q2 * q1) / norm;
        Rational b = a + dir * len2;
        Rational first = a;
        if (b < first) std::swap(first, b);
        const Rational start = std::max(first, Rational(0));
        const Rational end = std::min(b, len1);
        if (start < end) throw DegeneratePair("parallel curves share a segment");
        continue;
      }
      const Rational u = cross(wx, wy, p2, q2) / cr;
      const Rational v = cross(wx, wy, p1, q1) / cr;
      if (u < Rational(0) || u > len1 || v < Rational(0) || v > len2) continue;
      const Rational x = s1.x0 + u * p1;
      const Rational y = s1.y0 + u * q1;
      if (at_corner(x, y)) continue;
      const SurfacePoint pt = canonical(o, {s1.square, x, y});
      const Rational t1 = reduce_time(s1.t0 + u, c1.period);
      const Rational t2 = reduce_time(s2.t0 + v, c2.period);
      found.emplace(CrossingKey{pt.square, pt.x, pt.y, t1, t2}, CrossingPoint{pt, t1, t2, sign});
    }
  }
  std::vector<CrossingPoint> out;
  out.reserve(found.size());
  for (auto& [k, c] : found) out.push_back(c);
  return out;
}

std::int64_t vertex_term(const Origami& o, const TracedCurve& c1, const TracedCurve& c2) {
  const auto v1 = vertex_passages(o, c1);
  if (v1.empty()) return 0;
  const auto v2 = vertex_passages(o, c2);
  std::int64_t total = 0;
  for (const auto& a : v1)
    for (const auto& b : v2) total += passage_term(a, b);
  return total;
}

std::vector<CrossingPoint> signed_crossings(const Origami& o, const TracedCurve& c1,
                                            const TracedCurve& c2) {
  std::vector<CrossingPoint> out = interior_crossings(o, c1, c2);
  const auto v1 = vertex_passages(o, c1);
  const auto v2 = vertex_passages(o, c2);
  for (const auto& a : v1) {
    for (const auto& b : v2) {
      const int term = passage_term(a, b);
      if (term == 0) continue;
      const CornerRef at = o.vertex_corners(a.vertex).front();
      out.push_back({canonical(o, corner_point(at)), a.time, b.time, term});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const CrossingPoint& x, const CrossingPoint& y) { return x.t1 < y.t1; });
  return out;
}

std::int64_t geometric_intersection(const Origami& o, const TracedCurve& c1,
                                    const TracedCurve& c2) {
  std::int64_t total = vertex_term(o, c1, c2);
  for (const auto& c : interior_crossings(o, c1, c2)) total += c.sign;
  return total;
}

std::int64_t crossing_count(const Origami& o, const TracedCurve& c1, const TracedCurve& c2) {
  auto total = static_cast<std::int64_t>(interior_crossings(o, c1, c2).size());
  const auto v1 = vertex_passages(o, c1);
  const auto v2 = vertex_passages(o, c2);
  for (const auto& a : v1)
    for (const auto& b : v2) total += passage_term(a, b) != 0 ? 1 : 0;
  return total;
}

BasisCurves basis_curves(const Origami& o) {
  return {trace_marked(o, MarkedCurve::e2), trace_marked(o, MarkedCurve::f1),
          trace_marked(o, MarkedCurve::e1), trace_marked(o, MarkedCurve::f2)};
}

HomologyClass coords_of(const Origami& o, const TracedCurve& c, const BasisCurves& basis) {
  std::array<std::int64_t, 4> pairings{};
  for (int i = 0; i < 4; ++i) {
    if (c.key == basis[i].key) continue;
    pairings[i] = geometric_intersection(o, c, basis[i]);
  }
  return class_from_pairings(pairings);
}

void attach_homology(const Origami& o, std::vector<TracedCurve>& pool, int workers) {
  const BasisCurves basis = basis_curves(o);
  const std::size_t nthreads = static_cast<std::size_t>(std::max(1, workers));
  auto work = [&](std::size_t begin) {
    for (std::size_t i = begin; i < pool.size(); i += nthreads) {
      pool[i].homology = coords_of(o, pool[i], basis);
    }
  };
  if (nthreads == 1) {
    work(0);
    return;
  }
  std::vector<std::thread> threads;
  for (std::size_t t = 0; t < nthreads; ++t) threads.emplace_back(work, t);
  for (auto& th : threads) th.join();
}

}  // namespace kvol
