#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "kvol/intersection.hpp"
#include "kvol/tracer.hpp"
#include "oracle.hpp"

using namespace kvol;

namespace {

std::multiset<std::pair<std::int64_t, std::int64_t>> tracer_holonomies(const Origami& o,
                                                                       std::int64_t bound) {
  std::multiset<std::pair<std::int64_t, std::int64_t>> out;
  for (const auto& c : saddle_connections(o, bound)) out.insert(oracle::unsigned_holonomy(c.hx, c.hy));
  return out;
}

std::multiset<std::pair<std::int64_t, std::int64_t>> oracle_holonomies(const Origami& o,
                                                                       std::int64_t bound) {
  std::map<std::pair<std::int64_t, std::int64_t>, std::size_t> counts;
  for (const auto& h : oracle::all_saddle_rays(o, bound)) ++counts[oracle::unsigned_holonomy(h.hx, h.hy)];
  std::multiset<std::pair<std::int64_t, std::int64_t>> out;
  for (const auto& [h, k] : counts) {
    // Each connection is found once from each end.
    REQUIRE(k % 2 == 0);
    for (std::size_t i = 0; i < k / 2; ++i) out.insert(h);
  }
  return out;
}

}  // namespace

TEST_CASE("directions") {
  CHECK(make_direction(1, 2) == Direction{1, 2});
  CHECK(make_direction(-1, 0) == Direction{-1, 0});
  CHECK_THROWS(make_direction(2, 4));
  CHECK_THROWS(make_direction(0, 0));
  CHECK(is_canonical({1, 0}));
  CHECK(is_canonical({-2, 1}));
  CHECK_FALSE(is_canonical({-1, 0}));
  CHECK_FALSE(is_canonical({1, -1}));
  const auto dirs = canonical_directions(5);
  CHECK(dirs.size() == 8);  // (1,0) (0,1) (+-1,1) (+-2,1) (+-1,2)
  for (const auto& d : dirs) CHECK(is_canonical(d));
  CHECK(quadrant(1, 0) == 0);
  CHECK(quadrant(0, 1) == 1);
  CHECK(quadrant(-1, 0) == 2);
  CHECK(quadrant(0, -1) == 3);
  CHECK(quadrant(1, -1) == 3);
}

TEST_CASE("step examples on L(3,3)") {
  const Origami o = build_l_shape({3, 3});
  const StepOutcome a = step(o, {0, Rational(0), Rational(1, 2)}, {1, 0});
  REQUIRE(a.next.has_value());
  CHECK(*a.next == SurfacePoint{1, Rational(0), Rational(1, 2)});

  const StepOutcome b = step(o, {0, Rational(0), Rational(0)}, {1, 1});
  CHECK_FALSE(b.next.has_value());
  CHECK(b.singular_vertex.has_value());

  const StepOutcome c = step(o, {2, Rational(0), Rational(1, 2)}, {1, 0});
  REQUIRE(c.next.has_value());
  CHECK(*c.next == SurfacePoint{0, Rational(0), Rational(1, 2)});
}

TEST_CASE("saddle connections match the brute-force oracle") {
  struct Case {
    int a, b;
    std::int64_t bound;
  };
  for (const Case& c : {Case{3, 3, 1}, Case{2, 2, 2}, Case{2, 2, 25}, Case{3, 3, 25}, Case{4, 3, 20},
                        Case{5, 5, 25}}) {
    const Origami o = build_l_shape({c.a, c.b});
    CAPTURE(c.a);
    CAPTURE(c.b);
    CAPTURE(c.bound);
    CHECK(tracer_holonomies(o, c.bound) == oracle_holonomies(o, c.bound));
  }
}

TEST_CASE("unit saddle connections of L(3,3)") {
  const Origami o = build_l_shape({3, 3});
  const auto scs = saddle_connections(o, 1);
  CHECK(scs.size() == oracle_holonomies(o, 1).size());
  std::set<std::string> keys;
  for (const auto& c : scs) {
    CHECK(c.sq_len == 1);
    CHECK((c.direction == Direction{1, 0} || c.direction == Direction{0, 1}));
    keys.insert(c.key);
  }
  for (MarkedCurve m : {MarkedCurve::e1, MarkedCurve::e1p, MarkedCurve::f1, MarkedCurve::f1p}) {
    CHECK(keys.count(trace_marked(o, m).key) == 1);
  }
}

TEST_CASE("g and h are the diagonal connections of C") {
  const Origami o = build_l_shape({3, 3});
  const TracedCurve h = trace_marked(o, MarkedCurve::h);
  const TracedCurve g = trace_marked(o, MarkedCurve::g);
  CHECK(h.sq_len == 2);
  CHECK(g.sq_len == 2);
  CHECK(h.direction == Direction{1, 1});
  CHECK(g.direction == Direction{1, -1});
  // Both diagonals of C, each met once among the enumerated connections.
  std::size_t diag_plus = 0, diag_minus = 0;
  for (const auto& c : saddle_connections(o, 2)) {
    if (c.sq_len != 2 || !c.departure) continue;
    const bool in_c = c.crossings.size() == 1 && c.crossings[0].square == 0;
    if (in_c && c.direction == Direction{1, 1}) ++diag_plus;
    if (in_c && c.direction == Direction{-1, 1}) ++diag_minus;
  }
  CHECK(diag_plus == 1);
  CHECK(diag_minus == 1);
}

TEST_CASE("horizontal and vertical cylinders of L(3,3)") {
  const Origami o = build_l_shape({3, 3});
  const auto horiz = cylinders_in_direction(o, {1, 0});
  REQUIRE(horiz.size() == 2);
  std::multiset<std::pair<std::int64_t, std::int64_t>> circ_area;
  for (const auto& c : horiz) circ_area.insert({c.core.period, c.area()});
  CHECK(circ_area == std::multiset<std::pair<std::int64_t, std::int64_t>>{{1, 2}, {3, 3}});
  const auto pool = curve_pool(o, 9);
  for (const auto& c : horiz) {
    const auto it = std::find_if(pool.begin(), pool.end(),
                                 [&](const TracedCurve& x) { return x.key == c.core.key; });
    REQUIRE(it != pool.end());
    REQUIRE(it->homology.has_value());
    if (c.core.period == 1) CHECK(*it->homology == HomologyClass{{0, 0, 1, 0}});
    if (c.core.period == 3) CHECK(*it->homology == HomologyClass{{1, 0, 1, 0}});
  }

  const auto vert = cylinders_in_direction(o, {0, 1});
  REQUIRE(vert.size() == 2);
  std::multiset<std::pair<std::int64_t, std::int64_t>> v;
  for (const auto& c : vert) v.insert({c.core.period, c.area()});
  CHECK(v == std::multiset<std::pair<std::int64_t, std::int64_t>>{{1, 2}, {3, 3}});
}

TEST_CASE("cylinders match the sampling oracle") {
  for (auto [a, b] : {std::pair{3, 3}, {4, 3}, {5, 5}, {2, 2}}) {
    const Origami o = build_l_shape({a, b});
    for (const Direction& d : canonical_directions(26)) {
      CAPTURE(a);
      CAPTURE(d.p);
      CAPTURE(d.q);
      const auto cyl = cylinders_in_direction(o, d);
      const auto sampled = oracle::sampled_cylinders(o, d.p, d.q);
      std::multiset<std::int64_t> tracer_periods, oracle_periods;
      std::int64_t total_area = 0;
      for (const auto& c : cyl) {
        tracer_periods.insert(c.core.period);
        total_area += c.area();
      }
      oracle_periods.insert(sampled.periods.begin(), sampled.periods.end());
      CHECK(sampled.consistent);
      CHECK(tracer_periods == oracle_periods);
      CHECK(total_area == o.num_squares());
    }
  }
}

TEST_CASE("(1,1) cylinders on L(3,3) against 100 random sample points") {
  const Origami o = build_l_shape({3, 3});
  const auto cyl = cylinders_in_direction(o, {1, 1});
  std::set<std::int64_t> periods;
  for (const auto& c : cyl) periods.insert(c.core.period);
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> sq(0, o.num_squares() - 1);
  std::uniform_int_distribution<std::int64_t> num(1, 996);
  std::set<std::int64_t> seen;
  int sampled = 0;
  while (sampled < 100) {
    const Rational x(num(rng), 997), y(num(rng), 997);
    const auto orb = oracle::closed_orbit(o, sq(rng), x, y, 1, 1);
    if (orb.met_singular) continue;  // on a separatrix
    ++sampled;
    REQUIRE(orb.period > 0);
    CHECK(periods.count(orb.period) == 1);
    seen.insert(orb.period);
  }
  CHECK(seen == periods);
}

TEST_CASE("cylinder cores avoid the vertices and close up") {
  const Origami o = build_l_shape({4, 4});
  for (const Direction& d : canonical_directions(40)) {
    for (const auto& c : cylinders_in_direction(o, d)) {
      CHECK_FALSE(c.core.passes_singularity());
      CHECK(c.core.sq_len == c.core.period * c.core.period * d.sq_norm());
      CHECK(c.core.hx == c.core.period * d.p);
      CHECK(c.core.hy == c.core.period * d.q);
      for (const auto& seg : c.core.crossings) {
        const bool corner0 = (seg.x0 == Rational(0) || seg.x0 == Rational(1)) &&
                             (seg.y0 == Rational(0) || seg.y0 == Rational(1));
        CHECK_FALSE(corner0);
      }
    }
  }
}

TEST_CASE("reverse traces return exactly") {
  const Origami o = build_l_shape({4, 3});
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::int64_t> num(1, 10006);
  std::uniform_int_distribution<int> sq(0, o.num_squares() - 1);
  std::uniform_int_distribution<std::int64_t> comp(-6, 6);
  int reversed = 0;
  for (int t = 0; t < 200; ++t) {
    const std::int64_t p = comp(rng), q = comp(rng);
    if (std::gcd(p, q) != 1) continue;
    const Direction d = make_direction(p, q);
    const SurfacePoint start{sq(rng), Rational(num(rng), 10007), Rational(num(rng), 10007)};
    const TraceResult fwd = trace(o, start, d, 50);
    if (fwd.segments.empty()) continue;
    const Segment& last = fwd.segments.back();
    const SurfacePoint end{last.square, last.x1, last.y1};
    if (fwd.end == TraceEnd::singular) continue;
    if (fwd.end == TraceEnd::closed) {
      CHECK(canonical(o, end) == canonical(o, start));
      CHECK(fwd.time.denominator() == 1);
      continue;
    }
    const TraceResult back = trace(o, end, d.reversed());
    REQUIRE_FALSE(back.segments.empty());
    // The reverse leg reaches the start after the same elapsed time.
    Rational reached = Rational(-1);
    for (const Segment& s : back.segments) {
      if (s.square != start.square) continue;
      // Is start on this segment, at parameter tau?
      const Rational dx = start.x - s.x0, dy = start.y - s.y0;
      const Rational ux(d.reversed().p), uy(d.reversed().q);
      if (dx * uy != dy * ux) continue;
      const Rational tau = ux != Rational(0) ? dx / ux : dy / uy;
      if (tau < Rational(0) || tau > s.t1 - s.t0) continue;
      reached = s.t0 + tau;
      break;
    }
    CAPTURE(t);
    CHECK(reached == last.t1);
    ++reversed;
  }
  CHECK(reversed > 50);
}

TEST_CASE("curve pool contents and length filter") {
  const Origami o = build_l_shape({3, 3});
  auto has = [](const std::vector<TracedCurve>& pool, const TracedCurve& c) {
    return std::any_of(pool.begin(), pool.end(),
                       [&](const TracedCurve& x) { return x.key == c.key; });
  };
  const auto p1 = curve_pool(o, 1);
  CHECK(has(p1, trace_marked(o, MarkedCurve::e1)));
  CHECK(has(p1, trace_marked(o, MarkedCurve::f1)));
  for (const auto& c : p1) CHECK(c.sq_len <= 1);

  const auto p4 = curve_pool(o, 4);
  bool column_core = false, b_core = false;
  for (const auto& c : p4) {
    CHECK(c.sq_len <= 4);
    if (c.kind == CurveKind::cylinder_core && c.direction == Direction{0, 1}) {
      if (c.period == 3) column_core = true;
      if (c.period == 1) b_core = true;
    }
  }
  CHECK_FALSE(column_core);
  CHECK(b_core);
  CHECK(has(curve_pool(o, 9), trace_marked(o, MarkedCurve::e1)));
}

TEST_CASE("pool size against brute force on L(5,5) at 25") {
  const Origami o = build_l_shape({5, 5});
  const std::int64_t k = 25;
  std::size_t expected = oracle_holonomies(o, k).size();
  for (const Direction& d : canonical_directions(k)) {
    for (std::int64_t period : oracle::sampled_cylinders(o, d.p, d.q).periods) {
      if (period * period * d.sq_norm() <= k) ++expected;
    }
  }
  const auto pool = curve_pool(o, k);
  CHECK(pool.size() == expected);
  std::set<std::string> keys, ids;
  for (const auto& c : pool) {
    keys.insert(c.key);
    ids.insert(c.id);
    CHECK(c.homology.has_value());
  }
  CHECK(keys.size() == pool.size());
  CHECK(ids.size() == pool.size());
}

TEST_CASE("pool is closed under a larger bound") {
  const Origami o = build_l_shape({4, 4});
  const auto small = curve_pool(o, 50);
  const auto large = curve_pool(o, 100);
  std::set<std::string> big;
  for (const auto& c : large) big.insert(c.key);
  for (const auto& c : small) CHECK(big.count(c.key) == 1);
  std::size_t within = 0;
  for (const auto& c : large) within += c.sq_len <= 50;
  CHECK(within == small.size());
}

TEST_CASE("workers do not change the pool") {
  const Origami o = build_l_shape({4, 4});
  const auto one = curve_pool(o, 64, 1);
  const auto four = curve_pool(o, 64, 4);
  REQUIRE(one.size() == four.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].id == four[i].id);
    CHECK(one[i].homology == four[i].homology);
  }
}

TEST_CASE("iterates") {
  const Origami o = build_l_shape({3, 3});
  const auto cyl = cylinders_in_direction(o, {1, 1});
  REQUIRE_FALSE(cyl.empty());
  const TracedCurve c3 = iterate(cyl[0].core, 3);
  CHECK(c3.period == 3 * cyl[0].core.period);
  CHECK(c3.sq_len == 9 * cyl[0].core.sq_len);
  CHECK(c3.crossings.size() == 3 * cyl[0].core.crossings.size());
}

TEST_CASE("non-H(2) origami") {
  const Origami torus({0}, {0});
  CHECK(saddle_connections(torus, 10).empty());
  const auto cyl = cylinders_in_direction(torus, {2, 1});
  REQUIRE(cyl.size() == 1);
  CHECK(cyl[0].core.sq_len == 5);
  CHECK(cyl[0].area() == 1);
}
