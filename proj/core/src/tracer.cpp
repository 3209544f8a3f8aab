#include "kvol/tracer.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <thread>

#include "kvol/intersection.hpp"

namespace kvol {

namespace {

Corner corner_at(const Rational& x, const Rational& y) {
  const Rational zero(0);
  if (x == zero) return y == zero ? Corner::BL : Corner::TL;
  return y == zero ? Corner::BR : Corner::TR;
}

bool is_unit_endpoint(const Rational& v) { return v == Rational(0) || v == Rational(1); }

int corner_type(Corner c) { return static_cast<int>(c); }

std::string rational_token(const Rational& r) { return to_string(r); }

std::string direction_token(const Direction& d) {
  return std::to_string(d.p) + ":" + std::to_string(d.q);
}

}  // namespace

Direction make_direction(std::int64_t p, std::int64_t q) {
  if (p == 0 && q == 0) throw Error("direction must be nonzero");
  if (std::gcd(p, q) != 1) throw Error("direction must be primitive");
  return {p, q};
}

bool is_canonical(const Direction& d) {
  return std::gcd(d.p, d.q) == 1 && (d.q > 0 || (d.q == 0 && d.p == 1));
}

std::vector<Direction> canonical_directions(std::int64_t max_sq_len) {
  std::vector<Direction> out;
  if (max_sq_len < 1) return out;
  out.push_back({1, 0});
  std::int64_t r = 0;
  while ((r + 1) * (r + 1) <= max_sq_len) ++r;
  for (std::int64_t q = 1; q <= r; ++q) {
    for (std::int64_t p = -r; p <= r; ++p) {
      if (p * p + q * q > max_sq_len) continue;
      if (std::gcd(p, q) != 1) continue;
      out.push_back({p, q});
    }
  }
  return out;
}

int quadrant(std::int64_t x, std::int64_t y) {
  if (x > 0 && y >= 0) return 0;
  if (x <= 0 && y > 0) return 1;
  if (x < 0 && y <= 0) return 2;
  return 3;
}

int ray_position(const Origami& o, CornerRef c, std::int64_t ux, std::int64_t uy) {
  const int pos = o.corner_position(c);
  const int q = quadrant(ux, uy);
  const int t = corner_type(c.corner);
  if (q == t) return pos;
  if (q == (t + 1) % 4) {
    const auto size = static_cast<int>(o.vertex_corners(o.vertex_of(c)).size());
    return (pos + 1) % size;
  }
  throw Error("ray does not touch the corner it was attributed to");
}

bool ray_less(const RayKey& a, const RayKey& b) {
  if (a.position != b.position) return a.position < b.position;
  return a.dx * b.dy - a.dy * b.dx > 0;
}

std::string_view kind_name(CurveKind k) {
  return k == CurveKind::saddle_connection ? "saddle_connection" : "cylinder_core";
}

SurfacePoint normalize(const Origami& o, SurfacePoint pt, const Direction& d) {
  const Rational zero(0), one(1);
  if (d.p < 0 && pt.x == zero) {
    pt.square = o.left(pt.square);
    pt.x = one;
  } else if (d.p > 0 && pt.x == one) {
    pt.square = o.right(pt.square);
    pt.x = zero;
  }
  if (d.q < 0 && pt.y == zero) {
    pt.square = o.down(pt.square);
    pt.y = one;
  } else if (d.q > 0 && pt.y == one) {
    pt.square = o.up(pt.square);
    pt.y = zero;
  }
  // Runs along an edge are stored in the square above / to the right of it.
  if (d.q == 0 && pt.y == one) {
    pt.square = o.up(pt.square);
    pt.y = zero;
  }
  if (d.p == 0 && pt.x == one) {
    pt.square = o.right(pt.square);
    pt.x = zero;
  }
  return pt;
}

SurfacePoint corner_point(CornerRef c) {
  switch (c.corner) {
    case Corner::BL: return {c.square, 0, 0};
    case Corner::BR: return {c.square, 1, 0};
    case Corner::TR: return {c.square, 1, 1};
    case Corner::TL: return {c.square, 0, 1};
  }
  return {c.square, 0, 0};
}

CornerRef corner_for_ray(const Origami& o, CornerRef c, const Direction& d) {
  const int q = quadrant(d.p, d.q);
  const int t = corner_type(c.corner);
  if (q == t) return c;
  if (q == (t + 1) % 4) return o.rotate(c);
  throw Error("direction does not leave through this corner");
}

StepOutcome step(const Origami& o, SurfacePoint pt, const Direction& d, const Rational& t0) {
  const Rational one(1);
  std::optional<Rational> tx, ty;
  if (d.p > 0) tx = (one - pt.x) / d.p;
  if (d.p < 0) tx = pt.x / (-d.p);
  if (d.q > 0) ty = (one - pt.y) / d.q;
  if (d.q < 0) ty = pt.y / (-d.q);
  Rational t;
  if (tx && ty) {
    t = std::min(*tx, *ty);
  } else {
    t = tx ? *tx : *ty;
  }
  if (t <= Rational(0)) throw Error("degenerate step: point was not normalized");

  StepOutcome out;
  const Rational ex = pt.x + t * d.p;
  const Rational ey = pt.y + t * d.q;
  out.segment = {pt.square, pt.x, pt.y, ex, ey, t0, t0 + t};

  if (is_unit_endpoint(ex) && is_unit_endpoint(ey)) {
    const CornerRef c{pt.square, corner_at(ex, ey)};
    const int v = o.vertex_of(c);
    const int in_pos = ray_position(o, c, -d.p, -d.q);
    out.arrival = RayKey{in_pos, -d.p, -d.q};
    if (o.is_singular(v)) {
      out.singular_vertex = v;
      return out;
    }
    const CornerRef leave = o.vertex_corners(v)[(in_pos + 2) % 4];
    out.next = normalize(o, corner_point(leave), d);
    return out;
  }
  out.next = normalize(o, {pt.square, ex, ey}, d);
  return out;
}

TraceResult trace(const Origami& o, SurfacePoint start, const Direction& d,
                  std::optional<std::int64_t> max_sq_len) {
  TraceResult r;
  const SurfacePoint origin = normalize(o, start, d);
  SurfacePoint cur = origin;
  const std::int64_t norm = d.sq_norm();
  for (;;) {
    StepOutcome s = step(o, cur, d, r.time);
    // A leaf returns to an interior start at an integer time, possibly mid-segment.
    if (s.segment.square == origin.square) {
      const Rational& t0 = s.segment.t0;
      const std::int64_t k = t0.numerator() / t0.denominator() + 1;
      const Rational tk(k);
      if (k > 0 && tk <= s.segment.t1 && s.segment.x0 + (tk - t0) * Rational(d.p) == origin.x &&
          s.segment.y0 + (tk - t0) * Rational(d.q) == origin.y) {
        s.segment.x1 = origin.x;
        s.segment.y1 = origin.y;
        s.segment.t1 = tk;
        r.time = tk;
        r.segments.push_back(std::move(s.segment));
        r.end = max_sq_len && r.time * r.time * norm > Rational(*max_sq_len) ? TraceEnd::too_long
                                                                              : TraceEnd::closed;
        return r;
      }
    }
    r.time = s.segment.t1;
    r.segments.push_back(std::move(s.segment));
    if (s.singular_vertex) {
      r.end = TraceEnd::singular;
      r.vertex = s.singular_vertex;
      r.arrival = s.arrival;
      if (max_sq_len && r.time * r.time * norm > Rational(*max_sq_len)) r.end = TraceEnd::too_long;
      return r;
    }
    if (max_sq_len && r.time * r.time * norm > Rational(*max_sq_len)) {
      r.end = TraceEnd::too_long;
      return r;
    }
    cur = *s.next;
    if (cur == origin) {
      r.end = TraceEnd::closed;
      return r;
    }
  }
}

std::optional<TracedCurve> trace_separatrix(const Origami& o, CornerRef corner, const Direction& d,
                                            std::optional<std::int64_t> max_sq_len) {
  if (quadrant(d.p, d.q) != corner_type(corner.corner)) {
    throw Error("separatrix direction outside its departure corner");
  }
  const int v0 = o.vertex_of(corner);
  TraceResult r = trace(o, corner_point(corner), d, max_sq_len);
  if (r.end != TraceEnd::singular || *r.vertex != v0) return std::nullopt;
  if (r.time.denominator() != 1) throw Error("saddle connection with non-integral holonomy");
  TracedCurve c;
  c.kind = CurveKind::saddle_connection;
  c.direction = d;
  c.period = r.time.numerator();
  c.hx = c.period * d.p;
  c.hy = c.period * d.q;
  c.sq_len = c.hx * c.hx + c.hy * c.hy;
  c.crossings = std::move(r.segments);
  c.passage = ConePassage{v0, *r.arrival, RayKey{o.corner_position(corner), d.p, d.q}, r.time};
  c.departure = corner;
  c.key = curve_key(c);
  return c;
}

std::vector<TracedCurve> saddle_connections_in_direction(
    const Origami& o, const Direction& d, std::optional<std::int64_t> max_sq_len) {
  std::vector<TracedCurve> out;
  if (max_sq_len && d.sq_norm() > *max_sq_len) return out;
  const int type = quadrant(d.p, d.q);
  for (int v = 0; v < o.num_vertices(); ++v) {
    if (!o.is_singular(v)) continue;
    for (const CornerRef& c : o.vertex_corners(v)) {
      if (corner_type(c.corner) != type) continue;
      if (auto sc = trace_separatrix(o, c, d, max_sq_len)) out.push_back(std::move(*sc));
    }
  }
  return out;
}

std::vector<TracedCurve> saddle_connections(const Origami& o, std::int64_t max_sq_len) {
  std::vector<TracedCurve> out;
  for (const Direction& d : canonical_directions(max_sq_len)) {
    auto part = saddle_connections_in_direction(o, d, max_sq_len);
    std::sort(part.begin(), part.end(),
              [](const TracedCurve& x, const TracedCurve& y) { return x.key < y.key; });
    for (std::size_t i = 0; i < part.size(); ++i) {
      part[i].id = "sc:" + direction_token(d) + ":" + std::to_string(i);
      out.push_back(std::move(part[i]));
    }
  }
  return out;
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(int x, int y) {
    x = find(x);
    y = find(y);
    if (x != y) parent_[std::max(x, y)] = std::min(x, y);
  }

 private:
  std::vector<int> parent_;
};

// The transversal is the union of bottom edges (q != 0) or left edges (q == 0). Each
// edge carries `den` grid points j/den and the open intervals between them.
struct Transversal {
  const Origami& o;
  Direction d;
  std::int64_t den;
  bool bottom;

  int count() const { return o.num_squares() * static_cast<int>(den); }
  SurfacePoint grid_point(int idx) const {
    const int s = idx / static_cast<int>(den);
    const Rational c(idx % den, den);
    return bottom ? SurfacePoint{s, c, 0} : SurfacePoint{s, 0, c};
  }
  SurfacePoint midpoint(int idx) const {
    const int s = idx / static_cast<int>(den);
    const Rational c(2 * (idx % den) + 1, 2 * den);
    return bottom ? SurfacePoint{s, c, 0} : SurfacePoint{s, 0, c};
  }
  // Interval before grid point idx along the transversal line.
  int interval_before(int idx) const {
    const int s = idx / static_cast<int>(den);
    const int j = idx % static_cast<int>(den);
    if (j > 0) return idx - 1;
    const int prev = bottom ? o.left(s) : o.down(s);
    return prev * static_cast<int>(den) + static_cast<int>(den) - 1;
  }
  int interval_after(int idx) const { return idx; }
  // Grid point after interval idx.
  int grid_after(int idx) const {
    const int s = idx / static_cast<int>(den);
    const int j = idx % static_cast<int>(den);
    if (j + 1 < den) return idx + 1;
    const int next = bottom ? o.right(s) : o.up(s);
    return next * static_cast<int>(den);
  }
  bool is_vertex(int grid_idx) const { return grid_idx % den == 0; }

  // Classify a point: {grid index, -1} or {-1, interval index} or {-1, -1}.
  std::pair<int, int> locate(SurfacePoint p) const {
    p = canonical(o, p);
    const Rational& along = bottom ? p.x : p.y;
    const Rational& across = bottom ? p.y : p.x;
    if (across != Rational(0)) return {-1, -1};
    const Rational scaled = along * Rational(2 * den);
    if (scaled.denominator() != 1) return {-1, -1};
    const std::int64_t k = scaled.numerator();
    const int base = p.square * static_cast<int>(den);
    if (k % 2 == 0) return {base + static_cast<int>(k / 2), -1};
    return {-1, base + static_cast<int>((k - 1) / 2)};
  }
};

TracedCurve make_core(const Direction& d, TraceResult&& r) {
  if (r.end != TraceEnd::closed) throw Error("cylinder leaf did not close");
  if (r.time.denominator() != 1) throw Error("closed leaf with non-integral holonomy");
  TracedCurve c;
  c.kind = CurveKind::cylinder_core;
  c.direction = d;
  c.period = r.time.numerator();
  c.hx = c.period * d.p;
  c.hy = c.period * d.q;
  c.sq_len = c.hx * c.hx + c.hy * c.hy;
  c.crossings = std::move(r.segments);
  c.key = curve_key(c);
  return c;
}

}  // namespace

DirectionDecomposition decompose(const Origami& o, const Direction& d) {
  DirectionDecomposition out;
  out.direction = d;
  out.saddle_connections = saddle_connections_in_direction(o, d, std::nullopt);
  std::sort(out.saddle_connections.begin(), out.saddle_connections.end(),
            [](const TracedCurve& x, const TracedCurve& y) { return x.key < y.key; });

  const std::int64_t den = d.q != 0 ? std::abs(d.q) : std::abs(d.p);
  const Transversal tr{o, d, den, d.q != 0};
  const int count = tr.count();

  // Leaves through interval midpoints never meet a vertex.
  std::vector<int> leaf_of(count, -1);
  std::vector<TraceResult> leaves;
  for (int i = 0; i < count; ++i) {
    if (leaf_of[i] != -1) continue;
    TraceResult r = trace(o, tr.midpoint(i), d);
    if (r.end != TraceEnd::closed) throw Error("interval leaf did not close");
    const int id = static_cast<int>(leaves.size());
    for (const Segment& s : r.segments) {
      const auto [g, iv] = tr.locate({s.square, s.x0, s.y0});
      if (iv >= 0) leaf_of[iv] = id;
    }
    leaves.push_back(std::move(r));
  }

  // Grid points: regular (on a closed leaf) or singular (on a separatrix).
  enum : char { kUnknown, kRegular, kSingular };
  std::vector<char> state(count, kUnknown);
  std::vector<int> boundary_conn(count, -1);
  for (int g = 0; g < count; ++g) {
    if (state[g] != kUnknown) continue;
    if (tr.is_vertex(g)) {
      const CornerRef bl{g / static_cast<int>(den), Corner::BL};
      if (o.is_singular(o.vertex_of(bl))) {
        state[g] = kSingular;
        const CornerRef dep = corner_for_ray(o, bl, d);
        for (std::size_t k = 0; k < out.saddle_connections.size(); ++k) {
          const auto& sc = out.saddle_connections[k];
          if (sc.departure->square == dep.square && sc.departure->corner == dep.corner) {
            boundary_conn[g] = static_cast<int>(k);
          }
        }
        continue;
      }
    }
    TraceResult r = trace(o, tr.grid_point(g), d);
    const char st = r.end == TraceEnd::closed ? kRegular : kSingular;
    int conn = -1;
    if (st == kSingular) {
      for (std::size_t k = 0; k < out.saddle_connections.size(); ++k) {
        const auto& pass = *out.saddle_connections[k].passage;
        if (pass.vertex == *r.vertex && pass.in == *r.arrival) conn = static_cast<int>(k);
      }
    }
    state[g] = st;
    boundary_conn[g] = conn;
    for (const Segment& s : r.segments) {
      const auto [gp, iv] = tr.locate({s.square, s.x0, s.y0});
      if (gp >= 0 && state[gp] == kUnknown) {
        state[gp] = st;
        boundary_conn[gp] = conn;
      }
    }
  }

  DisjointSets sets(count);
  std::vector<int> first_interval_of_leaf(leaves.size(), -1);
  for (int i = 0; i < count; ++i) {
    int& first = first_interval_of_leaf[leaf_of[i]];
    if (first == -1) {
      first = i;
    } else {
      sets.unite(first, i);
    }
  }
  for (int g = 0; g < count; ++g) {
    if (state[g] == kRegular) sets.unite(tr.interval_before(g), tr.interval_after(g));
  }

  std::vector<char> done(count, 0);
  for (int i = 0; i < count; ++i) {
    const int root = sets.find(i);
    if (done[root]) continue;
    done[root] = 1;
    // Walk to the start of the transverse run containing i.
    int start = i;
    for (int guard = 0; guard < count; ++guard) {
      if (state[start] != kRegular) break;  // grid point `start` precedes interval `start`
      const int prev = tr.interval_before(start);
      if (prev == i) break;
      start = prev;
    }
    std::vector<int> run = {start};
    for (int guard = 0; guard < count; ++guard) {
      const int g = tr.grid_after(run.back());
      if (state[g] != kRegular) break;
      const int next = tr.interval_after(g);
      if (next == start) break;
      run.push_back(next);
    }
    const int middle = run[run.size() / 2];
    Cylinder cyl;
    cyl.direction = d;
    cyl.core = make_core(d, trace(o, tr.midpoint(middle), d));
    cyl.width_intervals = static_cast<std::int64_t>(run.size());
    cyl.spacing = Rational(1, den);
    for (int g = 0; g < count; ++g) {
      if (state[g] != kSingular || boundary_conn[g] < 0) continue;
      if (sets.find(tr.interval_before(g)) != root && sets.find(tr.interval_after(g)) != root) {
        continue;
      }
      cyl.boundary.push_back(boundary_conn[g]);
    }
    std::sort(cyl.boundary.begin(), cyl.boundary.end());
    cyl.boundary.erase(std::unique(cyl.boundary.begin(), cyl.boundary.end()), cyl.boundary.end());
    out.cylinders.push_back(std::move(cyl));
  }
  std::sort(out.cylinders.begin(), out.cylinders.end(),
            [](const Cylinder& x, const Cylinder& y) { return x.core.key < y.core.key; });
  return out;
}

std::vector<Cylinder> cylinders_in_direction(const Origami& o, const Direction& d) {
  return decompose(o, d).cylinders;
}

std::string curve_key(const TracedCurve& c) {
  const std::string head = (c.kind == CurveKind::saddle_connection ? "sc:" : "cy:") +
                           direction_token(c.direction);
  if (c.kind == CurveKind::saddle_connection && c.departure) {
    return head + ":" + std::to_string(c.departure->square) + "." +
           std::to_string(static_cast<int>(c.departure->corner));
  }
  std::vector<std::string> tokens;
  tokens.reserve(c.crossings.size());
  for (const Segment& s : c.crossings) {
    char side = 'I';
    Rational along;
    if (s.y0 == Rational(0)) {
      side = 'B';
      along = s.x0;
    } else if (s.x0 == Rational(0)) {
      side = 'L';
      along = s.y0;
    } else if (s.x0 == Rational(1)) {
      side = 'R';
      along = s.y0;
    } else if (s.y0 == Rational(1)) {
      side = 'T';
      along = s.x0;
    }
    tokens.push_back(std::to_string(s.square) + side + rational_token(along));
  }
  const std::size_t n = tokens.size();
  std::size_t best = 0;
  for (std::size_t r = 1; r < n; ++r) {
    for (std::size_t k = 0; k < n; ++k) {
      const auto& a = tokens[(r + k) % n];
      const auto& b = tokens[(best + k) % n];
      if (a == b) continue;
      if (a < b) best = r;
      break;
    }
  }
  std::string key = head + ":";
  for (std::size_t k = 0; k < n; ++k) {
    if (k) key += ',';
    key += tokens[(best + k) % n];
  }
  return key;
}

std::vector<TracedCurve> curve_pool(const Origami& o, std::int64_t max_sq_len, int workers) {
  const auto dirs = canonical_directions(max_sq_len);
  std::vector<std::vector<TracedCurve>> per_dir(dirs.size());
  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < dirs.size(); i += stride) {
      DirectionDecomposition dec = decompose(o, dirs[i]);
      auto& bucket = per_dir[i];
      int sc_index = 0;
      for (auto& sc : dec.saddle_connections) {
        if (sc.sq_len > max_sq_len) continue;
        sc.id = "sc:" + direction_token(dirs[i]) + ":" + std::to_string(sc_index++);
        bucket.push_back(std::move(sc));
      }
      int cy_index = 0;
      for (auto& cyl : dec.cylinders) {
        if (cyl.core.sq_len > max_sq_len) continue;
        cyl.core.id = "cy:" + direction_token(dirs[i]) + ":" + std::to_string(cy_index++);
        bucket.push_back(std::move(cyl.core));
      }
    }
  };
  const std::size_t nthreads = static_cast<std::size_t>(std::max(1, workers));
  if (nthreads == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> threads;
    for (std::size_t t = 0; t < nthreads; ++t) threads.emplace_back(work, t, nthreads);
    for (auto& th : threads) th.join();
  }

  std::vector<TracedCurve> pool;
  std::map<std::string, bool> seen;
  for (auto& bucket : per_dir) {
    for (auto& c : bucket) {
      if (seen.emplace(c.key, true).second) pool.push_back(std::move(c));
    }
  }
  if (o.lshape()) attach_homology(o, pool, workers);
  return pool;
}

TracedCurve iterate(const TracedCurve& core, std::int64_t k) {
  if (core.kind != CurveKind::cylinder_core) throw Error("only closed leaves can be iterated");
  if (k < 1) throw Error("iterate count must be positive");
  TracedCurve out = core;
  out.crossings.clear();
  for (std::int64_t i = 0; i < k; ++i) {
    const Rational shift(i * core.period);
    for (Segment s : core.crossings) {
      s.t0 += shift;
      s.t1 += shift;
      out.crossings.push_back(s);
    }
  }
  out.period = core.period * k;
  out.hx = core.hx * k;
  out.hy = core.hy * k;
  out.sq_len = core.sq_len * k * k;
  if (core.homology) out.homology = k * *core.homology;
  out.key = core.key + "^" + std::to_string(k);
  out.id = core.id + "^" + std::to_string(k);
  return out;
}

TracedCurve trace_marked(const Origami& o, MarkedCurve m) {
  const LShapeParams& p = o.require_lshape();
  const int a = p.a;
  CornerRef start{0, Corner::BL};
  Direction d{1, 0};
  switch (m) {
    case MarkedCurve::e1: start = {0, Corner::BL}; d = {1, 0}; break;
    case MarkedCurve::e1p: start = {a, Corner::BL}; d = {1, 0}; break;
    case MarkedCurve::e2: start = {1, Corner::BL}; d = {1, 0}; break;
    case MarkedCurve::f1: start = {0, Corner::BL}; d = {0, 1}; break;
    case MarkedCurve::f1p: start = {1, Corner::BL}; d = {0, 1}; break;
    case MarkedCurve::f2: start = {a, Corner::BL}; d = {0, 1}; break;
    case MarkedCurve::g: start = {0, Corner::TL}; d = {1, -1}; break;
    case MarkedCurve::h: start = {0, Corner::BL}; d = {1, 1}; break;
  }
  auto c = trace_separatrix(o, corner_for_ray(o, start, d), d, std::nullopt);
  if (!c) throw Error("marked curve did not return to the cone point");
  c->id = std::string(marked_name(m));
  c->homology = class_of_named(m);
  return *c;
}

}  // namespace kvol

namespace kvol {

std::vector<ConePassage> vertex_passages(const Origami& o, const TracedCurve& c) {
  std::vector<ConePassage> out;
  const auto& segs = c.crossings;
  const Direction& d = c.direction;
  const std::size_t n = segs.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Segment& s = segs[k];
    if (!(is_unit_endpoint(s.x1) && is_unit_endpoint(s.y1))) continue;
    const CornerRef arrive{s.square, corner_at(s.x1, s.y1)};
    const Segment& next = segs[(k + 1) % n];
    const CornerRef leave{next.square, corner_at(next.x0, next.y0)};
    ConePassage p;
    p.vertex = o.vertex_of(arrive);
    p.in = RayKey{ray_position(o, arrive, -d.p, -d.q), -d.p, -d.q};
    p.out = RayKey{ray_position(o, leave, d.p, d.q), d.p, d.q};
    p.time = s.t1;
    out.push_back(p);
  }
  return out;
}

}  // namespace kvol
