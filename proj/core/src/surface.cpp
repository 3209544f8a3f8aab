#include "kvol/surface.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <sstream>

namespace kvol {

namespace {

std::pair<std::vector<int>, std::vector<int>> l_shape_perms(LShapeParams params) {
  if (params.a < 2 || params.b < 2) {
    throw InvalidOrigami("L-shape needs a >= 2 and b >= 2 (else the surface is a torus)");
  }
  const int a = params.a;
  const int n = params.a + params.b - 1;
  std::vector<int> right(n), up(n);
  std::iota(right.begin(), right.end(), 0);
  std::iota(up.begin(), up.end(), 0);
  for (int i = 0; i < a; ++i) right[i] = (i + 1) % a;
  // Left column: 0 -> a -> a+1 -> ... -> n-1 -> 0.
  up[0] = a;
  for (int s = a; s < n - 1; ++s) up[s] = s + 1;
  up[n - 1] = 0;
  return {std::move(right), std::move(up)};
}

std::vector<int> invert(const std::vector<int>& perm, const char* what) {
  const int n = static_cast<int>(perm.size());
  std::vector<int> inv(n, -1);
  for (int i = 0; i < n; ++i) {
    if (perm[i] < 0 || perm[i] >= n) {
      throw InvalidOrigami(std::string(what) + ": image out of range");
    }
    if (inv[perm[i]] != -1) throw InvalidOrigami(std::string(what) + ": not a bijection");
    inv[perm[i]] = i;
  }
  return inv;
}

}  // namespace

std::string_view region_name(Region r) {
  switch (r) {
    case Region::C: return "C";
    case Region::A: return "A";
    case Region::B: return "B";
    case Region::Untagged: break;
  }
  return "-";
}

Origami::Origami(std::vector<int> right, std::vector<int> up, std::optional<LShapeParams> lshape)
    : right_(std::move(right)), up_(std::move(up)), lshape_(lshape) {
  const int n = num_squares();
  if (n == 0) throw InvalidOrigami("origami must have at least one square");
  if (static_cast<int>(up_.size()) != n) throw InvalidOrigami("right and up differ in size");
  left_ = invert(right_, "right");
  down_ = invert(up_, "up");

  std::vector<char> seen(n, 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int s = stack.back();
    stack.pop_back();
    for (int t : {right_[s], up_[s], left_[s], down_[s]}) {
      if (!seen[t]) {
        seen[t] = 1;
        ++reached;
        stack.push_back(t);
      }
    }
  }
  if (reached != n) throw InvalidOrigami("right and up do not act transitively");

  if (lshape_) {
    const auto [r, u] = l_shape_perms(*lshape_);
    if (r != right_ || u != up_) {
      throw InvalidOrigami("permutations do not match the declared L-shape");
    }
  }

  corner_vertex_.assign(4 * n, -1);
  corner_position_.assign(4 * n, -1);
  for (int start = 0; start < 4 * n; ++start) {
    if (corner_vertex_[start] != -1) continue;
    std::vector<CornerRef> orbit;
    CornerRef c{start / 4, static_cast<Corner>(start % 4)};
    do {
      corner_vertex_[flat(c)] = static_cast<int>(vertex_corners_.size());
      orbit.push_back(c);
      c = rotate(c);
    } while (flat(c) != start);
    // Start the cyclic order at the canonical lower-left corner.
    auto first = std::min_element(orbit.begin(), orbit.end(), [](CornerRef x, CornerRef y) {
      const bool xbl = x.corner == Corner::BL;
      const bool ybl = y.corner == Corner::BL;
      if (xbl != ybl) return xbl;
      return x.square < y.square;
    });
    std::rotate(orbit.begin(), first, orbit.end());
    for (int i = 0; i < static_cast<int>(orbit.size()); ++i) corner_position_[flat(orbit[i])] = i;
    vertex_corners_.push_back(std::move(orbit));
  }
}

const LShapeParams& Origami::require_lshape() const {
  if (!lshape_) throw Error("operation requires an L-shaped origami");
  return *lshape_;
}

Region Origami::region(int s) const {
  if (!lshape_) return Region::Untagged;
  if (s == 0) return Region::C;
  return s < lshape_->a ? Region::B : Region::A;
}

CornerRef Origami::rotate(CornerRef c) const {
  switch (c.corner) {
    case Corner::BL: return {left_[c.square], Corner::BR};
    case Corner::BR: return {down_[c.square], Corner::TR};
    case Corner::TR: return {right_[c.square], Corner::TL};
    case Corner::TL: return {up_[c.square], Corner::BL};
  }
  return c;
}

std::optional<int> Origami::singular_vertex() const {
  std::optional<int> found;
  for (int v = 0; v < num_vertices(); ++v) {
    if (!is_singular(v)) continue;
    if (vertex_corners_[v].size() == 12) return v;
    if (!found) found = v;
  }
  return found;
}

Origami build_l_shape(LShapeParams params) {
  auto [right, up] = l_shape_perms(params);
  return Origami(std::move(right), std::move(up), params);
}

ConeReport validate(const Origami& o) {
  ConeReport report;
  int six_pi = 0;
  int other_singular = 0;
  for (int v = 0; v < o.num_vertices(); ++v) {
    const auto& corners = o.vertex_corners(v);
    const int multiple = static_cast<int>(corners.size()) / 4;
    report.vertices.push_back({corners.front(), multiple});
    if (multiple == 3) {
      ++six_pi;
    } else if (multiple != 1) {
      ++other_singular;
    }
  }
  // F = N, E = 2N.
  report.euler_characteristic = o.num_vertices() - o.num_squares();
  report.genus = (2 - report.euler_characteristic) / 2;
  report.in_h2 = six_pi == 1 && other_singular == 0;
  return report;
}

int volume(const Origami& o) { return o.num_squares(); }

SurfacePoint canonical(const Origami& o, SurfacePoint p) {
  const Rational zero(0), one(1);
  const bool on_x = p.x == zero || p.x == one;
  const bool on_y = p.y == zero || p.y == one;
  if (on_x && on_y) {
    Corner c = p.x == zero ? (p.y == zero ? Corner::BL : Corner::TL)
                           : (p.y == zero ? Corner::BR : Corner::TR);
    const auto& corners = o.vertex_corners(o.vertex_of({p.square, c}));
    // Position 0 is the lower-left corner of the smallest square.
    return {corners.front().square, zero, zero};
  }
  if (p.x == one) return {o.right(p.square), zero, p.y};
  if (p.y == one) return {o.up(p.square), p.x, zero};
  return p;
}

std::string_view marked_name(MarkedCurve m) {
  switch (m) {
    case MarkedCurve::e1: return "e1";
    case MarkedCurve::e1p: return "e1'";
    case MarkedCurve::e2: return "e2";
    case MarkedCurve::f1: return "f1";
    case MarkedCurve::f1p: return "f1'";
    case MarkedCurve::f2: return "f2";
    case MarkedCurve::g: return "g";
    case MarkedCurve::h: return "h";
  }
  return "?";
}

std::optional<MarkedCurve> parse_marked(std::string_view name) {
  for (MarkedCurve m : kAllMarked) {
    if (marked_name(m) == name) return m;
  }
  if (name == "e1p") return MarkedCurve::e1p;
  if (name == "f1p") return MarkedCurve::f1p;
  return std::nullopt;
}

const MarkedLocus& LocusTable::get(MarkedCurve m) const {
  for (const auto& c : curves) {
    if (c.curve == m) return c;
  }
  throw Error("locus table has no curve " + std::string(marked_name(m)));
}

LocusTable marked_loci(const Origami& o) {
  const LShapeParams& p = o.require_lshape();
  const int a = p.a;
  const int n = o.num_squares();
  const Rational z(0), u(1);
  auto bottom = [&](int s) { return std::pair{SurfacePoint{s, z, z}, SurfacePoint{s, u, z}}; };
  auto left_edge = [&](int s) { return std::pair{SurfacePoint{s, z, z}, SurfacePoint{s, z, u}}; };

  LocusTable t;
  t.curves.push_back({MarkedCurve::e1, {bottom(0)}, 1});
  t.curves.push_back({MarkedCurve::e1p, {bottom(a)}, 1});
  MarkedLocus e2{MarkedCurve::e2, {}, static_cast<std::int64_t>(a - 1) * (a - 1)};
  for (int s = 1; s < a; ++s) e2.segments.push_back(bottom(s));
  t.curves.push_back(std::move(e2));
  t.curves.push_back({MarkedCurve::f1, {left_edge(0)}, 1});
  t.curves.push_back({MarkedCurve::f1p, {left_edge(1)}, 1});
  MarkedLocus f2{MarkedCurve::f2, {}, static_cast<std::int64_t>(p.b - 1) * (p.b - 1)};
  for (int s = a; s < n; ++s) f2.segments.push_back(left_edge(s));
  t.curves.push_back(std::move(f2));
  t.curves.push_back({MarkedCurve::g, {{SurfacePoint{0, z, u}, SurfacePoint{0, u, z}}}, 2});
  t.curves.push_back({MarkedCurve::h, {{SurfacePoint{0, z, z}, SurfacePoint{0, u, u}}}, 2});
  t.singular_point = canonical(o, SurfacePoint{0, z, z});
  return t;
}

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<int> parse_cycles(const std::string& text, int n, const std::string& key) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<char> used(n, 0);
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw InvalidOrigami("bad '" + key + "' cycles: " + why);
  };
  while (i < text.size()) {
    if (text[i] == ' ' || text[i] == '\t') {
      ++i;
      continue;
    }
    if (text[i] != '(') fail("expected '('");
    const auto close = text.find(')', i);
    if (close == std::string::npos) fail("missing ')'");
    std::istringstream body(text.substr(i + 1, close - i - 1));
    std::vector<int> cycle;
    std::string tok;
    while (body >> tok) {
      int v = 0;
      try {
        std::size_t used_chars = 0;
        v = std::stoi(tok, &used_chars);
        if (used_chars != tok.size()) fail("not an integer: " + tok);
      } catch (const std::logic_error&) {
        fail("not an integer: " + tok);
      }
      if (v < 1 || v > n) fail("square " + tok + " out of range");
      if (used[v - 1]) fail("square " + tok + " repeated");
      used[v - 1] = 1;
      cycle.push_back(v - 1);
    }
    for (std::size_t k = 0; k < cycle.size(); ++k) perm[cycle[k]] = cycle[(k + 1) % cycle.size()];
    i = close + 1;
  }
  return perm;
}

}  // namespace

Origami parse_origami(std::istream& in) {
  std::optional<int> n;
  std::optional<std::string> right_text, up_text;
  std::optional<LShapeParams> lshape;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw InvalidOrigami("expected 'key: value', got: " + line);
    const std::string key = trim(line.substr(0, colon));
    const std::string value = trim(line.substr(colon + 1));
    if (key == "squares") {
      try {
        n = std::stoi(value);
      } catch (const std::logic_error&) {
        throw InvalidOrigami("bad square count: " + value);
      }
      if (*n < 1) throw InvalidOrigami("square count must be positive");
    } else if (key == "right") {
      right_text = value;
    } else if (key == "up") {
      up_text = value;
    } else if (key == "lshape") {
      std::istringstream ss(value);
      LShapeParams p;
      if (!(ss >> p.a >> p.b)) throw InvalidOrigami("bad lshape line: " + value);
      lshape = p;
    } else {
      throw InvalidOrigami("unknown key: " + key);
    }
  }
  if (!n) throw InvalidOrigami("missing 'squares' line");
  auto right = parse_cycles(right_text.value_or(""), *n, "right");
  auto up = parse_cycles(up_text.value_or(""), *n, "up");
  return Origami(std::move(right), std::move(up), lshape);
}

Origami load_origami(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open origami file: " + path);
  try {
    return parse_origami(in);
  } catch (const InvalidOrigami& e) {
    throw InvalidOrigami(path + ": " + e.what());
  }
}

std::string format_cycles(const std::vector<int>& perm) {
  std::string out;
  std::vector<char> seen(perm.size(), 0);
  for (std::size_t s = 0; s < perm.size(); ++s) {
    if (seen[s] || perm[s] == static_cast<int>(s)) continue;
    out += '(';
    int c = static_cast<int>(s);
    bool first = true;
    while (!seen[c]) {
      seen[c] = 1;
      if (!first) out += ' ';
      out += std::to_string(c + 1);
      first = false;
      c = perm[c];
    }
    out += ')';
  }
  return out;
}

std::string format_origami(const Origami& o) {
  std::string out = "squares: " + std::to_string(o.num_squares()) + "\n";
  out += "right: " + format_cycles(o.right_perm()) + "\n";
  out += "up: " + format_cycles(o.up_perm()) + "\n";
  if (o.lshape()) {
    out += "lshape: " + std::to_string(o.lshape()->a) + " " + std::to_string(o.lshape()->b) + "\n";
  }
  return out;
}

}  // namespace kvol
