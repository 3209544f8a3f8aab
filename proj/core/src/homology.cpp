#include "kvol/homology.hpp"

#include <cstdlib>

namespace kvol {

std::string to_string(const HomologyClass& c) {
  return "(" + std::to_string(c.coords[0]) + "," + std::to_string(c.coords[1]) + "," +
         std::to_string(c.coords[2]) + "," + std::to_string(c.coords[3]) + ")";
}

const IntMatrix4& intersection_matrix() {
  static const IntMatrix4 m = {{
      {0, 1, 0, -1},   // e2
      {-1, 0, 0, 0},   // f1
      {0, 0, 0, 1},    // e1
      {1, 0, -1, 0},   // f2
  }};
  return m;
}

namespace {

std::int64_t det3(const IntMatrix4& m, int skip_row, int skip_col) {
  std::int64_t a[3][3];
  for (int i = 0, r = 0; i < 4; ++i) {
    if (i == skip_row) continue;
    for (int j = 0, c = 0; j < 4; ++j) {
      if (j == skip_col) continue;
      a[r][c++] = m[i][j];
    }
    ++r;
  }
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
         a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

}  // namespace

std::int64_t determinant(const IntMatrix4& m) {
  std::int64_t d = 0;
  for (int j = 0; j < 4; ++j) {
    const std::int64_t sign = (j % 2 == 0) ? 1 : -1;
    d += sign * m[0][j] * det3(m, 0, j);
  }
  return d;
}

IntMatrix4 unimodular_inverse(const IntMatrix4& m) {
  const std::int64_t d = determinant(m);
  if (d != 1 && d != -1) throw Error("matrix is not unimodular");
  IntMatrix4 inv{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const std::int64_t sign = ((i + j) % 2 == 0) ? 1 : -1;
      // Adjugate: transpose of the cofactor matrix.
      inv[j][i] = sign * det3(m, i, j) * d;
    }
  }
  return inv;
}

std::int64_t int_form(const HomologyClass& x, const HomologyClass& y) {
  const auto& m = intersection_matrix();
  std::int64_t total = 0;
  for (int i = 0; i < 4; ++i) {
    if (x.coords[i] == 0) continue;
    for (int j = 0; j < 4; ++j) total += x.coords[i] * m[i][j] * y.coords[j];
  }
  return total;
}

HomologyClass class_from_pairings(const std::array<std::int64_t, 4>& pairings) {
  // pairings = M^T x, so x = (M^T)^{-1} pairings.
  static const IntMatrix4 inverse_transpose = [] {
    const auto& m = intersection_matrix();
    IntMatrix4 t{};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) t[i][j] = m[j][i];
    return unimodular_inverse(t);
  }();
  HomologyClass x;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) x.coords[i] += inverse_transpose[i][j] * pairings[j];
  }
  return x;
}

HomologyClass class_of_named(MarkedCurve m) {
  using H = HomologyClass;
  switch (m) {
    case MarkedCurve::e1:
    case MarkedCurve::e1p: return H::basis(H::kE1);
    case MarkedCurve::e2: return H::basis(H::kE2);
    case MarkedCurve::f1:
    case MarkedCurve::f1p: return H::basis(H::kF1);
    case MarkedCurve::f2: return H::basis(H::kF2);
    case MarkedCurve::g: return H::basis(H::kE1) - H::basis(H::kF1);
    case MarkedCurve::h: return H::basis(H::kE1) + H::basis(H::kF1);
  }
  return {};
}

std::string_view torus_name(TorusId t) { return t == TorusId::A ? "A" : "B"; }

TorusModel torus_model(const LShapeParams& p, TorusId which) {
  if (which == TorusId::A) return {TorusId::A, 1, p.b};
  return {TorusId::B, p.a, 1};
}

std::int64_t torus_intersection(const TorusClass& x, const TorusClass& y) {
  return x.p * y.q - y.p * x.q;
}

std::int64_t torus_sq_length(const TorusModel& t, const TorusClass& c) {
  return c.p * c.p * t.width * t.width + c.q * c.q * t.height * t.height;
}

TorusClosure torus_class_and_length(const StripArc& arc, const TorusModel& t) {
  const Rational mu_x = arc.start_x + arc.disp_x - arc.end_x;
  const Rational mu_y = arc.start_y + arc.disp_y - arc.end_y;
  if (mu_x.denominator() != 1 || mu_y.denominator() != 1 ||
      mu_x.numerator() % t.width != 0 || mu_y.numerator() % t.height != 0) {
    throw UnembeddablePiece("arc end is not a lattice translate of its developed end in T" +
                            std::string(torus_name(t.which)));
  }
  // Closing segment w goes from the end to a translate of the start; the class is mu + shift.
  const Rational base_x = arc.start_x - arc.end_x;
  const Rational base_y = arc.start_y - arc.end_y;
  const bool shift_x = t.width == 1;
  TorusClosure best;
  bool have = false;
  for (int k : {0, -1, 1}) {
    const Rational wx = base_x + (shift_x ? Rational(k) : Rational(0));
    const Rational wy = base_y + (shift_x ? Rational(0) : Rational(k));
    const Rational len = wx * wx + wy * wy;
    if (have && !(len < best.closure_sq_len)) continue;
    have = true;
    best.closure_x = wx;
    best.closure_y = wy;
    best.closure_sq_len = len;
    const std::int64_t lx = mu_x.numerator() + (shift_x ? k : 0);
    const std::int64_t ly = mu_y.numerator() + (shift_x ? 0 : k);
    best.cls = {lx / t.width, ly / t.height};
    best.sq_len = lx * lx + ly * ly;
  }
  return best;
}

}  // namespace kvol
