#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "kvol/rational.hpp"
#include "kvol/surface.hpp"

namespace kvol {

/// Integer homology class in the ordered basis (e2, f1, e1, f2).
struct HomologyClass {
  std::array<std::int64_t, 4> coords{};

  static constexpr int kE2 = 0;
  static constexpr int kF1 = 1;
  static constexpr int kE1 = 2;
  static constexpr int kF2 = 3;

  static HomologyClass basis(int i) {
    HomologyClass c;
    c.coords[i] = 1;
    return c;
  }

  bool is_zero() const { return coords == std::array<std::int64_t, 4>{}; }

  HomologyClass operator-() const {
    HomologyClass r;
    for (int i = 0; i < 4; ++i) r.coords[i] = -coords[i];
    return r;
  }
  friend HomologyClass operator+(const HomologyClass& x, const HomologyClass& y) {
    HomologyClass r;
    for (int i = 0; i < 4; ++i) r.coords[i] = x.coords[i] + y.coords[i];
    return r;
  }
  friend HomologyClass operator-(const HomologyClass& x, const HomologyClass& y) { return x + (-y); }
  friend HomologyClass operator*(std::int64_t k, const HomologyClass& x) {
    HomologyClass r;
    for (int i = 0; i < 4; ++i) r.coords[i] = k * x.coords[i];
    return r;
  }
  friend bool operator==(const HomologyClass&, const HomologyClass&) = default;
};

std::string to_string(const HomologyClass& c);

using IntMatrix4 = std::array<std::array<std::int64_t, 4>, 4>;

/// Intersection matrix of the basis curves at the cone point, rows/columns (e2, f1, e1, f2).
const IntMatrix4& intersection_matrix();

std::int64_t determinant(const IntMatrix4& m);
/// Exact inverse of a unimodular integer matrix; throws if det != +-1.
IntMatrix4 unimodular_inverse(const IntMatrix4& m);

/// x^T M y.
std::int64_t int_form(const HomologyClass& x, const HomologyClass& y);

/// Recover x from the pairings v_i = int_form(x, basis_i).
HomologyClass class_from_pairings(const std::array<std::int64_t, 4>& pairings);

HomologyClass class_of_named(MarkedCurve m);

// The tori TA (left column glued into a 1 x b rectangle torus) and TB (bottom row,
// a x 1). Both contain the corner square C at the origin of their strip coordinates.
enum class TorusId { A, B };

std::string_view torus_name(TorusId t);

struct TorusModel {
  TorusId which = TorusId::A;
  std::int64_t width = 1;
  std::int64_t height = 1;

  std::int64_t area() const { return width * height; }
};

TorusModel torus_model(const LShapeParams& p, TorusId which);

/// Class p*(width,0) + q*(0,height) of the period lattice.
struct TorusClass {
  std::int64_t p = 0;
  std::int64_t q = 0;

  friend bool operator==(const TorusClass&, const TorusClass&) = default;
};

std::int64_t torus_intersection(const TorusClass& x, const TorusClass& y);
std::int64_t torus_sq_length(const TorusModel& t, const TorusClass& c);

class UnembeddablePiece : public Error {
 public:
  using Error::Error;
};

/// A geodesic arc in a strip torus: start and end in strip coordinates, both on the
/// boundary of C, and the developed displacement of the arc.
struct StripArc {
  Rational start_x, start_y;
  Rational end_x, end_y;
  Rational disp_x, disp_y;
};

struct TorusClosure {
  TorusClass cls;
  std::int64_t sq_len = 0;       // squared length of the closed geodesic in the class
  Rational closure_x, closure_y;  // closing segment, from the arc's end back to its start
  Rational closure_sq_len;
};

/// Close the arc with the shortest segment through C (sides of C are identified in the
/// torus) and return the class and squared length of the resulting closed geodesic.
/// Throws UnembeddablePiece when the developed end point is not a lattice translate of
/// the recorded end point.
TorusClosure torus_class_and_length(const StripArc& arc, const TorusModel& t);

}  // namespace kvol
