#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kvol/rational.hpp"

namespace kvol {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidOrigami : public Error {
 public:
  using Error::Error;
};

/// Bottom row has `a` squares, left column has `b` squares; they share the corner square.
struct LShapeParams {
  int a = 0;
  int b = 0;

  friend bool operator==(const LShapeParams&, const LShapeParams&) = default;
};

enum class Region { C, A, B, Untagged };

std::string_view region_name(Region r);

/// Corners of a unit square, listed counter-clockwise from the lower left.
enum class Corner { BL = 0, BR = 1, TR = 2, TL = 3 };

struct CornerRef {
  int square = 0;
  Corner corner = Corner::BL;

  friend bool operator==(const CornerRef&, const CornerRef&) = default;
};

/// A point of the surface in the local coordinates of one square; x, y in [0,1].
/// Squares are 0-based internally and 1-based in every text format.
struct SurfacePoint {
  int square = 0;
  Rational x;
  Rational y;

  friend bool operator==(const SurfacePoint&, const SurfacePoint&) = default;
};

/// Square-tiled translation surface given by its right and up neighbour permutations.
///
/// The constructor checks that both maps are bijections and that they generate a
/// transitive group, then precomputes the vertex structure: a vertex is an orbit of
/// square corners under the counter-clockwise rotation
///   (s,BL) -> (left s, BR) -> (down, TR) -> (right, TL) -> (up, BL),
/// and its cone angle is (orbit length) * pi/2.
class Origami {
 public:
  Origami(std::vector<int> right, std::vector<int> up,
          std::optional<LShapeParams> lshape = std::nullopt);

  int num_squares() const { return static_cast<int>(right_.size()); }
  int right(int s) const { return right_[s]; }
  int left(int s) const { return left_[s]; }
  int up(int s) const { return up_[s]; }
  int down(int s) const { return down_[s]; }
  const std::vector<int>& right_perm() const { return right_; }
  const std::vector<int>& up_perm() const { return up_; }

  const std::optional<LShapeParams>& lshape() const { return lshape_; }
  const LShapeParams& require_lshape() const;
  Region region(int s) const;

  CornerRef rotate(CornerRef c) const;

  int num_vertices() const { return static_cast<int>(vertex_corners_.size()); }
  int vertex_of(CornerRef c) const { return corner_vertex_[flat(c)]; }
  /// Position of the corner in the cyclic (counter-clockwise) order of its vertex.
  int corner_position(CornerRef c) const { return corner_position_[flat(c)]; }
  const std::vector<CornerRef>& vertex_corners(int v) const { return vertex_corners_[v]; }
  bool is_singular(int v) const { return vertex_corners_[v].size() != 4; }

  /// The unique 6*pi vertex of an H(2) surface, or the first singular vertex found.
  std::optional<int> singular_vertex() const;

 private:
  int flat(CornerRef c) const { return c.square * 4 + static_cast<int>(c.corner); }

  std::vector<int> right_, up_, left_, down_;
  std::optional<LShapeParams> lshape_;
  std::vector<int> corner_vertex_;
  std::vector<int> corner_position_;
  std::vector<std::vector<CornerRef>> vertex_corners_;
};

struct ConeVertex {
  CornerRef representative;  // canonical: lower-left corner of the smallest square
  int angle_multiple = 1;    // cone angle / 2pi
};

struct ConeReport {
  std::vector<ConeVertex> vertices;
  int euler_characteristic = 0;
  int genus = 0;
  bool in_h2 = false;
};

Origami build_l_shape(LShapeParams params);
ConeReport validate(const Origami& o);
int volume(const Origami& o);

/// Canonical representative: edge points live in the square where they lie on the
/// bottom or left edge, corners in the square having them as lower-left corner
/// (smallest index for a singular vertex).
SurfacePoint canonical(const Origami& o, SurfacePoint p);

enum class MarkedCurve { e1, e1p, e2, f1, f1p, f2, g, h };

inline constexpr std::array<MarkedCurve, 8> kAllMarked = {
    MarkedCurve::e1, MarkedCurve::e1p, MarkedCurve::e2, MarkedCurve::f1,
    MarkedCurve::f1p, MarkedCurve::f2, MarkedCurve::g, MarkedCurve::h};

std::string_view marked_name(MarkedCurve m);
std::optional<MarkedCurve> parse_marked(std::string_view name);

struct MarkedLocus {
  MarkedCurve curve;
  std::vector<std::pair<SurfacePoint, SurfacePoint>> segments;  // oriented, in order
  std::int64_t sq_len = 0;                                      // the union is straight
};

struct LocusTable {
  std::vector<MarkedLocus> curves;
  SurfacePoint singular_point;

  const MarkedLocus& get(MarkedCurve m) const;
};

LocusTable marked_loci(const Origami& o);

// Text format:
//   squares: N
//   right: (1 2 3)
//   up: (1 4 5)
//   lshape: 3 3        (optional)
Origami parse_origami(std::istream& in);
Origami load_origami(const std::string& path);
std::string format_origami(const Origami& o);
std::string format_cycles(const std::vector<int>& perm);

}  // namespace kvol
