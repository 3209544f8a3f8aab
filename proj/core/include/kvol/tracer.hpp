#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kvol/homology.hpp"
#include "kvol/rational.hpp"
#include "kvol/surface.hpp"

namespace kvol {

/// Primitive integer direction (p, q).
struct Direction {
  std::int64_t p = 1;
  std::int64_t q = 0;

  std::int64_t sq_norm() const { return p * p + q * q; }
  Direction reversed() const { return {-p, -q}; }
  friend bool operator==(const Direction&, const Direction&) = default;
};

Direction make_direction(std::int64_t p, std::int64_t q);
bool is_canonical(const Direction& d);
/// Primitive directions with q > 0, plus (1,0), with p^2 + q^2 <= max_sq_len.
std::vector<Direction> canonical_directions(std::int64_t max_sq_len);

/// Quadrant index of a nonzero vector with half-open ranges [k*pi/2, (k+1)*pi/2).
int quadrant(std::int64_t x, std::int64_t y);

/// A ray leaving a vertex: the position of its corner in the vertex's
/// counter-clockwise corner order, and its direction inside that corner.
struct RayKey {
  int position = 0;
  std::int64_t dx = 0;
  std::int64_t dy = 0;

  friend bool operator==(const RayKey&, const RayKey&) = default;
};

/// Position of the ray (ux, uy) at the vertex of corner c; the ray must lie in the
/// closure of c's angular range.
int ray_position(const Origami& o, CornerRef c, std::int64_t ux, std::int64_t uy);

/// Strict counter-clockwise order of rays around a vertex, starting at position 0.
bool ray_less(const RayKey& a, const RayKey& b);

/// Passage of a curve through a singular vertex.
struct ConePassage {
  int vertex = 0;
  RayKey in;   // ray pointing back along the arriving curve
  RayKey out;  // ray along which the curve leaves
  Rational time;  // curve time of the passage
};

/// One straight segment of a curve inside a square; local coordinates, times along the
/// curve measured in multiples of the direction vector.
struct Segment {
  int square = 0;
  Rational x0, y0, x1, y1;
  Rational t0, t1;
};

enum class CurveKind { saddle_connection, cylinder_core };

std::string_view kind_name(CurveKind k);

struct TracedCurve {
  CurveKind kind = CurveKind::cylinder_core;
  Direction direction;
  std::int64_t period = 0;  // holonomy = period * direction
  std::int64_t hx = 0;
  std::int64_t hy = 0;
  std::int64_t sq_len = 0;
  std::vector<Segment> crossings;
  std::optional<ConePassage> passage;   // saddle connections only
  std::optional<CornerRef> departure;   // saddle connections only
  std::optional<HomologyClass> homology;
  std::string key;
  std::string id;

  bool passes_singularity() const { return passage.has_value(); }
};

struct StepOutcome {
  Segment segment;
  std::optional<SurfacePoint> next;   // normalized next point, empty at a singular vertex
  std::optional<int> singular_vertex;
  std::optional<RayKey> arrival;      // ray key of the arrival when a vertex is met
};

/// Move the point into the square its ray enters (edge points live on the bottom/left).
SurfacePoint normalize(const Origami& o, SurfacePoint pt, const Direction& d);

/// Advance to the next edge of the square grid. A regular vertex is passed straight
/// through; a singular one ends the step with `singular_vertex` set.
StepOutcome step(const Origami& o, SurfacePoint pt, const Direction& d, const Rational& t0 = 0);

/// The corner at `c`'s vertex whose half-open angular range contains `d`, where `d`
/// lies in the closure of `c`'s range.
CornerRef corner_for_ray(const Origami& o, CornerRef c, const Direction& d);
SurfacePoint corner_point(CornerRef c);

enum class TraceEnd { closed, singular, too_long };

struct TraceResult {
  TraceEnd end = TraceEnd::too_long;
  std::vector<Segment> segments;
  Rational time;
  std::optional<int> vertex;
  std::optional<RayKey> arrival;
};

/// Follow the flow from `start` until it closes up, meets a singular vertex, or its
/// squared length exceeds `max_sq_len`.
TraceResult trace(const Origami& o, SurfacePoint start, const Direction& d,
                  std::optional<std::int64_t> max_sq_len = std::nullopt);

/// Trace the separatrix leaving `corner` in direction `d`.
std::optional<TracedCurve> trace_separatrix(const Origami& o, CornerRef corner, const Direction& d,
                                            std::optional<std::int64_t> max_sq_len);

std::vector<TracedCurve> saddle_connections(const Origami& o, std::int64_t max_sq_len);
std::vector<TracedCurve> saddle_connections_in_direction(
    const Origami& o, const Direction& d, std::optional<std::int64_t> max_sq_len);

struct Cylinder {
  Direction direction;
  TracedCurve core;
  std::int64_t width_intervals = 0;  // transverse run length in units of `spacing`
  Rational spacing;                  // grid spacing along the transversal edge
  std::vector<int> boundary;         // indices into the direction's saddle connections

  /// Area = circumference * perpendicular width.
  std::int64_t area() const { return core.period * width_intervals; }
};

struct DirectionDecomposition {
  Direction direction;
  std::vector<TracedCurve> saddle_connections;
  std::vector<Cylinder> cylinders;
};

DirectionDecomposition decompose(const Origami& o, const Direction& d);
std::vector<Cylinder> cylinders_in_direction(const Origami& o, const Direction& d);

/// Every passage of a curve through a vertex, regular or singular, in curve order.
std::vector<ConePassage> vertex_passages(const Origami& o, const TracedCurve& c);

/// Canonical identity of a curve (smallest rotation of its edge-entry sequence).
std::string curve_key(const TracedCurve& c);

/// Saddle connections and cylinder cores with squared length <= max_sq_len over all
/// canonical directions, deduplicated, with homology coordinates filled in on L-shapes.
std::vector<TracedCurve> curve_pool(const Origami& o, std::int64_t max_sq_len, int workers = 1);

/// The k-fold iterate of a cylinder core (same direction, k times the holonomy).
TracedCurve iterate(const TracedCurve& core, std::int64_t k);

/// Trace one of the marked curves of an L-shape with its fixed orientation.
TracedCurve trace_marked(const Origami& o, MarkedCurve m);

}  // namespace kvol
