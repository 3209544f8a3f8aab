#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "kvol/homology.hpp"
#include "kvol/tracer.hpp"

namespace kvol {

/// Two curves share a segment, a ray at a vertex, or are the same curve.
class DegeneratePair : public Error {
 public:
  using Error::Error;
};

/// A transverse crossing away from the vertices, with the times at which each curve
/// passes through it.
struct CrossingPoint {
  SurfacePoint point;
  Rational t1;
  Rational t2;
  int sign = 0;
};

std::vector<CrossingPoint> interior_crossings(const Origami& o, const TracedCurve& c1,
                                              const TracedCurve& c2);

/// Contribution of one pair of passages through the same vertex: +1, -1 or 0.
int passage_term(const ConePassage& p1, const ConePassage& p2);

/// Signed sum of passage_term over all pairs of vertex passages of the two curves.
std::int64_t vertex_term(const Origami& o, const TracedCurve& c1, const TracedCurve& c2);

/// Every crossing with nonzero sign, vertex passages included, ordered by time on c1.
std::vector<CrossingPoint> signed_crossings(const Origami& o, const TracedCurve& c1,
                                            const TracedCurve& c2);

/// Algebraic intersection number; throws DegeneratePair.
std::int64_t geometric_intersection(const Origami& o, const TracedCurve& c1,
                                    const TracedCurve& c2);

/// Number of transverse meetings counted without sign (vertex passages count as 1 when
/// they actually cross).
std::int64_t crossing_count(const Origami& o, const TracedCurve& c1, const TracedCurve& c2);

/// Traced e2, f1, e1, f2 in basis order.
using BasisCurves = std::array<TracedCurve, 4>;
BasisCurves basis_curves(const Origami& o);

/// Homology coordinates recovered from the pairings with the basis curves.
HomologyClass coords_of(const Origami& o, const TracedCurve& c, const BasisCurves& basis);

/// Fill in `homology` on every curve of the pool.
void attach_homology(const Origami& o, std::vector<TracedCurve>& pool, int workers = 1);

}  // namespace kvol
