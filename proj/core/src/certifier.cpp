#include <algorithm>

#include "kvol/kvol_engine.hpp"

namespace kvol {

namespace {

const Rational kZero(0);
const Rational kOne(1);

bool interior(const Rational& v) { return kZero < v && v < kOne; }

Rational mod_period(Rational t, const Rational& period) {
  while (t >= period) t -= period;
  while (t < kZero) t += period;
  return t;
}

std::string piece_name(const CutPiece& p) { return p.parent + "#" + std::to_string(p.index); }

/// l_hat <= l + 1 for l_hat^2 = s (integer) and l^2 = l2 (rational).
bool within_plus_one(std::int64_t s, const Rational& l2) {
  const Rational f = Rational(s) - l2 - kOne;
  if (f <= kZero) return true;
  return f * f <= Rational(4) * l2;
}

struct StepBuilder {
  CertificateStep step;
  explicit StepBuilder(std::string name) { step.name = std::move(name); }
  void check(bool ok, const std::string& what) {
    ++step.checked;
    if (ok) return;
    step.passed = false;
    if (step.failures.size() < 16) step.failures.push_back(what);
  }
};

}  // namespace

std::string_view marked_edge_name(MarkedEdge e) {
  switch (e) {
    case MarkedEdge::e1: return "e1";
    case MarkedEdge::e1p: return "e1'";
    case MarkedEdge::f1: return "f1";
    case MarkedEdge::f1p: return "f1'";
  }
  return "?";
}

std::string_view status_name(CertificateStatus s) {
  switch (s) {
    case CertificateStatus::verified: return "verified";
    case CertificateStatus::failed: return "failed";
    case CertificateStatus::inconclusive: return "inconclusive";
    case CertificateStatus::special: return "special";
  }
  return "?";
}

std::vector<EdgeCrossing> marked_crossings(const Origami& o, const TracedCurve& c) {
  const LShapeParams& lp = o.require_lshape();
  const int a = lp.a;
  const int top_of_a = lp.a + lp.b - 2;
  const Direction& d = c.direction;
  std::vector<EdgeCrossing> out;
  for (const Segment& s : c.crossings) {
    if (d.q > 0 && s.y0 == kZero && interior(s.x0)) {
      if (s.square == 0) out.push_back({s.t0, MarkedEdge::e1});
      if (s.square == a) out.push_back({s.t0, MarkedEdge::e1p});
    }
    if (d.q < 0 && s.y0 == kOne && interior(s.x0)) {
      if (s.square == top_of_a) out.push_back({s.t0, MarkedEdge::e1});
      if (s.square == 0) out.push_back({s.t0, MarkedEdge::e1p});
    }
    if (d.p > 0 && s.x0 == kZero && interior(s.y0)) {
      if (s.square == 0) out.push_back({s.t0, MarkedEdge::f1});
      if (s.square == 1) out.push_back({s.t0, MarkedEdge::f1p});
    }
    if (d.p < 0 && s.x0 == kOne && interior(s.y0)) {
      if (s.square == a - 1) out.push_back({s.t0, MarkedEdge::f1});
      if (s.square == 0) out.push_back({s.t0, MarkedEdge::f1p});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const EdgeCrossing& x, const EdgeCrossing& y) { return x.time < y.time; });
  return out;
}

std::vector<CutPiece> cut_curve(const Origami& o, const TracedCurve& c) {
  if (c.kind != CurveKind::cylinder_core) throw Error("only cylinder cores can be cut");
  const Rational period(c.period);
  const Rational p(c.direction.p), q(c.direction.q);
  const auto events = marked_crossings(o, c);
  const std::size_t m = events.size();

  auto segment_at = [&](const Rational& t) -> const Segment& {
    const Rational tt = mod_period(t, period);
    for (const Segment& s : c.crossings) {
      if (s.t0 == tt) return s;
    }
    throw Error("no segment of " + c.id + " starts at the cut time");
  };
  auto torus_from_squares = [&](const Rational& t0, const Rational& t1) -> std::optional<TorusId> {
    bool in_a = true, in_b = true;
    for (const Segment& s : c.crossings) {
      Rational t = mod_period(s.t0, period);
      if (t < t0) t += period;
      if (t >= t1) continue;
      const Region r = o.region(s.square);
      in_a = in_a && (r == Region::A || r == Region::C);
      in_b = in_b && (r == Region::B || r == Region::C);
    }
    if (in_a) return TorusId::A;
    if (in_b) return TorusId::B;
    return std::nullopt;
  };

  std::vector<std::size_t> cuts;
  for (std::size_t k = 0; k < m; ++k) {
    if (events[k].e_type() != events[(k + 1) % m].e_type()) cuts.push_back(k);
  }

  std::vector<CutPiece> pieces;
  if (cuts.empty()) {
    // A single closed piece; its endpoints coincide.
    CutPiece piece;
    piece.parent = c.id;
    piece.t_begin = m > 0 ? events[0].time : kZero;
    piece.t_end = piece.t_begin + period;
    piece.internal = events;
    if (m == 0) {
      piece.torus = torus_from_squares(kZero, period);
    } else {
      const bool e = events[0].e_type();
      piece.torus = e ? TorusId::A : TorusId::B;
    }
    piece.disp_x = period * p;
    piece.disp_y = period * q;
    pieces.push_back(std::move(piece));
  } else {
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      const std::size_t k0 = cuts[i];
      const std::size_t k1 = cuts[(i + 1) % cuts.size()];
      CutPiece piece;
      piece.parent = c.id;
      piece.index = static_cast<int>(i);
      piece.t_begin = events[k0].time;
      piece.t_end = events[k1].time;
      if (piece.t_end <= piece.t_begin) piece.t_end += period;
      for (std::size_t k = (k0 + 1) % m; k != k1; k = (k + 1) % m) {
        piece.internal.push_back(events[k]);
      }
      bool all_e = true, all_f = true;
      for (const auto& ev : piece.internal) {
        all_e = all_e && ev.e_type();
        all_f = all_f && !ev.e_type();
      }
      if (piece.internal.empty()) {
        piece.torus = torus_from_squares(piece.t_begin, piece.t_end);
      } else if (all_e) {
        piece.torus = TorusId::A;
      } else if (all_f) {
        piece.torus = TorusId::B;
      }
      const Segment& s0 = segment_at(piece.t_begin);
      const Segment& s1 = segment_at(piece.t_end);
      if (s0.square != 0 || s1.square != 0) {
        throw Error("cut point of " + c.id + " is not on the boundary of C");
      }
      piece.start_x = s0.x0;
      piece.start_y = s0.y0;
      piece.end_x = s1.x0;
      piece.end_y = s1.y0;
      const Rational dt = piece.t_end - piece.t_begin;
      piece.disp_x = dt * p;
      piece.disp_y = dt * q;
      pieces.push_back(std::move(piece));
    }
  }
  for (auto& piece : pieces) {
    const Rational dt = piece.t_end - piece.t_begin;
    piece.sq_len = dt * dt * Rational(c.direction.sq_norm());
  }
  return pieces;
}

Certificate certify_pair(const Origami& o, const TracedCurve& ca, const TracedCurve& cb, int n) {
  if (n < 2) throw Error("certificates need n >= 2");
  if (ca.kind != CurveKind::cylinder_core || cb.kind != CurveKind::cylinder_core) {
    throw Error("certify_pair expects two cylinder cores");
  }
  const LShapeParams& lp = o.require_lshape();
  Certificate cert;
  cert.id_a = ca.id;
  cert.id_b = cb.id;
  cert.n = n;
  try {
    cert.intersection = geometric_intersection(o, ca, cb);
  } catch (const DegeneratePair& e) {
    cert.status = CertificateStatus::inconclusive;
    cert.note = std::string("degenerate pair: ") + e.what();
    return cert;
  }
  cert.ratio = make_ratio(1, cert.intersection, ca.sq_len, cb.sq_len);
  const std::int64_t in = cert.intersection;
  const std::int64_t n2 = static_cast<std::int64_t>(n) * n;

  if (is_special(o, ca) || is_special(o, cb)) {
    // |Int| / (l l) <= 1/n.
    StepBuilder b("special_class_bound");
    b.check(static_cast<__int128>(in) * in * n2 <=
                static_cast<__int128>(ca.sq_len) * cb.sq_len,
            "ratio exceeds 1/n");
    cert.steps.push_back(b.step);
    cert.status = b.step.passed ? CertificateStatus::special : CertificateStatus::failed;
    return cert;
  }

  cert.pieces_a = cut_curve(o, ca);
  cert.pieces_b = cut_curve(o, cb);

  {
    StepBuilder b("length_sum");
    for (const auto* side : {&cert.pieces_a, &cert.pieces_b}) {
      Rational total(0);
      for (const auto& p : *side) total += p.length_multiplier();
      const TracedCurve& parent = side == &cert.pieces_a ? ca : cb;
      b.check(total == Rational(parent.period), parent.id + " pieces do not sum to its length");
    }
    cert.steps.push_back(b.step);
  }

  for (auto* side : {&cert.pieces_a, &cert.pieces_b}) {
    for (auto& p : *side) {
      if (!p.torus) {
        cert.status = CertificateStatus::inconclusive;
        cert.note = piece_name(p) + " crosses both e- and f-type edges";
        return cert;
      }
      try {
        p.closure = torus_class_and_length(
            {p.start_x, p.start_y, p.end_x, p.end_y, p.disp_x, p.disp_y},
            torus_model(lp, *p.torus));
      } catch (const UnembeddablePiece& e) {
        cert.status = CertificateStatus::inconclusive;
        cert.note = piece_name(p) + ": " + e.what();
        return cert;
      }
    }
  }

  {
    StepBuilder len("piece_length");
    StepBuilder close("closure_length");
    StepBuilder closed("closed_length");
    for (const auto* side : {&cert.pieces_a, &cert.pieces_b}) {
      for (const auto& p : *side) {
        len.check(p.sq_len >= Rational(n2), piece_name(p) + " shorter than n");
        close.check(within_plus_one(p.closure->sq_len, p.sq_len),
                    piece_name(p) + " closed curve longer than piece + 1");
        closed.check(p.closure->sq_len >= n2, piece_name(p) + " closed curve shorter than n");
      }
    }
    cert.steps.push_back(len.step);
    cert.steps.push_back(close.step);
    cert.steps.push_back(closed.step);
  }

  // Bin the crossings of the two curves by piece.
  const std::size_t I = cert.pieces_a.size();
  const std::size_t J = cert.pieces_b.size();
  cert.piece_intersections.assign(I, std::vector<std::int64_t>(J, 0));
  auto piece_of = [](const std::vector<CutPiece>& pieces, const Rational& t,
                     const Rational& period) {
    Rational tt = mod_period(t, period);
    if (tt < pieces.front().t_begin) tt += period;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      if (pieces[i].t_begin <= tt && tt < pieces[i].t_end) return i;
    }
    throw Error("crossing time outside every piece");
  };
  for (const auto& x : signed_crossings(o, ca, cb)) {
    const std::size_t i = piece_of(cert.pieces_a, x.t1, Rational(ca.period));
    const std::size_t j = piece_of(cert.pieces_b, x.t2, Rational(cb.period));
    cert.piece_intersections[i][j] += x.sign;
  }

  {
    StepBuilder b("sum_decomposition");
    std::int64_t total = 0;
    for (const auto& row : cert.piece_intersections)
      for (std::int64_t v : row) total += v;
    b.check(total == in, "piece intersections do not add up to Int");
    cert.steps.push_back(b.step);
  }

  const Rational bound = piece_bound(n);
  const Rational bound2 = bound * bound;
  {
    StepBuilder corr("intersection_correction");
    StepBuilder torus("torus_bound");
    StepBuilder ratio("piece_ratio_bound");
    for (std::size_t i = 0; i < I; ++i) {
      for (std::size_t j = 0; j < J; ++j) {
        const CutPiece& pa = cert.pieces_a[i];
        const CutPiece& pb = cert.pieces_b[j];
        const std::int64_t v = cert.piece_intersections[i][j];
        const std::string tag = piece_name(pa) + " x " + piece_name(pb);
        if (*pa.torus == *pb.torus) {
          const std::int64_t det = torus_intersection(pa.closure->cls, pb.closure->cls);
          corr.check(std::abs(v) <= std::abs(det) + 1, tag + " |Int| > |det| + 1");
          const std::int64_t area = torus_model(lp, *pa.torus).area();
          torus.check(static_cast<__int128>(det) * det * area * area <=
                          static_cast<__int128>(pa.closure->sq_len) * pb.closure->sq_len,
                      tag + " torus bound");
        }
        ratio.check(Rational(v * v) <= bound2 * pa.sq_len * pb.sq_len, tag + " ratio > bound");
      }
    }
    cert.steps.push_back(corr.step);
    cert.steps.push_back(torus.step);
    cert.steps.push_back(ratio.step);
  }

  {
    StepBuilder b("sommes");
    SumLemmaInstance inst;
    for (std::size_t i = 0; i < I; ++i) {
      inst.a.emplace_back();
      for (std::size_t j = 0; j < J; ++j) {
        inst.a.back().push_back(Rational(std::abs(cert.piece_intersections[i][j])));
      }
      inst.b.push_back(cert.pieces_a[i].length_multiplier());
    }
    for (const auto& p : cert.pieces_b) inst.c.push_back(p.length_multiplier());
    const SumLemmaOutcome out = check_lemma_sommes(inst);
    b.check(out.holds, "sum lemma fails on the piece matrix");
    // |Int| <= sum |Int_ij| keeps the left side above the pair's own ratio.
    Rational sum_abs(0);
    for (const auto& row : inst.a)
      for (const auto& v : row) sum_abs += v;
    b.check(Rational(std::abs(in)) <= sum_abs, "|Int| exceeds the sum over pieces");
    cert.steps.push_back(b.step);
  }

  {
    StepBuilder b("assembled_bound");
    b.check(Rational(in * in) <= bound2 * Rational(ca.sq_len) * Rational(cb.sq_len),
            "pair ratio exceeds the assembled bound");
    cert.steps.push_back(b.step);
  }

  const bool ok = std::all_of(cert.steps.begin(), cert.steps.end(),
                              [](const CertificateStep& s) { return s.passed; });
  cert.status = ok ? CertificateStatus::verified : CertificateStatus::failed;
  return cert;
}

std::vector<std::pair<std::size_t, std::size_t>> sample_core_pairs(
    const Origami& o, const std::vector<TracedCurve>& pool, std::size_t count, std::uint64_t seed) {
  std::vector<std::size_t> cores;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (pool[i].kind == CurveKind::cylinder_core && !is_special(o, pool[i])) cores.push_back(i);
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t x = 0; x < cores.size(); ++x) {
    for (std::size_t y = x + 1; y < cores.size(); ++y) {
      if (pool[cores[x]].direction == pool[cores[y]].direction) continue;
      pairs.emplace_back(cores[x], cores[y]);
    }
  }
  std::mt19937_64 rng(seed);
  // Partial Fisher-Yates; std::shuffle's output is not specified across standard libraries.
  const std::size_t take = std::min(count, pairs.size());
  for (std::size_t i = 0; i < take; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng() % (pairs.size() - i));
    std::swap(pairs[i], pairs[j]);
  }
  pairs.resize(take);
  return pairs;
}

}  // namespace kvol
