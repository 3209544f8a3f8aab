#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "kvol/homology.hpp"
#include "kvol/intersection.hpp"
#include "kvol/rational.hpp"
#include "kvol/tracer.hpp"

namespace kvol {

/// A ratio Vol*|Int|/(l1*l2), stored as its exact square num_sq/den_sq in lowest terms.
struct SquaredRatio {
  std::int64_t num_sq = 0;
  std::int64_t den_sq = 1;

  long double value() const;  // the ratio itself (square root taken)
  friend bool operator==(const SquaredRatio&, const SquaredRatio&) = default;
};

SquaredRatio make_ratio(std::int64_t volume, std::int64_t intersection, std::int64_t sq_len1,
                        std::int64_t sq_len2);
/// Sign of x - y.
int compare(const SquaredRatio& x, const SquaredRatio& y);
/// Sign of sqrt(x) - r for a nonnegative rational r.
int compare(const SquaredRatio& x, const Rational& r);

struct KvolReport {
  std::int64_t volume = 0;
  std::int64_t max_sq_len = 0;
  std::size_t pool_size = 0;
  std::size_t pairs = 0;
  SquaredRatio best;
  std::size_t tied = 0;  // pairs attaining the maximum
  std::vector<std::pair<std::string, std::string>> witnesses;  // first is the reported one; capped
};

/// Maximum of Vol*|Int|/(l1*l2) over unordered pairs of the pool, ties broken by pair
/// index. The pool must carry homology classes.
KvolReport kvol_estimate(const Origami& o, const std::vector<TracedCurve>& pool,
                         std::int64_t max_sq_len, int workers = 1);
KvolReport kvol_estimate(const Origami& o, std::int64_t max_sq_len, int workers = 1);

struct LemmaResult {
  std::string name;
  bool passed = true;
  std::size_t checked = 0;
  std::vector<std::string> counterexamples;
};

/// l(gamma)^2 >= n^2 Int(gamma, m)^2 for every pool curve.
LemmaResult check_lemma_inter(const std::vector<TracedCurve>& pool, MarkedCurve m, int n);

enum class ShortClass { marked_diagonal, e1_like, f1_like, unclassified };
std::string_view short_class_name(ShortClass c);
ShortClass classify_short(const Origami& o, const TracedCurve& c);

/// Pool curves disjoint from e1 and f1, and pool curves shorter than n, are all among
/// g, h, or curves homotopic to e1 or f1.
LemmaResult check_lemma_short_curves(const Origami& o, const std::vector<TracedCurve>& pool,
                                     int n);

struct SumLemmaInstance {
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  std::vector<Rational> c;
};

struct SumLemmaOutcome {
  Rational lhs;  // sum a_ij / (sum b_i * sum c_j)
  Rational rhs;  // max a_ij / (b_i c_j)
  bool holds = false;
};

SumLemmaOutcome check_lemma_sommes(const SumLemmaInstance& inst);
SumLemmaInstance random_sum_instance(std::mt19937_64& rng);
/// Runs `trials` seeded random instances; counterexamples list failing trial indices.
LemmaResult check_lemma_sommes_trials(std::size_t trials, std::uint64_t seed);

/// Curve homotopic to e1 or f1: a horizontal (vertical) cylinder core with class +-[e1]
/// (+-[f1]) inside A and C (B and C).
bool is_special(const Origami& o, const TracedCurve& c);

enum class MarkedEdge { e1, e1p, f1, f1p };
std::string_view marked_edge_name(MarkedEdge e);

struct EdgeCrossing {
  Rational time;
  MarkedEdge edge;
  bool e_type() const { return edge == MarkedEdge::e1 || edge == MarkedEdge::e1p; }
};

/// Crossings of a cylinder core with e1, e1', f1, f1' in time order over one period.
std::vector<EdgeCrossing> marked_crossings(const Origami& o, const TracedCurve& c);

struct CutPiece {
  std::string parent;
  int index = 0;
  Rational t_begin;
  Rational t_end;
  Rational sq_len;                 // (t_end - t_begin)^2 |d|^2
  std::optional<TorusId> torus;    // empty when the piece embeds in neither strip
  std::vector<EdgeCrossing> internal;
  // Endpoints in the local coordinates of C, and the developed displacement.
  Rational start_x, start_y, end_x, end_y;
  Rational disp_x, disp_y;
  std::optional<TorusClosure> closure;  // filled in by certify_pair

  Rational length_multiplier() const { return t_end - t_begin; }
};

/// Cut a cylinder core at every e-crossing followed by an f-crossing and every f-crossing
/// followed by an e-crossing. Pieces are half-open in time and cover one period.
std::vector<CutPiece> cut_curve(const Origami& o, const TracedCurve& c);

struct CertificateStep {
  std::string name;
  bool passed = true;
  std::size_t checked = 0;
  std::vector<std::string> failures;
};

enum class CertificateStatus { verified, failed, inconclusive, special };
std::string_view status_name(CertificateStatus s);

struct Certificate {
  std::string id_a;
  std::string id_b;
  int n = 0;
  CertificateStatus status = CertificateStatus::verified;
  std::string note;
  std::int64_t intersection = 0;
  SquaredRatio ratio;  // |Int|/(l l) without the volume factor
  std::vector<CutPiece> pieces_a;
  std::vector<CutPiece> pieces_b;
  std::vector<std::vector<std::int64_t>> piece_intersections;  // Int(alpha_i, beta_j)
  std::vector<CertificateStep> steps;
};

/// (1/(n+1) + 1/n^2) ((n+1)/n)^2.
Rational piece_bound(int n);
/// max(2 + 1/n, (2n+1) piece_bound(n)).
Rational upper_bound_U(int n);
/// (2n+1)/n.
Rational lower_bound(int n);

Certificate certify_pair(const Origami& o, const TracedCurve& ca, const TracedCurve& cb, int n);

/// Seeded sample of pool index pairs (i < j) of non-special cylinder cores in distinct
/// directions, without replacement.
std::vector<std::pair<std::size_t, std::size_t>> sample_core_pairs(
    const Origami& o, const std::vector<TracedCurve>& pool, std::size_t count, std::uint64_t seed);

struct SweepRow {
  int n = 0;
  KvolReport report;
  Rational lower;
  Rational upper;
  bool all_lemmas_pass = false;
  std::vector<LemmaResult> lemmas;
  std::optional<bool> stable_under_doubling;
};

/// Default pool bound (3(n+1))^2.
std::int64_t default_max_sq_len(int n);

struct SweepOptions {
  int n_from = 2;
  int n_to = 8;
  std::optional<std::int64_t> max_sq_len;  // default_max_sq_len(n) when empty
  bool check_stability = false;
  std::size_t sommes_trials = 0;
  std::uint64_t seed = 0;
  int workers = 1;
};

SweepRow sweep_row(int n, const SweepOptions& opts);
std::vector<SweepRow> sweep(const SweepOptions& opts);

/// The lemma suites run by `lemmas` and `sweep`: inter_e1, inter_f1, inter_g, inter_h,
/// short_curves.
std::vector<LemmaResult> run_lemma_suite(const Origami& o, const std::vector<TracedCurve>& pool,
                                         int n);

}  // namespace kvol
