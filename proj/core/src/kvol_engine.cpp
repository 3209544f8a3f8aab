#include "kvol/kvol_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

namespace kvol {

namespace {

constexpr std::size_t kMaxWitnesses = 32;

__int128 i128(std::int64_t v) { return static_cast<__int128>(v); }

bool in_regions(const Origami& o, const TracedCurve& c, Region r1, Region r2) {
  for (const Segment& s : c.crossings) {
    const Region r = o.region(s.square);
    if (r != r1 && r != r2) return false;
  }
  return true;
}

bool plus_minus(const HomologyClass& x, const HomologyClass& y) { return x == y || x == -y; }

}  // namespace

long double SquaredRatio::value() const {
  return std::sqrt(static_cast<long double>(num_sq) / static_cast<long double>(den_sq));
}

SquaredRatio make_ratio(std::int64_t volume, std::int64_t intersection, std::int64_t sq_len1,
                        std::int64_t sq_len2) {
  if (sq_len1 <= 0 || sq_len2 <= 0) throw Error("curve lengths must be positive");
  if (intersection == 0) return {0, 1};
  std::int64_t num = volume * volume * intersection * intersection;
  std::int64_t den = sq_len1 * sq_len2;
  const std::int64_t g = std::gcd(num, den);
  return {num / g, den / g};
}

int compare(const SquaredRatio& x, const SquaredRatio& y) {
  const __int128 lhs = i128(x.num_sq) * y.den_sq;
  const __int128 rhs = i128(y.num_sq) * x.den_sq;
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

int compare(const SquaredRatio& x, const Rational& r) {
  if (r < Rational(0)) throw Error("comparison against a negative bound");
  const __int128 lhs = i128(x.num_sq) * r.denominator() * r.denominator();
  const __int128 rhs = i128(r.numerator()) * r.numerator() * x.den_sq;
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

KvolReport kvol_estimate(const Origami& o, const std::vector<TracedCurve>& pool,
                         std::int64_t max_sq_len, int workers) {
  if (pool.empty()) throw Error("empty curve pool");
  for (const auto& c : pool) {
    if (!c.homology) throw Error("pool curve " + c.id + " has no homology class");
  }
  struct Partial {
    SquaredRatio best;
    std::size_t tied = 0;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
  };
  const std::int64_t vol = volume(o);
  const std::size_t n = pool.size();
  const std::size_t nthreads = static_cast<std::size_t>(std::max(1, workers));
  std::vector<Partial> partial(nthreads);

  auto work = [&](std::size_t w) {
    Partial& p = partial[w];
    for (std::size_t i = w; i < n; i += nthreads) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const std::int64_t in = int_form(*pool[i].homology, *pool[j].homology);
        const SquaredRatio r = make_ratio(vol, in, pool[i].sq_len, pool[j].sq_len);
        const int cmp = compare(r, p.best);
        if (cmp > 0 || p.tied == 0) {
          p.best = r;
          p.tied = 0;
          p.pairs.clear();
        } else if (cmp < 0) {
          continue;
        }
        ++p.tied;
        if (p.pairs.size() < kMaxWitnesses) p.pairs.emplace_back(i, j);
      }
    }
  };
  if (nthreads == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (std::size_t t = 0; t < nthreads; ++t) threads.emplace_back(work, t);
    for (auto& th : threads) th.join();
  }

  KvolReport rep;
  rep.volume = vol;
  rep.max_sq_len = max_sq_len;
  rep.pool_size = n;
  rep.pairs = n * (n - 1) / 2;
  std::vector<std::pair<std::size_t, std::size_t>> ties;
  bool have = false;
  for (const Partial& p : partial) {
    if (p.tied == 0) continue;
    const int cmp = have ? compare(p.best, rep.best) : 1;
    if (cmp > 0) {
      rep.best = p.best;
      rep.tied = 0;
      ties.clear();
      have = true;
    }
    if (cmp >= 0) {
      rep.tied += p.tied;
      ties.insert(ties.end(), p.pairs.begin(), p.pairs.end());
    }
  }
  std::sort(ties.begin(), ties.end());
  if (ties.size() > kMaxWitnesses) ties.resize(kMaxWitnesses);
  for (auto [i, j] : ties) rep.witnesses.emplace_back(pool[i].id, pool[j].id);
  return rep;
}

KvolReport kvol_estimate(const Origami& o, std::int64_t max_sq_len, int workers) {
  if (max_sq_len < 1) throw Error("empty curve pool: max_sq_len must be at least 1");
  return kvol_estimate(o, curve_pool(o, max_sq_len, workers), max_sq_len, workers);
}

LemmaResult check_lemma_inter(const std::vector<TracedCurve>& pool, MarkedCurve m, int n) {
  LemmaResult res;
  res.name = "inter_" + std::string(marked_name(m));
  const HomologyClass mc = class_of_named(m);
  for (const auto& c : pool) {
    if (!c.homology) throw Error("pool curve " + c.id + " has no homology class");
    const std::int64_t in = int_form(*c.homology, mc);
    ++res.checked;
    if (i128(c.sq_len) >= i128(n) * n * in * in) continue;
    res.passed = false;
    res.counterexamples.push_back(c.id + " Int=" + std::to_string(in) +
                                  " sq_len=" + std::to_string(c.sq_len));
  }
  return res;
}

std::string_view short_class_name(ShortClass c) {
  switch (c) {
    case ShortClass::marked_diagonal: return "g_or_h";
    case ShortClass::e1_like: return "homotopic_e1";
    case ShortClass::f1_like: return "homotopic_f1";
    case ShortClass::unclassified: return "unclassified";
  }
  return "unclassified";
}

ShortClass classify_short(const Origami& o, const TracedCurve& c) {
  if (!c.homology) throw Error("curve " + c.id + " has no homology class");
  const HomologyClass& h = *c.homology;
  if (c.sq_len == 2 && (plus_minus(h, class_of_named(MarkedCurve::g)) ||
                        plus_minus(h, class_of_named(MarkedCurve::h)))) {
    return ShortClass::marked_diagonal;
  }
  if (c.direction.q == 0 && plus_minus(h, class_of_named(MarkedCurve::e1)) &&
      in_regions(o, c, Region::A, Region::C)) {
    return ShortClass::e1_like;
  }
  if (c.direction.p == 0 && plus_minus(h, class_of_named(MarkedCurve::f1)) &&
      in_regions(o, c, Region::B, Region::C)) {
    return ShortClass::f1_like;
  }
  return ShortClass::unclassified;
}

LemmaResult check_lemma_short_curves(const Origami& o, const std::vector<TracedCurve>& pool,
                                     int n) {
  LemmaResult res;
  res.name = "short_curves";
  const TracedCurve e1 = trace_marked(o, MarkedCurve::e1);
  const TracedCurve f1 = trace_marked(o, MarkedCurve::f1);
  auto meets = [&](const TracedCurve& c, const TracedCurve& m) {
    if (c.key == m.key) return false;
    return crossing_count(o, c, m) > 0;
  };
  for (const auto& c : pool) {
    const bool disjoint = !meets(c, e1) && !meets(c, f1);
    const bool short_curve = c.sq_len < static_cast<std::int64_t>(n) * n;
    if (!disjoint && !short_curve) continue;
    ++res.checked;
    if (classify_short(o, c) != ShortClass::unclassified) continue;
    res.passed = false;
    res.counterexamples.push_back(c.id + (disjoint ? " disjoint" : "") +
                                  (short_curve ? " short" : "") + " class " +
                                  to_string(*c.homology));
  }
  return res;
}

SumLemmaOutcome check_lemma_sommes(const SumLemmaInstance& inst) {
  const std::size_t I = inst.b.size();
  const std::size_t J = inst.c.size();
  if (I == 0 || J == 0) throw Error("sum lemma instance needs I, J >= 1");
  if (inst.a.size() != I) throw Error("sum lemma instance: a has the wrong number of rows");
  for (const auto& v : inst.b) {
    if (v <= Rational(0)) throw Error("sum lemma instance: b entries must be positive");
  }
  for (const auto& v : inst.c) {
    if (v <= Rational(0)) throw Error("sum lemma instance: c entries must be positive");
  }
  Rational sum_a(0), sum_b(0), sum_c(0), best(0);
  for (std::size_t i = 0; i < I; ++i) {
    if (inst.a[i].size() != J) throw Error("sum lemma instance: a has the wrong shape");
    for (std::size_t j = 0; j < J; ++j) {
      const Rational& a = inst.a[i][j];
      if (a < Rational(0)) throw Error("sum lemma instance: a entries must be nonnegative");
      sum_a += a;
      best = std::max(best, a / (inst.b[i] * inst.c[j]));
    }
  }
  for (const auto& v : inst.b) sum_b += v;
  for (const auto& v : inst.c) sum_c += v;
  SumLemmaOutcome out;
  out.lhs = sum_a / (sum_b * sum_c);
  out.rhs = best;
  out.holds = out.lhs <= out.rhs;
  return out;
}

SumLemmaInstance random_sum_instance(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> size(1, 5);
  std::uniform_int_distribution<std::int64_t> num(0, 12);
  std::uniform_int_distribution<std::int64_t> pos(1, 12);
  std::uniform_int_distribution<std::int64_t> den(1, 6);
  SumLemmaInstance inst;
  const int I = size(rng);
  const int J = size(rng);
  inst.a.assign(I, std::vector<Rational>(J));
  for (auto& row : inst.a)
    for (auto& v : row) v = Rational(num(rng), den(rng));
  for (int i = 0; i < I; ++i) inst.b.emplace_back(pos(rng), den(rng));
  for (int j = 0; j < J; ++j) inst.c.emplace_back(pos(rng), den(rng));
  return inst;
}

LemmaResult check_lemma_sommes_trials(std::size_t trials, std::uint64_t seed) {
  LemmaResult res;
  res.name = "sommes";
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const SumLemmaOutcome out = check_lemma_sommes(random_sum_instance(rng));
    ++res.checked;
    if (out.holds) continue;
    res.passed = false;
    res.counterexamples.push_back("trial " + std::to_string(t) + " lhs=" + to_string(out.lhs) +
                                  " rhs=" + to_string(out.rhs));
  }
  return res;
}

bool is_special(const Origami& o, const TracedCurve& c) {
  if (c.kind != CurveKind::cylinder_core) return false;
  const ShortClass k = classify_short(o, c);
  return k == ShortClass::e1_like || k == ShortClass::f1_like;
}

std::vector<LemmaResult> run_lemma_suite(const Origami& o, const std::vector<TracedCurve>& pool,
                                         int n) {
  std::vector<LemmaResult> out;
  for (MarkedCurve m : {MarkedCurve::e1, MarkedCurve::f1, MarkedCurve::g, MarkedCurve::h}) {
    out.push_back(check_lemma_inter(pool, m, n));
  }
  out.push_back(check_lemma_short_curves(o, pool, n));
  return out;
}

Rational piece_bound(int n) {
  const Rational r = Rational(1, n + 1) + Rational(1, static_cast<std::int64_t>(n) * n);
  const Rational s(n + 1, n);
  return r * s * s;
}

Rational upper_bound_U(int n) {
  return std::max(Rational(2) + Rational(1, n), Rational(2 * n + 1) * piece_bound(n));
}

Rational lower_bound(int n) { return Rational(2 * n + 1, n); }

std::int64_t default_max_sq_len(int n) {
  const std::int64_t k = 3 * (static_cast<std::int64_t>(n) + 1);
  return k * k;
}

SweepRow sweep_row(int n, const SweepOptions& opts) {
  if (n < 2) throw Error("sweep needs n >= 2");
  SweepRow row;
  row.n = n;
  const Origami o = build_l_shape({n + 1, n + 1});
  const std::int64_t k = opts.max_sq_len.value_or(default_max_sq_len(n));
  const auto pool = curve_pool(o, k, opts.workers);
  row.report = kvol_estimate(o, pool, k, opts.workers);
  row.lower = lower_bound(n);
  row.upper = upper_bound_U(n);
  row.lemmas = run_lemma_suite(o, pool, n);
  if (opts.sommes_trials > 0) {
    row.lemmas.push_back(check_lemma_sommes_trials(opts.sommes_trials, opts.seed));
  }
  row.all_lemmas_pass = std::all_of(row.lemmas.begin(), row.lemmas.end(),
                                    [](const LemmaResult& l) { return l.passed; });
  if (opts.check_stability) {
    const KvolReport doubled = kvol_estimate(o, 2 * k, opts.workers);
    row.stable_under_doubling = compare(doubled.best, row.report.best) == 0;
  }
  return row;
}

std::vector<SweepRow> sweep(const SweepOptions& opts) {
  if (opts.n_from < 2 || opts.n_to < opts.n_from) throw Error("sweep needs 2 <= from <= to");
  std::vector<SweepRow> rows;
  for (int n = opts.n_from; n <= opts.n_to; ++n) rows.push_back(sweep_row(n, opts));
  return rows;
}

}  // namespace kvol
