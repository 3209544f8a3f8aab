#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "app.hpp"

namespace {

using kvol::cli::Format;
using kvol::cli::RunConfig;

struct Flags {
  std::vector<int> lshape;
  std::string origami;
  std::int64_t max_sq_len = 0;
  std::string out;
  std::string format;
  int workers = 1;
  std::vector<std::string> pair;
};

void add_common(CLI::App* sub, Flags& f, bool surface) {
  if (surface) {
    auto* ls = sub->add_option("--lshape", f.lshape, "L-shaped surface L(A,B)")->expected(2);
    sub->add_option("--origami", f.origami, "origami file (two permutation lines)")
        ->excludes(ls);
  }
  sub->add_option("--max-sq-len", f.max_sq_len, "squared-length bound K for the curve pool")
      ->check(CLI::PositiveNumber);
  sub->add_option("--out", f.out, "write the report here instead of stdout");
  sub->add_option("--format", f.format, "csv, json or text")
      ->check(CLI::IsMember({"csv", "json", "text"}));
  sub->add_option("--workers", f.workers, "worker threads (KVOL_WORKERS overrides)")
      ->check(CLI::Range(1, 1024));
}

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  return Format::text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Closed geodesics and KVol on L-shaped square-tiled surfaces"};
  app.require_subcommand(1);
  Flags f;
  RunConfig cfg;

  auto* info = app.add_subcommand("info", "surface summary: squares, volume, cone angles, marked loci");
  add_common(info, f, true);
  auto* en = app.add_subcommand("enumerate", "list saddle connections and cylinder cores up to K");
  add_common(en, f, true);
  auto* kv = app.add_subcommand("kvol", "estimate KVol over the curve pool");
  add_common(kv, f, true);
  kv->add_option("--trials", cfg.trials, "also run this many random sum-lemma instances");
  kv->add_option("--seed", cfg.seed, "seed for the random instances");
  auto* lm = app.add_subcommand("lemmas", "run the lemma suites on L(n+1,n+1)");
  add_common(lm, f, true);
  lm->add_option("--trials", cfg.trials, "also run this many random sum-lemma instances");
  lm->add_option("--seed", cfg.seed, "seed for the random instances");
  auto* ce = app.add_subcommand("certify", "check the piece-cutting certificate on core pairs");
  add_common(ce, f, true);
  ce->add_option("--pair", f.pair, "two curve ids")->expected(2);
  ce->add_option("--trials", cfg.trials, "number of sampled pairs when --pair is absent (20)");
  ce->add_option("--seed", cfg.seed, "sampling seed");
  auto* sw = app.add_subcommand("sweep", "estimate and lemma suites for n in a range");
  add_common(sw, f, false);
  sw->add_option("--from", cfg.n_from, "first n (surface L(n+1,n+1))")->check(CLI::Range(2, 64));
  sw->add_option("--to", cfg.n_to, "last n")->check(CLI::Range(2, 64));
  sw->add_flag("--stability", cfg.stability, "recompute each maximum with the bound doubled");
  sw->add_option("--trials", cfg.trials, "random sum-lemma instances per row");
  sw->add_option("--seed", cfg.seed, "seed for the random instances");
  auto* so = app.add_subcommand("sommes", "randomized check of the sum lemma");
  add_common(so, f, false);
  so->add_option("--trials", cfg.trials, "number of instances (10000)");
  so->add_option("--seed", cfg.seed, "seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    cfg.subcommand = app.get_subcommands().front()->get_name();
    if (!f.lshape.empty()) cfg.lshape = std::make_pair(f.lshape[0], f.lshape[1]);
    if (!f.origami.empty()) cfg.origami_path = f.origami;
    if (f.max_sq_len > 0) cfg.max_sq_len = f.max_sq_len;
    if (!f.out.empty()) cfg.out = f.out;
    if (!f.format.empty()) cfg.format = parse_format(f.format);
    if (f.pair.size() == 2) cfg.pair = std::make_pair(f.pair[0], f.pair[1]);
    cfg.workers = kvol::cli::workers_from_env(f.workers);

    const kvol::cli::RunResult res = kvol::cli::run(cfg);
    std::cerr << res.diagnostics;
    if (cfg.out) {
      std::ofstream file(*cfg.out, std::ios::binary);
      file << res.output;
      file.close();
      if (!file) {
        std::cerr << "error: cannot write " << *cfg.out << "\n";
        return 2;
      }
    } else {
      std::cout << res.output;
    }
    return res.exit_code;
  } catch (const kvol::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
