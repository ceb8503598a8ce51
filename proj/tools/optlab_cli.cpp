// Batch experiment driver: property verification, SGD sweeps, 1-D
// bisection runs, identification games, and lower-bound evaluation.
#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "optlab/algorithms.hpp"
#include "optlab/counterexamples.hpp"
#include "optlab/families.hpp"
#include "optlab/lowerbound.hpp"
#include "optlab/properties.hpp"
#include "optlab/serialize.hpp"
#include "optlab/svg.hpp"

namespace fs = std::filesystem;
using namespace optlab;
using vec::Vec;

namespace {

struct CliOptions {
  std::string config;
  std::string out = "out";
  std::string seeds;  // comma-separated override
  int workers = 0;
};

std::vector<std::uint64_t> parse_seed_list(const std::string& s) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stoull(tok));
  }
  return out;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hash_tag(const json& cfg, const std::vector<std::uint64_t>& seeds) {
  json j = cfg;
  j["_seeds"] = seeds;
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a(j.dump())));
  return std::string(buf);
}

double get_num(const json& j, const std::string& key, double fallback) {
  return j.contains(key) ? j.at(key).get<double>() : fallback;
}

long get_int(const json& j, const std::string& key, long fallback) {
  return j.contains(key) ? j.at(key).get<long>() : fallback;
}

std::string get_str(const json& j, const std::string& key, const std::string& fallback) {
  return j.contains(key) ? j.at(key).get<std::string>() : fallback;
}

HardFamily family_from_config(const json& fam) {
  HardFamilyOptions opt;
  opt.kind = family_kind_from_string(fam.at("name").get<std::string>());
  opt.mu = get_num(fam, "mu", 1.0);
  opt.L = get_num(fam, "L", 0.0);
  opt.tau = get_num(fam, "tau", 1.0);
  opt.Delta = get_num(fam, "Delta", 1.0);
  opt.D = get_num(fam, "D", 0.0);
  opt.sigma = get_num(fam, "sigma", 1.0);
  opt.d0 = static_cast<int>(get_int(fam, "d0", 0));
  opt.d = static_cast<int>(get_int(fam, "d", 0));
  opt.m_target = static_cast<int>(get_int(fam, "m_target", 0));
  opt.seed = static_cast<std::uint64_t>(get_int(fam, "seed", 1));
  if (fam.contains("require_target")) opt.require_target = fam.at("require_target").get<bool>();
  return make_hard_family(opt);
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

void set_workers(int workers) {
#ifdef _OPENMP
  if (workers > 0) omp_set_num_threads(workers);
#else
  (void)workers;
#endif
}

// ---- verify ----------------------------------------------------------

int verify_counterexample(const std::string& name, const fs::path& outdir) {
  json out;
  bool ok = true;
  if (name == "eb_not_rsi") {
    auto f = counterexample_eb_not_rsi();
    Rng rng(7);
    std::vector<Vec> pts;
    for (int i = 0; i < 10000; ++i) pts.push_back(rng.ball_vec(2, 1.0));
    auto eb = check_eb(f, 0.05, pts);
    double theta = 1.0 - 5.0 * M_PI / 4.0;
    std::vector<Vec> witness = {{std::cos(theta), std::sin(theta)}};
    auto rsi = check_rsi(f, 1e-6, witness);
    ok = eb.passed && !rsi.passed;
    out["eb"] = report_to_json(eb);
    out["rsi_at_witness"] = report_to_json(rsi);
    std::cout << "eb check: " << (eb.passed ? "pass" : "FAIL")
              << ", secant inequality at witness: " << (rsi.passed ? "unexpectedly holds" : "fails as designed")
              << "\n";
  } else if (name == "rsi_not_starsc") {
    auto f = counterexample_rsi_not_starsc();
    std::vector<Vec> grid;
    for (int i = -300; i <= 300; ++i) grid.push_back({i / 75.0});
    auto rsi = check_rsi(f, 1.0, grid);
    auto sqc = check_sqc(f, 1.0, 1e-9, {{1.5}});
    ok = rsi.passed && !sqc.passed;
    out["rsi"] = report_to_json(rsi);
    out["starsc_at_witness"] = report_to_json(sqc);
    std::cout << "1-RSI grid check: " << (rsi.passed ? "pass" : "FAIL")
              << ", star upper bound at 3/2: " << (sqc.passed ? "unexpectedly holds" : "fails as designed")
              << "\n";
  } else {
    std::cerr << "unknown counterexample: " << name << "\n";
    return 2;
  }
  out["passed"] = ok;
  write_file(outdir / "verify.json", out.dump(2) + "\n");
  return ok ? 0 : 1;
}

int cmd_verify(const json& cfg, const CliOptions& cli) {
  const auto& fam_cfg = cfg.at("family");
  std::string name = fam_cfg.at("name").get<std::string>();
  fs::create_directories(cli.out);
  if (name == "eb_not_rsi" || name == "rsi_not_starsc")
    return verify_counterexample(name, cli.out);

  auto fam = family_from_config(fam_cfg);
  CheckOptions opt;
  if (cfg.contains("checks")) {
    const auto& c = cfg.at("checks");
    opt.samples = static_cast<int>(get_int(c, "samples", opt.samples));
    opt.tol = get_num(c, "tol", opt.tol);
    opt.seed = static_cast<std::uint64_t>(get_int(c, "seed", 1234));
    // certificate overrides, for probing how tight the construction is
    for (auto& inst : fam.instances) {
      inst.certificate.tau = get_num(c, "tau", inst.certificate.tau);
      inst.certificate.mu = get_num(c, "mu", inst.certificate.mu);
      inst.certificate.L = get_num(c, "L", inst.certificate.L);
    }
  }
  opt.min_boundary_gap = 1e-7;

  json out;
  out["family"] = params_to_json(fam.params);
  json reports = json::array();
  bool all_ok = true;
  for (std::size_t i = 0; i < fam.instances.size(); ++i) {
    auto rs = run_standard_checks(fam.instances[i], opt);
    for (const auto& r : rs) {
      all_ok = all_ok && r.passed;
      json jr = report_to_json(r);
      jr["instance"] = i;
      reports.push_back(jr);
      std::cout << "instance " << i << " " << r.property << ": "
                << (r.passed ? "pass" : "FAIL") << " (worst " << r.worst_violation << ")\n";
      if (!r.passed && !r.witness.empty()) {
        std::cout << "  witness:";
        for (double v : r.witness) std::cout << " " << v;
        std::cout << "\n";
      }
    }
  }
  out["reports"] = reports;
  out["passed"] = all_ok;
  write_file(fs::path(cli.out) / "verify.json", out.dump(2) + "\n");
  return all_ok ? 0 : 1;
}

// ---- sweeps and single runs ------------------------------------------

struct SweepCell {
  long T = 0;
  std::uint64_t seed = 0;
  double gap = 0.0;
  std::uint64_t queries = 0;
  bool failed = false;
};

Vec sweep_start_point(const json& scfg, const HardFamily& fam, int instance) {
  Vec x1(static_cast<std::size_t>(fam.params.d), 0.0);
  if (scfg.contains("x1")) {
    auto v = scfg.at("x1").get<std::vector<double>>();
    for (std::size_t k = 0; k < x1.size() && k < v.size(); ++k) x1[k] = v[k];
    return x1;
  }
  if (scfg.contains("x1_radius")) {
    const Vec& z = fam.params.centers[static_cast<std::size_t>(instance)];
    for (std::size_t k = 0; k < z.size(); ++k) x1[k] = z[k];
    x1[0] += scfg.at("x1_radius").get<double>();
  }
  return x1;
}

SgdSchedule schedule_from_config(const std::string& name, const HardFamilyParams& p) {
  if (name == "rsi") return SgdSchedule::rsi(p.mu, p.L);
  if (name == "qcqg") return SgdSchedule::qcqg(p.mu, p.L, p.tau);
  throw std::runtime_error("unknown schedule: " + name);
}

int cmd_rate_sweep(const json& cfg, const CliOptions& cli) {
  auto fam = family_from_config(cfg.at("family"));
  const auto& scfg = cfg.at("sweep");
  if (fam.params.kind == FamilyKind::QC) {
    std::cerr << "rate-sweep: the bounded-domain family needs a projected method, "
                 "which is out of scope; use the game subcommand instead\n";
    return 2;
  }
  auto Ts = scfg.at("T").get<std::vector<long>>();
  for (std::size_t i = 1; i < Ts.size(); ++i)
    if (Ts[i] <= Ts[i - 1]) {
      std::cerr << "rate-sweep: T grid must be strictly increasing\n";
      return 2;
    }
  std::vector<std::uint64_t> seeds = cli.seeds.empty()
                                         ? scfg.at("seeds").get<std::vector<std::uint64_t>>()
                                         : parse_seed_list(cli.seeds);
  if (seeds.empty()) {
    std::cerr << "rate-sweep: need at least one seed\n";
    return 2;
  }
  int instance = static_cast<int>(get_int(scfg, "instance", 0)) % fam.params.m;
  auto sched = schedule_from_config(get_str(scfg, "schedule", "rsi"), fam.params);
  Vec x1 = sweep_start_point(scfg, fam, instance);
  const auto& F = fam.instances[static_cast<std::size_t>(instance)];

  std::vector<SweepCell> cells;
  for (long T : Ts)
    for (auto s : seeds) cells.push_back({T, s, 0.0, 0, false});

  long n = static_cast<long>(cells.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (long c = 0; c < n; ++c) {
    auto& cell = cells[static_cast<std::size_t>(c)];
    OracleConfig oc;
    oc.sigma = fam.params.sigma;
    oc.d0 = fam.params.d0;
    oc.seed = cell.seed;
    oc.budget = static_cast<std::uint64_t>(cell.T);
    GradientOracle oracle(oc, F);
    try {
      auto rep = run_sgd(F, oracle, x1, cell.T, sched, cell.seed);
      cell.gap = rep.gap;
      cell.queries = rep.queries;
      cell.failed = rep.aborted;
    } catch (const std::exception&) {
      cell.failed = true;
    }
  }

  std::sort(cells.begin(), cells.end(), [](const SweepCell& a, const SweepCell& b) {
    return a.T != b.T ? a.T < b.T : a.seed < b.seed;
  });

  std::ostringstream csv;
  csv.precision(17);
  csv << "family,T,seed,gap,queries\n";
  for (const auto& c : cells)
    csv << to_string(fam.params.kind) << "," << c.T << "," << c.seed << ","
        << (c.failed ? std::numeric_limits<double>::quiet_NaN() : c.gap) << "," << c.queries
        << "\n";

  fs::create_directories(cli.out);
  write_file(fs::path(cli.out) / "sweep.csv", csv.str());

  // mean gap per T and the fitted rate
  std::vector<double> xs, ys;
  for (long T : Ts) {
    double s = 0.0;
    int k = 0;
    for (const auto& c : cells)
      if (c.T == T && !c.failed) {
        s += c.gap;
        ++k;
      }
    if (k > 0) {
      xs.push_back(static_cast<double>(T));
      ys.push_back(s / k);
    }
  }
  std::string tag = hash_tag(cfg, seeds);
  double slope = 0.0;
  if (xs.size() >= 2) {
    slope = fit_loglog_slope(xs, ys);
    LogLogSeries series{"mean gap, " + to_string(fam.params.kind), xs, ys};
    write_file(fs::path(cli.out) / ("sweep-" + tag + ".svg"),
               render_loglog_svg("suboptimality vs budget", "T", "mean gap", {series}));
  }
  std::cout << "config " << tag << ": " << cells.size() << " cells, fitted slope " << slope
            << "\n";
  return 0;
}

int cmd_run_sgd(const json& cfg, const CliOptions& cli) {
  auto fam = family_from_config(cfg.at("family"));
  const auto& rcfg = cfg.at("run");
  if (fam.params.kind == FamilyKind::QC) {
    std::cerr << "run-sgd: no projected method for the bounded-domain family\n";
    return 2;
  }
  int instance = static_cast<int>(get_int(rcfg, "instance", 0)) % fam.params.m;
  long T = get_int(rcfg, "T", 1024);
  std::uint64_t seed = static_cast<std::uint64_t>(get_int(rcfg, "seed", 1));
  auto sched = schedule_from_config(get_str(rcfg, "schedule", "rsi"), fam.params);
  Vec x1 = sweep_start_point(rcfg, fam, instance);
  const auto& F = fam.instances[static_cast<std::size_t>(instance)];

  OracleConfig oc;
  oc.sigma = fam.params.sigma;
  oc.d0 = fam.params.d0;
  oc.seed = seed;
  oc.budget = static_cast<std::uint64_t>(T);
  GradientOracle oracle(oc, F);
  auto rep = run_sgd(F, oracle, x1, T, sched, seed);

  json out;
  out["family"] = params_to_json(fam.params);
  out["instance"] = instance;
  out["T"] = T;
  out["seed"] = seed;
  out["gap"] = rep.gap;
  out["queries"] = rep.queries;
  out["chosen_index"] = rep.chosen_index;
  out["aborted"] = rep.aborted;
  fs::create_directories(cli.out);
  write_file(fs::path(cli.out) / "run_sgd.json", out.dump(2) + "\n");
  std::cout << "gap " << rep.gap << " after " << rep.queries << " queries\n";
  return rep.aborted ? 1 : 0;
}

int cmd_run_bisect(const json& cfg, const CliOptions& cli) {
  const auto& b = cfg.at("bisect");
  BisectConfig bc;
  bc.T = get_int(b, "T", 20000);
  bc.D = get_num(b, "D", 4.0);
  bc.mu = get_num(b, "mu", 1.0);
  bc.L = get_num(b, "L", bc.mu);
  bc.sigma = get_num(b, "sigma", 1.0);
  bc.delta = get_num(b, "delta", 0.1);
  double curvature = get_num(b, "curvature", bc.mu);
  double xstar = get_num(b, "xstar", 0.0);
  std::uint64_t seed = static_cast<std::uint64_t>(get_int(b, "seed", 1));

  FunctionInstance f;
  f.dim = 1;
  f.value = [curvature, xstar](const Vec& x) {
    return 0.5 * curvature * (x[0] - xstar) * (x[0] - xstar);
  };
  f.gradient = [curvature, xstar](const Vec& x) { return Vec{curvature * (x[0] - xstar)}; };
  f.minimizer_set = MinimizerSet::point({xstar});
  f.certificate.L = curvature;
  f.certificate.mu = curvature;

  OracleConfig oc;
  oc.sigma = bc.sigma;
  oc.seed = seed;
  oc.budget = static_cast<std::uint64_t>(bc.T);
  GradientOracle oracle(oc, f);

  std::vector<BisectIteration> trace;
  auto rep = run_bisect1d(f, oracle, bc, &trace);
  auto der = bisect_derived(bc);

  json out;
  out["T"] = bc.T;
  out["seed"] = seed;
  out["output"] = rep.output[0];
  out["gap"] = rep.gap;
  out["gap_bound"] = bisect_gap_bound(bc);
  out["queries"] = rep.queries;
  out["iterations"] = trace.size();
  out["n"] = der.n;
  out["kappa_eff"] = der.kappa_eff;
  out["Delta"] = der.Delta;
  out["aborted"] = rep.aborted;
  fs::create_directories(cli.out);
  write_file(fs::path(cli.out) / "run_bisect.json", out.dump(2) + "\n");
  std::cout << "output " << rep.output[0] << ", gap " << rep.gap << " (bound "
            << bisect_gap_bound(bc) << "), " << rep.queries << " queries\n";
  return rep.aborted ? 1 : 0;
}

int cmd_game(const json& cfg, const CliOptions& cli) {
  auto fam = family_from_config(cfg.at("family"));
  const auto& g = cfg.at("game");
  long T = get_int(g, "T", 100);
  int trials = static_cast<int>(get_int(g, "trials", 100));
  std::uint64_t seed = static_cast<std::uint64_t>(get_int(g, "seed", 1));
  std::string alg_name = get_str(g, "algorithm", "blind");

  GameAlgorithm alg;
  if (alg_name == "clairvoyant")
    alg = clairvoyant_algorithm();
  else if (alg_name == "blind")
    alg = blind_algorithm();
  else if (alg_name == "sgd_rsi")
    alg = sgd_game_algorithm(vec::zeros(static_cast<std::size_t>(fam.params.d)),
                             SgdSchedule::Kind::RSI);
  else if (alg_name == "sgd_qcqg")
    alg = sgd_game_algorithm(vec::zeros(static_cast<std::size_t>(fam.params.d)),
                             SgdSchedule::Kind::QCQG);
  else {
    std::cerr << "unknown game algorithm: " << alg_name << "\n";
    return 2;
  }

  auto res = identification_game(alg, fam, T, trials, seed);
  double avg_kl = kl_average_closed_form(fam, static_cast<std::uint64_t>(T));

  json out = game_to_json(res);
  out["family"] = params_to_json(fam.params);
  out["algorithm"] = alg_name;
  out["T"] = T;
  out["seed"] = seed;
  out["kl_average_closed_form"] = avg_kl;
  out["pinsker_floor"] = pinsker_misid_lower(avg_kl, fam.params.m);
  out["gap_floor"] = fam.gap_floor();

  std::ostringstream csv;
  csv.precision(17);
  csv << "trial,instance,gap,identified,failed\n";
  for (std::size_t t = 0; t < res.per_trial.size(); ++t) {
    const auto& tr = res.per_trial[t];
    csv << t << "," << tr.instance << "," << tr.gap << "," << (tr.identified ? 1 : 0) << ","
        << (tr.failed ? 1 : 0) << "\n";
  }

  fs::create_directories(cli.out);
  write_file(fs::path(cli.out) / "game.json", out.dump(2) + "\n");
  write_file(fs::path(cli.out) / "game.csv", csv.str());
  std::cout << alg_name << ": misid_rate " << res.misid_rate << ", avg_gap " << res.avg_gap
            << " (floor " << fam.gap_floor() << " when misidentified)\n";
  return 0;
}

int cmd_lower_bound(const json& cfg, const CliOptions& cli) {
  const auto& f = cfg.at("family");
  const auto& b = cfg.at("bound");
  FamilyKind kind = family_kind_from_string(f.at("name").get<std::string>());
  std::uint64_t T = static_cast<std::uint64_t>(get_int(b, "T", 100000));
  auto tb = theoretical_bound(kind, get_num(f, "mu", 1.0), get_num(f, "tau", 1.0),
                              get_num(f, "L", 0.0), get_num(f, "sigma", 1.0),
                              get_num(f, "D", 0.0), T, static_cast<int>(get_int(f, "d", 0)),
                              get_num(b, "qc_T_constant", 35.0));
  json out;
  out["kind"] = to_string(kind);
  out["T"] = T;
  out["delta_star"] = tb.delta_star;
  out["bound"] = tb.bound;
  fs::create_directories(cli.out);
  write_file(fs::path(cli.out) / "lower_bound.json", out.dump(2) + "\n");
  std::cout << "delta_star " << tb.delta_star << ", bound " << tb.bound << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stochastic first-order optimization laboratory"};
  app.require_subcommand(1);

  CliOptions cli;
  std::string sub;
  for (const char* name : {"verify", "run-sgd", "run-bisect", "rate-sweep", "game", "lower-bound"}) {
    auto* s = app.add_subcommand(name);
    s->add_option("--config", cli.config, "TOML or JSON experiment configuration")->required();
    s->add_option("--out", cli.out, "output directory");
    s->add_option("--seeds", cli.seeds, "comma-separated seed override");
    s->add_option("--workers", cli.workers, "worker thread count");
    s->callback([&sub, name]() { sub = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    json cfg = load_config_file(cli.config);
    set_workers(cli.workers);
    if (sub == "verify") return cmd_verify(cfg, cli);
    if (sub == "run-sgd") return cmd_run_sgd(cfg, cli);
    if (sub == "run-bisect") return cmd_run_bisect(cfg, cli);
    if (sub == "rate-sweep") return cmd_rate_sweep(cfg, cli);
    if (sub == "game") return cmd_game(cfg, cli);
    if (sub == "lower-bound") return cmd_lower_bound(cfg, cli);
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
