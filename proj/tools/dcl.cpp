// dcl: dissipative-boundary coding lab.
//
// Subcommands: clifford-run, annealed-run, sweep, analytic, fit, repro-figure.
// Exit codes: 0 success, 2 config/validation error, 3 IO error, 4 numerical
// failure. DCL_SEED in the environment overrides every seed (CI hook).

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <CLI11.hpp>

#include "dcl/analytics.hpp"
#include "dcl/common.hpp"
#include "dcl/fit.hpp"
#include "dcl/protocol.hpp"
#include "dcl/spectral.hpp"
#include "dcl/sweep.hpp"
#include "dcl/walk.hpp"

namespace {

using namespace dcl;

std::uint64_t seed_override(std::uint64_t seed) {
  if (const char* env = std::getenv("DCL_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return seed;
}

struct CliffordArgs {
  int L = 8, T = 4;
  double p = 0.0;
  std::string channel = "erasure", schedule = "random", encoding = "single_pair";
  int t_period = 1;
  double p_u = 1.0;
  std::string prescramble = "none";
  double k = 1.0;
  int multiple = 1;
  int x0 = 1;
  double C = 0.5;
  std::uint64_t seed = 1;
  int samples = 100;
  int threads = 0;
};

ProtocolConfig to_config(const CliffordArgs& a) {
  ProtocolConfig cfg;
  cfg.L = a.L;
  cfg.T = a.T;
  cfg.p = a.p;
  cfg.t_period = a.t_period;
  cfg.p_u = a.p_u;
  cfg.x0 = a.x0;
  cfg.code_rate = a.C;
  cfg.seed = seed_override(a.seed);
  cfg.n_samples = a.samples;
  if (a.channel == "erasure")
    cfg.channel = ChannelKind::kErasure;
  else if (a.channel == "cnot_ancilla")
    cfg.channel = ChannelKind::kCnotAncilla;
  else
    throw ConfigError("unknown channel: " + a.channel);
  if (a.schedule == "random")
    cfg.schedule = ScheduleKind::kRandom;
  else if (a.schedule == "periodic")
    cfg.schedule = ScheduleKind::kPeriodic;
  else
    throw ConfigError("unknown schedule: " + a.schedule);
  if (a.prescramble == "none")
    cfg.prescramble = PrescrambleKind::kNone;
  else if (a.prescramble == "log")
    cfg.prescramble = PrescrambleKind::kLog;
  else if (a.prescramble == "linear")
    cfg.prescramble = PrescrambleKind::kLinear;
  else
    throw ConfigError("unknown prescramble kind: " + a.prescramble);
  cfg.prescramble_k = a.k;
  cfg.prescramble_multiple = a.multiple;
  if (a.encoding == "single_pair")
    cfg.encoding = EncodingKind::kSinglePair;
  else if (a.encoding == "finite_rate")
    cfg.encoding = EncodingKind::kFiniteRate;
  else
    throw ConfigError("unknown encoding: " + a.encoding);
  return cfg;
}

void add_clifford_flags(CLI::App* cmd, CliffordArgs& a) {
  cmd->add_option("--L", a.L, "system size (even)")->capture_default_str();
  cmd->add_option("--T", a.T, "dissipative timesteps")->capture_default_str();
  cmd->add_option("--p", a.p, "dissipation strength in [0,1]")
      ->capture_default_str();
  cmd->add_option("--channel", a.channel, "erasure | cnot_ancilla")
      ->capture_default_str();
  cmd->add_option("--schedule", a.schedule, "random | periodic")
      ->capture_default_str();
  cmd->add_option("--t-period", a.t_period, "periodic schedule period")
      ->capture_default_str();
  cmd->add_option("--p-u", a.p_u, "sparse scrambling gate probability")
      ->capture_default_str();
  cmd->add_option("--prescramble", a.prescramble, "none | log | linear")
      ->capture_default_str();
  cmd->add_option("--k", a.k, "log prescramble: t_scr = round(k log2 L)")
      ->capture_default_str();
  cmd->add_option("--multiple", a.multiple, "linear prescramble: t_scr = multiple*L")
      ->capture_default_str();
  cmd->add_option("--encoding", a.encoding, "single_pair | finite_rate")
      ->capture_default_str();
  cmd->add_option("--x0", a.x0, "encoded site (1-indexed)")->capture_default_str();
  cmd->add_option("--C", a.C, "code rate for finite_rate")->capture_default_str();
  cmd->add_option("--seed", a.seed, "master seed")->capture_default_str();
  cmd->add_option("--samples", a.samples, "trajectory samples")
      ->capture_default_str();
  cmd->add_option("--threads", a.threads, "worker threads (0 = hardware)")
      ->capture_default_str();
}

int run_clifford(const CliffordArgs& a) {
  const ProtocolConfig cfg = to_config(a);
  const auto recs = run_protocol(cfg, {cfg.T}, a.threads);
  double mean = 0;
  for (const auto& r : recs) mean += r.checkpoints.back().second;
  mean /= double(recs.size());
  double var = 0;
  for (const auto& r : recs) {
    const double d = r.checkpoints.back().second - mean;
    var += d * d;
  }
  var /= std::max<std::size_t>(1, recs.size() - 1);
  std::printf("I=%.6g\n", mean);
  std::printf("sem=%.6g samples=%d L=%d T=%d p=%.6g t_scr=%d\n",
              std::sqrt(var / double(recs.size())), cfg.n_samples, cfg.L, cfg.T,
              cfg.p, cfg.prescramble_depth());
  return 0;
}

// Figure recipes. Desk scale caps L at 512 and samples at 1000 so a full
// reproduction finishes on a laptop; paper scale uses the larger grids.
SweepSpec figure_spec(const std::string& fig, const std::string& scale,
                      std::uint64_t seed, int threads) {
  const bool desk = scale != "paper";
  SweepSpec s;
  s.seed = seed;
  s.threads = threads;
  s.samples = desk ? 1000 : 4000;
  if (fig == "fig2") {
    s.engine = SweepSpec::Engine::kAnnealed;
    s.samples = 1;
    for (int T = 64; T <= (desk ? 4096 : 16384); T *= 2) s.sizes.push_back({-1, T});
    for (double p = 0.30; p <= 0.4301; p += 0.005) s.p_grid.push_back(p);
  } else if (fig == "fig4") {
    s.engine = SweepSpec::Engine::kClifford;
    for (const int L : (desk ? std::vector<int>{128, 256, 512}
                             : std::vector<int>{128, 256, 512, 1024}))
      s.sizes.push_back({L, L / 2});
    for (double p = 0.35; p <= 0.651; p += 0.025) s.p_grid.push_back(p);
  } else if (fig == "fig6") {
    s.engine = SweepSpec::Engine::kClifford;
    s.prescramble = PrescrambleKind::kLog;
    s.prescramble_k = 1.0;
    for (const int L : (desk ? std::vector<int>{64, 128, 256}
                             : std::vector<int>{64, 128, 256, 512}))
      s.sizes.push_back({L, L / 2});
    for (double p = 0.40; p <= 0.801; p += 0.025) s.p_grid.push_back(p);
  } else if (fig == "fig8") {
    s.engine = SweepSpec::Engine::kClifford;
    s.prescramble = PrescrambleKind::kLinear;
    s.prescramble_multiple = 1;
    for (const int L : (desk ? std::vector<int>{32, 64, 128}
                             : std::vector<int>{32, 64, 128, 256}))
      s.sizes.push_back({L, 4 * L});
    for (double p = 0.06; p <= 0.2401; p += 0.01) s.p_grid.push_back(p);
  } else if (fig == "fig9") {
    s.engine = SweepSpec::Engine::kAnnealed;
    s.samples = 1;
    s.annealed.finite_rate = true;
    s.annealed.code_rate = 0.5;
    s.prescramble = PrescrambleKind::kLinear;
    s.prescramble_multiple = 1;
    for (const int L : (desk ? std::vector<int>{32, 64, 128}
                             : std::vector<int>{64, 128, 256}))
      s.sizes.push_back({L, 7 * L});
    for (double p = 0.005; p <= 0.301; p += 0.005) s.p_grid.push_back(p);
  } else if (fig == "fig10") {
    s.engine = SweepSpec::Engine::kClifford;
    s.clifford.encoding = EncodingKind::kFiniteRate;
    s.clifford.code_rate = 0.5;
    s.prescramble = PrescrambleKind::kLinear;
    s.prescramble_multiple = 1;
    for (const int L : (desk ? std::vector<int>{16, 32, 64}
                             : std::vector<int>{32, 64, 128}))
      s.sizes.push_back({L, 4 * L});
    for (double p = 0.01; p <= 0.301; p += 0.02) s.p_grid.push_back(p);
  } else {
    throw ConfigError("unknown figure: " + fig +
                      " (expected fig2|fig4|fig6|fig8|fig9|fig10)");
  }
  return s;
}

void write_plot_script(const std::string& dir, const std::string& fig) {
  const std::string path = dir + "/plot.gp";
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "# gnuplot script for " << fig << " (run: gnuplot plot.gp)\n"
      << "set datafile separator ','\n"
      << "set key autotitle columnhead\n"
      << "set xlabel 'p'\n"
      << "set ylabel 'I_{A,R}'\n"
      << "set term pngcairo size 900,600\n"
      << "set output '" << fig << ".png'\n"
      << "plot for [L in system(\"awk -F, 'NR>1{print $5}' sweep.csv | sort -nu\")] \\\n"
      << "  'sweep.csv' using 7:($5==L+0 ? $12 : 1/0) with linespoints title 'L='.L\n";
  if (!out) throw IoError("failed writing " + path);
}

int main_guarded(int argc, char** argv) {
  CLI::App app{"dissipative-boundary coding lab"};
  app.require_subcommand(1);

  // clifford-run
  CliffordArgs ca;
  CLI::App* c_run = app.add_subcommand(
      "clifford-run", "single stabilizer-circuit configuration; prints mean I");
  add_clifford_flags(c_run, ca);

  // annealed-run
  struct {
    double q = 2;
    int L = -1, T = 64;
    double p = 0.3;
    int t_scr = 0;
    std::string encoding = "single_pair", noise = "deterministic";
    int x0 = 1;
    double C = 0.5;
    int realizations = 200;
    std::uint64_t seed = 1;
  } aa;
  CLI::App* a_run = app.add_subcommand(
      "annealed-run", "domain-wall transfer-matrix run; prints annealed I");
  a_run->add_option("--q", aa.q, "on-site Hilbert dimension")->capture_default_str();
  a_run->add_option("--L", aa.L, "sites; -1 = semi-infinite")->capture_default_str();
  a_run->add_option("--T", aa.T, "dissipative timesteps")->capture_default_str();
  a_run->add_option("--p", aa.p, "dissipation strength")->capture_default_str();
  a_run->add_option("--t-scr", aa.t_scr, "pre-scrambling depth")->capture_default_str();
  a_run->add_option("--encoding", aa.encoding, "single_pair | finite_rate")
      ->capture_default_str();
  a_run->add_option("--noise", aa.noise, "deterministic | random_times")
      ->capture_default_str();
  a_run->add_option("--x0", aa.x0, "encoded site (1-indexed)")->capture_default_str();
  a_run->add_option("--C", aa.C, "code rate")->capture_default_str();
  a_run->add_option("--realizations", aa.realizations, "disorder realizations")
      ->capture_default_str();
  a_run->add_option("--seed", aa.seed, "noise-mask seed")->capture_default_str();

  // sweep
  struct {
    std::string spec;
    std::string out;
    int threads = 0;
  } sw;
  CLI::App* s_run = app.add_subcommand("sweep", "run a JSON sweep spec");
  s_run->add_option("--spec", sw.spec, "sweep spec JSON file")->required();
  s_run->add_option("--out", sw.out, "override output directory");
  s_run->add_option("--threads", sw.threads, "worker threads");

  // analytic
  CLI::App* an = app.add_subcommand("analytic", "closed-form quantities");
  an->require_subcommand(1);
  struct {
    double q = 2, p = 0.2, C = 0.5, L = 64, T = 256, w = 1.0;
  } ar;
  CLI::App* an_pc = an->add_subcommand("pc", "critical dissipation strength");
  an_pc->add_option("--q", ar.q)->capture_default_str();
  CLI::App* an_fe = an->add_subcommand("free-energy", "domain-wall free energy");
  an_fe->add_option("--q", ar.q)->capture_default_str();
  an_fe->add_option("--p", ar.p)->capture_default_str();
  CLI::App* an_ex = an->add_subcommand("excursion", "tau and l_perp (p < p_c)");
  an_ex->add_option("--q", ar.q)->capture_default_str();
  an_ex->add_option("--p", ar.p)->capture_default_str();
  CLI::App* an_tc = an->add_subcommand("tc", "thermalization time estimate");
  an_tc->add_option("--q", ar.q)->capture_default_str();
  an_tc->add_option("--p", ar.p)->capture_default_str();
  an_tc->add_option("--L", ar.L)->capture_default_str();
  CLI::App* an_th = an->add_subcommand("thresholds", "finite-rate thresholds");
  an_th->add_option("--q", ar.q)->capture_default_str();
  an_th->add_option("--C", ar.C)->capture_default_str();
  an_th->add_option("--L", ar.L)->capture_default_str();
  an_th->add_option("--T", ar.T)->capture_default_str();
  CLI::App* an_zf = an->add_subcommand("zf", "laplace transform of Z_f");
  an_zf->add_option("--w", ar.w)->capture_default_str();
  an_zf->add_option("--q", ar.q)->capture_default_str();
  an_zf->add_option("--p", ar.p)->capture_default_str();
  CLI::App* an_za = an->add_subcommand("za", "laplace transform of Z_a");
  an_za->add_option("--w", ar.w)->capture_default_str();
  an_za->add_option("--p", ar.p)->capture_default_str();

  // fit
  struct {
    std::string csv, model = "power";
    std::string size_axis = "T";
    double fix_pc = -1, fix_e1 = -1, fix_e2 = -1;
    int bootstrap = 100;
  } fa;
  CLI::App* f = app.add_subcommand("fit", "collapse / crossing fits on a sweep CSV");
  f->require_subcommand(1);
  CLI::App* f_col = f->add_subcommand("collapse", "scaling-collapse fit");
  f_col->add_option("--csv", fa.csv)->required();
  f_col->add_option("--model", fa.model, "power | step")->capture_default_str();
  f_col->add_option("--size-axis", fa.size_axis, "T | L")->capture_default_str();
  f_col->add_option("--fix-pc", fa.fix_pc, "fix the critical point");
  f_col->add_option("--fix-e1", fa.fix_e1, "fix 1/nu (power) or omega (step)");
  f_col->add_option("--fix-e2", fa.fix_e2, "fix beta/nu");
  f_col->add_option("--bootstrap", fa.bootstrap)->capture_default_str();
  CLI::App* f_cross = f->add_subcommand("crossing", "crossing-point estimate");
  f_cross->add_option("--csv", fa.csv)->required();
  f_cross->add_option("--size-axis", fa.size_axis, "T | L")->capture_default_str();

  // repro-figure
  struct {
    std::string name;
    std::string out = "out";
    std::string scale = "desk";
    std::uint64_t seed = 1;
    int threads = 0;
  } rf;
  CLI::App* r = app.add_subcommand("repro-figure",
                                   "emit + run a figure recipe (CSV, manifest, "
                                   "gnuplot script)");
  r->add_option("figure", rf.name, "fig2|fig4|fig6|fig8|fig9|fig10")->required();
  r->add_option("--out", rf.out, "output root")->capture_default_str();
  r->add_option("--scale", rf.scale, "desk | paper")->capture_default_str();
  r->add_option("--seed", rf.seed)->capture_default_str();
  r->add_option("--threads", rf.threads)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (c_run->parsed()) return run_clifford(ca);

  if (a_run->parsed()) {
    AnnealedConfig cfg;
    cfg.q = aa.q;
    cfg.L = aa.L;
    cfg.T = aa.T;
    cfg.prescramble_depth = aa.t_scr;
    cfg.x0 = aa.x0;
    cfg.code_rate = aa.C;
    cfg.finite_rate = aa.encoding == "finite_rate";
    cfg.realizations = aa.realizations;
    cfg.seed = seed_override(aa.seed);
    if (aa.noise == "deterministic")
      cfg.noise = WalkNoise::kDeterministic;
    else if (aa.noise == "random_times")
      cfg.noise = WalkNoise::kRandomTimes;
    else
      throw ConfigError("unknown noise mode: " + aa.noise);
    std::printf("I=%.12g\n", annealed_mi_point(cfg, aa.p));
    return 0;
  }

  if (s_run->parsed()) {
    SweepSpec spec = SweepSpec::from_json_file(sw.spec);
    if (!sw.out.empty()) spec.out_dir = sw.out;
    if (sw.threads > 0) spec.threads = sw.threads;
    spec.seed = seed_override(spec.seed);
    const auto rows = run_sweep(spec);
    std::printf("rows=%zu out=%s\n", rows.size(),
                spec.out_dir.empty() ? "(memory)" : spec.out_dir.c_str());
    return 0;
  }

  if (an->parsed()) {
    if (an_pc->parsed()) {
      const double pc = critical_p(ar.q);
      const double w1 = branch_point_w1(ar.q);
      const double resid =
          (1.0 - pc) * (1.0 - pc) * w1 + laplace_zf(w1, pc, ar.q) / w1 - 1.0;
      std::printf("p_c=%.12f residual=%.3e\n", pc, resid);
    } else if (an_fe->parsed()) {
      std::printf("f=%.12f (natural log per timestep)\n",
                  free_energy(ar.p, ar.q));
    } else if (an_ex->parsed()) {
      std::printf("tau=%.6f l_perp=%.6f\n", excursion_tau(ar.p, ar.q),
                  excursion_length(ar.p, ar.q));
    } else if (an_tc->parsed()) {
      std::printf("t_c=%.4f\n", thermalization_time(ar.p, ar.q, ar.L));
    } else if (an_th->parsed()) {
      const auto th = finite_rate_thresholds(ar.q, ar.C, ar.L, ar.T);
      std::printf("p_th1=%.6f p_th2=%.6f (scaling estimates)\n", th.p_th1,
                  th.p_th2);
    } else if (an_zf->parsed()) {
      std::printf("zf=%.12g\n", laplace_zf(ar.w, ar.p, ar.q));
    } else if (an_za->parsed()) {
      std::printf("za=%.12g\n", laplace_za(ar.w, ar.p));
    }
    return 0;
  }

  if (f->parsed()) {
    const auto rows = read_csv(fa.csv);
    const auto pts = rows_to_fit_points(rows, fa.size_axis == "T");
    if (f_cross->parsed()) {
      const auto est = crossing_point(pts);
      std::printf("crossing median=%.6f spread=%.6f pairs=%zu\n", est.median,
                  est.spread, est.pairwise.size());
      return 0;
    }
    CollapseSpec spec;
    if (fa.model == "power") {
      spec.kind = CollapseKind::kPowerLaw;
      spec.pc = {0.0, 1.0, fa.fix_pc >= 0, fa.fix_pc};
      spec.e1 = {0.1, 1.0, fa.fix_e1 >= 0, fa.fix_e1};
      spec.e2 = {0.0, 1.0, fa.fix_e2 >= 0, fa.fix_e2};
    } else if (fa.model == "step") {
      spec.kind = CollapseKind::kStep;
      spec.pc = {0.0, 1.0, fa.fix_pc >= 0, fa.fix_pc};
      spec.e1 = {0.1, 1.5, fa.fix_e1 >= 0, fa.fix_e1};
      spec.e2 = {0.0, 0.0, true, 0.0};
    } else {
      throw ConfigError("unknown fit model: " + fa.model);
    }
    spec.bootstrap = fa.bootstrap;
    const auto fit = fit_collapse(pts, spec);
    if (fa.model == "power") {
      std::printf("pc=%.5f+-%.5f  1/nu=%.4f+-%.4f (nu=%.3f)  "
                  "beta/nu=%.4f+-%.4f  Q=%.4f\n",
                  fit.model.pc, fit.pc_err, fit.model.e1, fit.e1_err,
                  1.0 / fit.model.e1, fit.model.e2, fit.e2_err, fit.quality);
    } else {
      std::printf("pd=%.5f+-%.5f  omega=%.4f+-%.4f  Q=%.4f\n", fit.model.pc,
                  fit.pc_err, fit.model.e1, fit.e1_err, fit.quality);
    }
    return 0;
  }

  if (r->parsed()) {
    SweepSpec spec =
        figure_spec(rf.name, rf.scale, seed_override(rf.seed), rf.threads);
    namespace fs = std::filesystem;
    spec.out_dir = (fs::path(rf.out) / rf.name).string();
    const auto rows = run_sweep(spec);
    write_plot_script(spec.out_dir, rf.name);
    std::printf("%s: %zu rows -> %s (sweep.csv, manifest.json, plot.gp)\n",
                rf.name.c_str(), rows.size(), spec.out_dir.c_str());
    return 0;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return main_guarded(argc, argv);
  } catch (const dcl::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const dcl::IoError& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return 3;
  } catch (const dcl::NumericsError& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  }
}
