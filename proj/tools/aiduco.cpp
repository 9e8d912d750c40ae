// aiduco: simulate the adaptive identifier, analyse error-system
// observability and compare against least squares.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "aiduco/config.hpp"
#include "aiduco/scenario.hpp"
#include "aiduco/trace_io.hpp"

namespace {

using aiduco::ScenarioConfig;
using aiduco::Vec6;

const char* kParamNames[6] = {"m11", "m22", "m33", "m44", "m55", "m66"};

struct ScenarioFlags {
  std::string config;
  std::optional<int> class_id;
  std::optional<double> duration;
  std::optional<double> dt;
  std::optional<double> delta;
  std::optional<std::size_t> stride;
  std::optional<double> noise;
  std::optional<std::uint64_t> seed;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--config", config, "YAML scenario file (see docs/config.md)");
    cmd.add_option("--class", class_id, "Actuation class preset 0, 1 or 2")
        ->check(CLI::Range(0, 2));
    cmd.add_option("--duration", duration, "Simulated time [s]");
    cmd.add_option("--dt", dt, "Integration and sampling step [s]");
  }

  // Flags override the file; the class flag also picks the preset when no
  // file is given.
  ScenarioConfig resolve() const {
    ScenarioConfig cfg = config.empty() ? ScenarioConfig::preset(class_id.value_or(0))
                                        : aiduco::load_config(config);
    if (class_id) cfg.class_id = *class_id;
    if (duration) cfg.duration = *duration;
    if (dt) cfg.dt = *dt;
    if (delta) cfg.delta = *delta;
    if (stride) cfg.stride = *stride;
    if (noise) cfg.noise_sigma = *noise;
    if (seed) cfg.seed = *seed;
    cfg.validate();
    return cfg;
  }
};

void print_vec(const char* label, const Vec6& v) {
  std::printf("  %-22s", label);
  for (int i = 0; i < 6; ++i) {
    std::printf(" %12.6g", v(i));
  }
  std::printf("\n");
}

int run_simulate(const ScenarioFlags& flags, const std::string& out, bool analyze,
                 const std::string& save_config) {
  ScenarioConfig cfg = flags.resolve();
  if (!out.empty()) cfg.output = out;
  if (analyze) cfg.analyze = true;
  if (!save_config.empty()) {
    std::ofstream f(save_config);
    f << aiduco::dump_config(cfg);
    if (!f) throw std::runtime_error("cannot write " + save_config);
  }

  const aiduco::SimTrace trace = aiduco::run_scenario(cfg);
  const aiduco::TraceRow& first = trace.rows.front();
  const aiduco::TraceRow& last = trace.rows.back();
  std::printf("%s: %zu samples, dt = %g s, t_end = %g s\n", cfg.label().c_str(),
              trace.rows.size(), cfg.dt, last.t);
  std::printf("  %-22s", "");
  for (const char* name : kParamNames) std::printf(" %12s", name);
  std::printf("\n");
  print_vec("true", cfg.m_true);
  print_vec("initial estimate", first.m_hat);
  print_vec("final estimate", last.m_hat);
  print_vec("relative error", (last.m_hat - cfg.m_true).cwiseQuotient(cfg.m_true));
  std::printf("  Lyapunov V(0) = %.6g, V(end) = %.6g (ratio %.3g)\n", first.lyapunov,
              last.lyapunov, last.lyapunov / first.lyapunov);
  if (cfg.analyze) {
    const auto windows = trace.windows(cfg.delta);
    double lo = 0.0;
    double hi = 0.0;
    for (std::size_t i = 0; i < windows.size(); ++i) {
      lo = i ? std::min(lo, windows[i].min_eig) : windows[i].min_eig;
      hi = i ? std::max(hi, windows[i].max_eig) : windows[i].max_eig;
    }
    std::printf("  %zu Gramian windows (delta = %g s, stride %zu): smallest min eig %.4g, "
                "largest max eig %.4g\n",
                windows.size(), cfg.delta, cfg.stride, lo, hi);
  }
  if (!cfg.output.empty()) {
    aiduco::export_csv(trace, cfg.output);
    std::printf("  trace written to %s\n", cfg.output.c_str());
  }
  return 0;
}

int run_observability(const ScenarioFlags& flags, const std::string& trace_path,
                      const std::string& out, std::optional<double> at) {
  const ScenarioConfig cfg = flags.resolve();
  aiduco::SimTrace trace = aiduco::read_csv(trace_path);
  if (trace.rows.size() < 2) {
    throw std::runtime_error("trace " + trace_path + " has fewer than two rows");
  }
  const aiduco::MassParams m_true(cfg.m_true);
  aiduco::annotate_windows(trace, m_true, cfg.gains, cfg.delta, cfg.stride);
  const auto windows = trace.windows(cfg.delta);
  if (windows.empty()) {
    throw std::runtime_error("trace is shorter than one Gramian window");
  }

  std::FILE* sink = stdout;
  if (!out.empty()) {
    sink = std::fopen(out.c_str(), "w");
    if (!sink) throw std::runtime_error("cannot write " + out);
  }
  std::fprintf(sink, "window_start,min_eig,max_eig,numerically_zero\n");
  int zero_windows = 0;
  for (const auto& w : windows) {
    const bool zero = w.min_eig < aiduco::kNumericallyZeroRatio * w.max_eig;
    zero_windows += zero ? 1 : 0;
    std::fprintf(sink, "%.17g,%.17g,%.17g,%d\n", w.start_time, w.min_eig, w.max_eig,
                 zero ? 1 : 0);
  }
  if (sink != stdout) std::fclose(sink);

  const double start = at.value_or(windows.back().start_time);
  const aiduco::ObservabilityReport report =
      aiduco::analyze_trace_window(trace, m_true, cfg.gains, start, cfg.delta);
  std::fprintf(stderr, "%zu windows, %d numerically unobservable\n", windows.size(),
               zero_windows);
  std::fprintf(stderr, "window [%g, %g] s: rank(O) = %d, Gramian eig in [%.6g, %.6g]\n", start,
               start + cfg.delta, report.rank_n2, report.min_eig, report.max_eig);
  std::fprintf(stderr, "unobservable parameters:");
  if (report.unobservable_params.empty()) std::fprintf(stderr, " none");
  for (int i : report.unobservable_params) std::fprintf(stderr, " d%s", kParamNames[i]);
  std::fprintf(stderr, "\n");
  return 0;
}

void print_mae(const std::optional<aiduco::MaeReport>& r, const char* name, const char* why) {
  if (!r) {
    std::printf("  %-14s (%s)\n", name, why);
    return;
  }
  std::printf("  %-14s", name);
  for (int i = 0; i < 6; ++i) std::printf(" %12.5g", r->per_dof(i));
  std::printf("\n");
}

int run_compare(const ScenarioFlags& flags) {
  const ScenarioConfig cfg = flags.resolve();
  const aiduco::IdentifierComparison cmp =
      aiduco::compare_identifiers(cfg, cfg.holdout_schedule());
  std::printf("%s, identification %g s, noise sigma %g (seed %llu)\n", cfg.label().c_str(),
              cfg.duration, cfg.noise_sigma, static_cast<unsigned long long>(cfg.seed));
  std::printf("  %-22s", "");
  for (const char* name : kParamNames) std::printf(" %12s", name);
  std::printf("\n");
  print_vec("true", cfg.m_true);
  print_vec("AD estimate", cmp.m_aid);
  if (cmp.ols.identified) {
    print_vec("OLS estimate", cmp.ols.m);
  } else {
    std::printf("  OLS regressor rank %d < 6; unidentifiable:", cmp.ols.rank);
    for (int i : cmp.ols.unidentifiable) std::printf(" %s", kParamNames[i]);
    std::printf("\n");
  }
  std::printf("MAE over %g s [m/s, rad/s]\n  %-14s", cfg.holdout_duration, "");
  for (int i = 1; i <= 6; ++i) std::printf("           v%d", i);
  std::printf("\n");
  const char* why = cmp.ols.identified ? "OLS fit has a non-positive mass, not simulated"
                                       : "OLS rank deficient, not simulated";
  print_mae(cmp.aid_idsim, "AD  IDSIM", "");
  print_mae(cmp.ols_idsim, "OLS IDSIM", why);
  print_mae(cmp.aid_crossim, "AD  CROSSIM", "");
  print_mae(cmp.ols_crossim, "OLS CROSSIM", why);
  return 0;
}

int run_export(const std::string& in, const std::string& out, double from, double to,
               std::size_t every) {
  const aiduco::SimTrace trace = aiduco::read_csv(in);
  aiduco::export_csv(aiduco::slice_trace(trace, from, to, every), out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive identification of rigid-body mass and inertia with observability "
               "analysis of the parameter error system"};
  app.require_subcommand(1);

  ScenarioFlags sim_flags;
  std::string sim_out;
  std::string sim_save_config;
  bool sim_analyze = false;
  CLI::App* simulate = app.add_subcommand("simulate", "Run plant + adaptive identifier");
  sim_flags.add_to(*simulate);
  simulate->add_option("--out", sim_out, "CSV trace output path");
  simulate->add_flag("--analyze", sim_analyze, "Annotate the trace with Gramian spectra");
  simulate->add_option("--delta", sim_flags.delta, "Gramian window length [s]");
  simulate->add_option("--stride", sim_flags.stride, "Analyse every K-th window start")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--save-config", sim_save_config, "Write the effective config as YAML");

  ScenarioFlags obs_flags;
  std::string obs_trace;
  std::string obs_out;
  std::optional<double> obs_at;
  CLI::App* observability =
      app.add_subcommand("observability", "Sliding-window Gramian analysis of a trace");
  obs_flags.add_to(*observability);
  observability->add_option("--trace", obs_trace, "CSV trace from `simulate --out`")
      ->required();
  observability->add_option("--delta", obs_flags.delta, "Gramian window length [s]");
  observability->add_option("--stride", obs_flags.stride, "Analyse every K-th window start")
      ->check(CLI::PositiveNumber);
  observability->add_option("--out", obs_out, "Window spectra CSV (default stdout)");
  observability->add_option("--at", obs_at,
                            "Window start for the Kalman decomposition (default: last)");

  ScenarioFlags cmp_flags;
  CLI::App* compare = app.add_subcommand("compare", "Adaptive identifier vs OLS, IDSIM/CROSSIM");
  cmp_flags.add_to(*compare);
  compare->add_option("--noise", cmp_flags.noise, "Relative velocity noise for the OLS data")
      ->check(CLI::NonNegativeNumber);
  compare->add_option("--seed", cmp_flags.seed, "Noise seed");

  std::string exp_in;
  std::string exp_out;
  double exp_from = 0.0;
  double exp_to = 1e300;
  std::size_t exp_every = 1;
  CLI::App* exporter = app.add_subcommand("export", "Cut a time range out of a trace for plotting");
  exporter->add_option("--trace", exp_in, "Input CSV trace")->required();
  exporter->add_option("--out", exp_out, "Output CSV trace")->required();
  exporter->add_option("--from", exp_from, "First time kept [s]");
  exporter->add_option("--to", exp_to, "Last time kept [s]");
  exporter->add_option("--every", exp_every, "Keep every K-th row")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return run_simulate(sim_flags, sim_out, sim_analyze, sim_save_config);
    if (observability->parsed()) return run_observability(obs_flags, obs_trace, obs_out, obs_at);
    if (compare->parsed()) return run_compare(cmp_flags);
    if (exporter->parsed()) return run_export(exp_in, exp_out, exp_from, exp_to, exp_every);
  } catch (const std::exception& e) {
    std::cerr << "aiduco: error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
