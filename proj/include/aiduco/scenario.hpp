#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aiduco/baseline.hpp"
#include "aiduco/identifier.hpp"
#include "aiduco/observability.hpp"
#include "aiduco/plant.hpp"

namespace aiduco {

/// Everything needed to reproduce one run. preset() gives the reference
/// study: masses [11 11 11 6.5 5 7], observer gain 100 I, adaptation
/// diag(6e3 6e4 6e4 6e3 6e3 6e3), dt 0.01 s, 20 s Gramian window and
/// initial mass estimates 1.4 times the true values.
struct ScenarioConfig {
  static constexpr int kSchemaVersion = 1;

  int class_id = 0;
  std::optional<ControlSchedule::Mask> mask;  // overrides the class mask
  Vec6 m_true = MassParams::reference_vehicle().values();
  IdentifierGains gains = IdentifierGains::reference();
  double mhat0_scale = 1.4;
  std::optional<Vec6> mhat0;  // overrides mhat0_scale
  Vec6 v0 = Vec6::Zero();

  double duration = 2000.0;  // s
  double dt = 0.01;          // s
  double delta = 20.0;       // Gramian window, s
  std::size_t stride = 1;    // window starts analysed every `stride` samples
  bool analyze = false;      // annotate the trace with Gramian spectra

  double noise_sigma = 0.0;  // relative velocity noise for the OLS data path
  std::uint64_t seed = 1;
  double holdout_duration = 200.0;  // s, cross-validation run length

  std::string output;  // CSV path for the trace, empty for none

  static ScenarioConfig preset(int class_id);

  /// Throws std::invalid_argument on any inconsistent setting.
  void validate() const;

  ControlSchedule schedule() const;
  ControlSchedule holdout_schedule() const;
  Vec6 initial_mass_estimate() const;
  std::size_t steps() const;
  std::size_t window_steps() const;
  std::string label() const;
};

struct TraceRow {
  double t = 0.0;
  Vec6 v = Vec6::Zero();
  Vec6 v_hat = Vec6::Zero();
  Vec6 m_hat = Vec6::Zero();
  Vec6 tau = Vec6::Zero();
  double lyapunov = 0.0;
  // Spectrum of the Gramian window [t - delta, t], on rows where one ends.
  std::optional<double> gram_min_eig;
  std::optional<double> gram_max_eig;

  bool operator==(const TraceRow&) const = default;
};

struct WindowRecord {
  std::size_t start_index = 0;
  double start_time = 0.0;
  double min_eig = 0.0;
  double max_eig = 0.0;
};

/// Time-indexed record of a coupled run with t_k = k * dt.
struct SimTrace {
  std::vector<TraceRow> rows;

  /// Rows carrying a Gramian spectrum, with window starts recovered from the
  /// window length.
  std::vector<WindowRecord> windows(double delta) const;
  double dt() const;
  VelocityTrace velocities() const;
};

/// Integrates plant and identifier for cfg.duration and, when cfg.analyze is
/// set, annotates the trace with sliding-window Gramian spectra. Identical
/// configurations give bit-identical traces.
SimTrace run_scenario(const ScenarioConfig& cfg);

/// A_e(t_k) transitions rebuilt from recorded rows: T[k] = e^(A_e(t_k) dt)
/// for k = 0 .. rows-2.
std::vector<Mat12> transitions_from_trace(const SimTrace& trace, const MassParams& m_true,
                                          const IdentifierGains& gains);

/// Streams the trace through a SlidingGramian and stores min/max Gramian
/// eigenvalues on the row where each analysed window ends. Window starts are
/// multiples of `stride`. Existing annotations are cleared first.
void annotate_windows(SimTrace& trace, const MassParams& m_true, const IdentifierGains& gains,
                      double delta, std::size_t stride);

/// Kalman decomposition of the window [start, start + delta] of a trace.
ObservabilityReport analyze_trace_window(const SimTrace& trace, const MassParams& m_true,
                                         const IdentifierGains& gains, double start_time,
                                         double delta, double tol_rel = 1e-8);

/// IDSIM / CROSSIM comparison of the adaptive identifier and OLS.
struct IdentifierComparison {
  Vec6 m_aid = Vec6::Zero();
  OlsResult ols;
  MaeReport aid_idsim;
  MaeReport aid_crossim;
  std::optional<MaeReport> ols_idsim;    // empty when OLS is rank deficient
  std::optional<MaeReport> ols_crossim;
};

/// Runs the identification scenario, fits OLS on the same run (exact
/// accelerations when cfg.noise_sigma == 0, noisy central differences
/// otherwise), then scores both parameter sets by forward simulation on the
/// identification input and on `holdout` for cfg.holdout_duration.
IdentifierComparison compare_identifiers(const ScenarioConfig& cfg,
                                         const ControlSchedule& holdout);

}  // namespace aiduco
