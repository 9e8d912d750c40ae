#include "aiduco/scenario.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "aiduco/errorsys.hpp"

namespace aiduco {

ScenarioConfig ScenarioConfig::preset(int class_id) {
  ControlSchedule::class_mask(class_id);  // rejects unknown classes
  ScenarioConfig cfg;
  cfg.class_id = class_id;
  return cfg;
}

void ScenarioConfig::validate() const {
  if (!mask) {
    ControlSchedule::class_mask(class_id);
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument("dt must be positive");
  }
  if (!(delta >= dt) || !std::isfinite(delta)) {
    throw std::invalid_argument("delta must be at least dt");
  }
  if (!(duration >= delta) || !std::isfinite(duration)) {
    throw std::invalid_argument("duration must be at least delta");
  }
  if (stride == 0) {
    throw std::invalid_argument("stride must be at least 1");
  }
  if (!(holdout_duration >= dt) || !std::isfinite(holdout_duration)) {
    throw std::invalid_argument("holdout_duration must be at least dt");
  }
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
    throw std::invalid_argument("noise_sigma must be non-negative");
  }
  if (!mhat0 && (!(mhat0_scale > 0.0) || !std::isfinite(mhat0_scale))) {
    throw std::invalid_argument("mhat0_scale must be positive");
  }
  if (!v0.allFinite()) {
    throw std::invalid_argument("v0 must be finite");
  }
  require_positive_mass(m_true, "m_true");
  require_positive_mass(initial_mass_estimate(), "mhat0");
  gains.validate();
}

ControlSchedule ScenarioConfig::schedule() const {
  return ControlSchedule(ControlSchedule::reference_excitation(),
                         mask ? *mask : ControlSchedule::class_mask(class_id));
}

ControlSchedule ScenarioConfig::holdout_schedule() const {
  return ControlSchedule(ControlSchedule::holdout_excitation(),
                         mask ? *mask : ControlSchedule::class_mask(class_id));
}

Vec6 ScenarioConfig::initial_mass_estimate() const {
  return mhat0 ? *mhat0 : Vec6(mhat0_scale * m_true);
}

std::size_t ScenarioConfig::steps() const {
  return static_cast<std::size_t>(std::llround(duration / dt));
}

std::size_t ScenarioConfig::window_steps() const {
  return static_cast<std::size_t>(std::llround(delta / dt));
}

std::string ScenarioConfig::label() const {
  if (!mask) {
    return "class" + std::to_string(class_id);
  }
  std::string flags;
  for (bool on : *mask) {
    flags += on ? '1' : '0';
  }
  return "mask" + flags;
}

std::vector<WindowRecord> SimTrace::windows(double delta) const {
  std::vector<WindowRecord> out;
  if (rows.size() < 2) {
    return out;
  }
  const double step = dt();
  const auto n = static_cast<std::size_t>(std::llround(delta / step));
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const TraceRow& row = rows[k];
    if (row.gram_min_eig && row.gram_max_eig && k >= n) {
      out.push_back({k - n, rows[k - n].t, *row.gram_min_eig, *row.gram_max_eig});
    }
  }
  return out;
}

double SimTrace::dt() const {
  if (rows.size() < 2) {
    throw std::logic_error("SimTrace::dt: trace has fewer than two rows");
  }
  return rows[1].t - rows[0].t;
}

VelocityTrace SimTrace::velocities() const {
  VelocityTrace out;
  out.t.reserve(rows.size());
  out.v.reserve(rows.size());
  for (const TraceRow& row : rows) {
    out.t.push_back(row.t);
    out.v.push_back(row.v);
  }
  return out;
}

SimTrace run_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  const MassParams m(cfg.m_true);
  const ControlSchedule schedule = cfg.schedule();
  const std::size_t steps = cfg.steps();

  CoupledState state;
  state.v = cfg.v0;
  state.id = IdentifierState::initial(cfg.v0, cfg.initial_mass_estimate());

  SimTrace trace;
  trace.rows.reserve(steps + 1);
  for (std::size_t k = 0;; ++k) {
    const double t = static_cast<double>(k) * cfg.dt;
    TraceRow row;
    row.t = t;
    row.v = state.v;
    row.v_hat = state.id.v_hat;
    row.m_hat = state.id.m_hat;
    row.tau = schedule(t);
    row.lyapunov = lyapunov(error_coordinates(state.id, m, state.v), m, cfg.gains);
    trace.rows.push_back(row);
    if (k == steps) {
      break;
    }
    state = coupled_step(m, state, cfg.gains, schedule, t, cfg.dt);
  }

  if (cfg.analyze) {
    annotate_windows(trace, m, cfg.gains, cfg.delta, cfg.stride);
  }
  return trace;
}

namespace {

Mat12 row_transition(const TraceRow& row, const MassParams& m_true,
                     const IdentifierGains& gains, double dt) {
  IdentifierState st;
  st.v_hat = row.v_hat;
  st.m_hat = row.m_hat;
  const ErrorSystemMatrices e = assemble_error_system(m_true, st, gains, row.v, row.tau, row.t);
  return discrete_transition(e.a_e, dt);
}

}  // namespace

std::vector<Mat12> transitions_from_trace(const SimTrace& trace, const MassParams& m_true,
                                          const IdentifierGains& gains) {
  std::vector<Mat12> out;
  if (trace.rows.size() < 2) {
    return out;
  }
  const double dt = trace.dt();
  out.reserve(trace.rows.size() - 1);
  for (std::size_t k = 0; k + 1 < trace.rows.size(); ++k) {
    out.push_back(row_transition(trace.rows[k], m_true, gains, dt));
  }
  return out;
}

void annotate_windows(SimTrace& trace, const MassParams& m_true, const IdentifierGains& gains,
                      double delta, std::size_t stride) {
  for (TraceRow& row : trace.rows) {
    row.gram_min_eig.reset();
    row.gram_max_eig.reset();
  }
  if (trace.rows.size() < 2) {
    return;
  }
  if (stride == 0) {
    throw std::invalid_argument("annotate_windows: stride must be at least 1");
  }
  const double dt = trace.dt();
  const auto n = static_cast<std::size_t>(std::llround(delta / dt));
  if (n == 0) {
    throw std::invalid_argument("annotate_windows: delta shorter than one step");
  }
  SlidingGramian sliding(n, dt);
  for (std::size_t k = 0; k + 1 < trace.rows.size(); ++k) {
    const std::optional<GramianWindow> w =
        sliding.push(row_transition(trace.rows[k], m_true, gains, dt));
    if (w && w->start % stride == 0) {
      const GramianSpectrum spectrum = gramian_spectrum(*w);
      TraceRow& end = trace.rows[w->start + n];
      end.gram_min_eig = spectrum.min_eig;
      end.gram_max_eig = spectrum.max_eig;
    }
  }
}

ObservabilityReport analyze_trace_window(const SimTrace& trace, const MassParams& m_true,
                                         const IdentifierGains& gains, double start_time,
                                         double delta, double tol_rel) {
  const double dt = trace.dt();
  const auto k0 = static_cast<std::size_t>(std::llround(start_time / dt));
  const auto n = static_cast<std::size_t>(std::llround(delta / dt));
  if (n == 0 || k0 + n >= trace.rows.size()) {
    throw std::out_of_range("analyze_trace_window: window [" + std::to_string(start_time) +
                            ", " + std::to_string(start_time + delta) +
                            "] s is not covered by the trace");
  }
  std::vector<Mat12> transitions;
  transitions.reserve(n);
  for (std::size_t k = k0; k < k0 + n; ++k) {
    transitions.push_back(row_transition(trace.rows[k], m_true, gains, dt));
  }
  return analyze_window(transitions, 0, n, dt, tol_rel);
}

}  // namespace aiduco
