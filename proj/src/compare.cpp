#include <cmath>

#include "aiduco/scenario.hpp"

namespace aiduco {

namespace {

bool all_positive(const Vec6& m) { return m.allFinite() && (m.array() > 0.0).all(); }

MaeReport labelled(MaeReport report, std::string scenario, std::string method) {
  report.scenario = std::move(scenario);
  report.method = std::move(method);
  return report;
}

}  // namespace

IdentifierComparison compare_identifiers(const ScenarioConfig& cfg,
                                         const ControlSchedule& holdout) {
  ScenarioConfig run_cfg = cfg;
  run_cfg.analyze = false;
  const SimTrace trace = run_scenario(run_cfg);
  const MassParams m_true(cfg.m_true);
  const ControlSchedule schedule = cfg.schedule();
  const VelocityTrace velocities = trace.velocities();

  IdentifierComparison out;
  out.m_aid = trace.rows.back().m_hat;
  const std::vector<RegressionSample> samples =
      cfg.noise_sigma > 0.0
          ? noisy_difference_samples(schedule, velocities, cfg.noise_sigma, cfg.seed)
          : exact_samples(m_true, schedule, velocities);
  out.ols = ols_identify(samples);

  const auto holdout_steps = static_cast<std::size_t>(std::llround(cfg.holdout_duration / cfg.dt));
  const VelocityTrace ref_id = simulate_plant(m_true, schedule, cfg.v0, cfg.dt, holdout_steps);
  const VelocityTrace ref_cross = simulate_plant(m_true, holdout, cfg.v0, cfg.dt, holdout_steps);

  out.aid_idsim = labelled(cross_validate(out.m_aid, schedule, ref_id), "IDSIM", "AD");
  out.aid_crossim = labelled(cross_validate(out.m_aid, holdout, ref_cross), "CROSSIM", "AD");
  // A noisy fit can land on a non-physical mass; such a fit has no forward
  // simulation to score.
  if (out.ols.identified && all_positive(out.ols.m)) {
    out.ols_idsim = labelled(cross_validate(out.ols.m, schedule, ref_id), "IDSIM", "OLS");
    out.ols_crossim = labelled(cross_validate(out.ols.m, holdout, ref_cross), "CROSSIM", "OLS");
  }
  return out;
}

}  // namespace aiduco
