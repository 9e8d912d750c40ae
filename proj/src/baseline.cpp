#include "aiduco/baseline.hpp"

#include <random>
#include <stdexcept>

#include <Eigen/QR>

namespace aiduco {

VelocityTrace simulate_plant(const MassParams& m, const ControlSchedule& schedule,
                             const BodyVelocity& v0, double dt, std::size_t steps) {
  VelocityTrace trace;
  trace.t.reserve(steps + 1);
  trace.v.reserve(steps + 1);
  auto derivative = [&](double t, const Vec6& v) -> Vec6 {
    return plant_accel(m, v, schedule(t));
  };
  Vec6 v = v0;
  for (std::size_t k = 0;; ++k) {
    const double t = static_cast<double>(k) * dt;
    trace.t.push_back(t);
    trace.v.push_back(v);
    if (k == steps) {
      break;
    }
    v = rk4_step(derivative, v, t, dt);
  }
  return trace;
}

Mat6 regressor_row(const BodyVelocity& v, const Vec6& v_dot) {
  Mat6 y = ad_operator(v) * v.asDiagonal();
  y.diagonal() += v_dot;
  return y;
}

OlsResult ols_identify(std::span<const RegressionSample> samples, double tol_rel) {
  if (samples.empty()) {
    throw std::invalid_argument("ols_identify: no samples");
  }
  const auto n = static_cast<Eigen::Index>(samples.size());
  Eigen::MatrixXd y(6 * n, 6);
  Eigen::VectorXd b(6 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const RegressionSample& s = samples[static_cast<std::size_t>(k)];
    y.middleRows<6>(6 * k) = regressor_row(s.v, s.v_dot);
    b.segment<6>(6 * k) = s.tau;
  }

  OlsResult out;
  const SvdResult svd = jacobi_svd(y);
  const double sigma_max = svd.singular_values(0);
  out.rank = sigma_max > 0.0
                 ? static_cast<int>((svd.singular_values.array() > tol_rel * sigma_max).count())
                 : 0;
  out.null_directions = svd.v.rightCols(6 - out.rank);
  const Eigen::MatrixXd row_space = svd.v.leftCols(out.rank);
  for (int i = 0; i < 6; ++i) {
    if (row_space.row(i).norm() < tol_rel) {
      out.unidentifiable.push_back(i);
    }
  }
  if (out.rank < 6) {
    return out;
  }
  out.m = y.colPivHouseholderQr().solve(b);
  out.identified = true;
  return out;
}

std::vector<RegressionSample> exact_samples(const MassParams& m,
                                            const ControlSchedule& schedule,
                                            const VelocityTrace& trace) {
  std::vector<RegressionSample> samples;
  samples.reserve(trace.size());
  for (std::size_t k = 0; k < trace.size(); ++k) {
    const Vec6 tau = schedule(trace.t[k]);
    samples.push_back({trace.v[k], plant_accel(m, trace.v[k], tau), tau, trace.t[k]});
  }
  return samples;
}

std::vector<RegressionSample> noisy_difference_samples(const ControlSchedule& schedule,
                                                       const VelocityTrace& trace,
                                                       double sigma_rel, std::uint64_t seed) {
  if (trace.size() < 3) {
    throw std::invalid_argument("noisy_difference_samples: need at least three samples");
  }
  if (!(sigma_rel >= 0.0)) {
    throw std::invalid_argument("noisy_difference_samples: sigma must be non-negative");
  }
  Vec6 rms = Vec6::Zero();
  for (const Vec6& v : trace.v) {
    rms += v.cwiseAbs2();
  }
  rms = (rms / static_cast<double>(trace.size())).cwiseSqrt();

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> unit(0.0, 1.0);
  std::vector<Vec6> measured(trace.v);
  for (Vec6& v : measured) {
    for (int i = 0; i < 6; ++i) {
      v(i) += sigma_rel * rms(i) * unit(rng);
    }
  }

  std::vector<RegressionSample> samples;
  samples.reserve(trace.size() - 2);
  for (std::size_t k = 1; k + 1 < trace.size(); ++k) {
    const double span = trace.t[k + 1] - trace.t[k - 1];
    const Vec6 v_dot = (measured[k + 1] - measured[k - 1]) / span;
    samples.push_back({measured[k], v_dot, schedule(trace.t[k]), trace.t[k]});
  }
  return samples;
}

MaeReport mae(const VelocityTrace& a, const VelocityTrace& b) {
  if (a.size() != b.size() || a.v.size() != a.t.size() || b.v.size() != b.t.size()) {
    throw std::invalid_argument("mae: traces differ in length");
  }
  if (a.size() == 0) {
    throw std::invalid_argument("mae: empty traces");
  }
  MaeReport report;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (std::abs(a.t[k] - b.t[k]) > 1e-9 * std::max(1.0, std::abs(a.t[k]))) {
      throw std::invalid_argument("mae: timestamps differ at sample " + std::to_string(k));
    }
    report.per_dof += (a.v[k] - b.v[k]).cwiseAbs();
  }
  report.per_dof /= static_cast<double>(a.size());
  return report;
}

MaeReport cross_validate(const Vec6& m_identified, const ControlSchedule& schedule,
                         const VelocityTrace& reference) {
  if (reference.size() < 2) {
    throw std::invalid_argument("cross_validate: reference needs at least two samples");
  }
  const MassParams m(m_identified);
  const double dt = reference.t[1] - reference.t[0];
  if (reference.t[0] != 0.0 || !(dt > 0.0)) {
    throw std::invalid_argument("cross_validate: reference must start at t = 0 with a uniform step");
  }
  const VelocityTrace sim = simulate_plant(m, schedule, reference.v.front(), dt,
                                           reference.size() - 1);
  return mae(sim, reference);
}

}  // namespace aiduco
