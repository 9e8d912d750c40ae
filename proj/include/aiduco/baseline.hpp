#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "aiduco/mathcore.hpp"
#include "aiduco/plant.hpp"

namespace aiduco {

/// Uniformly sampled velocity signal.
struct VelocityTrace {
  std::vector<double> t;
  std::vector<Vec6> v;

  std::size_t size() const noexcept { return t.size(); }
};

/// Forward simulation of the plant from v0 with RK4, samples t_k = k * dt.
VelocityTrace simulate_plant(const MassParams& m, const ControlSchedule& schedule,
                             const BodyVelocity& v0, double dt, std::size_t steps);

struct RegressionSample {
  Vec6 v;
  Vec6 v_dot;
  Vec6 tau;
  double t = 0.0;
};

/// Y(v, v_dot) = diag(v_dot) + ad(v) diag(v), so that Y m = M v_dot + C(M, v) v.
Mat6 regressor_row(const BodyVelocity& v, const Vec6& v_dot);

struct OlsResult {
  bool identified = false;
  Vec6 m = Vec6::Constant(std::nan(""));  // valid when identified
  int rank = 0;
  // Parameters whose unit direction is (numerically) orthogonal to the
  // row space of the stacked regressor.
  std::vector<int> unidentifiable;
  // Orthonormal basis of the regressor null space, one direction per column.
  Eigen::MatrixXd null_directions;
};

/// Least squares over the stacked regressor via column-pivoted Householder
/// QR. A stack of numerical rank < 6 is reported, not solved.
OlsResult ols_identify(std::span<const RegressionSample> samples, double tol_rel = 1e-8);

/// Samples with the exact plant acceleration at each recorded velocity.
std::vector<RegressionSample> exact_samples(const MassParams& m,
                                            const ControlSchedule& schedule,
                                            const VelocityTrace& trace);

/// Samples built the way a bench experiment would: Gaussian noise with
/// standard deviation sigma_rel * rms(v_i) is added to each velocity DOF and
/// accelerations come from central differences of the noisy velocities.
/// End points are dropped. Deterministic for a given seed.
std::vector<RegressionSample> noisy_difference_samples(const ControlSchedule& schedule,
                                                       const VelocityTrace& trace,
                                                       double sigma_rel, std::uint64_t seed);

struct MaeReport {
  Vec6 per_dof = Vec6::Zero();  // m/s for 1-3, rad/s for 4-6
  std::string scenario;
  std::string method;
};

/// Per-DOF mean absolute difference. Traces must share length and timestamps.
MaeReport mae(const VelocityTrace& a, const VelocityTrace& b);

/// Re-simulates the reference's schedule with m_identified from the
/// reference's first sample and scores it against the reference.
MaeReport cross_validate(const Vec6& m_identified, const ControlSchedule& schedule,
                         const VelocityTrace& reference);

}  // namespace aiduco
