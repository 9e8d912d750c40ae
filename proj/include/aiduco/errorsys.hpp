#pragma once

#include "aiduco/identifier.hpp"
#include "aiduco/mathcore.hpp"
#include "aiduco/plant.hpp"

namespace aiduco {

/// Snapshot of the linear time-varying error system
///   d/dt [dm; dv] = A_e(t) [dm; dv],   y = C_e [dm; dv]
/// assembled from the state at a single sample time.
struct ErrorSystemMatrices {
  Mat12 a_e;
  Mat6x12 c_e;
  double t = 0.0;
};

/// C_e = [0 | I]: the output is the velocity error.
Mat6x12 error_output_matrix();

/// D(t) = diag(M_hat^-1 (-ad(v) M_hat v + tau)).
Mat6 d_matrix(const Vec6& m_hat, const BodyVelocity& v, const Vec6& tau);

/// S(t) = -ad(v) diag(v).
Mat6 s_matrix(const BodyVelocity& v);

/// A_e = [[0, Gamma_1 (-S^T + D)], [M^-1 (S - D), -A]].
///
/// m_true enters through M^-1, so this is an offline analysis of a recorded
/// run rather than something the identifier can compute online.
ErrorSystemMatrices assemble_error_system(const MassParams& m_true, const IdentifierState& st,
                                          const IdentifierGains& g, const BodyVelocity& v,
                                          const Vec6& tau, double t = 0.0);

}  // namespace aiduco
