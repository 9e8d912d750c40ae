#pragma once

#include "aiduco/mathcore.hpp"
#include "aiduco/plant.hpp"

namespace aiduco {

/// Diagonal positive-definite identifier gains: the velocity-observer gain
/// (1/s) and the parameter adaptation rates. Stored by diagonal.
struct IdentifierGains {
  Vec6 observer;    // diagonal of the observer gain matrix
  Vec6 adaptation;  // diagonal of Gamma_1

  /// Observer gain 100*I, adaptation diag(6e3, 6e4, 6e4, 6e3, 6e3, 6e3).
  static IdentifierGains reference();

  /// Throws std::invalid_argument unless every diagonal entry is finite and > 0.
  void validate() const;
};

struct IdentifierState {
  Vec6 v_hat = Vec6::Zero();
  Vec6 m_hat = Vec6::Ones();
  // m_hat(i) <= m_floor(i) is treated as a failure of the run.
  Vec6 m_floor = Vec6::Zero();

  /// Starts the identifier at (v_hat0, m_hat0) with a floor of 1e-6 * m_hat0.
  static IdentifierState initial(const Vec6& v_hat0, const Vec6& m_hat0);
};

struct ErrorCoordinates {
  Vec6 dv;  // v_hat - v
  Vec6 dm;  // m_hat - m
};

inline constexpr double kPositivityFloorFraction = 1e-6;

ErrorCoordinates error_coordinates(const IdentifierState& st, const MassParams& m,
                                   const BodyVelocity& v);

/// Observer velocity derivative M_hat^-1 (tau - C(M_hat, v) v) - A (v_hat - v).
/// Throws PositivityFloorError (tagged with t) if m_hat is at or below its floor.
Vec6 vhat_dot(const IdentifierState& st, const IdentifierGains& g, const BodyVelocity& v,
              const Vec6& tau, double t = std::nan(""));

/// Parameter update law
///   Gamma_1 [ diag(v) ad(v)^T dv + diag(vhat_dot + A dv) dv ].
Vec6 mhat_dot(const IdentifierState& st, const IdentifierGains& g, const BodyVelocity& v,
              const Vec6& vhat_dot);

/// V = 0.5 dv^T M dv + 0.5 dm^T Gamma_1^-1 dm.
double lyapunov(const ErrorCoordinates& err, const MassParams& m, const IdentifierGains& g);

/// Joint plant + identifier state [v; v_hat; m_hat].
struct CoupledState {
  BodyVelocity v = Vec6::Zero();
  IdentifierState id;
};

/// Advances plant and identifier together by one RK4 step, sampling the
/// control schedule inside each stage. The identifier never reads the true
/// mass; only the plant derivative does.
CoupledState coupled_step(const MassParams& plant_mass, const CoupledState& state,
                          const IdentifierGains& g, const ControlSchedule& schedule, double t,
                          double dt);

}  // namespace aiduco
