#pragma once

#include <array>
#include <stdexcept>

#include "aiduco/mathcore.hpp"

namespace aiduco {

/// Diagonal generalized mass [m11 m22 m33 m44 m55 m66]: kg for the
/// translational entries, kg*m^2 for the rotational ones. Construction
/// rejects non-positive or non-finite entries with DegenerateMassError.
class MassParams {
 public:
  explicit MassParams(const Vec6& m);

  /// 11 kg in every translational axis, Ixx = 6.5, Iyy = 5, Izz = 7.
  static MassParams reference_vehicle();

  const Vec6& values() const noexcept { return m_; }
  double operator[](int i) const { return m_(i); }
  Mat6 matrix() const { return m_.asDiagonal(); }

 private:
  Vec6 m_;
};

/// Body-frame velocity [nu (m/s); omega (rad/s)].
using BodyVelocity = Vec6;

/// Throws DegenerateMassError unless every entry of m is finite and > 0.
void require_positive_mass(const Vec6& m, const char* what);

/// C(M, v) = [[0, -J(M11 nu)], [-J(M11 nu), -J(M22 omega)]].
Mat6 coriolis(const MassParams& m, const BodyVelocity& v);

/// C(M, v) v evaluated from cross products. Equals ad(v) M v bit for bit.
Vec6 coriolis_force(const Vec6& m, const BodyVelocity& v);

/// Rigid-body acceleration M^-1 (tau - C(M, v) v).
Vec6 plant_accel(const MassParams& m, const BodyVelocity& v, const Vec6& tau);

/// Kinetic energy 0.5 v^T M v.
double kinetic_energy(const MassParams& m, const BodyVelocity& v);

enum class Waveform { kSin, kCos };

struct Sinusoid {
  double amplitude = 0.0;  // N or N*m
  double frequency = 0.0;  // rad/s
  Waveform waveform = Waveform::kSin;

  double operator()(double t) const;
};

/// Per-DOF sinusoidal excitation with an actuation mask. Masked DOFs
/// evaluate to exactly 0.0 for every t.
class ControlSchedule {
 public:
  using Mask = std::array<bool, 6>;

  ControlSchedule(const std::array<Sinusoid, 6>& base, const Mask& actuated);

  /// Excitation used for identification in all three actuation classes.
  static std::array<Sinusoid, 6> reference_excitation();
  /// A different excitation of similar magnitude used for cross-validation.
  static std::array<Sinusoid, 6> holdout_excitation();

  /// Class 0: all DOFs. Class 1: surge, roll, pitch, yaw. Class 2: surge, yaw.
  static Mask class_mask(int class_id);
  static ControlSchedule for_class(int class_id);

  /// Builds a mask from 0/1 flags; anything else is rejected.
  static Mask mask_from_flags(const Vec6& flags);

  Vec6 operator()(double t) const;

  const std::array<Sinusoid, 6>& base() const noexcept { return base_; }
  const Mask& actuated() const noexcept { return actuated_; }

 private:
  std::array<Sinusoid, 6> base_;
  Mask actuated_;
};

inline Vec6 eval_control(const ControlSchedule& s, double t) { return s(t); }

/// One classical fourth-order Runge-Kutta step of dx/dt = f(t, x).
template <typename State, typename Derivative>
State rk4_step(Derivative&& f, const State& x, double t, double dt) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("rk4_step: dt must be positive");
  }
  const double half = 0.5 * dt;
  const State k1 = f(t, x);
  const State k2 = f(t + half, State(x + half * k1));
  const State k3 = f(t + half, State(x + half * k2));
  const State k4 = f(t + dt, State(x + dt * k3));
  return x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace aiduco
