#include "aiduco/plant.hpp"

#include <cmath>
#include <string>

#include "aiduco/errors.hpp"

namespace aiduco {

PositivityFloorError::PositivityFloorError(int index, double value, double floor, double time)
    : std::runtime_error("mass estimate m_hat[" + std::to_string(index) + "] = " +
                         std::to_string(value) + " reached its positivity floor " +
                         std::to_string(floor) + " at t = " + std::to_string(time) + " s"),
      index_(index),
      value_(value),
      floor_(floor),
      time_(time) {}

void require_positive_mass(const Vec6& m, const char* what) {
  for (int i = 0; i < 6; ++i) {
    if (!std::isfinite(m(i)) || !(m(i) > 0.0)) {
      throw DegenerateMassError(std::string(what) + ": entry " + std::to_string(i) +
                                " is not a positive finite mass (" + std::to_string(m(i)) +
                                ")");
    }
  }
}

MassParams::MassParams(const Vec6& m) : m_(m) { require_positive_mass(m_, "MassParams"); }

MassParams MassParams::reference_vehicle() {
  Vec6 m;
  m << 11.0, 11.0, 11.0, 6.5, 5.0, 7.0;
  return MassParams(m);
}

Mat6 coriolis(const MassParams& m, const BodyVelocity& v) {
  const Vec3 m11_nu = m.values().head<3>().cwiseProduct(v.head<3>());
  const Vec3 m22_omega = m.values().tail<3>().cwiseProduct(v.tail<3>());
  Mat6 c = Mat6::Zero();
  c.topRightCorner<3, 3>() = -skew(m11_nu);
  c.bottomLeftCorner<3, 3>() = -skew(m11_nu);
  c.bottomRightCorner<3, 3>() = -skew(m22_omega);
  return c;
}

Vec6 coriolis_force(const Vec6& m, const BodyVelocity& v) {
  const Vec3 nu = v.head<3>();
  const Vec3 omega = v.tail<3>();
  const Vec3 m11_nu = m.head<3>().cwiseProduct(nu);
  const Vec3 m22_omega = m.tail<3>().cwiseProduct(omega);
  Vec6 out;
  out.head<3>() = omega.cross(m11_nu);
  out.tail<3>() = nu.cross(m11_nu) + omega.cross(m22_omega);
  return out;
}

Vec6 plant_accel(const MassParams& m, const BodyVelocity& v, const Vec6& tau) {
  return (tau - coriolis_force(m.values(), v)).cwiseQuotient(m.values());
}

double kinetic_energy(const MassParams& m, const BodyVelocity& v) {
  return 0.5 * v.dot(m.values().cwiseProduct(v));
}

double Sinusoid::operator()(double t) const {
  const double phase = frequency * t;
  return amplitude * (waveform == Waveform::kSin ? std::sin(phase) : std::cos(phase));
}

ControlSchedule::ControlSchedule(const std::array<Sinusoid, 6>& base, const Mask& actuated)
    : base_(base), actuated_(actuated) {
  for (const Sinusoid& s : base_) {
    if (!std::isfinite(s.amplitude) || !std::isfinite(s.frequency)) {
      throw std::invalid_argument("ControlSchedule: non-finite sinusoid parameters");
    }
  }
}

std::array<Sinusoid, 6> ControlSchedule::reference_excitation() {
  return {{
      {0.5, 1.0, Waveform::kSin},
      {0.5, 1.1, Waveform::kSin},
      {0.5, 0.9, Waveform::kSin},
      {1.0, 0.9, Waveform::kCos},
      {1.0, 0.5, Waveform::kSin},
      {1.0, 0.7, Waveform::kCos},
  }};
}

std::array<Sinusoid, 6> ControlSchedule::holdout_excitation() {
  return {{
      {0.5, 0.8, Waveform::kSin},
      {0.5, 1.3, Waveform::kSin},
      {0.5, 0.7, Waveform::kSin},
      {1.0, 1.1, Waveform::kCos},
      {1.0, 0.6, Waveform::kSin},
      {1.0, 0.9, Waveform::kCos},
  }};
}

ControlSchedule::Mask ControlSchedule::class_mask(int class_id) {
  switch (class_id) {
    case 0:
      return {true, true, true, true, true, true};
    case 1:
      return {true, false, false, true, true, true};
    case 2:
      return {true, false, false, false, false, true};
    default:
      throw std::invalid_argument("unknown actuation class " + std::to_string(class_id));
  }
}

ControlSchedule ControlSchedule::for_class(int class_id) {
  return ControlSchedule(reference_excitation(), class_mask(class_id));
}

ControlSchedule::Mask ControlSchedule::mask_from_flags(const Vec6& flags) {
  Mask mask{};
  for (int i = 0; i < 6; ++i) {
    if (flags(i) == 1.0) {
      mask[static_cast<std::size_t>(i)] = true;
    } else if (flags(i) == 0.0) {
      mask[static_cast<std::size_t>(i)] = false;
    } else {
      throw std::invalid_argument("actuation mask entries must be 0 or 1");
    }
  }
  return mask;
}

Vec6 ControlSchedule::operator()(double t) const {
  Vec6 tau;
  for (std::size_t i = 0; i < 6; ++i) {
    tau(static_cast<Eigen::Index>(i)) = actuated_[i] ? base_[i](t) : 0.0;
  }
  return tau;
}

}  // namespace aiduco
