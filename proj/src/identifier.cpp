#include "aiduco/identifier.hpp"

#include <string>

#include "aiduco/errors.hpp"

namespace aiduco {

IdentifierGains IdentifierGains::reference() {
  IdentifierGains g;
  g.observer = Vec6::Constant(100.0);
  g.adaptation << 6e3, 6e4, 6e4, 6e3, 6e3, 6e3;
  return g;
}

void IdentifierGains::validate() const {
  for (int i = 0; i < 6; ++i) {
    if (!std::isfinite(observer(i)) || !(observer(i) > 0.0)) {
      throw std::invalid_argument("observer gain entry " + std::to_string(i) +
                                  " must be positive");
    }
    if (!std::isfinite(adaptation(i)) || !(adaptation(i) > 0.0)) {
      throw std::invalid_argument("adaptation gain entry " + std::to_string(i) +
                                  " must be positive");
    }
  }
}

IdentifierState IdentifierState::initial(const Vec6& v_hat0, const Vec6& m_hat0) {
  require_positive_mass(m_hat0, "initial mass estimate");
  IdentifierState st;
  st.v_hat = v_hat0;
  st.m_hat = m_hat0;
  st.m_floor = kPositivityFloorFraction * m_hat0;
  return st;
}

ErrorCoordinates error_coordinates(const IdentifierState& st, const MassParams& m,
                                   const BodyVelocity& v) {
  return {st.v_hat - v, st.m_hat - m.values()};
}

Vec6 vhat_dot(const IdentifierState& st, const IdentifierGains& g, const BodyVelocity& v,
              const Vec6& tau, double t) {
  for (int i = 0; i < 6; ++i) {
    if (!(st.m_hat(i) > st.m_floor(i)) || !(st.m_hat(i) > 0.0)) {
      throw PositivityFloorError(i, st.m_hat(i), st.m_floor(i), t);
    }
  }
  const Vec6 dv = st.v_hat - v;
  const Vec6 accel = (tau - coriolis_force(st.m_hat, v)).cwiseQuotient(st.m_hat);
  return accel - g.observer.cwiseProduct(dv);
}

Vec6 mhat_dot(const IdentifierState& st, const IdentifierGains& g, const BodyVelocity& v,
              const Vec6& vhat_dot) {
  const Vec6 dv = st.v_hat - v;
  const Vec6 coriolis_term = v.cwiseProduct(ad_operator(v).transpose() * dv);
  const Vec6 observer_term = (vhat_dot + g.observer.cwiseProduct(dv)).cwiseProduct(dv);
  return g.adaptation.cwiseProduct(coriolis_term + observer_term);
}

double lyapunov(const ErrorCoordinates& err, const MassParams& m, const IdentifierGains& g) {
  return 0.5 * err.dv.dot(m.values().cwiseProduct(err.dv)) +
         0.5 * err.dm.dot(err.dm.cwiseQuotient(g.adaptation));
}

namespace {

using Joint = Eigen::Matrix<double, 18, 1>;

Joint pack(const CoupledState& s) {
  Joint x;
  x << s.v, s.id.v_hat, s.id.m_hat;
  return x;
}

}  // namespace

CoupledState coupled_step(const MassParams& plant_mass, const CoupledState& state,
                          const IdentifierGains& g, const ControlSchedule& schedule, double t,
                          double dt) {
  const Vec6 floor = state.id.m_floor;
  auto derivative = [&](double ts, const Joint& x) -> Joint {
    const BodyVelocity v = x.segment<6>(0);
    IdentifierState st;
    st.v_hat = x.segment<6>(6);
    st.m_hat = x.segment<6>(12);
    st.m_floor = floor;
    const Vec6 tau = schedule(ts);
    const Vec6 vh_dot = vhat_dot(st, g, v, tau, ts);
    Joint dx;
    dx << plant_accel(plant_mass, v, tau), vh_dot, mhat_dot(st, g, v, vh_dot);
    return dx;
  };
  const Joint next = rk4_step(derivative, pack(state), t, dt);

  CoupledState out;
  out.v = next.segment<6>(0);
  out.id.v_hat = next.segment<6>(6);
  out.id.m_hat = next.segment<6>(12);
  out.id.m_floor = floor;
  for (int i = 0; i < 6; ++i) {
    if (!(out.id.m_hat(i) > floor(i))) {
      throw PositivityFloorError(i, out.id.m_hat(i), floor(i), t + dt);
    }
  }
  return out;
}

}  // namespace aiduco
