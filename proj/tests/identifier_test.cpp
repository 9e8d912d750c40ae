#include "aiduco/identifier.hpp"

#include <random>

#include <gtest/gtest.h>

#include "aiduco/errors.hpp"

namespace aiduco {
namespace {

Vec6 surge_yaw() {
  Vec6 v;
  v << 1, 0, 0, 0, 0, 1;
  return v;
}

struct RandomState {
  MassParams m;
  IdentifierState st;
  Vec6 v;
  Vec6 tau;
};

RandomState random_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> mass(0.5, 20.0);
  std::normal_distribution<double> n(0.0, 1.0);
  Vec6 m;
  Vec6 mh;
  Vec6 v;
  Vec6 vh;
  Vec6 tau;
  for (int i = 0; i < 6; ++i) {
    m(i) = mass(rng);
    mh(i) = mass(rng);
    v(i) = n(rng);
    vh(i) = n(rng);
    tau(i) = n(rng);
  }
  return {MassParams(m), IdentifierState::initial(vh, mh), v, tau};
}

TEST(IdentifierGains, ReferenceValues) {
  const IdentifierGains g = IdentifierGains::reference();
  EXPECT_EQ(g.observer, Vec6::Constant(100.0));
  Vec6 expected;
  expected << 6e3, 6e4, 6e4, 6e3, 6e3, 6e3;
  EXPECT_EQ(g.adaptation, expected);
  EXPECT_NO_THROW(g.validate());
}

TEST(IdentifierGains, ValidateRejectsNonPositive) {
  IdentifierGains g = IdentifierGains::reference();
  g.observer(2) = 0.0;
  EXPECT_THROW(g.validate(), std::invalid_argument);
  g = IdentifierGains::reference();
  g.adaptation(5) = -1.0;
  EXPECT_THROW(g.validate(), std::invalid_argument);
}

TEST(IdentifierState, InitialSetsFloor) {
  const Vec6 m0 = 1.4 * MassParams::reference_vehicle().values();
  const IdentifierState st = IdentifierState::initial(Vec6::Zero(), m0);
  EXPECT_EQ(st.m_hat, m0);
  EXPECT_EQ(st.m_floor, 1e-6 * m0);
  Vec6 bad = m0;
  bad(1) = 0.0;
  EXPECT_THROW(IdentifierState::initial(Vec6::Zero(), bad), DegenerateMassError);
}

TEST(VhatDot, ForceAtRest) {
  const IdentifierState st =
      IdentifierState::initial(Vec6::Zero(), MassParams::reference_vehicle().values());
  Vec6 tau = Vec6::Zero();
  tau(0) = 1.0;
  const Vec6 d = vhat_dot(st, IdentifierGains::reference(), Vec6::Zero(), tau);
  EXPECT_DOUBLE_EQ(d(0), 1.0 / 11.0);
  EXPECT_EQ(d.tail<5>().norm(), 0.0);
}

TEST(VhatDot, ObserverInjection) {
  Vec6 vh = Vec6::Zero();
  vh(0) = 1.0;
  const IdentifierState st = IdentifierState::initial(vh, MassParams::reference_vehicle().values());
  const Vec6 d = vhat_dot(st, IdentifierGains::reference(), Vec6::Zero(), Vec6::Zero());
  Vec6 expected = Vec6::Zero();
  expected(0) = -100.0;
  EXPECT_EQ(d, expected);
}

TEST(VhatDot, MatchesPlantModelWithEstimatedMass) {
  std::mt19937_64 rng(21);
  const IdentifierGains g = IdentifierGains::reference();
  for (int trial = 0; trial < 200; ++trial) {
    const RandomState s = random_state(rng);
    const Vec6 expected =
        plant_accel(MassParams(s.st.m_hat), s.v, s.tau) - g.observer.cwiseProduct(s.st.v_hat - s.v);
    EXPECT_LE((vhat_dot(s.st, g, s.v, s.tau) - expected).norm(), 1e-12 * (1.0 + expected.norm()));
  }
}

TEST(VhatDot, FloorViolationCarriesContext) {
  IdentifierState st =
      IdentifierState::initial(Vec6::Zero(), MassParams::reference_vehicle().values());
  st.m_hat(4) = 0.5 * st.m_floor(4);
  try {
    vhat_dot(st, IdentifierGains::reference(), Vec6::Zero(), Vec6::Zero(), 12.5);
    FAIL() << "expected PositivityFloorError";
  } catch (const PositivityFloorError& e) {
    EXPECT_EQ(e.index(), 4);
    EXPECT_EQ(e.value(), st.m_hat(4));
    EXPECT_EQ(e.floor(), st.m_floor(4));
    EXPECT_EQ(e.time(), 12.5);
  }
}

TEST(MhatDot, HandWorkedSurgeYawCase) {
  // v = surge + yaw, dv = e2, m_hat = m, tau = 0.
  //   diag(v) ad(v)^T dv = e1
  //   vhat_dot = [0 -1 0 0 0 0] - 100 e2, so diag(vhat_dot + A dv) dv = -e2.
  const Vec6 v = surge_yaw();
  Vec6 dv = Vec6::Zero();
  dv(1) = 1.0;
  const IdentifierGains g = IdentifierGains::reference();
  const IdentifierState st = IdentifierState::initial(v + dv, MassParams::reference_vehicle().values());
  const Vec6 vd = vhat_dot(st, g, v, Vec6::Zero());
  Vec6 expected_vd = Vec6::Zero();
  expected_vd(1) = -101.0;
  EXPECT_EQ(vd, expected_vd);
  Vec6 expected = Vec6::Zero();
  expected(0) = 6e3;
  expected(1) = -6e4;
  EXPECT_EQ(mhat_dot(st, g, v, vd), expected);
}

TEST(MhatDot, ZeroVelocityErrorStopsAdaptation) {
  std::mt19937_64 rng(22);
  const IdentifierGains g = IdentifierGains::reference();
  for (int trial = 0; trial < 50; ++trial) {
    RandomState s = random_state(rng);
    s.st.v_hat = s.v;
    const Vec6 vd = vhat_dot(s.st, g, s.v, s.tau);
    EXPECT_EQ(mhat_dot(s.st, g, s.v, vd), Vec6::Zero());
  }
}

TEST(Lyapunov, UnitVelocityErrorInSurge) {
  ErrorCoordinates err{Vec6::Zero(), Vec6::Zero()};
  err.dv(0) = 1.0;
  EXPECT_DOUBLE_EQ(lyapunov(err, MassParams::reference_vehicle(), IdentifierGains::reference()),
                   5.5);
}

TEST(Lyapunov, QuadraticInErrors) {
  std::mt19937_64 rng(23);
  const IdentifierGains g = IdentifierGains::reference();
  for (int trial = 0; trial < 50; ++trial) {
    const RandomState s = random_state(rng);
    const ErrorCoordinates e = error_coordinates(s.st, s.m, s.v);
    const ErrorCoordinates e2{2.0 * e.dv, 2.0 * e.dm};
    const double v1 = lyapunov(e, s.m, g);
    EXPECT_GT(v1, 0.0);
    EXPECT_DOUBLE_EQ(lyapunov(e2, s.m, g), 4.0 * v1);
  }
  EXPECT_EQ(lyapunov({Vec6::Zero(), Vec6::Zero()}, MassParams::reference_vehicle(), g), 0.0);
}

TEST(Lyapunov, DerivativeAlongTrueDynamicsIsNegativeDamping) {
  // dV/dt = dv^T M (vhat_dot - v_dot) + dm^T Gamma^-1 mhat_dot must reduce to
  // -dv^T A M dv for arbitrary states, true masses and inputs.
  std::mt19937_64 rng(24);
  const IdentifierGains g = IdentifierGains::reference();
  for (int trial = 0; trial < 1000; ++trial) {
    const RandomState s = random_state(rng);
    const ErrorCoordinates e = error_coordinates(s.st, s.m, s.v);
    const Vec6 vhd = vhat_dot(s.st, g, s.v, s.tau);
    const Vec6 vd = plant_accel(s.m, s.v, s.tau);
    const Vec6 mhd = mhat_dot(s.st, g, s.v, vhd);
    const double vdot = e.dv.dot(s.m.values().cwiseProduct(vhd - vd)) +
                        e.dm.dot(mhd.cwiseQuotient(g.adaptation));
    const double expected = -e.dv.dot(g.observer.cwiseProduct(s.m.values()).cwiseProduct(e.dv));
    const double scale = std::abs(e.dv.dot(s.m.values().cwiseProduct(vhd - vd))) +
                         std::abs(e.dm.dot(mhd.cwiseQuotient(g.adaptation))) + std::abs(expected);
    EXPECT_NEAR(vdot, expected, 1e-12 * scale) << "trial " << trial;
  }
}

TEST(CoupledStep, MatchedEstimateIsAnEquilibrium) {
  const MassParams m = MassParams::reference_vehicle();
  const IdentifierGains g = IdentifierGains::reference();
  const ControlSchedule sched = ControlSchedule::for_class(0);
  CoupledState s;
  s.v = Vec6::Zero();
  s.id = IdentifierState::initial(Vec6::Zero(), m.values());
  for (int k = 0; k < 100; ++k) {
    s = coupled_step(m, s, g, sched, k * 0.01, 0.01);
  }
  EXPECT_LE((s.id.v_hat - s.v).norm(), 1e-10);
  EXPECT_LE((s.id.m_hat - m.values()).norm(), 1e-10);
  EXPECT_GT(s.v.norm(), 0.0);
}

TEST(CoupledStep, PlantPartMatchesStandalonePlant) {
  const MassParams m = MassParams::reference_vehicle();
  const IdentifierGains g = IdentifierGains::reference();
  const ControlSchedule sched = ControlSchedule::for_class(1);
  CoupledState s;
  s.id = IdentifierState::initial(Vec6::Zero(), 1.4 * m.values());
  Vec6 v = Vec6::Zero();
  const auto f = [&](double t, const Vec6& x) { return plant_accel(m, x, sched(t)); };
  for (int k = 0; k < 200; ++k) {
    s = coupled_step(m, s, g, sched, k * 0.01, 0.01);
    v = rk4_step(f, v, k * 0.01, 0.01);
  }
  EXPECT_EQ(s.v, v);
}

TEST(CoupledStep, LyapunovDecreaseMatchesDissipation) {
  // V(t + dt) - V(t) against the trapezoid of -dv^T A M dv.
  const MassParams m = MassParams::reference_vehicle();
  const IdentifierGains g = IdentifierGains::reference();
  const ControlSchedule sched = ControlSchedule::for_class(0);
  CoupledState s;
  s.v = surge_yaw();
  s.id = IdentifierState::initial(Vec6::Zero(), 1.4 * m.values());
  const double dt = 1e-4;
  const auto dissipation = [&](const CoupledState& x) {
    const Vec6 dv = x.id.v_hat - x.v;
    return -dv.dot(g.observer.cwiseProduct(m.values()).cwiseProduct(dv));
  };
  for (int k = 0; k < 50; ++k) {
    const CoupledState next = coupled_step(m, s, g, sched, k * dt, dt);
    const double dv_lyap = lyapunov(error_coordinates(next.id, m, next.v), m, g) -
                           lyapunov(error_coordinates(s.id, m, s.v), m, g);
    const double predicted = 0.5 * dt * (dissipation(s) + dissipation(next));
    EXPECT_LE(dv_lyap, 0.0);
    EXPECT_NEAR(dv_lyap, predicted, 1e-3 * std::abs(predicted) + 1e-12);
    s = next;
  }
}

}  // namespace
}  // namespace aiduco
