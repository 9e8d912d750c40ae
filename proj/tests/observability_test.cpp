#include "aiduco/observability.hpp"

#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "aiduco/errorsys.hpp"

namespace aiduco {
namespace {

std::vector<Mat12> random_transitions(std::mt19937_64& rng, std::size_t count, double scale) {
  std::normal_distribution<double> n(0.0, scale);
  std::vector<Mat12> out;
  for (std::size_t k = 0; k < count; ++k) {
    Mat12 a;
    for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = n(rng);
    out.push_back(discrete_transition(a, 0.01));
  }
  return out;
}

// Gramian straight from its definition, with an independently formed
// Phi(k0 + j, k0) and C_e^T C_e product.
Mat12 gramian_oracle(const std::vector<Mat12>& t, std::size_t k0, std::size_t steps, double dt) {
  const Mat6x12 c = error_output_matrix();
  Mat12 g = Mat12::Zero();
  for (std::size_t j = 0; j < steps; ++j) {
    Mat12 phi = Mat12::Identity();
    for (std::size_t i = 0; i < j; ++i) phi = t[k0 + i] * phi;
    g += phi.transpose() * c.transpose() * c * phi * dt;
  }
  return g;
}

TEST(DiscreteTransition, ZeroGeneratorIsIdentity) {
  EXPECT_EQ(discrete_transition(Mat12::Zero(), 0.01), Mat12::Identity());
  EXPECT_THROW(discrete_transition(Mat12::Zero(), 0.0), std::invalid_argument);
}

TEST(TransitionProduct, IdentityAndSemigroup) {
  std::mt19937_64 rng(41);
  const auto t = random_transitions(rng, 30, 1.0);
  EXPECT_EQ(transition_product(t, 4, 4), Mat12::Identity());
  EXPECT_EQ(transition_product(t, 4, 5), t[4]);
  const Mat12 whole = transition_product(t, 3, 25);
  const Mat12 split = transition_product(t, 11, 25) * transition_product(t, 3, 11);
  EXPECT_LE((whole - split).norm(), 1e-12 * whole.norm());
}

TEST(TransitionProduct, IndexErrors) {
  std::mt19937_64 rng(42);
  const auto t = random_transitions(rng, 5, 1.0);
  EXPECT_NO_THROW(transition_product(t, 0, 5));
  EXPECT_THROW(transition_product(t, 0, 6), std::out_of_range);
  EXPECT_THROW(transition_product(t, 3, 2), std::invalid_argument);
}

TEST(Gramian, StaticSystemAccumulatesOutputWeight) {
  // A_e = 0: every Phi is I and the Gramian is N dt C^T C.
  const std::vector<Mat12> t(50, Mat12::Identity());
  const GramianWindow w = gramian(t, 0, 50, 0.01);
  const Mat6x12 c = error_output_matrix();
  EXPECT_LE((w.gramian - 50 * 0.01 * c.transpose() * c).norm(), 1e-14);
  EXPECT_DOUBLE_EQ(w.delta(), 0.5);
  EXPECT_EQ(w.start_time(), 0.0);
  const GramianSpectrum s = gramian_spectrum(w);
  EXPECT_EQ(s.min_eig, 0.0);
  EXPECT_NEAR(s.max_eig, 0.5, 1e-14);
}

TEST(Gramian, MatchesDefinition) {
  std::mt19937_64 rng(43);
  const auto t = random_transitions(rng, 60, 3.0);
  const GramianWindow w = gramian(t, 7, 40, 0.01);
  const Mat12 ref = gramian_oracle(t, 7, 40, 0.01);
  EXPECT_LE((w.gramian - ref).norm(), 1e-12 * ref.norm());
  EXPECT_EQ(w.gramian, w.gramian.transpose());
}

TEST(Gramian, WindowMustFitInRecord) {
  const std::vector<Mat12> t(10, Mat12::Identity());
  EXPECT_NO_THROW(gramian(t, 0, 10, 0.01));
  EXPECT_THROW(gramian(t, 1, 10, 0.01), std::out_of_range);
  EXPECT_THROW(gramian(t, 0, 0, 0.01), std::invalid_argument);
}

TEST(Gramian, ZeroVelocityLeavesParametersUnobservable) {
  // At v = 0 and tau = 0, A_e only damps dv and never couples dm into it.
  const MassParams m = MassParams::reference_vehicle();
  const IdentifierGains g = IdentifierGains::reference();
  const IdentifierState st = IdentifierState::initial(Vec6::Zero(), 1.4 * m.values());
  const Mat12 a = assemble_error_system(m, st, g, Vec6::Zero(), Vec6::Zero()).a_e;
  const std::vector<Mat12> t(100, discrete_transition(a, 0.01));
  const GramianSpectrum s = gramian_spectrum(gramian(t, 0, 100, 0.01));
  EXPECT_EQ(s.min_eig, 0.0);
  EXPECT_GT(s.max_eig, 0.0);
}

TEST(Gramian, EqualsScaledObservabilityMatrixProduct) {
  std::mt19937_64 rng(44);
  const auto t = random_transitions(rng, 40, 2.0);
  const GramianWindow w = gramian(t, 5, 30, 0.02);
  const Eigen::MatrixXd o = observability_matrix(t, 5, 30);
  const Eigen::MatrixXd oto = o.transpose() * o;
  EXPECT_LE((w.gramian / 0.02 - oto).norm(), 1e-12 * oto.norm());
}

TEST(ObservabilityMatrix, FirstBlockIsOutputMatrix) {
  std::mt19937_64 rng(45);
  const auto t = random_transitions(rng, 3, 1.0);
  EXPECT_EQ(Eigen::MatrixXd(observability_matrix(t, 1, 1)),
            Eigen::MatrixXd(error_output_matrix()));
  const Eigen::MatrixXd o = observability_matrix(t, 0, 3);
  EXPECT_EQ(o.rows(), 18);
  EXPECT_EQ(Eigen::MatrixXd(o.middleRows(6, 6)),
            Eigen::MatrixXd(error_output_matrix() * t[0]));
  EXPECT_THROW(observability_matrix(t, 2, 3), std::out_of_range);
}

TEST(SlidingGramian, MatchesDirectWindowsForEveryStart) {
  std::mt19937_64 rng(46);
  for (std::size_t steps : {1u, 2u, 5u, 13u}) {
    const auto t = random_transitions(rng, 60, 2.0);
    SlidingGramian sliding(steps, 0.01);
    std::size_t emitted = 0;
    for (std::size_t k = 0; k < t.size(); ++k) {
      const auto w = sliding.push(t[k]);
      if (k + 1 < steps) {
        EXPECT_FALSE(w.has_value());
        continue;
      }
      ASSERT_TRUE(w.has_value());
      EXPECT_EQ(w->start, k + 1 - steps);
      const Mat12 ref = gramian(t, w->start, steps, 0.01).gramian;
      EXPECT_LE((w->gramian - ref).norm(), 1e-11 * ref.norm())
          << "steps " << steps << " start " << w->start;
      ++emitted;
    }
    EXPECT_EQ(emitted, t.size() - steps + 1);
  }
}

TEST(SlidingGramian, RejectsBadArguments) {
  EXPECT_THROW(SlidingGramian(0, 0.01), std::invalid_argument);
  EXPECT_THROW(SlidingGramian(5, 0.0), std::invalid_argument);
}

TEST(KalmanDecompose, FullRankHasNoUnobservableParameters) {
  Eigen::MatrixXd o = Eigen::MatrixXd::Identity(12, 12);
  const ObservabilityReport r = kalman_decompose(o);
  EXPECT_EQ(r.rank_n2, 12);
  EXPECT_TRUE(r.unobservable_params.empty());
  EXPECT_EQ(r.t_uo.rows(), 0);
  EXPECT_EQ(r.transform().rows(), 12);
}

TEST(KalmanDecompose, OutputOnlyRowSpace) {
  // O = C_e: only dv is seen, all six parameters are unobservable and the
  // first rows of T span the velocity-error coordinates.
  const Eigen::MatrixXd o = error_output_matrix();
  const ObservabilityReport r = kalman_decompose(o);
  EXPECT_EQ(r.rank_n2, 6);
  EXPECT_EQ(r.unobservable_params, (std::vector<int>{0, 1, 2, 3, 4, 5}));
  EXPECT_EQ(r.t_o.leftCols(6).norm(), 0.0);
  EXPECT_EQ(numerical_rank(r.t_o.rightCols(6)), 6);
  const Eigen::MatrixXd t = r.transform();
  EXPECT_EQ(numerical_rank(t), 12);
  // T_uo is orthogonal to the observable rows.
  EXPECT_LE((r.t_uo * o.transpose()).norm(), 1e-14);
}

TEST(KalmanDecompose, SelectsMissingParameterDirections) {
  // Row space = span{dv, dm11, dm22, dm66}: dm33, dm44, dm55 are unobservable.
  std::mt19937_64 rng(47);
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(9, 12);
  basis.block(0, 6, 6, 6).setIdentity();
  basis(6, 0) = 1.0;
  basis(7, 1) = 1.0;
  basis(8, 5) = 1.0;
  Eigen::MatrixXd mix(60, 9);
  for (Eigen::Index i = 0; i < mix.size(); ++i) mix.data()[i] = n(rng);
  const Eigen::MatrixXd o = mix * basis;
  const ObservabilityReport r = kalman_decompose(o);
  EXPECT_EQ(r.rank_n2, 9);
  EXPECT_EQ(r.unobservable_params, (std::vector<int>{2, 3, 4}));
  EXPECT_EQ(numerical_rank(r.transform()), 12);
  EXPECT_LE((r.t_uo * o.transpose()).norm(), 1e-10 * o.norm());
  // Rows of T_o are rows of O.
  for (Eigen::Index i = 0; i < r.t_o.rows(); ++i) {
    double best = 1e300;
    for (Eigen::Index j = 0; j < o.rows(); ++j) best = std::min(best, (o.row(j) - r.t_o.row(i)).norm());
    EXPECT_EQ(best, 0.0);
  }
}

TEST(KalmanDecompose, RejectsWrongShape) {
  EXPECT_THROW(kalman_decompose(Eigen::MatrixXd::Zero(6, 11)), std::invalid_argument);
}

TEST(ObservabilityReport, NumericallyZeroRatio) {
  ObservabilityReport r;
  r.min_eig = 1e-12;
  r.max_eig = 1.0;
  EXPECT_TRUE(r.numerically_zero());
  r.min_eig = 1e-9;
  EXPECT_FALSE(r.numerically_zero());
}

}  // namespace
}  // namespace aiduco
