#include "aiduco/observability.hpp"

#include <stdexcept>
#include <string>

#include <Eigen/QR>

namespace aiduco {

Mat12 discrete_transition(const Mat12& a_e, double dt) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("discrete_transition: dt must be positive");
  }
  return expm(a_e, dt);
}

Mat12 transition_product(std::span<const Mat12> transitions, std::size_t k0, std::size_t k) {
  if (k < k0) {
    throw std::invalid_argument("transition_product: k must not precede k0");
  }
  if (k > transitions.size()) {
    throw std::out_of_range("transition_product: index " + std::to_string(k) +
                            " beyond the " + std::to_string(transitions.size()) +
                            " recorded transitions");
  }
  Mat12 phi = Mat12::Identity();
  for (std::size_t j = k0; j < k; ++j) {
    phi = (transitions[j] * phi).eval();
  }
  return phi;
}

GramianWindow gramian(std::span<const Mat12> transitions, std::size_t k0, std::size_t steps,
                      double dt) {
  if (steps == 0) {
    throw std::invalid_argument("gramian: window needs at least one sample");
  }
  if (k0 + steps > transitions.size()) {
    throw std::out_of_range("gramian: window [" + std::to_string(k0) + ", " +
                            std::to_string(k0 + steps) + ") exceeds " +
                            std::to_string(transitions.size()) + " recorded transitions");
  }
  GramianWindow w;
  w.start = k0;
  w.steps = steps;
  w.dt = dt;
  Mat12 phi = Mat12::Identity();
  for (std::size_t j = 0; j < steps; ++j) {
    // C_e^T C_e Phi only keeps the velocity rows of Phi.
    const auto rows = phi.bottomRows<6>();
    w.gramian.noalias() += rows.transpose() * rows;
    phi = (transitions[k0 + j] * phi).eval();
  }
  w.gramian *= dt;
  w.gramian = 0.5 * (w.gramian + w.gramian.transpose()).eval();
  return w;
}

GramianSpectrum gramian_spectrum(const GramianWindow& window) {
  const SymEigResult eig = sym_eig(window.gramian);
  return {eig.values(0), eig.values(eig.values.size() - 1)};
}

SlidingGramian::SlidingGramian(std::size_t steps, double dt) : steps_(steps), dt_(dt) {
  if (steps == 0) {
    throw std::invalid_argument("SlidingGramian: window needs at least one sample");
  }
  if (!(dt > 0.0)) {
    throw std::invalid_argument("SlidingGramian: dt must be positive");
  }
  q_.setZero();
  q_.bottomRightCorner<6, 6>().setIdentity();
  q_ *= dt;
  block_.reserve(steps);
}

namespace {

// Aggregate of `first` followed by `second`.
Mat12 compose_g(const Mat12& first_phi, const Mat12& first_g, const Mat12& second_g) {
  Mat12 g = first_g;
  g.noalias() += first_phi.transpose() * (second_g * first_phi);
  return g;
}

}  // namespace

std::optional<GramianWindow> SlidingGramian::push(const Mat12& transition) {
  const std::size_t k = pushed_++;
  block_.push_back(transition);
  if (prefix_) {
    Segment next{transition * prefix_->phi, compose_g(prefix_->phi, prefix_->g, q_)};
    prefix_ = std::move(next);
  } else {
    prefix_ = Segment{transition, q_};
  }

  std::optional<GramianWindow> out;
  auto emit = [&](const Mat12& g) {
    GramianWindow w;
    w.start = k + 1 - steps_;
    w.steps = steps_;
    w.dt = dt_;
    w.gramian = 0.5 * (g + g.transpose());
    out = w;
  };

  if (block_.size() == steps_) {
    std::vector<Segment> suffix(steps_);
    suffix[steps_ - 1] = Segment{block_[steps_ - 1], q_};
    for (std::size_t i = steps_ - 1; i-- > 0;) {
      const Segment& tail = suffix[i + 1];
      suffix[i] = Segment{tail.phi * block_[i], compose_g(block_[i], q_, tail.g)};
    }
    emit(suffix[0].g);
    suffix_ = std::move(suffix);
    block_.clear();
    prefix_.reset();
  } else if (!suffix_.empty()) {
    const Segment& head = suffix_[block_.size()];
    emit(compose_g(head.phi, head.g, prefix_->g));
  }
  return out;
}

Eigen::MatrixXd observability_matrix(std::span<const Mat12> transitions, std::size_t k,
                                     std::size_t steps) {
  if (steps == 0) {
    throw std::invalid_argument("observability_matrix: needs at least one block row");
  }
  if (k + steps - 1 > transitions.size()) {
    throw std::out_of_range("observability_matrix: not enough recorded transitions");
  }
  Eigen::MatrixXd o(6 * static_cast<Eigen::Index>(steps), 12);
  Mat12 phi = Mat12::Identity();
  for (std::size_t i = 0; i < steps; ++i) {
    o.middleRows<6>(6 * static_cast<Eigen::Index>(i)) = phi.bottomRows<6>();
    if (i + 1 < steps) {
      phi = (transitions[k + i] * phi).eval();
    }
  }
  return o;
}

Eigen::MatrixXd ObservabilityReport::transform() const {
  Eigen::MatrixXd t(t_o.rows() + t_uo.rows(), 12);
  t << t_o, t_uo;
  return t;
}

ObservabilityReport kalman_decompose(const Eigen::Ref<const Eigen::MatrixXd>& o,
                                     double tol_rel) {
  if (o.size() == 0 || o.cols() != 12) {
    throw std::invalid_argument("kalman_decompose: expected a non-empty matrix with 12 columns");
  }
  ObservabilityReport report;
  const SvdResult svd = jacobi_svd(o);
  const double sigma_max = svd.singular_values(0);
  int rank = 0;
  if (sigma_max > 0.0) {
    rank = static_cast<int>((svd.singular_values.array() > tol_rel * sigma_max).count());
  }
  report.rank_n2 = rank;

  // Independent rows of O, in the order a column-pivoted QR of O^T picks them.
  const Eigen::MatrixXd ot = o.transpose();
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(ot);
  const auto& perm = qr.colsPermutation().indices();
  report.t_o.resize(rank, 12);
  for (int i = 0; i < rank; ++i) {
    report.t_o.row(i) = o.row(perm(i));
  }

  // Row space of O from the leading right singular vectors; the rest
  // completes T with an orthonormal basis of the unobservable subspace.
  const Eigen::MatrixXd row_space = svd.v.leftCols(rank);
  report.t_uo = svd.v.rightCols(12 - rank).transpose();

  for (int i = 0; i < 6; ++i) {
    if (row_space.row(i).norm() < tol_rel) {
      report.unobservable_params.push_back(i);
    }
  }
  return report;
}

ObservabilityReport analyze_window(std::span<const Mat12> transitions, std::size_t k0,
                                   std::size_t steps, double dt, double tol_rel) {
  const GramianWindow w = gramian(transitions, k0, steps, dt);
  ObservabilityReport report = kalman_decompose(observability_matrix(transitions, k0, steps),
                                                tol_rel);
  const GramianSpectrum spectrum = gramian_spectrum(w);
  report.min_eig = spectrum.min_eig;
  report.max_eig = spectrum.max_eig;
  return report;
}

}  // namespace aiduco
