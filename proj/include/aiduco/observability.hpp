#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "aiduco/mathcore.hpp"

namespace aiduco {

/// Zero-order-hold transition over one sample: e^(A_e(t_k) dt).
Mat12 discrete_transition(const Mat12& a_e, double dt);

/// Phi(k, k0) = T[k-1] * ... * T[k0], with Phi(k0, k0) = I.
/// Throws std::out_of_range if k exceeds the number of transitions.
Mat12 transition_product(std::span<const Mat12> transitions, std::size_t k0, std::size_t k);

/// Discrete observability Gramian over `steps` samples starting at k0:
///   sum_{j=0}^{steps-1} Phi(k0+j, k0)^T C_e^T C_e Phi(k0+j, k0) * dt.
struct GramianWindow {
  std::size_t start = 0;  // k0
  std::size_t steps = 0;  // N = delta / dt
  double dt = 0.0;
  Mat12 gramian = Mat12::Zero();

  double delta() const noexcept { return static_cast<double>(steps) * dt; }
  double start_time() const noexcept { return static_cast<double>(start) * dt; }
};

/// Requires steps >= 1 and T[k0 .. k0+steps-1] to exist. The final
/// transition only feeds Phi past the window, but the requirement keeps the
/// window boundary aligned with the one SlidingGramian uses.
GramianWindow gramian(std::span<const Mat12> transitions, std::size_t k0, std::size_t steps,
                      double dt);

struct GramianSpectrum {
  double min_eig = 0.0;
  double max_eig = 0.0;
};

GramianSpectrum gramian_spectrum(const GramianWindow& window);

/// Windows whose minimum eigenvalue falls below this fraction of the maximum
/// are reported as numerically unobservable.
inline constexpr double kNumericallyZeroRatio = 1e-10;

/// Streaming Gramian over a window sliding one sample at a time.
///
/// Window segments are composed as pairs (Phi, G) with
///   (Phi2, G2) after (Phi1, G1) = (Phi2 Phi1, G1 + Phi1^T G2 Phi1),
/// which is associative. Keeping suffix aggregates of the previous block of
/// `steps` samples and a running prefix of the current block yields every
/// window with O(1) matrix products per sample and O(steps) memory, and
/// gives the same sums as gramian() up to roundoff.
class SlidingGramian {
 public:
  SlidingGramian(std::size_t steps, double dt);

  /// Feeds T[k] for the next k. Returns the window starting at k - steps + 1
  /// once that many transitions have been seen.
  std::optional<GramianWindow> push(const Mat12& transition);

  std::size_t steps() const noexcept { return steps_; }

 private:
  struct Segment {
    Mat12 phi;
    Mat12 g;
  };

  std::size_t steps_;
  double dt_;
  Mat12 q_;
  std::size_t pushed_ = 0;
  std::vector<Mat12> block_;       // transitions of the block being filled
  std::optional<Segment> prefix_;  // aggregate of block_
  std::vector<Segment> suffix_;    // suffix aggregates of the previous block
};

/// Stacked observability matrix with block rows O_i = C_e Phi(k+i, k),
/// i = 0 .. steps-1 (6*steps x 12). Requires T[k .. k+steps-2].
Eigen::MatrixXd observability_matrix(std::span<const Mat12> transitions, std::size_t k,
                                     std::size_t steps);

/// Kalman observable decomposition of an observability matrix.
struct ObservabilityReport {
  double min_eig = std::nan("");  // Gramian spectrum, when a Gramian was analysed
  double max_eig = std::nan("");
  int rank_n2 = 0;
  Eigen::MatrixXd t_o;   // n2 linearly independent rows of O
  Eigen::MatrixXd t_uo;  // orthonormal completion, (12 - n2) rows
  std::vector<int> unobservable_params;  // indices into [dm11 .. dm66]

  /// T = [T_o; T_uo].
  Eigen::MatrixXd transform() const;
  bool numerically_zero() const { return min_eig < kNumericallyZeroRatio * max_eig; }
};

/// Rank by numerical_rank(O, tol_rel). T_o is picked by column-pivoted QR
/// of O^T. A parameter error dm_ii is unobservable when its unit direction
/// projects onto the row space of O with norm below tol_rel.
ObservabilityReport kalman_decompose(const Eigen::Ref<const Eigen::MatrixXd>& o,
                                     double tol_rel = 1e-8);

/// Gramian spectrum plus Kalman decomposition for one window.
ObservabilityReport analyze_window(std::span<const Mat12> transitions, std::size_t k0,
                                   std::size_t steps, double dt, double tol_rel = 1e-8);

}  // namespace aiduco
