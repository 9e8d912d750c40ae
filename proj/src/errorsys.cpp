#include "aiduco/errorsys.hpp"

namespace aiduco {

Mat6x12 error_output_matrix() {
  Mat6x12 c = Mat6x12::Zero();
  c.rightCols<6>().setIdentity();
  return c;
}

Mat6 d_matrix(const Vec6& m_hat, const BodyVelocity& v, const Vec6& tau) {
  require_positive_mass(m_hat, "d_matrix");
  const Vec6 accel = (tau - ad_operator(v) * m_hat.cwiseProduct(v)).cwiseQuotient(m_hat);
  return accel.asDiagonal();
}

Mat6 s_matrix(const BodyVelocity& v) { return -ad_operator(v) * v.asDiagonal(); }

ErrorSystemMatrices assemble_error_system(const MassParams& m_true, const IdentifierState& st,
                                          const IdentifierGains& g, const BodyVelocity& v,
                                          const Vec6& tau, double t) {
  const Mat6 d = d_matrix(st.m_hat, v, tau);
  const Mat6 s = s_matrix(v);

  ErrorSystemMatrices out;
  out.t = t;
  out.c_e = error_output_matrix();
  out.a_e.setZero();
  out.a_e.topRightCorner<6, 6>() = g.adaptation.asDiagonal() * (d - s.transpose());
  out.a_e.bottomLeftCorner<6, 6>() = m_true.values().cwiseInverse().asDiagonal() * (s - d);
  out.a_e.bottomRightCorner<6, 6>() = -Mat6(g.observer.asDiagonal());
  return out;
}

}  // namespace aiduco
