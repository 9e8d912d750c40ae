#include "aiduco/mathcore.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace aiduco {

Mat3 skew(const Vec3& a) {
  Mat3 j;
  // clang-format off
  j <<     0.0, -a.z(),  a.y(),
         a.z(),    0.0, -a.x(),
        -a.y(),  a.x(),    0.0;
  // clang-format on
  return j;
}

Mat6 ad_operator(const Vec6& v) {
  const Mat3 j_nu = skew(v.head<3>());
  const Mat3 j_omega = skew(v.tail<3>());
  Mat6 out = Mat6::Zero();
  out.topLeftCorner<3, 3>() = j_omega;
  out.bottomLeftCorner<3, 3>() = j_nu;
  out.bottomRightCorner<3, 3>() = j_omega;
  return out;
}

namespace {

constexpr int kMaxSweeps = 100;

// Orders values (and the matching columns) ascending or descending.
void sort_pairs(Eigen::VectorXd& values, Eigen::MatrixXd& vectors, bool ascending) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(values.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return ascending ? values(i) < values(j) : values(i) > values(j);
  });
  Eigen::VectorXd sorted_values(values.size());
  Eigen::MatrixXd sorted_vectors(vectors.rows(), vectors.cols());
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto idx = static_cast<Eigen::Index>(k);
    sorted_values(idx) = values(order[k]);
    sorted_vectors.col(idx) = vectors.col(order[k]);
  }
  values = std::move(sorted_values);
  vectors = std::move(sorted_vectors);
}

}  // namespace

SymEigResult sym_eig(const Eigen::Ref<const Eigen::MatrixXd>& s) {
  if (s.rows() != s.cols()) {
    throw std::invalid_argument("sym_eig: matrix must be square");
  }
  const Eigen::Index n = s.rows();
  Eigen::MatrixXd a = 0.5 * (s + s.transpose());
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);

  const double scale = a.norm();
  for (int sweep = 0; sweep < kMaxSweeps && scale > 0.0; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        off += a(p, q) * a(p, q);
      }
    }
    if (std::sqrt(off) <= 1e-17 * scale) {
      break;
    }
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) {
          continue;
        }
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        // A <- R^T A R with R the (p, q) plane rotation.
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(k, q) = sn * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - sn * aqk;
          a(q, k) = sn * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - sn * vkq;
          v(k, q) = sn * vkp + c * vkq;
        }
      }
    }
  }

  SymEigResult out{a.diagonal(), std::move(v)};
  sort_pairs(out.values, out.vectors, /*ascending=*/true);
  return out;
}

SvdResult jacobi_svd(const Eigen::Ref<const Eigen::MatrixXd>& a) {
  const Eigen::Index n = a.cols();
  // Wide input is padded with zero rows; this leaves the singular values
  // and right singular vectors unchanged.
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(std::max(a.rows(), n), n);
  u.topRows(a.rows()) = a;
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);

  constexpr double kEps = 1e-15;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (Eigen::Index i = 0; i < n - 1; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) {
        const double alpha = u.col(i).squaredNorm();
        const double beta = u.col(j).squaredNorm();
        const double gamma = u.col(i).dot(u.col(j));
        if (gamma == 0.0 || std::abs(gamma) <= kEps * std::sqrt(alpha * beta)) {
          continue;
        }
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t =
            (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        const Eigen::VectorXd ui = u.col(i);
        u.col(i) = c * ui - s * u.col(j);
        u.col(j) = s * ui + c * u.col(j);
        const Eigen::VectorXd vi = v.col(i);
        v.col(i) = c * vi - s * v.col(j);
        v.col(j) = s * vi + c * v.col(j);
      }
    }
    if (!rotated) {
      break;
    }
  }

  SvdResult out{u.colwise().norm().transpose(), std::move(v)};
  sort_pairs(out.singular_values, out.v, /*ascending=*/false);
  return out;
}

int numerical_rank(const Eigen::Ref<const Eigen::MatrixXd>& a, double tol_rel) {
  if (!(tol_rel > 0.0)) {
    throw std::invalid_argument("numerical_rank: tol_rel must be positive");
  }
  if (a.size() == 0) {
    return 0;
  }
  const Eigen::VectorXd sv = jacobi_svd(a).singular_values;
  const double sigma_max = sv(0);
  if (sigma_max == 0.0) {
    return 0;
  }
  return static_cast<int>((sv.array() > tol_rel * sigma_max).count());
}

}  // namespace aiduco
