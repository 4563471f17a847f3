#include "floquet/probe.hpp"

#include <Eigen/Dense>

#include "floquet/errors.hpp"

namespace floq {

ProbeOperator::ProbeOperator(const Matrix& v) : matrix(v) {
  if (v.rows() != v.cols() || v.rows() < 1) throw InvalidParameter("probe must be square");
  if (!is_hermitian(v, 1e-12 * std::max(max_abs(v), 1.0)))
    throw InvalidParameter("probe operator must be Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(v);
  eigenvalues = es.eigenvalues();
  eigenvectors = es.eigenvectors();
  norm = eigenvalues.cwiseAbs().sum();
}

}  // namespace floq
