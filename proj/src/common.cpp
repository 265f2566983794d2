#include "tts/common.hpp"

#include <Eigen/SVD>

namespace tts {

double two_qubit_entropy(const VecC &psi) {
  if (psi.size() != 4) throw std::invalid_argument("two_qubit_entropy: need a 4-vector");
  Mat2 coeff;
  coeff << psi(0), psi(1), psi(2), psi(3); // rows: first qubit, cols: second
  Eigen::JacobiSVD<MatC> svd(coeff);
  std::vector<double> p;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    const double s = svd.singularValues()(i);
    if (s > kSingularZero) p.push_back(s * s);
  }
  return shannon_entropy(p);
}

MatC fix_column_phases(const MatC &u, double tol) {
  MatC out = u;
  for (Eigen::Index j = 0; j < out.cols(); ++j) {
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      const Complex v = out(i, j);
      if (std::abs(v) > tol) {
        out.col(j) *= std::conj(v) / std::abs(v);
        break;
      }
    }
  }
  return out;
}

} // namespace tts
