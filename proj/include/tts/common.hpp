#ifndef TTS_COMMON_HPP
#define TTS_COMMON_HPP

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace tts {

using Complex = std::complex<double>;
using MatC = Eigen::MatrixXcd;
using VecC = Eigen::VectorXcd;
using VecD = Eigen::VectorXd;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;

// Singular values below this threshold are treated as exactly zero for rank
// decisions, entropy sums and zero-operator dropping.
constexpr double kSingularZero = 1e-14;

inline Mat2 pauli_i() { return Mat2::Identity(); }

inline Mat2 pauli_x() {
  Mat2 m;
  m << 0, 1, 1, 0;
  return m;
}

inline Mat2 pauli_y() {
  Mat2 m;
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

inline Mat2 pauli_z() {
  Mat2 m;
  m << 1, 0, 0, -1;
  return m;
}

inline Mat2 pauli_by_name(char c) {
  switch (c) {
  case 'I': return pauli_i();
  case 'X': return pauli_x();
  case 'Y': return pauli_y();
  case 'Z': return pauli_z();
  default: throw std::invalid_argument(std::string("unknown Pauli label: ") + c);
  }
}

inline MatC kron(const MatC &a, const MatC &b) {
  MatC out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Shannon entropy (base 2) of a probability vector; 0*log(0) := 0.
inline double shannon_entropy(const std::vector<double> &p) {
  double h = 0.0;
  for (double x : p) {
    if (x > kSingularZero) h -= x * std::log2(x);
  }
  return h;
}

// Binary entropy h(x) = -x log2 x - (1-x) log2 (1-x).
inline double binary_entropy(double x) {
  double h = 0.0;
  if (x > kSingularZero) h -= x * std::log2(x);
  if (1.0 - x > kSingularZero) h -= (1.0 - x) * std::log2(1.0 - x);
  return h;
}

inline bool is_unitary(const MatC &u, double tol = 1e-10) {
  if (u.rows() != u.cols()) return false;
  return (u.adjoint() * u - MatC::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() < tol;
}

// Entanglement entropy (bits) of a two-qubit pure state across the 1:1 cut.
double two_qubit_entropy(const VecC &psi);

// Multiply each column of u by a phase so its first entry with modulus above
// tol is real and positive. Makes unitary outputs deterministic for tests.
MatC fix_column_phases(const MatC &u, double tol = 1e-12);

} // namespace tts

#endif
