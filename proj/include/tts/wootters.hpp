#ifndef TTS_WOOTTERS_HPP
#define TTS_WOOTTERS_HPP

#include "tts/common.hpp"

#include <vector>

namespace tts {

// Validated two-qubit density matrix with cached eigendecomposition
// (eigenvalues sorted nonincreasing, negatives in [-1e-10, 0] clipped to 0).
struct TwoQubitDensity {
  Mat4 rho;
  Eigen::Vector4d eigvals;
  Mat4 eigvecs; // columns, matching eigvals order
  int rank = 0;

  static TwoQubitDensity from_matrix(const Mat4 &rho);

  // Subnormalized eigen decomposition matrix: column i = sqrt(l_i)|l_i>,
  // restricted to the nonzero-rank columns.
  MatC eigen_matrix() const;
};

struct OptimalDecomposition {
  std::vector<double> probs;   // length 4, zero-padded
  std::vector<VecC> states;    // normalized two-qubit vectors
  Mat4 u_from_eigen;           // U mapping the eigen decomposition: z = v U^dag
  double e_of = 0.0;

  // Ensemble-averaged entanglement entropy sum_i p_i E(phi_i).
  double average_entropy() const;
};

// rho -> (Y x Y) conj(rho) (Y x Y).
Mat4 spin_flip(const Mat4 &rho);

double concurrence(const TwoQubitDensity &rho);
inline double concurrence(const Mat4 &rho) {
  return concurrence(TwoQubitDensity::from_matrix(rho));
}

double entanglement_of_formation(const TwoQubitDensity &rho);
inline double entanglement_of_formation(const Mat4 &rho) {
  return entanglement_of_formation(TwoQubitDensity::from_matrix(rho));
}

// Takagi-Autonne factorization M = U Sigma U^T of a complex symmetric matrix;
// Sigma sorted nonincreasing.
void takagi_autonne(const MatC &m, MatC &u_tak, VecD &sigma);

// Core of the Wootters pipeline, operating on a subnormalized eigen
// decomposition matrix v (4 x r, columns sorted by nonincreasing norm).
// Produces z = v_pad * u_w_dag with all elements of equal entanglement
// entropy; m is 2 for rank-2 inputs (2x2 Hadamard) and 4 otherwise.
struct WoottersCore {
  MatC z;       // 4 x m optimal decomposition matrix
  MatC u_w_dag; // m x m unitary, z = v_pad * u_w_dag
  int m = 0;
  double c = 0.0; // concurrence (clipped at 0)
};
WoottersCore wootters_core(const MatC &v);

// Wootters' optimal (minimal average entanglement entropy) decomposition.
OptimalDecomposition optimal_decomposition(const TwoQubitDensity &rho);
inline OptimalDecomposition optimal_decomposition(const Mat4 &rho) {
  return optimal_decomposition(TwoQubitDensity::from_matrix(rho));
}

// SVD route from an arbitrary decomposition matrix phi (4 x m, columns
// subnormalized states) to the eigen decomposition matrix v = phi U0^dag.
void decomposition_to_eigen_unitary(const MatC &phi, MatC &u0, MatC &v);

// Average entanglement entropy of a decomposition matrix (columns
// subnormalized two-qubit states).
double decomposition_average_entropy(const MatC &z);

} // namespace tts

#endif
