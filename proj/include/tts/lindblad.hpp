#ifndef TTS_LINDBLAD_HPP
#define TTS_LINDBLAD_HPP

#include "tts/circuit.hpp"
#include "tts/common.hpp"

#include <vector>

namespace tts {

struct JumpTerm {
  int site = 0;
  Mat2 c;            // jump operator
  double gamma = 0.0;
};

// Time-independent 1D Lindbladian: nearest-neighbor two-site Hamiltonian
// terms, on-site fields, and single-site jump operators.
struct LindbladModel {
  int n_qubits = 0;
  std::vector<Mat4> two_site_terms; // h2[i] acts on (i, i+1); size n-1
  std::vector<Mat2> one_site_terms; // h1[i]; size n
  std::vector<JumpTerm> jumps;
  double dt = 0.01;

  void validate() const;
};

// Vectorized jump superoperator (row-major vec(rho), rho_ij at index 2i+j):
// L = gamma (c (x) c* - 1/2 c^dag c (x) I - 1/2 I (x) c^T c*).
Mat4 jump_generator(const Mat2 &c, double gamma);

// Column/row regrouping between a superoperator S (acting on vec(rho)) and
// the unnormalized Choi matrix R = sum_i |K_i>><<K_i|: R[(i,j),(k,l)] =
// S[(i,k),(j,l)].
Mat4 reshape_choi(const Mat4 &superop);

// Exact Kraus set of e^{L dt} via eigendecomposition of the reshaped Choi.
KrausChannel jump_channel_kraus(const Mat2 &c, double gamma, double dt);

// First-order Trotter brickwork: odd-pair unitaries, half-step jump channels,
// even-pair unitaries, half-step jump channels, truncation per layering mode.
// `steps` repeats the pattern.
CircuitDescription trotterize(const LindbladModel &model, int steps,
                              LayeringMode mode = LayeringMode::Global);

// Pair Hamiltonians H_{i,i+1} combining h2 with the one-site fields; boundary
// fields are weighted so the pair sum reproduces the full Hamiltonian.
std::vector<Mat4> pair_hamiltonians(const LindbladModel &model);

} // namespace tts

#endif
