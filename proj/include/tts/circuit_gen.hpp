#ifndef TTS_CIRCUIT_GEN_HPP
#define TTS_CIRCUIT_GEN_HPP

#include "tts/circuit.hpp"
#include "tts/lindblad.hpp"
#include "tts/rng.hpp"
#include "tts/unraveler.hpp"

#include <functional>

namespace tts {

// Haar-distributed n x n unitary via QR of a complex Ginibre matrix with the
// R-diagonal phase correction.
MatC haar_unitary(int n, RngStream &rng);

Mat4 haar_two_qubit(RngStream &rng);

// Random Hermitian with N(0,1) real and imaginary entry parts, Hermitized as
// (A + A^dag)/2.
MatC random_hermitian(int n, RngStream &rng);

// U(H, theta) = exp(-i theta H) with H random Hermitian.
Mat4 low_entangling_gate(RngStream &rng, double theta);

// (U1 (x) U2) exp(-i theta H) with Haar single-qubit locals.
Mat4 low_entangling_with_local(RngStream &rng, double theta);

using GateSource = std::function<Mat4(RngStream &)>;

// Alternating odd/even brickwork with per-gate noise on the touched qubits
// and truncation layers per layering mode.
CircuitDescription brickwork_circuit(int n, int depth, const GateSource &gates,
                                     const std::function<ChannelSpec(int)> &noise,
                                     RngStream &rng,
                                     LayeringMode mode = LayeringMode::Global);

// H = sum_i Y_i Y_{i+1} + 0.35 X_i + 0.35 Y_i + 0.5 Z_i, open boundaries.
// swap_xy switches Pauli X and Y (basis-sensitivity experiment variant).
LindbladModel heisenberg_model(int n, double dt, bool swap_xy = false);

} // namespace tts

#endif
