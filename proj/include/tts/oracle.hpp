#ifndef TTS_ORACLE_HPP
#define TTS_ORACLE_HPP

#include "tts/circuit.hpp"
#include "tts/common.hpp"

#include <cstdint>
#include <vector>

namespace tts {
namespace oracle {

// kron(I_left, local, I_right) for a 2x2 (site) or 4x4 (site, site+1) block.
MatC full_operator(int n, int site, const MatC &local);

// Exact density-matrix evolution of the circuit (unitary and noise layers;
// truncation layers are exact no-ops here). n <= 10 guard.
MatC dense_evolve(const CircuitDescription &circuit, const MatC &rho_in);

// Convenience: dense evolution starting from the circuit's initial bits.
MatC dense_evolve(const CircuitDescription &circuit);

// Trace norm ||rho - sigma||_Tr (sum of absolute eigenvalues of the
// difference); orthogonal pure states give 2.
double trace_distance(const MatC &rho, const MatC &sigma);

double tv_distance(const std::vector<double> &p, const std::vector<double> &q);

// Pure-state identity: sqrt((|psi|^2 + |phi|^2)^2 - 4 |<psi|phi>|^2).
double pure_trace_distance(const VecC &psi, const VecC &phi);

std::vector<double> born_probabilities(const VecC &psi);

// Gradient-free multi-restart minimization of the ensemble-averaged
// entanglement entropy over decompositions v U^dag, U in U(4). Upper bound on
// the entanglement of formation by construction.
double brute_force_eof(const Mat4 &rho, int restarts = 32, int iters = 60,
                       std::uint64_t seed = 0x5eed);

} // namespace oracle
} // namespace tts

#endif
