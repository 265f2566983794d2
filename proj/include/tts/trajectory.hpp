#ifndef TTS_TRAJECTORY_HPP
#define TTS_TRAJECTORY_HPP

#include "tts/circuit.hpp"
#include "tts/mps.hpp"
#include "tts/rng.hpp"
#include "tts/unraveler.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tts {

struct RunOptions {
  Eigen::Index chi = 16;
  UnravelingStrategy strategy;
  double eps_max = 2.0; // in [2, 2L]
  // Debug mode: per-layer error as the exact 2*sqrt(1-|<psi|phi>|^2) against
  // an untruncated shadow copy instead of the 4*sqrt(2*sum eps_k) bound.
  bool exact_error = false;
  // Record the mid-cut entropy after every truncate layer (for aggregates).
  bool record_entropy = false;
};

struct TrajectoryRecord {
  MpsState final_state;
  std::vector<double> per_layer_errors; // one entry per truncate layer
  std::vector<double> midcut_entropy;   // filled when opts.record_entropy
  double eps_bound = 0.0;
  double eps_max = 2.0;
  std::vector<int> branch_history;
  std::uint64_t seed = 0;
};

struct ErrorEstimate {
  std::size_t n = 0;
  double mean = 0.0;   // hat(eps)_N
  double delta = 0.05;
  double buffer = 0.0; // sqrt(eps_max^2/(2N) * ln(1/delta))
  double total = 0.0;  // mean + buffer
  double eps_max = 2.0;
};

// <a|b> of two MPS over the same number of sites.
Complex mps_overlap(const MpsState &a, const MpsState &b);

TrajectoryRecord run_trajectory(const CircuitDescription &circuit, const RunOptions &opts,
                                std::uint64_t seed);
// Variant reusing a caller-owned stream (so follow-up sampling stays on the
// same per-trajectory stream).
TrajectoryRecord run_trajectory_stream(const CircuitDescription &circuit,
                                       const RunOptions &opts, RngStream &rng,
                                       std::uint64_t seed_tag);

// Trajectory fan-out. The parallel version uses OpenMP; per-trajectory seeds
// are derived from (master_seed, index), so results are identical for any
// worker count and to the serial reference.
std::vector<TrajectoryRecord> run_trajectories_serial(const CircuitDescription &circuit,
                                                      const RunOptions &opts,
                                                      std::uint64_t master_seed, int n);
std::vector<TrajectoryRecord> run_trajectories(const CircuitDescription &circuit,
                                               const RunOptions &opts,
                                               std::uint64_t master_seed, int n,
                                               int workers);

ErrorEstimate estimate_error(const std::vector<TrajectoryRecord> &records, double delta);

double concentration_weighted_error(const std::vector<TrajectoryRecord> &records,
                                    double alpha);
// Depolarizing-noise concentration weight min{sqrt(8n) (1-p)^(L-l), 1}.
double depolarizing_weight(int n_qubits, double p, int total_layers, int layer);

std::vector<std::string> sample_outputs(const CircuitDescription &circuit,
                                        const RunOptions &opts, int n,
                                        std::uint64_t master_seed, int workers = 1);

// Lemma-2 estimator: (mean of <O>, certified bound) for ||O||_op <= 1.
std::pair<double, double> estimate_observable(const CircuitDescription &circuit,
                                              const RunOptions &opts, const Mpo &mpo,
                                              int n, double delta, double delta_prime,
                                              std::uint64_t master_seed, int workers = 1);

struct TreeResult {
  MatC rho;                       // exact branch mixture (dense, n <= 10)
  double expected_eps_bound = 0.0; // sum over leaves of p * eps_bound
  std::size_t leaves = 0;
};

// Exhaustive Kraus-tree enumeration (branch guard 10^6).
TreeResult enumerate_kraus_tree(const CircuitDescription &circuit, const RunOptions &opts);

} // namespace tts

#endif
