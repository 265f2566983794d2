#include "tts/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tts {

void CircuitDescription::validate() const {
  if (n_qubits < 1) throw std::invalid_argument("circuit: need at least one qubit");
  if (static_cast<int>(initial_bits.size()) != n_qubits)
    throw std::invalid_argument("circuit: initial bits length mismatch");
  for (const Layer &layer : layers) {
    if (const auto *ul = std::get_if<UnitaryLayer>(&layer)) {
      std::vector<bool> used(n_qubits, false);
      for (const GateOp &g : ul->gates) {
        if (g.site < 0 || g.site + 1 >= n_qubits)
          throw std::invalid_argument("circuit: gate site out of range");
        if (used[g.site] || used[g.site + 1])
          throw std::invalid_argument("circuit: gates in a layer must act on disjoint pairs");
        used[g.site] = used[g.site + 1] = true;
      }
    } else if (const auto *nl = std::get_if<NoiseLayer>(&layer)) {
      for (const auto &[site, spec] : nl->channels) {
        if (site < 0 || site >= n_qubits)
          throw std::invalid_argument("circuit: noise site out of range");
        validate_tp(spec.base);
      }
    } else if (const auto *tl = std::get_if<TruncateLayer>(&layer)) {
      if (tl->bonds) {
        for (int b : *tl->bonds)
          if (b < 0 || b >= n_qubits - 1)
            throw std::invalid_argument("circuit: truncate bond out of range");
      }
      if (tl->chi && *tl->chi < 1) throw std::invalid_argument("circuit: chi < 1");
    }
  }
}

int CircuitDescription::count_noise_sites() const {
  int c = 0;
  for (const Layer &layer : layers)
    if (const auto *nl = std::get_if<NoiseLayer>(&layer)) c += static_cast<int>(nl->channels.size());
  return c;
}

Complex mps_overlap(const MpsState &a, const MpsState &b) {
  if (a.n_qubits() != b.n_qubits()) throw std::invalid_argument("mps_overlap: size mismatch");
  MatC env = MatC::Identity(1, 1);
  for (int i = 0; i < a.n_qubits(); ++i) {
    const SiteTensor &ta = a.site(i);
    const SiteTensor &tb = b.site(i);
    MatC next = MatC::Zero(ta.right_dim(), tb.right_dim());
    for (int s = 0; s < 2; ++s) next += ta.a[s].adjoint() * env * tb.a[s];
    env = std::move(next);
  }
  return env(0, 0);
}

namespace {

double clip_eps_bound(double total, double eps_max) {
  return total <= eps_max - 2.0 ? total : eps_max;
}

// Applies one truncate layer, returning the per-layer approximation error.
double apply_truncate_layer(MpsState &state, const TruncateLayer &tl,
                            const RunOptions &opts) {
  const Eigen::Index chi = tl.chi.value_or(opts.chi);
  if (opts.exact_error) {
    MpsState before = state; // untruncated shadow copy
    truncate(state, chi, tl.bonds);
    before.normalize();
    const double f = std::abs(mps_overlap(before, state));
    return 2.0 * std::sqrt(std::max(0.0, 1.0 - f * f));
  }
  TruncationReport report = truncate(state, chi, tl.bonds);
  const double eps = 4.0 * std::sqrt(2.0 * report.total_discarded());
  return std::min(eps, 2.0);
}

} // namespace

TrajectoryRecord run_trajectory_stream(const CircuitDescription &circuit,
                                       const RunOptions &opts, RngStream &rng,
                                       std::uint64_t seed_tag) {
  circuit.validate();
  if (opts.chi < 1) throw std::invalid_argument("run_trajectory: chi must be >= 1");
  if (opts.eps_max < 2.0) throw std::invalid_argument("run_trajectory: eps_max must be >= 2");

  TrajectoryRecord rec;
  rec.seed = seed_tag;
  rec.eps_max = opts.eps_max;

  MpsState state = MpsState::product_state(circuit.n_qubits, circuit.initial_bits);
  if (!circuit.qubit_ordering.empty()) state.set_qubit_ordering(circuit.qubit_ordering);

  for (const Layer &layer : circuit.layers) {
    if (const auto *ul = std::get_if<UnitaryLayer>(&layer)) {
      for (const GateOp &g : ul->gates) apply_two_qubit_gate(state, g.gate, g.site);
    } else if (const auto *nl = std::get_if<NoiseLayer>(&layer)) {
      for (const auto &[site, spec] : nl->channels) {
        UnravelResult r = unravel_channel(state, spec, site, opts.strategy, rng);
        rec.branch_history.push_back(r.branch_index);
      }
    } else if (const auto *tl = std::get_if<TruncateLayer>(&layer)) {
      rec.per_layer_errors.push_back(apply_truncate_layer(state, *tl, opts));
      if (opts.record_entropy)
        rec.midcut_entropy.push_back(entropy_at_bond(state, (circuit.n_qubits - 1) / 2));
    }
  }

  double total = 0.0;
  for (double e : rec.per_layer_errors) total += e;
  rec.eps_bound = clip_eps_bound(total, opts.eps_max);
  rec.final_state = std::move(state);
  return rec;
}

TrajectoryRecord run_trajectory(const CircuitDescription &circuit, const RunOptions &opts,
                                std::uint64_t seed) {
  RngStream rng(seed);
  return run_trajectory_stream(circuit, opts, rng, seed);
}

std::vector<TrajectoryRecord> run_trajectories_serial(const CircuitDescription &circuit,
                                                      const RunOptions &opts,
                                                      std::uint64_t master_seed, int n) {
  std::vector<TrajectoryRecord> out(n);
  for (int i = 0; i < n; ++i) {
    RngStream rng = RngStream::for_trajectory(master_seed, static_cast<std::uint64_t>(i));
    out[i] = run_trajectory_stream(circuit, opts, rng, derive_stream_seed(master_seed, i));
  }
  return out;
}

std::vector<TrajectoryRecord> run_trajectories(const CircuitDescription &circuit,
                                               const RunOptions &opts,
                                               std::uint64_t master_seed, int n,
                                               int workers) {
  if (workers <= 1) return run_trajectories_serial(circuit, opts, master_seed, n);
  std::vector<TrajectoryRecord> out(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(workers)
#endif
  for (int i = 0; i < n; ++i) {
    RngStream rng = RngStream::for_trajectory(master_seed, static_cast<std::uint64_t>(i));
    out[i] = run_trajectory_stream(circuit, opts, rng, derive_stream_seed(master_seed, i));
  }
  return out;
}

ErrorEstimate estimate_error(const std::vector<TrajectoryRecord> &records, double delta) {
  if (records.empty()) throw std::invalid_argument("estimate_error: no records");
  if (delta <= 0.0 || delta >= 1.0) throw std::invalid_argument("estimate_error: delta in (0,1)");
  ErrorEstimate est;
  est.n = records.size();
  est.delta = delta;
  est.eps_max = records.front().eps_max;
  double sum = 0.0;
  for (const TrajectoryRecord &r : records) {
    if (r.eps_max != est.eps_max)
      throw std::invalid_argument("estimate_error: records disagree on eps_max");
    sum += r.eps_bound;
  }
  est.mean = sum / static_cast<double>(est.n);
  est.buffer = std::sqrt(est.eps_max * est.eps_max / (2.0 * static_cast<double>(est.n)) *
                         std::log(1.0 / delta));
  est.total = est.mean + est.buffer;
  return est;
}

double concentration_weighted_error(const std::vector<TrajectoryRecord> &records,
                                    double alpha) {
  if (alpha <= 0.0 || alpha > 1.0)
    throw std::invalid_argument("concentration_weighted_error: alpha in (0,1]");
  if (records.empty()) throw std::invalid_argument("concentration_weighted_error: no records");
  double sum = 0.0;
  for (const TrajectoryRecord &r : records) {
    const int big_l = static_cast<int>(r.per_layer_errors.size());
    double acc = 0.0;
    for (int l = 1; l <= big_l; ++l)
      acc += std::pow(alpha, big_l - l) * r.per_layer_errors[l - 1];
    sum += acc;
  }
  return sum / static_cast<double>(records.size());
}

double depolarizing_weight(int n_qubits, double p, int total_layers, int layer) {
  const double w = std::sqrt(8.0 * n_qubits) * std::pow(1.0 - p, total_layers - layer);
  return std::min(w, 1.0);
}

std::vector<std::string> sample_outputs(const CircuitDescription &circuit,
                                        const RunOptions &opts, int n,
                                        std::uint64_t master_seed, int workers) {
  std::vector<std::string> out(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(std::max(workers, 1)) if (workers > 1)
#endif
  for (int i = 0; i < n; ++i) {
    RngStream rng = RngStream::for_trajectory(master_seed, static_cast<std::uint64_t>(i));
    TrajectoryRecord rec =
        run_trajectory_stream(circuit, opts, rng, derive_stream_seed(master_seed, i));
    out[i] = sample_bitstring(rec.final_state, rng);
  }
  return out;
}

std::pair<double, double> estimate_observable(const CircuitDescription &circuit,
                                              const RunOptions &opts, const Mpo &mpo,
                                              int n, double delta, double delta_prime,
                                              std::uint64_t master_seed, int workers) {
  std::vector<TrajectoryRecord> records = run_trajectories(circuit, opts, master_seed, n, workers);
  double sum = 0.0;
  for (TrajectoryRecord &r : records) sum += expectation_mpo(r.final_state, mpo).real();
  const double estimate = sum / static_cast<double>(n);
  ErrorEstimate est = estimate_error(records, delta);
  const double stat = std::sqrt(2.0 / static_cast<double>(n) * std::log(2.0 / delta_prime));
  return {estimate, est.total + stat};
}

namespace {

struct TreeAccumulator {
  MatC rho;
  double expected_eps = 0.0;
  std::size_t leaves = 0;
};

constexpr std::size_t kTreeGuard = 1000000;

void tree_recurse(const CircuitDescription &circuit, const RunOptions &opts,
                  MpsState state, double prob, std::size_t layer_idx,
                  std::size_t noise_idx, std::vector<double> layer_errors,
                  TreeAccumulator &acc) {
  if (prob < 1e-15) return;
  for (std::size_t li = layer_idx; li < circuit.layers.size(); ++li) {
    const Layer &layer = circuit.layers[li];
    if (const auto *ul = std::get_if<UnitaryLayer>(&layer)) {
      if (li == layer_idx && noise_idx > 0) {
        // noise_idx only applies to noise layers
      }
      for (const GateOp &g : ul->gates) apply_two_qubit_gate(state, g.gate, g.site);
    } else if (const auto *nl = std::get_if<NoiseLayer>(&layer)) {
      std::size_t start = (li == layer_idx) ? noise_idx : 0;
      for (std::size_t ci = start; ci < nl->channels.size(); ++ci) {
        const auto &[site, spec] = nl->channels[ci];
        KrausChannel kraus = resolve_kraus_set(state, spec, site, opts.strategy);
        // Branch: recurse on all but the last nonzero branch.
        state.move_center(site);
        std::vector<double> probs(kraus.size());
        for (int k = 0; k < kraus.size(); ++k) {
          MpsState branch = state;
          const double p = apply_single_qubit_operator(branch, kraus.ops[k], site);
          probs[k] = p;
          if (p < 1e-15) continue;
          branch.normalize();
          tree_recurse(circuit, opts, std::move(branch), prob * p, li, ci + 1,
                       layer_errors, acc);
        }
        return; // children handled the remainder of the circuit
      }
      noise_idx = 0;
    } else if (const auto *tl = std::get_if<TruncateLayer>(&layer)) {
      layer_errors.push_back(apply_truncate_layer(state, *tl, opts));
    }
  }

  // Leaf: accumulate the mixture and the expected clipped error.
  ++acc.leaves;
  if (acc.leaves > kTreeGuard)
    throw std::runtime_error("enumerate_kraus_tree: branch guard (10^6) exceeded");
  VecC psi = to_dense(state);
  acc.rho += prob * (psi * psi.adjoint());
  double total = 0.0;
  for (double e : layer_errors) total += e;
  acc.expected_eps += prob * clip_eps_bound(total, opts.eps_max);
}

} // namespace

TreeResult enumerate_kraus_tree(const CircuitDescription &circuit, const RunOptions &opts) {
  circuit.validate();
  if (circuit.n_qubits > 10)
    throw std::invalid_argument("enumerate_kraus_tree: dense mixture limited to n <= 10");
  TreeAccumulator acc;
  const Eigen::Index dim = Eigen::Index(1) << circuit.n_qubits;
  acc.rho = MatC::Zero(dim, dim);
  MpsState init = MpsState::product_state(circuit.n_qubits, circuit.initial_bits);
  tree_recurse(circuit, opts, std::move(init), 1.0, 0, 0, {}, acc);
  return TreeResult{std::move(acc.rho), acc.expected_eps, acc.leaves};
}

} // namespace tts
