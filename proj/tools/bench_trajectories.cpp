// Compares the serial trajectory fan-out against the OpenMP-parallel one on
// the same workload and checks that the results are bit-identical.

#include "tts/circuit_gen.hpp"
#include "tts/trajectory.hpp"

#include <chrono>
#include <cstdio>
#include <thread>

using namespace tts;
using Clock = std::chrono::steady_clock;

namespace {

double run_timed(const char *label,
                 std::vector<TrajectoryRecord> (*f)(const CircuitDescription &,
                                                    const RunOptions &, std::uint64_t,
                                                    int),
                 const CircuitDescription &circuit, const RunOptions &opts,
                 std::uint64_t seed, int n, std::vector<TrajectoryRecord> &out) {
  const auto t0 = Clock::now();
  out = f(circuit, opts, seed, n);
  const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
  std::printf("%-18s %6.3f s  (%.1f traj/s)\n", label, dt, n / dt);
  return dt;
}

} // namespace

int main(int argc, char **argv) {
  const int n_traj = argc > 1 ? std::atoi(argv[1]) : 64;
  const int n_qubits = 10, depth = 20;

  RngStream rng(0xBE7C);
  auto noise = [](int) { return ChannelSpec::named(NoiseModel::Depolarizing, 0.02); };
  CircuitDescription circuit = brickwork_circuit(
      n_qubits, depth, [](RngStream &r) { return haar_two_qubit(r); }, noise, rng);

  RunOptions opts;
  opts.chi = 16;
  opts.strategy = UnravelingStrategy::from_string("locally_optimal");

  const unsigned hw = std::thread::hardware_concurrency();
  std::printf("workload: n=%d depth=%d chi=%d trajectories=%d (hw threads: %u)\n",
              n_qubits, depth, int(opts.chi), n_traj, hw);

  std::vector<TrajectoryRecord> serial, parallel;
  const double ts = run_timed(
      "serial", [](const CircuitDescription &c, const RunOptions &o, std::uint64_t s,
                   int n) { return run_trajectories_serial(c, o, s, n); },
      circuit, opts, 7, n_traj, serial);
  const double tp = run_timed(
      "openmp", [](const CircuitDescription &c, const RunOptions &o, std::uint64_t s,
                   int n) { return run_trajectories(c, o, s, n, 0); },
      circuit, opts, 7, n_traj, parallel);

  bool identical = serial.size() == parallel.size();
  for (size_t i = 0; identical && i < serial.size(); ++i)
    identical = serial[i].eps_bound == parallel[i].eps_bound &&
                serial[i].branch_history == parallel[i].branch_history;
  std::printf("speedup: %.2fx  results identical: %s\n", ts / tp,
              identical ? "yes" : "NO");
  return identical ? 0 : 1;
}
