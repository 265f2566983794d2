#include <doctest.h>

#include "tts/circuit_gen.hpp"
#include "tts/oracle.hpp"
#include "tts/trajectory.hpp"

#include <cmath>

using namespace tts;

namespace {

CircuitDescription noisy_brickwork(int n, int depth, double rate, std::uint64_t seed,
                                   Eigen::Index /*chi unused here*/ = 0) {
  RngStream rng(seed);
  auto noise = [rate](int) {
    return ChannelSpec::named(NoiseModel::Depolarizing, rate);
  };
  return brickwork_circuit(n, depth, [](RngStream &r) { return haar_two_qubit(r); },
                           noise, rng);
}

} // namespace

TEST_CASE("mps_overlap matches the dense inner product") {
  RngStream rng(51);
  VecC a(16), b(16);
  for (int i = 0; i < 16; ++i) {
    a(i) = Complex(rng.normal(), rng.normal());
    b(i) = Complex(rng.normal(), rng.normal());
  }
  a /= a.norm();
  b /= b.norm();
  MpsState ma = MpsState::from_dense(a);
  MpsState mb = MpsState::from_dense(b);
  CHECK(std::abs(mps_overlap(ma, mb) - (a.adjoint() * b)(0)) < 1e-10);
  CHECK(std::abs(mps_overlap(ma, ma) - 1.0) < 1e-10);
}

TEST_CASE("noise-free trajectory at full chi matches dense evolution") {
  RngStream rng(52);
  const int n = 4;
  CircuitDescription circuit;
  circuit.n_qubits = n;
  circuit.initial_bits = "0101";
  UnitaryLayer ul;
  ul.gates.push_back({0, haar_two_qubit(rng)});
  ul.gates.push_back({2, haar_two_qubit(rng)});
  circuit.layers.push_back(ul);
  UnitaryLayer ul2;
  ul2.gates.push_back({1, haar_two_qubit(rng)});
  circuit.layers.push_back(ul2);
  circuit.layers.push_back(TruncateLayer{});

  RunOptions opts;
  opts.chi = 4;
  TrajectoryRecord rec = run_trajectory(circuit, opts, 7);
  CHECK(rec.eps_bound == doctest::Approx(0.0).epsilon(1e-12));

  VecC psi = to_dense(rec.final_state);
  MatC rho = oracle::dense_evolve(circuit);
  CHECK((rho - psi * psi.adjoint()).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("per-layer error bound tracks truncation and is clipped at eps_max") {
  CircuitDescription circuit = noisy_brickwork(4, 6, 0.1, 99);
  RunOptions opts;
  opts.chi = 1; // heavy truncation
  TrajectoryRecord rec = run_trajectory(circuit, opts, 3);
  CHECK(!rec.per_layer_errors.empty());
  for (double e : rec.per_layer_errors) {
    CHECK(e >= 0.0);
    CHECK(e <= 2.0 + 1e-12); // each layer error is a trace-distance bound
  }
  CHECK(rec.eps_bound <= rec.eps_max + 1e-12);
  CHECK(rec.eps_bound >= 0.0);
}

TEST_CASE("exact-error debug mode lower-bounds the certified estimate") {
  CircuitDescription circuit = noisy_brickwork(4, 4, 0.05, 100);
  RunOptions opts;
  opts.chi = 2;
  RunOptions exact = opts;
  exact.exact_error = true;
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    TrajectoryRecord bound = run_trajectory(circuit, opts, seed);
    TrajectoryRecord truth = run_trajectory(circuit, exact, seed);
    REQUIRE(bound.per_layer_errors.size() == truth.per_layer_errors.size());
    CHECK(truth.eps_bound <= bound.eps_bound + 1e-9);
  }
}

TEST_CASE("parallel fan-out equals the serial reference for any worker count") {
  CircuitDescription circuit = noisy_brickwork(4, 4, 0.05, 101);
  RunOptions opts;
  opts.chi = 2;
  auto serial = run_trajectories_serial(circuit, opts, 1234, 12);
  for (int workers : {1, 2, 4}) {
    auto par = run_trajectories(circuit, opts, 1234, 12, workers);
    REQUIRE(par.size() == serial.size());
    for (size_t i = 0; i < par.size(); ++i) {
      CHECK(par[i].seed == serial[i].seed);
      CHECK(par[i].eps_bound == serial[i].eps_bound);
      CHECK(par[i].branch_history == serial[i].branch_history);
      CHECK(std::abs(mps_overlap(par[i].final_state, serial[i].final_state)) ==
            doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("estimate_error adds the Hoeffding buffer") {
  std::vector<TrajectoryRecord> recs(4);
  recs[0].eps_bound = 0.1;
  recs[1].eps_bound = 0.2;
  recs[2].eps_bound = 0.3;
  recs[3].eps_bound = 0.4;
  for (auto &r : recs) r.eps_max = 2.0;
  ErrorEstimate est = estimate_error(recs, 0.05);
  CHECK(est.n == 4);
  CHECK(est.mean == doctest::Approx(0.25).epsilon(1e-12));
  const double buffer = std::sqrt(4.0 / (2.0 * 4) * std::log(1.0 / 0.05));
  CHECK(est.buffer == doctest::Approx(buffer).epsilon(1e-12));
  CHECK(est.total == doctest::Approx(0.25 + buffer).epsilon(1e-12));
}

TEST_CASE("depolarizing concentration weight caps at one and decays with depth") {
  const int n = 8;
  const double p = 0.1;
  CHECK(depolarizing_weight(n, p, 10, 10) == doctest::Approx(1.0));
  const double w0 = depolarizing_weight(n, p, 100, 0);
  CHECK(w0 == doctest::Approx(std::min(std::sqrt(8.0 * n) * std::pow(1 - p, 100), 1.0)));
  CHECK(depolarizing_weight(n, p, 100, 10) <= depolarizing_weight(n, p, 100, 50) + 1e-15);
}

TEST_CASE("tree enumeration at full chi reproduces the dense mixture exactly") {
  CircuitDescription circuit = noisy_brickwork(3, 3, 0.15, 103);
  RunOptions opts;
  opts.chi = 2; // 2^{floor(3/2)} is exact for n = 3
  TreeResult tree = enumerate_kraus_tree(circuit, opts);
  MatC rho = oracle::dense_evolve(circuit);
  CHECK(std::abs(tree.rho.trace() - 1.0) < 1e-10);
  CHECK((tree.rho - rho).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(tree.expected_eps_bound < 1e-10);
  CHECK(tree.leaves > 1);
}

TEST_CASE("tree enumeration bound dominates the true trace distance") {
  for (std::uint64_t seed : {201ull, 202ull, 203ull}) {
    CircuitDescription circuit = noisy_brickwork(3, 3, 0.1, seed);
    RunOptions opts;
    opts.chi = 1;
    TreeResult tree = enumerate_kraus_tree(circuit, opts);
    MatC rho = oracle::dense_evolve(circuit);
    const double dist = oracle::trace_distance(rho, tree.rho);
    CHECK(dist <= tree.expected_eps_bound + 1e-9);
  }
}

TEST_CASE("sampled bitstrings follow the trajectory-mixture distribution") {
  CircuitDescription circuit = noisy_brickwork(3, 2, 0.1, 104);
  RunOptions opts;
  opts.chi = 2; // exact: bound contributes nothing
  auto strings = sample_outputs(circuit, opts, 4000, 555);
  std::vector<double> counts(8, 0.0);
  for (const auto &s : strings) {
    int idx = 0;
    for (char c : s) idx = idx * 2 + (c - '0');
    counts[idx] += 1.0 / strings.size();
  }
  MatC rho = oracle::dense_evolve(circuit);
  std::vector<double> born(8);
  for (int i = 0; i < 8; ++i) born[i] = rho(i, i).real();
  CHECK(oracle::tv_distance(counts, born) < 0.05);
}

TEST_CASE("observable estimate comes with a dominating certified bound") {
  CircuitDescription circuit = noisy_brickwork(3, 2, 0.1, 105);
  RunOptions opts;
  opts.chi = 2;
  Mpo z1 = Mpo::product(3, {{1, pauli_z()}});
  auto [mean, bound] = estimate_observable(circuit, opts, z1, 400, 0.05, 0.05, 777);
  MatC rho = oracle::dense_evolve(circuit);
  MatC obs = oracle::full_operator(3, 1, pauli_z());
  const double truth = (rho * obs).trace().real();
  CHECK(std::abs(mean - truth) <= bound + 1e-12);
  CHECK(bound > 0.0);
}

TEST_CASE("sample_outputs is independent of worker count") {
  CircuitDescription circuit = noisy_brickwork(3, 2, 0.1, 106);
  RunOptions opts;
  opts.chi = 2;
  auto one = sample_outputs(circuit, opts, 50, 9000, 1);
  auto four = sample_outputs(circuit, opts, 50, 9000, 4);
  CHECK(one == four);
}
