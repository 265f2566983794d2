#include <doctest.h>

#include "tts/circuit_gen.hpp"
#include "tts/oracle.hpp"

#include <cmath>
#include <variant>

using namespace tts;

TEST_CASE("haar_unitary returns deterministic unitaries") {
  RngStream rng(71);
  for (int n : {2, 4, 7}) {
    MatC u = haar_unitary(n, rng);
    CHECK(u.rows() == n);
    CHECK(is_unitary(u, 1e-10));
  }
  RngStream a(5), b(5);
  CHECK((haar_unitary(4, a) - haar_unitary(4, b)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("haar_unitary spectrum covers the full phase circle") {
  // Crude invariance check: eigenphases of Haar unitaries should not cluster.
  RngStream rng(72);
  int quadrant[4] = {0, 0, 0, 0};
  for (int rep = 0; rep < 200; ++rep) {
    MatC u = haar_unitary(2, rng);
    Eigen::ComplexEigenSolver<MatC> es(u);
    for (int i = 0; i < 2; ++i) {
      double ang = std::arg(es.eigenvalues()(i));
      quadrant[int((ang + M_PI) / (M_PI / 2.0)) % 4]++;
    }
  }
  for (int q = 0; q < 4; ++q) CHECK(quadrant[q] > 40);
}

TEST_CASE("random_hermitian is Hermitian; low-entangling gates are unitary") {
  RngStream rng(73);
  MatC h = random_hermitian(4, rng);
  CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(is_unitary(MatC(low_entangling_gate(rng, 0.05)), 1e-10));
  CHECK(is_unitary(MatC(low_entangling_with_local(rng, 0.05)), 1e-10));
  // theta -> 0 approaches the identity up to the local factor.
  Mat4 u = low_entangling_gate(rng, 1e-8);
  CHECK((MatC(u) - MatC::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("brickwork circuit alternates bricks and validates") {
  RngStream rng(74);
  const int n = 6, depth = 4;
  auto noise = [](int) { return ChannelSpec::named(NoiseModel::Dephasing, 0.01); };
  CircuitDescription c = brickwork_circuit(
      n, depth, [](RngStream &r) { return haar_two_qubit(r); }, noise, rng);
  CHECK(c.n_qubits == n);
  CHECK_NOTHROW(c.validate());

  int unitary_layers = 0, noise_layers = 0, trunc_layers = 0;
  bool saw_odd_start = false, saw_even_start = false;
  for (const Layer &l : c.layers) {
    if (const auto *ul = std::get_if<UnitaryLayer>(&l)) {
      ++unitary_layers;
      for (const GateOp &g : ul->gates) {
        CHECK(g.site >= 0);
        CHECK(g.site + 1 < n);
        if (g.site % 2 == 0) saw_odd_start = true;
        if (g.site % 2 == 1) saw_even_start = true;
      }
    } else if (std::holds_alternative<NoiseLayer>(l)) {
      ++noise_layers;
    } else {
      ++trunc_layers;
    }
  }
  CHECK(unitary_layers == depth);
  CHECK(noise_layers == depth);
  CHECK(trunc_layers == depth);
  CHECK(saw_odd_start);
  CHECK(saw_even_start);
}

TEST_CASE("brickwork noise lands on the qubits touched by gates") {
  RngStream rng(75);
  auto noise = [](int) { return ChannelSpec::named(NoiseModel::Depolarizing, 0.05); };
  CircuitDescription c = brickwork_circuit(
      5, 2, [](RngStream &r) { return haar_two_qubit(r); }, noise, rng);
  const Layer *prev_unitary = nullptr;
  for (const Layer &l : c.layers) {
    if (std::holds_alternative<UnitaryLayer>(l)) prev_unitary = &l;
    if (const auto *nl = std::get_if<NoiseLayer>(&l)) {
      REQUIRE(prev_unitary != nullptr);
      const auto &gates = std::get<UnitaryLayer>(*prev_unitary).gates;
      for (const auto &[site, spec] : nl->channels) {
        bool touched = false;
        for (const GateOp &g : gates)
          if (site == g.site || site == g.site + 1) touched = true;
        CHECK(touched);
      }
    }
  }
}

TEST_CASE("heisenberg model has the documented couplings and fields") {
  LindbladModel m = heisenberg_model(4, 0.05);
  CHECK(m.n_qubits == 4);
  CHECK(m.dt == doctest::Approx(0.05));
  Mat4 yy = Mat4(kron(pauli_y(), pauli_y()));
  for (const Mat4 &h2 : m.two_site_terms)
    CHECK((h2 - yy).cwiseAbs().maxCoeff() < 1e-14);
  Mat2 field = 0.35 * pauli_x() + 0.35 * pauli_y() + 0.5 * pauli_z();
  for (const Mat2 &h1 : m.one_site_terms)
    CHECK((h1 - field).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(m.jumps.empty());

  LindbladModel swapped = heisenberg_model(4, 0.05, true);
  Mat4 xx = Mat4(kron(pauli_x(), pauli_x()));
  for (const Mat4 &h2 : swapped.two_site_terms)
    CHECK((h2 - xx).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("circuit validation catches overlapping gates and bad sites") {
  CircuitDescription c;
  c.n_qubits = 3;
  c.initial_bits = "000";
  UnitaryLayer ul;
  ul.gates.push_back({0, Mat4::Identity()});
  ul.gates.push_back({1, Mat4::Identity()}); // overlaps qubit 1
  c.layers.push_back(ul);
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);

  CircuitDescription bad_bits;
  bad_bits.n_qubits = 3;
  bad_bits.initial_bits = "00"; // wrong length
  CHECK_THROWS_AS(bad_bits.validate(), std::invalid_argument);
}
