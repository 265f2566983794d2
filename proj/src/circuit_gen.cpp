#include "tts/circuit_gen.hpp"

#include <Eigen/QR>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace tts {

MatC haar_unitary(int n, RngStream &rng) {
  MatC a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = Complex(rng.normal(), rng.normal());
  Eigen::HouseholderQR<MatC> qr(a);
  MatC q = qr.householderQ() * MatC::Identity(n, n);
  MatC r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the R-diagonal phases; without this the distribution is not Haar.
  for (int j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    q.col(j) *= mag > 0 ? d / mag : Complex(1, 0);
  }
  return q;
}

Mat4 haar_two_qubit(RngStream &rng) { return haar_unitary(4, rng); }

MatC random_hermitian(int n, RngStream &rng) {
  MatC a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = Complex(rng.normal(), rng.normal());
  return (a + a.adjoint()) / 2.0;
}

Mat4 low_entangling_gate(RngStream &rng, double theta) {
  if (theta < 0.0) throw std::invalid_argument("low_entangling_gate: theta must be >= 0");
  MatC h = random_hermitian(4, rng);
  return Mat4((Complex(0, -1) * theta * h).exp());
}

Mat4 low_entangling_with_local(RngStream &rng, double theta) {
  Mat4 core = low_entangling_gate(rng, theta);
  MatC u1 = haar_unitary(2, rng);
  MatC u2 = haar_unitary(2, rng);
  return Mat4(kron(u1, u2) * core);
}

CircuitDescription brickwork_circuit(int n, int depth, const GateSource &gates,
                                     const std::function<ChannelSpec(int)> &noise,
                                     RngStream &rng, LayeringMode mode) {
  if (n < 2) throw std::invalid_argument("brickwork_circuit: need at least two qubits");
  if (depth < 1) throw std::invalid_argument("brickwork_circuit: depth must be >= 1");

  CircuitDescription circuit;
  circuit.n_qubits = n;
  circuit.initial_bits = std::string(n, '0');
  circuit.layering_mode = mode;

  for (int d = 0; d < depth; ++d) {
    const int start = (d % 2 == 0) ? 0 : 1; // alternate brick colors
    std::vector<GateOp> brick;
    for (int i = start; i + 1 < n; i += 2) brick.push_back(GateOp{i, gates(rng)});
    if (brick.empty()) continue;

    if (mode == LayeringMode::Global) {
      circuit.layers.push_back(UnitaryLayer{brick});
      NoiseLayer nl;
      for (const GateOp &g : brick) {
        if (noise) {
          nl.channels.emplace_back(g.site, noise(g.site));
          nl.channels.emplace_back(g.site + 1, noise(g.site + 1));
        }
      }
      if (!nl.channels.empty()) circuit.layers.push_back(std::move(nl));
      circuit.layers.push_back(TruncateLayer{});
    } else {
      for (const GateOp &g : brick) {
        circuit.layers.push_back(UnitaryLayer{{g}});
        if (noise) {
          NoiseLayer nl;
          nl.channels.emplace_back(g.site, noise(g.site));
          nl.channels.emplace_back(g.site + 1, noise(g.site + 1));
          circuit.layers.push_back(std::move(nl));
        }
        circuit.layers.push_back(TruncateLayer{std::vector<int>{g.site}, std::nullopt});
      }
    }
  }
  circuit.validate();
  return circuit;
}

LindbladModel heisenberg_model(int n, double dt, bool swap_xy) {
  if (n < 2) throw std::invalid_argument("heisenberg_model: need at least two qubits");
  LindbladModel model;
  model.n_qubits = n;
  model.dt = dt;
  const Mat2 sx = swap_xy ? pauli_y() : pauli_x();
  const Mat2 sy = swap_xy ? pauli_x() : pauli_y();
  model.two_site_terms.assign(n - 1, Mat4(kron(sy, sy)));
  model.one_site_terms.assign(n, Mat2(0.35 * sx + 0.35 * sy + 0.5 * pauli_z()));
  return model;
}

} // namespace tts
