#include <doctest.h>

#include "tts/circuit_gen.hpp"
#include "tts/oracle.hpp"
#include "tts/serialize.hpp"
#include "tts/trajectory.hpp"

using namespace tts;
using nlohmann::json;

TEST_CASE("matrix json roundtrip") {
  MatC m(2, 3);
  m << Complex(1, 2), Complex(0, -1), 3.0, Complex(-0.5, 0.25), 0.0, Complex(0, 7);
  MatC back = matrix_from_json(matrix_to_json(m));
  CHECK((back - m).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(matrix_from_json(json::array()), std::invalid_argument);
}

TEST_CASE("mps json roundtrip preserves the state") {
  RngStream rng(91);
  VecC psi(32);
  for (int i = 0; i < 32; ++i) psi(i) = Complex(rng.normal(), rng.normal());
  psi /= psi.norm();
  MpsState s = MpsState::from_dense(psi);
  MpsState back = mps_from_json(mps_to_json(s));
  CHECK(back.n_qubits() == s.n_qubits());
  CHECK(back.ortho_center() == s.ortho_center());
  CHECK((to_dense(back) - psi).norm() < 1e-12);
}

TEST_CASE("channel spec json roundtrip for named and custom channels") {
  ChannelSpec named = ChannelSpec::named(NoiseModel::AmplitudeDamping, 0.125);
  ChannelSpec named_back = channel_spec_from_json(channel_spec_to_json(named));
  REQUIRE(named_back.model.has_value());
  CHECK(*named_back.model == NoiseModel::AmplitudeDamping);
  CHECK(named_back.rate == doctest::Approx(0.125));
  REQUIRE(named_back.base.size() == named.base.size());

  ChannelSpec custom = ChannelSpec::custom(
      named_kraus(NoiseModel::Depolarizing, 0.3, KrausFlavor::Projective));
  ChannelSpec custom_back = channel_spec_from_json(channel_spec_to_json(custom));
  CHECK(!custom_back.model.has_value());
  REQUIRE(custom_back.base.size() == custom.base.size());
  for (int i = 0; i < custom.base.size(); ++i)
    CHECK((custom_back.base.ops[i] - custom.base.ops[i]).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("circuit json roundtrip keeps the dense semantics") {
  RngStream rng(92);
  auto noise = [](int) { return ChannelSpec::named(NoiseModel::Dephasing, 0.02); };
  CircuitDescription c = brickwork_circuit(
      4, 3, [](RngStream &r) { return haar_two_qubit(r); }, noise, rng);
  CircuitDescription back = circuit_from_json(circuit_to_json(c));
  CHECK(back.n_qubits == c.n_qubits);
  CHECK(back.initial_bits == c.initial_bits);
  CHECK(back.layers.size() == c.layers.size());
  CHECK((oracle::dense_evolve(back) - oracle::dense_evolve(c)).cwiseAbs().maxCoeff()
        < 1e-12);
}

TEST_CASE("trajectory records serialize to one json object") {
  RngStream rng(93);
  auto noise = [](int) { return ChannelSpec::named(NoiseModel::Depolarizing, 0.05); };
  CircuitDescription c = brickwork_circuit(
      3, 2, [](RngStream &r) { return haar_two_qubit(r); }, noise, rng);
  RunOptions opts;
  opts.chi = 2;
  TrajectoryRecord rec = run_trajectory(c, opts, 42);
  json j = record_to_json(rec);
  CHECK(j.at("seed").get<std::uint64_t>() == 42);
  CHECK(j.at("eps_bound").get<double>() == rec.eps_bound);
  CHECK(j.at("branch_history").get<std::vector<int>>() == rec.branch_history);
  CHECK(!j.contains("final_state"));
  json with_state = record_to_json(rec, true);
  MpsState back = mps_from_json(with_state.at("final_state"));
  CHECK(std::abs(mps_overlap(back, rec.final_state)) == doctest::Approx(1.0));
}

TEST_CASE("lindblad model parses from pauli-string terms") {
  json j{{"n", 3},
         {"dt", 0.01},
         {"terms", json::array({json{{"paulis", "YY"}, {"site", 0}, {"coeff", 1.0}},
                                json{{"paulis", "YY"}, {"site", 1}, {"coeff", 1.0}},
                                json{{"paulis", "Z"}, {"site", 1}, {"coeff", 0.5}}})},
         {"jumps", json::array({json{{"site", 2}, {"gamma", 0.1}, {"op", "lower"}}})}};
  LindbladModel m = lindblad_from_json(j);
  CHECK(m.n_qubits == 3);
  CHECK((m.two_site_terms[0] - Mat4(kron(pauli_y(), pauli_y()))).cwiseAbs().maxCoeff()
        < 1e-15);
  CHECK((m.one_site_terms[1] - Mat2(0.5 * pauli_z())).cwiseAbs().maxCoeff() < 1e-15);
  REQUIRE(m.jumps.size() == 1);
  CHECK(m.jumps[0].site == 2);
  CHECK(std::abs(m.jumps[0].c(0, 1) - 1.0) < 1e-15);

  json bad = j;
  bad["jumps"][0]["op"] = "sideways";
  CHECK_THROWS_AS(lindblad_from_json(bad), std::invalid_argument);
}
