#include <doctest.h>

#include "tts/channels.hpp"
#include "tts/circuit_gen.hpp"
#include "tts/oracle.hpp"

#include <cmath>

using namespace tts;

namespace {

MatC channel_superop(const KrausChannel &c) {
  MatC s = MatC::Zero(4, 4);
  for (const Mat2 &k : c.ops) s += kron(k, k.conjugate());
  return s;
}

} // namespace

TEST_CASE("named Kraus sets are trace preserving") {
  for (NoiseModel m : {NoiseModel::Dephasing, NoiseModel::Depolarizing,
                       NoiseModel::AmplitudeDamping}) {
    for (double p : {0.0, 0.05, 0.3, 0.9}) {
      CHECK_NOTHROW(validate_tp(named_kraus(m, p, KrausFlavor::Orthogonal)));
      CHECK_NOTHROW(validate_tp(named_kraus(m, p, KrausFlavor::HaarOptimal)));
      if (m != NoiseModel::AmplitudeDamping)
        CHECK_NOTHROW(validate_tp(named_kraus(m, p, KrausFlavor::Projective)));
    }
  }
  CHECK_THROWS_AS(named_kraus(NoiseModel::AmplitudeDamping, 0.1, KrausFlavor::Projective),
                  std::invalid_argument);
}

TEST_CASE("flavors of the same model implement the same channel") {
  for (NoiseModel m : {NoiseModel::Dephasing, NoiseModel::Depolarizing,
                       NoiseModel::AmplitudeDamping}) {
    for (double p : {0.05, 0.4}) {
      MatC base = channel_superop(named_kraus(m, p, KrausFlavor::Orthogonal));
      MatC haar = channel_superop(named_kraus(m, p, KrausFlavor::HaarOptimal));
      CHECK((base - haar).cwiseAbs().maxCoeff() < 1e-12);
      if (m != NoiseModel::AmplitudeDamping) {
        MatC proj = channel_superop(named_kraus(m, p, KrausFlavor::Projective));
        CHECK((base - proj).cwiseAbs().maxCoeff() < 1e-12);
      }
    }
  }
}

TEST_CASE("rotate_kraus preserves the channel and matches the mixing convention") {
  RngStream rng(21);
  KrausChannel c = named_kraus(NoiseModel::Depolarizing, 0.3, KrausFlavor::Orthogonal);
  MatC u = haar_unitary(4, rng);
  KrausChannel r = rotate_kraus(c, u);
  CHECK_NOTHROW(validate_tp(r));
  CHECK((channel_superop(c) - channel_superop(r)).cwiseAbs().maxCoeff() < 1e-12);

  // rotate_kraus(c, U) uses K'_{i'} = sum_i U(i, i') K_i == row mixing by U^T.
  std::vector<Mat2> mixed = mix_kraus(c.ops, u.transpose());
  REQUIRE(int(mixed.size()) == r.size());
  for (int i = 0; i < r.size(); ++i)
    CHECK((mixed[i] - r.ops[i]).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("rotate_kraus pads to the rotation dimension and drops zero operators") {
  KrausChannel c = named_kraus(NoiseModel::Dephasing, 0.2, KrausFlavor::Orthogonal);
  REQUIRE(c.size() == 2);
  MatC u = MatC::Identity(4, 4);
  KrausChannel r = rotate_kraus(c, u);
  CHECK(r.size() == 2); // the two zero-padded slots are dropped again
}

TEST_CASE("choi state is PSD with unit trace and vectorization roundtrips") {
  Mat2 k;
  k << Complex(0.2, 0.1), 0.5, Complex(0, -0.3), 0.7;
  CHECK((choi_unvec(choi_vec(k)) - k).cwiseAbs().maxCoeff() < 1e-14);
  // Row-major component convention: index 2i+j holds K(i, j).
  VecC v = choi_vec(k);
  CHECK(std::abs(v(1) - k(0, 1)) < 1e-14);
  CHECK(std::abs(v(2) - k(1, 0)) < 1e-14);

  KrausChannel c = named_kraus(NoiseModel::AmplitudeDamping, 0.35, KrausFlavor::Orthogonal);
  ChoiState choi_state = choi(c);
  CHECK(std::abs(choi_state.rho.trace() - 1.0) < 1e-12);
  Eigen::SelfAdjointEigenSolver<Mat4> es(choi_state.rho);
  CHECK(es.eigenvalues().minCoeff() > -1e-12);
}

TEST_CASE("unitarity is 1 for unitaries and 0 for rank-1 operators") {
  RngStream rng(22);
  for (int i = 0; i < 10; ++i) {
    Mat2 u = haar_unitary(2, rng);
    CHECK(unitarity(u) == doctest::Approx(1.0).epsilon(1e-12));
  }
  Mat2 rank1;
  rank1 << 0.0, 1.0, 0.0, 0.0;
  CHECK(unitarity(rank1) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(unitarity(Mat2::Zero()), std::invalid_argument);
}

TEST_CASE("average unitarity interpolates between flavors") {
  // The orthogonal dephasing set is made of unitaries: average unitarity 1.
  KrausChannel orth = named_kraus(NoiseModel::Dephasing, 0.3, KrausFlavor::Orthogonal);
  CHECK(average_unitarity(orth) == doctest::Approx(1.0).epsilon(1e-12));
  // The projective set contains rank-1 projectors, so the average drops.
  KrausChannel proj = named_kraus(NoiseModel::Dephasing, 0.3, KrausFlavor::Projective);
  CHECK(average_unitarity(proj) < 1.0 - 1e-6);
}

TEST_CASE("string conversions roundtrip") {
  for (NoiseModel m : {NoiseModel::Dephasing, NoiseModel::Depolarizing,
                       NoiseModel::AmplitudeDamping})
    CHECK(noise_model_from_string(to_string(m)) == m);
  for (KrausFlavor f : {KrausFlavor::Orthogonal, KrausFlavor::Projective,
                        KrausFlavor::HaarOptimal})
    CHECK(kraus_flavor_from_string(to_string(f)) == f);
  CHECK_THROWS_AS(noise_model_from_string("nope"), std::invalid_argument);
}

TEST_CASE("channels are contractive in trace distance") {
  RngStream rng(23);
  for (int rep = 0; rep < 5; ++rep) {
    // Two random single-qubit densities.
    auto random_density = [&] {
      MatC g(2, 2);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) g(i, j) = Complex(rng.normal(), rng.normal());
      MatC rho = g * g.adjoint();
      return MatC(rho / rho.trace());
    };
    MatC rho = random_density();
    MatC sigma = random_density();
    const double before = oracle::trace_distance(rho, sigma);
    for (NoiseModel m : {NoiseModel::Dephasing, NoiseModel::Depolarizing,
                         NoiseModel::AmplitudeDamping}) {
      KrausChannel c = named_kraus(m, 0.3, KrausFlavor::Orthogonal);
      MatC nr = MatC::Zero(2, 2), ns = MatC::Zero(2, 2);
      for (const Mat2 &k : c.ops) {
        nr += k * rho * k.adjoint();
        ns += k * sigma * k.adjoint();
      }
      CHECK(oracle::trace_distance(nr, ns) <= before + 1e-10);
    }
  }
}
