#include <doctest.h>

#include "tts/circuit_gen.hpp"
#include "tts/mps.hpp"
#include "tts/oracle.hpp"
#include "tts/unraveler.hpp"
#include "tts/wootters.hpp"

#include <cmath>
#include <vector>

using namespace tts;

namespace {

VecC random_state(int n, RngStream &rng) {
  VecC psi(Eigen::Index(1) << n);
  for (Eigen::Index i = 0; i < psi.size(); ++i)
    psi(i) = Complex(rng.normal(), rng.normal());
  psi /= psi.norm();
  return psi;
}

// Two Kraus sets implement identical branch ensembles if they match up to a
// per-operator phase and a permutation.
bool same_up_to_phase_and_order(const KrausChannel &a, const KrausChannel &b,
                                double tol = 1e-8) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const Mat2 &ka : a.ops) {
    bool found = false;
    for (int j = 0; j < b.size() && !found; ++j) {
      if (used[j]) continue;
      const Mat2 &kb = b.ops[j];
      const Complex ip = (kb.adjoint() * ka).trace();
      if (std::abs(std::abs(ip) - ka.norm() * kb.norm()) < tol &&
          std::abs(ka.norm() - kb.norm()) < tol) {
        used[j] = true;
        found = true;
      }
    }
    if (!found) return false;
  }
  return true;
}

// rho_eff induced on (target, effective environment) by psi_eff.
Mat4 effective_density(const KrausChannel &c, const VecC &psi_eff) {
  Mat4 rho = Mat4::Zero();
  for (const Mat2 &k : c.ops) {
    VecC w = kron(k, Mat2::Identity()) * psi_eff;
    rho += w * w.adjoint();
  }
  return rho;
}

} // namespace

TEST_CASE("effective two-qubit state reproduces the target-site Schmidt cut") {
  RngStream rng(41);
  const int n = 5;
  VecC psi = random_state(n, rng);
  for (int site : {0, 2, 4}) {
    MpsState s = MpsState::from_dense(psi);
    EffectiveTwoQubitState eff = effective_two_qubit(s, site);
    CHECK(eff.s >= std::sqrt(1.0 - eff.s * eff.s) - 1e-12);
    CHECK(std::abs(eff.psi_eff.norm() - 1.0) < 1e-10);
    CHECK(is_unitary(MatC(eff.basis), 1e-9));
    // The site : rest entanglement entropy survives the compression.
    const double h_eff = two_qubit_entropy(eff.psi_eff);
    // Dense single-site reduced density for the reference entropy.
    MatC rho1 = MatC::Zero(2, 2);
    const Eigen::Index dim = psi.size();
    for (Eigen::Index x = 0; x < dim; ++x)
      for (Eigen::Index y = 0; y < dim; ++y) {
        const int bx = int((x >> (n - 1 - site)) & 1);
        const int by = int((y >> (n - 1 - site)) & 1);
        if ((x & ~(Eigen::Index(1) << (n - 1 - site))) ==
            (y & ~(Eigen::Index(1) << (n - 1 - site))))
          rho1(bx, by) += psi(x) * std::conj(psi(y));
      }
    Eigen::SelfAdjointEigenSolver<MatC> es(rho1);
    std::vector<double> p{std::max(0.0, es.eigenvalues()(0)),
                          std::max(0.0, es.eigenvalues()(1))};
    CHECK(h_eff == doctest::Approx(shannon_entropy(p)).epsilon(1e-8));
  }
}

TEST_CASE("product states give a trivial effective state") {
  MpsState s = MpsState::product_state(4, "0110");
  EffectiveTwoQubitState eff = effective_two_qubit(s, 1);
  CHECK(eff.s == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(two_qubit_entropy(eff.psi_eff) < 1e-10);
}

TEST_CASE("bell effective state is maximally entangled") {
  EffectiveTwoQubitState eff = EffectiveTwoQubitState::bell();
  CHECK(eff.s == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(two_qubit_entropy(eff.psi_eff) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("locally optimal rotation preserves the channel") {
  RngStream rng(42);
  for (NoiseModel m : {NoiseModel::Dephasing, NoiseModel::Depolarizing,
                       NoiseModel::AmplitudeDamping}) {
    KrausChannel base = named_kraus(m, 0.25, KrausFlavor::Orthogonal);
    // A generic entangled effective state.
    Mat2 basis = Mat2(haar_unitary(2, rng));
    EffectiveTwoQubitState eff = EffectiveTwoQubitState::from_schmidt(0.8, basis);
    auto [rotated, dec] = locally_optimal_kraus(base, eff);
    CHECK_NOTHROW(validate_tp(rotated));
    MatC sb = MatC::Zero(4, 4), sr = MatC::Zero(4, 4);
    for (const Mat2 &k : base.ops) sb += kron(k, k.conjugate());
    for (const Mat2 &k : rotated.ops) sr += kron(k, k.conjugate());
    CHECK((sb - sr).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("locally optimal set attains the entanglement-of-formation floor") {
  RngStream rng(43);
  for (NoiseModel m : {NoiseModel::Dephasing, NoiseModel::Depolarizing,
                       NoiseModel::AmplitudeDamping}) {
    for (double s : {1.0 / std::sqrt(2.0), 0.75, 0.95}) {
      KrausChannel base = named_kraus(m, 0.3, KrausFlavor::Orthogonal);
      Mat2 basis = Mat2(haar_unitary(2, rng));
      EffectiveTwoQubitState eff = EffectiveTwoQubitState::from_schmidt(s, basis);
      auto [rotated, dec] = locally_optimal_kraus(base, eff);

      const Mat4 rho_eff = effective_density(base, eff.psi_eff);
      const double eof = entanglement_of_formation(rho_eff);
      CHECK(dec.e_of == doctest::Approx(eof).epsilon(1e-8));

      // Branch ensemble of the rotated set: average entropy == EoF, and no
      // orthogonal-set ensemble beats it.
      double e_av = 0.0;
      for (const Mat2 &k : rotated.ops) {
        VecC w = kron(k, Mat2::Identity()) * eff.psi_eff;
        const double p = w.squaredNorm();
        if (p > 1e-14) e_av += p * two_qubit_entropy(VecC(w / std::sqrt(p)));
      }
      CHECK(e_av == doctest::Approx(eof).epsilon(1e-7));

      double e_base = 0.0;
      for (const Mat2 &k : base.ops) {
        VecC w = kron(k, Mat2::Identity()) * eff.psi_eff;
        const double p = w.squaredNorm();
        if (p > 1e-14) e_base += p * two_qubit_entropy(VecC(w / std::sqrt(p)));
      }
      CHECK(e_av <= e_base + 1e-9);
    }
  }
}

TEST_CASE("least-unitary set equals the locally optimal set at the Bell state") {
  for (NoiseModel m : {NoiseModel::Dephasing, NoiseModel::Depolarizing,
                       NoiseModel::AmplitudeDamping}) {
    KrausChannel base = named_kraus(m, 0.2, KrausFlavor::Orthogonal);
    KrausChannel lu = least_unitary_kraus(base);
    auto [lo, dec] = locally_optimal_kraus(base, EffectiveTwoQubitState::bell());
    CHECK(same_up_to_phase_and_order(lu, lo));
  }
}

TEST_CASE("strategy tags parse and resolve") {
  CHECK(UnravelingStrategy::from_string("orthogonal").tag == Strategy::Orthogonal);
  CHECK(UnravelingStrategy::from_string("projective").tag == Strategy::Projective);
  CHECK(UnravelingStrategy::from_string("haar_optimal").tag == Strategy::HaarOptimal);
  CHECK(UnravelingStrategy::from_string("locally_optimal").tag == Strategy::LocallyOptimal);
  CHECK(UnravelingStrategy::from_string("least_unitary").tag == Strategy::LeastUnitary);
  CHECK_THROWS_AS(UnravelingStrategy::from_string("bogus"), std::invalid_argument);

  MpsState s = MpsState::product_state(3, "000");
  ChannelSpec ad = ChannelSpec::named(NoiseModel::AmplitudeDamping, 0.1);
  UnravelingStrategy proj;
  proj.tag = Strategy::Projective;
  CHECK_THROWS_AS(resolve_kraus_set(s, ad, 0, proj), std::invalid_argument);
}

TEST_CASE("unravel_channel samples a valid branch and renormalizes") {
  RngStream state_rng(44);
  VecC psi = random_state(4, state_rng);
  for (const char *tag : {"orthogonal", "projective", "haar_optimal",
                          "locally_optimal", "least_unitary"}) {
    MpsState s = MpsState::from_dense(psi);
    ChannelSpec spec = ChannelSpec::named(NoiseModel::Depolarizing, 0.4);
    RngStream rng(45);
    UnravelResult r =
        unravel_channel(s, spec, 1, UnravelingStrategy::from_string(tag), rng);
    CHECK(r.branch_index >= 0);
    CHECK(r.branch_index < r.branch_count);
    CHECK(r.branch_prob > 0.0);
    CHECK(r.branch_prob <= 1.0 + 1e-12);
    CHECK(std::abs(s.norm() - 1.0) < 1e-10);
  }
}

TEST_CASE("branch mixture reproduces the channel exactly") {
  RngStream rng(46);
  const int n = 3, site = 1;
  VecC psi = random_state(n, rng);
  MatC rho_in = psi * psi.adjoint();

  // Dense reference: apply the channel to the target site.
  KrausChannel base = named_kraus(NoiseModel::AmplitudeDamping, 0.3,
                                  KrausFlavor::Orthogonal);
  MatC expect = MatC::Zero(rho_in.rows(), rho_in.cols());
  for (const Mat2 &k : base.ops) {
    MatC kf = oracle::full_operator(n, site, k);
    expect += kf * rho_in * kf.adjoint();
  }

  for (const char *tag : {"orthogonal", "haar_optimal", "locally_optimal"}) {
    MpsState probe = MpsState::from_dense(psi);
    ChannelSpec spec = ChannelSpec::named(NoiseModel::AmplitudeDamping, 0.3);
    KrausChannel kraus =
        resolve_kraus_set(probe, spec, site, UnravelingStrategy::from_string(tag));
    MatC mix = MatC::Zero(rho_in.rows(), rho_in.cols());
    double total_p = 0.0;
    for (int b = 0; b < kraus.size(); ++b) {
      MpsState branch = MpsState::from_dense(psi);
      const double p = apply_branch(branch, kraus, site, b);
      total_p += p;
      if (p > 1e-14) {
        VecC out = to_dense(branch);
        mix += p * (out * out.adjoint());
      }
    }
    CHECK(total_p == doctest::Approx(1.0).epsilon(1e-10));
    CHECK((mix - expect).cwiseAbs().maxCoeff() < 1e-10);
  }
}
