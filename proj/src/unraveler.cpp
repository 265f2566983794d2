#include "tts/unraveler.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace tts {

EffectiveTwoQubitState EffectiveTwoQubitState::bell() {
  return from_schmidt(1.0 / std::sqrt(2.0), Mat2::Identity());
}

EffectiveTwoQubitState EffectiveTwoQubitState::from_schmidt(double s, const Mat2 &basis) {
  if (s < 0.0 || s > 1.0 + 1e-12) throw std::invalid_argument("EffectiveTwoQubitState: bad s");
  EffectiveTwoQubitState eff;
  eff.s = std::min(s, 1.0);
  eff.basis = basis;
  const double s2 = std::sqrt(std::max(0.0, 1.0 - eff.s * eff.s));
  eff.psi_eff = VecC::Zero(4);
  // Target qubit is the first tensor factor; |0>/|1> of the environment the
  // second. Component (2*t + e) = <t|u_e> * schmidt_e.
  for (int t = 0; t < 2; ++t) {
    eff.psi_eff(2 * t + 0) = eff.s * basis(t, 0);
    eff.psi_eff(2 * t + 1) = s2 * basis(t, 1);
  }
  return eff;
}

UnravelingStrategy UnravelingStrategy::from_string(const std::string &tag) {
  UnravelingStrategy s;
  if (tag == "orthogonal") s.tag = Strategy::Orthogonal;
  else if (tag == "projective") s.tag = Strategy::Projective;
  else if (tag == "haar_optimal") s.tag = Strategy::HaarOptimal;
  else if (tag == "locally_optimal") s.tag = Strategy::LocallyOptimal;
  else if (tag == "least_unitary") s.tag = Strategy::LeastUnitary;
  else throw std::invalid_argument("unknown strategy tag: " + tag);
  return s;
}

std::string UnravelingStrategy::name() const {
  switch (tag) {
  case Strategy::Orthogonal: return "orthogonal";
  case Strategy::Projective: return "projective";
  case Strategy::HaarOptimal: return "haar_optimal";
  case Strategy::LocallyOptimal: return "locally_optimal";
  case Strategy::LeastUnitary: return "least_unitary";
  case Strategy::Custom: return "custom";
  }
  return "?";
}

ChannelSpec ChannelSpec::named(NoiseModel model, double rate) {
  ChannelSpec spec;
  spec.model = model;
  spec.rate = rate;
  spec.base = named_kraus(model, rate, KrausFlavor::Orthogonal);
  return spec;
}

ChannelSpec ChannelSpec::custom(KrausChannel channel) {
  validate_tp(channel);
  ChannelSpec spec;
  spec.base = std::move(channel);
  return spec;
}

EffectiveTwoQubitState effective_two_qubit(MpsState &state, int site) {
  state.move_center(site);
  const SiteTensor &t = state.site(site);
  // Reduced density matrix of the target site; everything else is isometric.
  Mat2 rho;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) rho(a, b) = (t.a[a] * t.a[b].adjoint()).trace();
  rho /= rho.trace().real();
  Eigen::SelfAdjointEigenSolver<Mat2> es((rho + rho.adjoint()) / 2.0);
  // Largest eigenvalue first (s >= sqrt(1-s^2) convention).
  Mat2 basis;
  basis.col(0) = es.eigenvectors().col(1);
  basis.col(1) = es.eigenvectors().col(0);
  basis = fix_column_phases(basis);
  const double p0 = std::clamp(es.eigenvalues()(1), 0.0, 1.0);
  return EffectiveTwoQubitState::from_schmidt(std::sqrt(p0), basis);
}

std::pair<KrausChannel, OptimalDecomposition>
locally_optimal_kraus(const KrausChannel &channel, const EffectiveTwoQubitState &eff) {
  validate_tp(channel);
  const int r = channel.size();

  // Product state: any unraveling is optimal; skip the singular pipeline.
  if (std::sqrt(std::max(0.0, 1.0 - eff.s * eff.s)) < 1e-12) {
    OptimalDecomposition dec;
    dec.e_of = 0.0;
    dec.u_from_eigen = Mat4::Identity();
    dec.probs.assign(4, 0.0);
    dec.states.assign(4, VecC::Zero(4));
    for (int i = 0; i < 4; ++i) dec.states[i] = VecC::Unit(4, i);
    for (int i = 0; i < std::min(r, 4); ++i) {
      VecC col(4);
      const Mat4 kfull = kron(channel.ops[i], Mat2::Identity());
      col = kfull * eff.psi_eff;
      const double p = col.squaredNorm();
      dec.probs[i] = p;
      if (p > 1e-14) dec.states[i] = col / std::sqrt(p);
    }
    return {channel, dec};
  }

  const int mf = std::max(4, r);
  MatC phi = MatC::Zero(4, mf);
  for (int i = 0; i < r; ++i)
    phi.col(i) = kron(channel.ops[i], Mat2::Identity()) * eff.psi_eff;

  MatC u0, v;
  decomposition_to_eigen_unitary(phi, u0, v);

  // Effective rank from the singular values (columns of v are sorted).
  int rank = 0;
  for (int i = 0; i < std::min(mf, 4); ++i)
    if (v.col(i).squaredNorm() > 1e-12) rank = i + 1;
  rank = std::max(rank, 1);

  WoottersCore core = wootters_core(v.leftCols(rank));

  // z = phi * U_opt^dag with U_opt = U_W_embedded * U0.
  MatC u_w_emb = MatC::Identity(mf, mf);
  u_w_emb.topLeftCorner(core.m, core.m) = core.u_w_dag.adjoint();
  MatC u_opt = u_w_emb * u0;

  std::vector<Mat2> padded = channel.ops;
  padded.resize(mf, Mat2::Zero());
  std::vector<Mat2> rotated = mix_kraus(padded, u_opt.conjugate());

  KrausChannel out;
  out.label = channel.label + "+locally_optimal";
  for (const Mat2 &k : rotated)
    if (k.norm() >= 1e-12) out.ops.push_back(k);
  validate_tp(out);

  Mat4 rho_eff = phi * phi.adjoint();
  OptimalDecomposition dec;
  dec.e_of = binary_entropy((1.0 + std::sqrt(std::max(0.0, 1.0 - core.c * core.c))) / 2.0);
  dec.probs.assign(4, 0.0);
  dec.states.assign(4, VecC::Zero(4));
  for (int i = 0; i < core.m; ++i) {
    const double p = core.z.col(i).squaredNorm();
    dec.probs[i] = p;
    dec.states[i] = p > 1e-14 ? VecC(core.z.col(i) / std::sqrt(p)) : VecC::Unit(4, i);
  }
  for (int i = core.m; i < 4; ++i) dec.states[i] = VecC::Unit(4, i);
  Mat4 u_emb4 = Mat4::Identity();
  u_emb4.topLeftCorner(core.m, core.m) = core.u_w_dag;
  dec.u_from_eigen = u_emb4.adjoint();
  (void)rho_eff;
  return {out, dec};
}

KrausChannel least_unitary_kraus(const KrausChannel &channel) {
  auto [rotated, dec] = locally_optimal_kraus(channel, EffectiveTwoQubitState::bell());
  (void)dec;
  KrausChannel out = rotated;
  out.label = channel.label + "+least_unitary";
  return out;
}

KrausChannel resolve_kraus_set(MpsState &state, const ChannelSpec &spec, int site,
                               const UnravelingStrategy &strategy) {
  switch (strategy.tag) {
  case Strategy::Orthogonal:
    return spec.model ? named_kraus(*spec.model, spec.rate, KrausFlavor::Orthogonal)
                      : spec.base;
  case Strategy::Projective:
    if (!spec.model)
      throw std::invalid_argument("projective strategy requires a named channel");
    return named_kraus(*spec.model, spec.rate, KrausFlavor::Projective);
  case Strategy::HaarOptimal:
    if (spec.model) return named_kraus(*spec.model, spec.rate, KrausFlavor::HaarOptimal);
    throw std::invalid_argument("haar_optimal strategy requires a named channel");
  case Strategy::LocallyOptimal: {
    EffectiveTwoQubitState eff = effective_two_qubit(state, site);
    return locally_optimal_kraus(spec.base, eff).first;
  }
  case Strategy::LeastUnitary:
    return least_unitary_kraus(spec.base);
  case Strategy::Custom:
    return rotate_kraus(spec.base, strategy.custom_u);
  }
  throw std::logic_error("resolve_kraus_set: unreachable");
}

double apply_branch(MpsState &state, const KrausChannel &kraus, int site, int index) {
  if (index < 0 || index >= kraus.size())
    throw std::out_of_range("apply_branch: branch index out of range");
  const double p = apply_single_qubit_operator(state, kraus.ops[index], site);
  if (p > kSingularZero) {
    const double inv = 1.0 / std::sqrt(p);
    SiteTensor &t = state.site(site);
    t.a[0] *= inv;
    t.a[1] *= inv;
  }
  return p;
}

UnravelResult unravel_channel(MpsState &state, const ChannelSpec &spec, int site,
                              const UnravelingStrategy &strategy, RngStream &rng) {
  KrausChannel kraus = resolve_kraus_set(state, spec, site, strategy);

  // Path probabilities p_i = <psi|K_i^dag K_i|psi> without mutating the state.
  state.move_center(site);
  const SiteTensor &t = state.site(site);
  std::vector<double> probs(kraus.size());
  double total = 0.0;
  for (int i = 0; i < kraus.size(); ++i) {
    const Mat2 &k = kraus.ops[i];
    double p = 0.0;
    for (int sp = 0; sp < 2; ++sp) p += (k(sp, 0) * t.a[0] + k(sp, 1) * t.a[1]).squaredNorm();
    probs[i] = p;
    total += p;
  }
  if (total < 1e-12) throw std::runtime_error("unravel_channel: all branch probabilities zero");
  if (std::abs(total - 1.0) > 1e-9)
    throw std::runtime_error("unravel_channel: branch probabilities do not sum to 1");

  // Inverse-CDF sampling on the renormalized vector.
  const double u = rng.uniform() * total;
  double acc = 0.0;
  int pick = kraus.size() - 1;
  for (int i = 0; i < kraus.size(); ++i) {
    acc += probs[i];
    if (u < acc) {
      pick = i;
      break;
    }
  }

  apply_branch(state, kraus, site, pick);
  return UnravelResult{pick, probs[pick] / total, kraus.size()};
}

} // namespace tts
