#include "tts/lindblad.hpp"

#include "tts/unraveler.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace tts {

void LindbladModel::validate() const {
  if (n_qubits < 1) throw std::invalid_argument("LindbladModel: need at least one qubit");
  if (dt <= 0.0) throw std::invalid_argument("LindbladModel: dt must be positive");
  if (static_cast<int>(two_site_terms.size()) != std::max(n_qubits - 1, 0))
    throw std::invalid_argument("LindbladModel: need n-1 two-site terms");
  if (static_cast<int>(one_site_terms.size()) != n_qubits)
    throw std::invalid_argument("LindbladModel: need n one-site terms");
  for (const Mat4 &h : two_site_terms)
    if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
      throw std::invalid_argument("LindbladModel: two-site term not Hermitian");
  for (const Mat2 &h : one_site_terms)
    if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
      throw std::invalid_argument("LindbladModel: one-site term not Hermitian");
  for (const JumpTerm &j : jumps) {
    if (j.site < 0 || j.site >= n_qubits)
      throw std::invalid_argument("LindbladModel: jump site out of range");
    if (j.gamma < 0.0) throw std::invalid_argument("LindbladModel: gamma must be >= 0");
  }
}

Mat4 jump_generator(const Mat2 &c, double gamma) {
  const Mat2 cdc = c.adjoint() * c;
  Mat4 l = kron(c, c.conjugate()) - 0.5 * kron(cdc, Mat2::Identity()) -
           0.5 * kron(Mat2::Identity(), cdc.conjugate());
  return gamma * l;
}

Mat4 reshape_choi(const Mat4 &superop) {
  Mat4 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          r(2 * i + j, 2 * k + l) = superop(2 * i + k, 2 * j + l);
  return r;
}

KrausChannel jump_channel_kraus(const Mat2 &c, double gamma, double dt) {
  if (dt <= 0.0) throw std::invalid_argument("jump_channel_kraus: dt must be positive");
  Mat4 superop = jump_generator(c, gamma) * dt;
  Mat4 channel = superop.exp();
  Mat4 r = reshape_choi(channel);
  if ((r - r.adjoint()).cwiseAbs().maxCoeff() > 1e-9)
    throw std::runtime_error("jump_channel_kraus: reshaped Choi not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat4> es((r + r.adjoint()) / 2.0);
  KrausChannel out;
  out.label = "jump";
  // Largest eigenvalue first; eigenvalue < 1e-12 operators are dropped.
  for (int i = 3; i >= 0; --i) {
    const double mu = es.eigenvalues()(i);
    if (mu < -1e-9) throw std::runtime_error("jump_channel_kraus: reshaped Choi not PSD");
    if (mu < 1e-12) continue;
    VecC v = fix_column_phases(es.eigenvectors().col(i)).col(0);
    out.ops.push_back(std::sqrt(mu) * choi_unvec(v));
  }
  validate_tp(out);
  return out;
}

std::vector<Mat4> pair_hamiltonians(const LindbladModel &model) {
  model.validate();
  const int n = model.n_qubits;
  if (n < 2) return {};
  std::vector<Mat4> h(n - 1);
  for (int i = 0; i < n - 1; ++i) {
    // Weight one-site terms by 1/(number of pairs containing the site), so
    // summing the pair Hamiltonians reproduces the full Hamiltonian with open
    // boundaries (boundary sites appear in a single pair).
    const double wl = (i == 0) ? 1.0 : 0.5;
    const double wr = (i + 1 == n - 1) ? 1.0 : 0.5;
    h[i] = model.two_site_terms[i] +
           wl * kron(model.one_site_terms[i], Mat2::Identity()) +
           wr * kron(Mat2::Identity(), model.one_site_terms[i + 1]);
  }
  return h;
}

namespace {

// Recognizes the two closed-form jump processes so fixed-flavor strategies can
// use their Table-style named sets; anything else stays a custom channel.
ChannelSpec jump_channel_spec(const Mat2 &c, double gamma, double dt) {
  Mat2 p00 = Mat2::Zero(), lower = Mat2::Zero();
  p00(0, 0) = 1.0;
  lower(0, 1) = 1.0;
  if ((c - p00).cwiseAbs().maxCoeff() < 1e-12)
    return ChannelSpec::named(NoiseModel::Dephasing, 1.0 - std::exp(-gamma * dt / 2.0));
  if ((c - lower).cwiseAbs().maxCoeff() < 1e-12)
    return ChannelSpec::named(NoiseModel::AmplitudeDamping, 1.0 - std::exp(-gamma * dt));
  return ChannelSpec::custom(jump_channel_kraus(c, gamma, dt));
}

NoiseLayer half_step_noise(const LindbladModel &model) {
  NoiseLayer nl;
  for (const JumpTerm &j : model.jumps) {
    if (j.gamma <= 0.0) continue;
    nl.channels.emplace_back(j.site, jump_channel_spec(j.c, j.gamma, model.dt / 2.0));
  }
  return nl;
}

} // namespace

CircuitDescription trotterize(const LindbladModel &model, int steps, LayeringMode mode) {
  model.validate();
  if (steps < 1) throw std::invalid_argument("trotterize: steps must be >= 1");
  const int n = model.n_qubits;

  CircuitDescription circuit;
  circuit.n_qubits = n;
  circuit.initial_bits = std::string(n, '0');
  circuit.layering_mode = mode;

  std::vector<Mat4> pairs = pair_hamiltonians(model);
  std::vector<GateOp> odd, even;
  for (int i = 0; i + 1 < n; i += 2)
    if (pairs[i].norm() > 1e-15)
      odd.push_back(GateOp{i, Mat4((Complex(0, -1) * pairs[i] * model.dt).exp())});
  for (int i = 1; i + 1 < n; i += 2)
    if (pairs[i].norm() > 1e-15)
      even.push_back(GateOp{i, Mat4((Complex(0, -1) * pairs[i] * model.dt).exp())});

  NoiseLayer noise = half_step_noise(model);

  auto emit_brick = [&](const std::vector<GateOp> &brick) {
    if (mode == LayeringMode::Global) {
      if (!brick.empty()) circuit.layers.push_back(UnitaryLayer{brick});
      if (!noise.channels.empty()) circuit.layers.push_back(noise);
      circuit.layers.push_back(TruncateLayer{});
      return;
    }
    // Local mode: per-gate unitary + noise on its two qubits + single-bond
    // truncation; jump channels on untouched sites follow as one layer.
    std::vector<bool> touched(n, false);
    for (const GateOp &g : brick) {
      circuit.layers.push_back(UnitaryLayer{{g}});
      NoiseLayer local;
      for (const auto &[site, spec] : noise.channels)
        if (site == g.site || site == g.site + 1) local.channels.emplace_back(site, spec);
      if (!local.channels.empty()) circuit.layers.push_back(local);
      circuit.layers.push_back(TruncateLayer{std::vector<int>{g.site}, std::nullopt});
      touched[g.site] = touched[g.site + 1] = true;
    }
    NoiseLayer rest;
    for (const auto &[site, spec] : noise.channels)
      if (!touched[site]) rest.channels.emplace_back(site, spec);
    if (!rest.channels.empty()) circuit.layers.push_back(rest);
  };

  for (int s = 0; s < steps; ++s) {
    emit_brick(odd);
    emit_brick(even);
  }
  circuit.validate();
  return circuit;
}

} // namespace tts
