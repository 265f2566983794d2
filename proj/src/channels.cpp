#include "tts/channels.hpp"

#include <Eigen/SVD>

#include <cmath>

namespace tts {

NoiseModel noise_model_from_string(const std::string &s) {
  if (s == "dephasing") return NoiseModel::Dephasing;
  if (s == "depolarizing") return NoiseModel::Depolarizing;
  if (s == "amplitude_damping") return NoiseModel::AmplitudeDamping;
  throw std::invalid_argument("unknown noise model: " + s);
}

KrausFlavor kraus_flavor_from_string(const std::string &s) {
  if (s == "orthogonal") return KrausFlavor::Orthogonal;
  if (s == "projective") return KrausFlavor::Projective;
  if (s == "haar_optimal") return KrausFlavor::HaarOptimal;
  throw std::invalid_argument("unknown Kraus flavor: " + s);
}

std::string to_string(NoiseModel m) {
  switch (m) {
  case NoiseModel::Dephasing: return "dephasing";
  case NoiseModel::Depolarizing: return "depolarizing";
  case NoiseModel::AmplitudeDamping: return "amplitude_damping";
  }
  return "?";
}

std::string to_string(KrausFlavor f) {
  switch (f) {
  case KrausFlavor::Orthogonal: return "orthogonal";
  case KrausFlavor::Projective: return "projective";
  case KrausFlavor::HaarOptimal: return "haar_optimal";
  }
  return "?";
}

void validate_tp(const KrausChannel &channel, double tol) {
  if (channel.ops.empty()) throw std::invalid_argument("validate_tp: empty channel");
  Mat2 sum = Mat2::Zero();
  for (const Mat2 &k : channel.ops) sum += k.adjoint() * k;
  if ((sum - Mat2::Identity()).cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("validate_tp: channel is not trace-preserving");
}

namespace {

KrausChannel orthogonal_set(NoiseModel model, double rate) {
  KrausChannel c;
  switch (model) {
  case NoiseModel::Dephasing:
    c.ops = {std::sqrt(1.0 - rate / 2.0) * Mat2(pauli_i()),
             std::sqrt(rate / 2.0) * Mat2(pauli_z())};
    break;
  case NoiseModel::Depolarizing:
    c.ops = {std::sqrt(1.0 - 3.0 * rate / 4.0) * Mat2(pauli_i()),
             (std::sqrt(rate) / 2.0) * Mat2(pauli_x()),
             (std::sqrt(rate) / 2.0) * Mat2(pauli_y()),
             (std::sqrt(rate) / 2.0) * Mat2(pauli_z())};
    break;
  case NoiseModel::AmplitudeDamping: {
    Mat2 k0, k1;
    k0 << 1, 0, 0, std::sqrt(1.0 - rate);
    k1 << 0, std::sqrt(rate), 0, 0;
    c.ops = {k0, k1};
    break;
  }
  }
  return c;
}

KrausChannel projective_set(NoiseModel model, double rate) {
  KrausChannel c;
  Mat2 p00, p01, p10, p11;
  p00 << 1, 0, 0, 0;
  p01 << 0, 1, 0, 0;
  p10 << 0, 0, 1, 0;
  p11 << 0, 0, 0, 1;
  switch (model) {
  case NoiseModel::Dephasing:
    c.ops = {std::sqrt(1.0 - rate) * Mat2(pauli_i()), std::sqrt(rate) * p00,
             std::sqrt(rate) * p11};
    break;
  case NoiseModel::Depolarizing:
    c.ops = {std::sqrt(1.0 - rate) * Mat2(pauli_i()), std::sqrt(rate / 2.0) * p00,
             std::sqrt(rate / 2.0) * p01, std::sqrt(rate / 2.0) * p10,
             std::sqrt(rate / 2.0) * p11};
    break;
  case NoiseModel::AmplitudeDamping:
    throw std::invalid_argument(
        "named_kraus: projective flavor is undefined for amplitude damping");
  }
  return c;
}

} // namespace

KrausChannel named_kraus(NoiseModel model, double rate, KrausFlavor flavor) {
  if (rate < 0.0 || rate > 1.0)
    throw std::invalid_argument("named_kraus: rate must be in [0, 1]");
  KrausChannel c;
  switch (flavor) {
  case KrausFlavor::Orthogonal:
    c = orthogonal_set(model, rate);
    break;
  case KrausFlavor::Projective:
    c = projective_set(model, rate);
    break;
  case KrausFlavor::HaarOptimal: {
    // Hadamard rotation of the orthogonal set: H for the two-operator
    // channels, H (x) H for depolarizing.
    KrausChannel base = orthogonal_set(model, rate);
    MatC h2(2, 2);
    h2 << 1, 1, 1, -1;
    h2 /= std::sqrt(2.0);
    MatC u = base.size() == 4 ? MatC(kron(h2, h2)) : h2;
    c = rotate_kraus(base, u);
    break;
  }
  }
  c.label = to_string(model) + "/" + to_string(flavor);
  validate_tp(c);
  return c;
}

std::vector<Mat2> mix_kraus(const std::vector<Mat2> &ops, const MatC &m) {
  if (m.cols() < static_cast<Eigen::Index>(ops.size()))
    throw std::invalid_argument("mix_kraus: matrix smaller than operator count");
  std::vector<Mat2> out(m.rows(), Mat2::Zero());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < ops.size(); ++j) out[i] += m(i, static_cast<Eigen::Index>(j)) * ops[j];
  return out;
}

KrausChannel rotate_kraus(const KrausChannel &channel, const MatC &u) {
  if (!is_unitary(u)) throw std::invalid_argument("rotate_kraus: U not unitary");
  if (u.rows() < channel.size())
    throw std::invalid_argument("rotate_kraus: U smaller than channel");
  // K'_{i'} = sum_i U_{i,i'} K_i, with the channel zero-padded to U's size.
  std::vector<Mat2> rotated = mix_kraus(channel.ops, u.transpose());
  KrausChannel out;
  out.label = channel.label;
  for (const Mat2 &k : rotated)
    if (k.norm() >= 1e-12) out.ops.push_back(k);
  validate_tp(out);
  return out;
}

VecC choi_vec(const Mat2 &k) {
  VecC v(4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) v(2 * i + j) = k(i, j);
  return v;
}

Mat2 choi_unvec(const VecC &v) {
  if (v.size() != 4) throw std::invalid_argument("choi_unvec: need a 4-vector");
  Mat2 k;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) k(i, j) = v(2 * i + j);
  return k;
}

ChoiState choi(const KrausChannel &channel) {
  validate_tp(channel);
  Mat4 c = Mat4::Zero();
  for (const Mat2 &k : channel.ops) {
    VecC v = choi_vec(k);
    c += 0.5 * v * v.adjoint();
  }
  return ChoiState{c};
}

double unitarity(const Mat2 &k) {
  const double fro2 = k.squaredNorm();
  if (fro2 < kSingularZero) throw std::invalid_argument("unitarity: zero operator");
  MatC km = k;
  Eigen::JacobiSVD<MatC> svd(km);
  std::vector<double> p;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    const double s = svd.singularValues()(i);
    p.push_back(s * s / fro2);
  }
  return shannon_entropy(p);
}

double average_unitarity(const KrausChannel &channel) {
  validate_tp(channel);
  double total = 0.0;
  for (const Mat2 &k : channel.ops) {
    const double w = k.squaredNorm();
    if (w < kSingularZero) continue;
    total += w * unitarity(k);
  }
  return total / 2.0;
}

} // namespace tts
