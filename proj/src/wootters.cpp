#include "tts/wootters.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>

namespace tts {

namespace {

Mat4 yy() {
  static const Mat4 m = kron(pauli_y(), pauli_y());
  return m;
}

MatC spin_flip_columns(const MatC &v) { return yy() * v.conjugate(); }

MatC hadamard_tensor(int m) {
  MatC h2(2, 2);
  h2 << 1, 1, 1, -1;
  h2 /= std::sqrt(2.0);
  if (m == 2) return h2;
  if (m == 4) return kron(h2, h2);
  throw std::invalid_argument("hadamard_tensor: size must be 2 or 4");
}

// Takagi factorization via the real embedding [[A, B], [B, -A]]; robust for
// degenerate singular values. Used as a fallback when the SVD shortcut fails.
void takagi_real_embedding(const MatC &m, MatC &u_tak, VecD &sigma) {
  const Eigen::Index d = m.rows();
  Eigen::MatrixXd a = m.real(), b = m.imag();
  Eigen::MatrixXd k(2 * d, 2 * d);
  k << a, b, b, -a;
  // Symmetrize against rounding.
  k = (k + k.transpose().eval()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k);
  // Take eigenvectors with nonnegative eigenvalue, largest first.
  std::vector<std::pair<double, Eigen::VectorXd>> pos;
  for (Eigen::Index i = 2 * d - 1; i >= 0; --i) {
    if (es.eigenvalues()(i) >= -1e-12) pos.emplace_back(std::max(es.eigenvalues()(i), 0.0), es.eigenvectors().col(i));
  }
  std::stable_sort(pos.begin(), pos.end(),
                   [](const auto &x, const auto &y) { return x.first > y.first; });
  // Greedily keep d complex vectors u = x + iy that stay unitary; the zero
  // eigenspace is doubled in the real picture, so Gram-Schmidt drops halves.
  MatC u(d, 0);
  VecD s(0);
  for (const auto &[val, w] : pos) {
    if (u.cols() == d) break;
    VecC cand = w.head(d).cast<Complex>() + Complex(0, 1) * w.tail(d).cast<Complex>();
    for (Eigen::Index j = 0; j < u.cols(); ++j) cand -= (u.col(j).adjoint() * cand)(0) * u.col(j);
    const double nrm = cand.norm();
    if (nrm < 1e-8) continue;
    cand /= nrm;
    u.conservativeResize(Eigen::NoChange, u.cols() + 1);
    u.col(u.cols() - 1) = cand;
    s.conservativeResize(s.size() + 1);
    s(s.size() - 1) = val;
  }
  if (u.cols() != d) throw std::runtime_error("takagi_real_embedding: basis extraction failed");
  u_tak = u;
  sigma = s;
}

double takagi_residual(const MatC &m, const MatC &u, const VecD &sigma) {
  return (m - u * sigma.asDiagonal() * u.transpose()).norm();
}

// Sorted-descending check + stable reorder of Takagi columns.
void sort_takagi(MatC &u, VecD &sigma) {
  const Eigen::Index d = sigma.size();
  std::vector<Eigen::Index> idx(d);
  for (Eigen::Index i = 0; i < d; ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return sigma(a) > sigma(b); });
  MatC u2(u.rows(), d);
  VecD s2(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    u2.col(i) = u.col(idx[i]);
    s2(i) = sigma(idx[i]);
  }
  u = u2;
  sigma = s2;
  // Per-column sign gauge (u -> -u leaves u sigma u^T invariant): make the
  // largest entry's real part positive, falling back to the imaginary part.
  for (Eigen::Index j = 0; j < u.cols(); ++j) {
    Eigen::Index piv = 0;
    u.col(j).cwiseAbs().maxCoeff(&piv);
    const Complex val = u(piv, j);
    if (std::abs(val.real()) > 1e-12 ? val.real() < 0.0 : val.imag() < 0.0)
      u.col(j) = -u.col(j);
  }
}

} // namespace

TwoQubitDensity TwoQubitDensity::from_matrix(const Mat4 &rho) {
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("TwoQubitDensity: matrix not Hermitian");
  if (std::abs(rho.trace().real() - 1.0) > 1e-8 || std::abs(rho.trace().imag()) > 1e-10)
    throw std::invalid_argument("TwoQubitDensity: trace must be 1");
  Eigen::SelfAdjointEigenSolver<Mat4> es((rho + rho.adjoint()) / 2.0);
  TwoQubitDensity d;
  d.rho = rho;
  // Eigen sorts ascending; flip to nonincreasing.
  for (int i = 0; i < 4; ++i) {
    double v = es.eigenvalues()(3 - i);
    if (v < -1e-9) throw std::invalid_argument("TwoQubitDensity: negative eigenvalue");
    d.eigvals(i) = std::max(v, 0.0);
    d.eigvecs.col(i) = es.eigenvectors().col(3 - i);
  }
  d.rank = 0;
  for (int i = 0; i < 4; ++i)
    if (d.eigvals(i) > 1e-12) d.rank = i + 1;
  d.rank = std::max(d.rank, 1);
  return d;
}

MatC TwoQubitDensity::eigen_matrix() const {
  MatC v(4, rank);
  for (int i = 0; i < rank; ++i) v.col(i) = std::sqrt(eigvals(i)) * eigvecs.col(i);
  return v;
}

double OptimalDecomposition::average_entropy() const {
  double e = 0.0;
  for (size_t i = 0; i < probs.size(); ++i)
    if (probs[i] > 1e-12) e += probs[i] * two_qubit_entropy(states[i]);
  return e;
}

Mat4 spin_flip(const Mat4 &rho) { return yy() * rho.conjugate() * yy(); }

void takagi_autonne(const MatC &m, MatC &u_tak, VecD &sigma) {
  if (m.rows() != m.cols()) throw std::invalid_argument("takagi_autonne: need square input");
  if ((m - m.transpose()).norm() > 1e-10)
    throw std::invalid_argument("takagi_autonne: input not symmetric");
  MatC sym = (m + m.transpose().eval()) / 2.0;

  Eigen::JacobiSVD<MatC> svd(sym, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const MatC &u = svd.matrixU();
  const MatC &v = svd.matrixV();
  sigma = svd.singularValues();
  // U_tak = U sqrt((U^T V)*); the square root of a unitary matrix is taken as
  // the principal matrix square root.
  MatC w = (u.transpose() * v).conjugate();
  MatC root = w.sqrt();
  u_tak = u * root;
  sort_takagi(u_tak, sigma);
  if (takagi_residual(sym, u_tak, sigma) > 1e-9) {
    // Degenerate/defective branch of the shortcut: fall back to the robust
    // real-embedding construction.
    takagi_real_embedding(sym, u_tak, sigma);
    sort_takagi(u_tak, sigma);
    if (takagi_residual(sym, u_tak, sigma) > 1e-9)
      throw std::runtime_error("takagi_autonne: factorization failed");
  }
}

double concurrence(const TwoQubitDensity &rho) {
  MatC v = rho.eigen_matrix();
  MatC tau = v.adjoint() * spin_flip_columns(v);
  Eigen::JacobiSVD<MatC> svd(tau);
  double c = 0.0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    c += (i == 0 ? 1.0 : -1.0) * svd.singularValues()(i);
  return std::max(0.0, c);
}

double entanglement_of_formation(const TwoQubitDensity &rho) {
  const double c = concurrence(rho);
  return binary_entropy((1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))) / 2.0);
}

void decomposition_to_eigen_unitary(const MatC &phi, MatC &u0, MatC &v) {
  Eigen::JacobiSVD<MatC> svd(phi, Eigen::ComputeFullU | Eigen::ComputeFullV);
  u0 = svd.matrixV().adjoint();
  v = MatC::Zero(phi.rows(), phi.cols());
  const Eigen::Index k = std::min(phi.rows(), phi.cols());
  v.leftCols(k) = svd.matrixU().leftCols(k) * MatC(svd.singularValues().head(k).asDiagonal());
}

double decomposition_average_entropy(const MatC &z) {
  double e = 0.0;
  for (Eigen::Index i = 0; i < z.cols(); ++i) {
    const double p = z.col(i).squaredNorm();
    if (p > 1e-12) e += p * two_qubit_entropy(z.col(i) / std::sqrt(p));
  }
  return e;
}

namespace {

// Phases for the separable construction: sum_j exp(2 i theta_j) lambda_j = 0,
// built from a trapezoid with sides lambda_j in the complex plane.
std::vector<double> separable_phases(const VecD &lam) {
  const Eigen::Index m = lam.size();
  std::vector<double> theta(m, 0.0);
  const double l1 = lam(0);
  const double lm = lam(m - 1);
  if (l1 - lm < 1e-12) {
    // All equal: 2*theta are the m-th roots of unity angles.
    for (Eigen::Index j = 0; j < m; ++j) theta[j] = M_PI * double(j) / double(m);
    return theta;
  }
  if (m != 4) throw std::runtime_error("separable_phases: unexpected size");
  const double l2 = lam(1), l3 = lam(2), l4 = lam(3);
  if (l3 < 1e-12) {
    // Degenerate trapezoid: only two nonzero sides, which must balance.
    return {0.0, M_PI / 2.0, 0.0, M_PI / 2.0};
  }
  // theta_1 = 0 and 2*theta_4 = pi put lambda_1 - lambda_4 on the real axis;
  // the remaining two sides close the trapezoid. Heron-style height formula.
  const double base = l1 - l4;
  const double s = (base + l2 + l3) / 2.0;
  const double area_arg = std::max(0.0, s * (s - base) * (s - l2) * (s - l3));
  const double h = (2.0 / base) * std::sqrt(area_arg);
  const double a2 = std::asin(std::clamp(h / l2, -1.0, 1.0));
  const double a3 = std::asin(std::clamp(h / l3, -1.0, 1.0));
  const double t2 = M_PI - a2; // 2*theta_2
  // Foot-of-altitude base segments: l2 cos(a2) and l3 cos(a3). The closure
  // sum lambda_1 - lambda_4 + cos(t2) l2 + cos(t3) l3 must vanish; pick the
  // t3 branch (foot inside or outside the base) that achieves it.
  const double d2 = l2 * std::cos(a2);
  const double d3 = l3 * std::cos(a3);
  const double t3 = std::abs(base - d2 - d3) <= std::abs(base - d2 + d3)
                        ? M_PI + a3
                        : -a3;
  return {0.0, t2 / 2.0, t3 / 2.0, M_PI / 2.0};
}

} // namespace

WoottersCore wootters_core(const MatC &v_in) {
  if (v_in.rows() != 4 || v_in.cols() < 1 || v_in.cols() > 4)
    throw std::invalid_argument("wootters_core: need a 4 x r matrix, r in [1,4]");
  const int rank = static_cast<int>(v_in.cols());

  WoottersCore out;
  if (rank == 1) {
    out.m = 1;
    out.z = v_in;
    out.u_w_dag = MatC::Identity(1, 1);
    VecC tilde = spin_flip_columns(v_in).col(0);
    out.c = std::abs((v_in.col(0).adjoint() * tilde)(0)) / std::max(v_in.col(0).squaredNorm(), kSingularZero);
    // Deterministic phase for the single element.
    MatC fixed = fix_column_phases(out.z);
    out.z = fixed;
    return out;
  }

  // Working size: rank 2 stays 2 (2x2 Hadamard); rank 3 is zero-padded to 4.
  const int m = rank == 2 ? 2 : 4;
  out.m = m;
  MatC v = MatC::Zero(4, m);
  v.leftCols(rank) = v_in;

  // Step 1: Takagi of tau brings the spin-flip overlap matrix to diagonal.
  MatC tau = v.adjoint() * spin_flip_columns(v);
  MatC u_tak;
  VecD lam;
  takagi_autonne(tau, u_tak, lam);
  MatC x = v * u_tak; // x = v U1^dag with U1 = U_tak^dag

  double c_signed = lam(0);
  for (Eigen::Index i = 1; i < lam.size(); ++i) c_signed -= lam(i);

  MatC z;
  MatC u_w_dag; // z = v * u_w_dag, u_w_dag = U_Wootters^dag (m x m)
  if (c_signed > 1e-12) {
    // Entangled case: phase twist U2, then the Hadamard-conjugated rotation U3
    // that zeroes the diagonal of M.
    const double c = c_signed;
    // Either sign of the quarter twist satisfies the phase condition; the
    // choice per working size is the fixed gauge convention.
    VecC twist(m);
    twist(0) = 1.0;
    for (int i = 1; i < m; ++i) twist(i) = Complex(0, m == 4 ? -1 : 1);
    // y = x U2^dag with U2 = diag(1, i, i, i).
    MatC y = x * twist.conjugate().asDiagonal();
    MatC mh = y.adjoint() * spin_flip_columns(y) - c * (y.adjoint() * y);
    Eigen::MatrixXd mr = mh.real();
    mr = (mr + mr.transpose().eval()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(mr);
    // Columns ordered by descending eigenvalue, each sign-fixed so its largest
    // entry is positive (deterministic gauge in degenerate subspaces).
    Eigen::MatrixXd q(m, m);
    for (int i = 0; i < m; ++i) {
      Eigen::VectorXd col = es.eigenvectors().col(m - 1 - i);
      Eigen::Index piv;
      col.cwiseAbs().maxCoeff(&piv);
      if (col(piv) < 0.0) col = -col;
      q.col(i) = col;
    }
    MatC h = hadamard_tensor(m);
    MatC u3 = h * q.transpose().cast<Complex>();
    z = y * u3.adjoint();
    u_w_dag = u_tak * MatC(twist.conjugate().asDiagonal()) * u3.adjoint();
  } else {
    // Separable case: phases from the trapezoid construction, mixed by the
    // Hadamard so every element carries zero entanglement.
    std::vector<double> theta = separable_phases(lam);
    VecC phases(m);
    for (int j = 0; j < m; ++j) phases(j) = std::exp(Complex(0, theta[j]));
    MatC h = hadamard_tensor(m);
    MatC d = phases.asDiagonal();
    z = x * d * h;
    u_w_dag = u_tak * d * h;
  }

  // Deterministic per-element phase (elements are rays); keep u_w_dag in sync
  // so z = v * u_w_dag holds exactly under the convention.
  for (Eigen::Index j = 0; j < z.cols(); ++j) {
    for (Eigen::Index i = 0; i < z.rows(); ++i) {
      const Complex val = z(i, j);
      if (std::abs(val) > 1e-12) {
        const Complex phase = std::conj(val) / std::abs(val);
        z.col(j) *= phase;
        u_w_dag.col(j) *= phase;
        break;
      }
    }
  }

  out.z = std::move(z);
  out.u_w_dag = std::move(u_w_dag);
  out.c = std::max(0.0, c_signed);
  return out;
}

OptimalDecomposition optimal_decomposition(const TwoQubitDensity &rho) {
  WoottersCore core = wootters_core(rho.eigen_matrix());

  OptimalDecomposition out;
  out.e_of = entanglement_of_formation(rho);
  out.probs.assign(4, 0.0);
  out.states.assign(4, VecC::Zero(4));
  for (int i = 0; i < core.m; ++i) {
    const double p = core.z.col(i).squaredNorm();
    out.probs[i] = p;
    if (p > 1e-14)
      out.states[i] = core.z.col(i) / std::sqrt(p);
    else
      out.states[i] = VecC::Unit(4, i);
  }
  for (int i = core.m; i < 4; ++i) out.states[i] = VecC::Unit(4, i);

  // Embed U_W^dag into a 4x4 unitary; the rank complement acts as identity.
  Mat4 u_emb = Mat4::Identity();
  u_emb.topLeftCorner(core.m, core.m) = core.u_w_dag;
  out.u_from_eigen = u_emb.adjoint();
  return out;
}

} // namespace tts
