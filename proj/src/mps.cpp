#include "tts/mps.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace tts {

namespace {

// Stacks the two physical blocks vertically: rows indexed by (s, l).
MatC merge_phys_left(const SiteTensor &t) {
  const Eigen::Index dl = t.left_dim(), dr = t.right_dim();
  MatC m(2 * dl, dr);
  m.topRows(dl) = t.a[0];
  m.bottomRows(dl) = t.a[1];
  return m;
}

// Stacks the two physical blocks horizontally: columns indexed by (s, r).
MatC merge_phys_right(const SiteTensor &t) {
  const Eigen::Index dl = t.left_dim(), dr = t.right_dim();
  MatC m(dl, 2 * dr);
  m.leftCols(dr) = t.a[0];
  m.rightCols(dr) = t.a[1];
  return m;
}

SiteTensor split_phys_left(const MatC &m) {
  const Eigen::Index dl = m.rows() / 2;
  SiteTensor t;
  t.a[0] = m.topRows(dl);
  t.a[1] = m.bottomRows(dl);
  return t;
}

SiteTensor split_phys_right(const MatC &m) {
  const Eigen::Index dr = m.cols() / 2;
  SiteTensor t;
  t.a[0] = m.leftCols(dr);
  t.a[1] = m.rightCols(dr);
  return t;
}

} // namespace

Mpo Mpo::product(int n, const std::vector<std::pair<int, Mat2>> &factors) {
  Mpo mpo;
  mpo.site_blocks.assign(n, {{Mat2::Identity()}});
  for (const auto &[site, op] : factors) {
    if (site < 0 || site >= n) throw std::out_of_range("Mpo::product: site out of range");
    mpo.site_blocks[site] = {{op}};
  }
  return mpo;
}

MpsState MpsState::product_state(int n, const std::string &bits) {
  if (n <= 0) throw std::invalid_argument("product_state: need at least one qubit");
  if (static_cast<int>(bits.size()) != n)
    throw std::invalid_argument("product_state: bitstring length must equal qubit count");
  MpsState st;
  st.sites_.resize(n);
  for (int i = 0; i < n; ++i) {
    const char c = bits[i];
    if (c != '0' && c != '1') throw std::invalid_argument("product_state: bits must be 0/1");
    st.sites_[i].a[0] = MatC::Constant(1, 1, c == '0' ? 1.0 : 0.0);
    st.sites_[i].a[1] = MatC::Constant(1, 1, c == '1' ? 1.0 : 0.0);
  }
  st.ortho_center_ = 0;
  st.qubit_ordering_.resize(n);
  for (int i = 0; i < n; ++i) st.qubit_ordering_[i] = i;
  return st;
}

MpsState MpsState::from_dense(const VecC &psi) {
  const auto dim = psi.size();
  int n = 0;
  while ((Eigen::Index(1) << n) < dim) ++n;
  if ((Eigen::Index(1) << n) != dim || n == 0)
    throw std::invalid_argument("from_dense: length must be a power of two >= 2");
  if (n > 14) throw std::invalid_argument("from_dense: more than 14 qubits refused");

  MpsState st;
  st.sites_.resize(n);
  // Successive SVD splits, consuming one physical index (the most significant
  // bit) at a time from the left.
  MatC rest = Eigen::Map<const MatC>(psi.data(), dim, 1).transpose(); // 1 x 2^n, row-major order
  Eigen::Index dl = 1;
  for (int i = 0; i < n - 1; ++i) {
    const Eigen::Index cols = rest.cols() / 2;
    // rest has shape (dl, 2*cols) with the site-i bit as the leading factor of
    // the column index; regroup to ((dl, s), cols).
    MatC m(2 * dl, cols);
    m.topRows(dl) = rest.leftCols(cols);
    m.bottomRows(dl) = rest.rightCols(cols);
    Eigen::JacobiSVD<MatC> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Eigen::Index rank = 0;
    for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k)
      if (svd.singularValues()(k) > kSingularZero) rank = k + 1;
    rank = std::max<Eigen::Index>(rank, 1);
    st.sites_[i] = split_phys_left(svd.matrixU().leftCols(rank));
    rest = svd.singularValues().head(rank).asDiagonal() *
           svd.matrixV().leftCols(rank).adjoint();
    dl = rank;
  }
  st.sites_[n - 1] = split_phys_right(rest);
  st.ortho_center_ = n - 1;
  st.qubit_ordering_.resize(n);
  for (int i = 0; i < n; ++i) st.qubit_ordering_[i] = i;
  st.normalize();
  return st;
}

Eigen::Index MpsState::max_bond_dim() const {
  Eigen::Index m = 1;
  for (const auto &t : sites_) m = std::max(m, t.right_dim());
  return m;
}

double MpsState::norm() const {
  if (ortho_center_ >= 0) {
    const SiteTensor &c = sites_[ortho_center_];
    return std::sqrt(c.a[0].squaredNorm() + c.a[1].squaredNorm());
  }
  // Full transfer contraction.
  MatC env = MatC::Identity(1, 1);
  for (const auto &t : sites_) {
    MatC next = MatC::Zero(t.right_dim(), t.right_dim());
    for (int s = 0; s < 2; ++s) next += t.a[s].adjoint() * env * t.a[s];
    env = next;
  }
  return std::sqrt(std::abs(env(0, 0).real()));
}

void MpsState::normalize() {
  const double nrm = norm();
  if (nrm < kSingularZero) throw std::runtime_error("normalize: zero-norm state");
  const int c = ortho_center_ >= 0 ? ortho_center_ : 0;
  sites_[c].a[0] /= nrm;
  sites_[c].a[1] /= nrm;
}

void MpsState::canonicalize_step_right(int i) {
  MatC m = merge_phys_left(sites_[i]);
  Eigen::HouseholderQR<MatC> qr(m);
  const Eigen::Index k = std::min(m.rows(), m.cols());
  MatC q = qr.householderQ() * MatC::Identity(m.rows(), k);
  MatC r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  sites_[i] = split_phys_left(q);
  for (int s = 0; s < 2; ++s) sites_[i + 1].a[s] = r * sites_[i + 1].a[s];
}

void MpsState::canonicalize_step_left(int i) {
  MatC m = merge_phys_right(sites_[i]);
  // LQ via QR of the adjoint: m = (q r)^dag = r^dag q^dag.
  Eigen::HouseholderQR<MatC> qr(m.adjoint());
  const Eigen::Index k = std::min(m.rows(), m.cols());
  MatC q = qr.householderQ() * MatC::Identity(m.cols(), k);
  MatC r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  sites_[i] = split_phys_right(q.adjoint());
  MatC l = r.adjoint(); // (m.rows() x k)
  for (int s = 0; s < 2; ++s) sites_[i - 1].a[s] = sites_[i - 1].a[s] * l;
}

void MpsState::move_center(int site) {
  if (site < 0 || site >= n_qubits()) throw std::out_of_range("move_center: bad site");
  if (ortho_center_ < 0) {
    // Unknown: sweep right-to-left to make everything right-isometric, center 0.
    for (int i = n_qubits() - 1; i > 0; --i) canonicalize_step_left(i);
    ortho_center_ = 0;
  }
  while (ortho_center_ < site) {
    canonicalize_step_right(ortho_center_);
    ++ortho_center_;
  }
  while (ortho_center_ > site) {
    canonicalize_step_left(ortho_center_);
    --ortho_center_;
  }
}

void MpsState::set_qubit_ordering(std::vector<int> order) {
  if (static_cast<int>(order.size()) != n_qubits())
    throw std::invalid_argument("set_qubit_ordering: wrong length");
  qubit_ordering_ = std::move(order);
}

void MpsState::set_sites(std::vector<SiteTensor> sites, int center) {
  sites_ = std::move(sites);
  ortho_center_ = center;
  if (qubit_ordering_.size() != sites_.size()) {
    qubit_ordering_.resize(sites_.size());
    for (size_t i = 0; i < sites_.size(); ++i) qubit_ordering_[i] = static_cast<int>(i);
  }
}

MpsState new_product_state(int n, const std::string &bits) {
  return MpsState::product_state(n, bits);
}

void apply_two_qubit_gate(MpsState &state, const Mat4 &gate, int site) {
  if (site < 0 || site + 1 >= state.n_qubits())
    throw std::out_of_range("apply_two_qubit_gate: site out of range");
  if (!is_unitary(gate)) throw std::invalid_argument("apply_two_qubit_gate: gate not unitary");
  state.move_center(site);

  const SiteTensor &a = state.site(site);
  const SiteTensor &b = state.site(site + 1);
  const Eigen::Index dl = a.left_dim(), dr = b.right_dim();

  std::array<std::array<MatC, 2>, 2> theta; // theta[s1][s2]: dl x dr
  for (int s1 = 0; s1 < 2; ++s1)
    for (int s2 = 0; s2 < 2; ++s2) theta[s1][s2] = a.a[s1] * b.a[s2];

  std::array<std::array<MatC, 2>, 2> out;
  for (int s1 = 0; s1 < 2; ++s1)
    for (int s2 = 0; s2 < 2; ++s2) {
      out[s1][s2] = MatC::Zero(dl, dr);
      for (int t1 = 0; t1 < 2; ++t1)
        for (int t2 = 0; t2 < 2; ++t2)
          out[s1][s2] += gate(2 * s1 + s2, 2 * t1 + t2) * theta[t1][t2];
    }

  // Regroup as ((s1, l), (s2, r)) and split by SVD, keeping all nonzero values.
  MatC m(2 * dl, 2 * dr);
  for (int s1 = 0; s1 < 2; ++s1)
    for (int s2 = 0; s2 < 2; ++s2)
      m.block(s1 * dl, s2 * dr, dl, dr) = out[s1][s2];

  Eigen::JacobiSVD<MatC> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k)
    if (svd.singularValues()(k) > kSingularZero) rank = k + 1;
  rank = std::max<Eigen::Index>(rank, 1);

  MatC u = svd.matrixU().leftCols(rank);
  MatC sv = svd.singularValues().head(rank).asDiagonal() *
            svd.matrixV().leftCols(rank).adjoint();

  SiteTensor na, nb;
  na.a[0] = u.topRows(dl);
  na.a[1] = u.bottomRows(dl);
  nb.a[0] = sv.leftCols(dr);
  nb.a[1] = sv.rightCols(dr);
  state.site(site) = std::move(na);
  state.site(site + 1) = std::move(nb);
  // The left factor is an isometry, so the center moved to site+1.
  state.move_center_mark(site + 1);
}

double apply_single_qubit_operator(MpsState &state, const Mat2 &op, int site) {
  if (site < 0 || site >= state.n_qubits())
    throw std::out_of_range("apply_single_qubit_operator: site out of range");
  state.move_center(site);
  SiteTensor &t = state.site(site);
  std::array<MatC, 2> next;
  for (int sp = 0; sp < 2; ++sp) {
    next[sp] = op(sp, 0) * t.a[0] + op(sp, 1) * t.a[1];
  }
  const double sq_norm = next[0].squaredNorm() + next[1].squaredNorm();
  t.a = std::move(next);
  return sq_norm;
}

SchmidtCut schmidt_at_bond(MpsState &state, int bond) {
  if (bond < 0 || bond + 1 >= state.n_qubits())
    throw std::out_of_range("schmidt_at_bond: bad bond");
  state.move_center(bond);
  MatC m = merge_phys_left(state.site(bond));
  Eigen::JacobiSVD<MatC> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtCut cut;
  cut.bond = bond;
  cut.singular_values = svd.singularValues();
  cut.left_basis = svd.matrixU();
  cut.right_basis = svd.matrixV().adjoint();
  return cut;
}

double entropy_at_bond(MpsState &state, int bond) {
  SchmidtCut cut = schmidt_at_bond(state, bond);
  std::vector<double> p;
  p.reserve(cut.singular_values.size());
  for (Eigen::Index i = 0; i < cut.singular_values.size(); ++i) {
    const double s = cut.singular_values(i);
    if (s > kSingularZero) p.push_back(s * s);
  }
  return shannon_entropy(p);
}

TruncationReport truncate(MpsState &state, Eigen::Index chi,
                          const std::optional<std::vector<int>> &bonds) {
  if (chi < 1) throw std::invalid_argument("truncate: chi must be >= 1");
  const int n = state.n_qubits();
  std::vector<bool> wanted(static_cast<size_t>(std::max(n - 1, 0)), !bonds.has_value());
  if (bonds) {
    for (int b : *bonds) {
      if (b < 0 || b >= n - 1) throw std::out_of_range("truncate: bad bond index");
      wanted[b] = true;
    }
  }

  TruncationReport report;
  report.per_bond_discarded.assign(wanted.size(), 0.0);

  state.move_center(0);
  for (int b = 0; b < n - 1; ++b) {
    // Center is at site b after the previous iteration.
    if (!wanted[b] && state.bond_dim(b) <= chi) {
      state.move_center(b + 1);
      continue;
    }
    state.move_center(b);
    MatC m = merge_phys_left(state.site(b));
    Eigen::JacobiSVD<MatC> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const VecD &s = svd.singularValues();
    Eigen::Index rank = 0;
    for (Eigen::Index k = 0; k < s.size(); ++k)
      if (s(k) > kSingularZero) rank = k + 1;
    rank = std::max<Eigen::Index>(rank, 1);
    Eigen::Index keep = wanted[b] ? std::min(rank, chi) : rank;
    double discarded = 0.0;
    for (Eigen::Index k = keep; k < s.size(); ++k) discarded += s(k) * s(k);
    report.per_bond_discarded[b] = discarded;

    const Eigen::Index dl = state.site(b).left_dim();
    MatC u = svd.matrixU().leftCols(keep);
    MatC sv = s.head(keep).asDiagonal() * svd.matrixV().leftCols(keep).adjoint();
    SiteTensor nt;
    nt.a[0] = u.topRows(dl);
    nt.a[1] = u.bottomRows(dl);
    state.site(b) = std::move(nt);
    SiteTensor &nxt = state.site(b + 1);
    for (int sp = 0; sp < 2; ++sp) nxt.a[sp] = sv * nxt.a[sp];
    state.move_center_mark(b + 1);
  }
  state.normalize();
  report.two_norm_bound = std::sqrt(2.0 * report.total_discarded());
  return report;
}

Complex expectation_mpo(MpsState &state, const Mpo &mpo) {
  const int n = state.n_qubits();
  if (mpo.n_sites() != n) throw std::invalid_argument("expectation_mpo: site count mismatch");
  state.normalize();

  // env[a] is the left environment for MPO bond index a.
  std::vector<MatC> env{MatC::Identity(1, 1)};
  for (int i = 0; i < n; ++i) {
    const auto &w = mpo.site_blocks[i];
    const size_t bl = w.size();
    if (bl != env.size()) throw std::invalid_argument("expectation_mpo: MPO bond mismatch");
    const size_t br = w[0].size();
    const SiteTensor &t = state.site(i);
    std::vector<MatC> next(br, MatC::Zero(t.right_dim(), t.right_dim()));
    for (size_t a = 0; a < bl; ++a) {
      if (w[a].size() != br) throw std::invalid_argument("expectation_mpo: ragged MPO row");
      for (size_t b = 0; b < br; ++b) {
        const Mat2 &op = w[a][b];
        for (int sp = 0; sp < 2; ++sp)
          for (int s = 0; s < 2; ++s) {
            if (std::abs(op(sp, s)) == 0.0) continue;
            next[b] += op(sp, s) * (t.a[sp].adjoint() * env[a] * t.a[s]);
          }
      }
    }
    env = std::move(next);
  }
  if (env.size() != 1 || env[0].rows() != 1)
    throw std::invalid_argument("expectation_mpo: MPO does not close to a scalar");
  return env[0](0, 0);
}

std::string sample_bitstring(MpsState &state, RngStream &rng) {
  const int n = state.n_qubits();
  state.move_center(0);
  state.normalize();
  std::string bits(n, '0');
  MatC cond = MatC::Identity(1, 1); // conditional left vector (1 x bond)
  for (int i = 0; i < n; ++i) {
    const SiteTensor &t = state.site(i);
    MatC v0 = cond * t.a[0];
    MatC v1 = cond * t.a[1];
    const double p0 = v0.squaredNorm();
    const double p1 = v1.squaredNorm();
    const double total = p0 + p1;
    const double u = rng.uniform() * total;
    if (u < p0) {
      bits[i] = '0';
      cond = v0 / std::sqrt(std::max(p0, kSingularZero));
    } else {
      bits[i] = '1';
      cond = v1 / std::sqrt(std::max(p1, kSingularZero));
    }
  }
  return bits;
}

VecC to_dense(const MpsState &state) {
  const int n = state.n_qubits();
  if (n > 14) throw std::invalid_argument("to_dense: more than 14 qubits refused");
  // amp has shape (2^i, bond), rows indexed by the value of the first i bits;
  // site 0 is the most significant bit.
  MatC amp = MatC::Identity(1, 1);
  for (int i = 0; i < n; ++i) {
    const SiteTensor &t = state.site(i);
    MatC b0 = amp * t.a[0];
    MatC b1 = amp * t.a[1];
    MatC next(amp.rows() * 2, t.right_dim());
    for (Eigen::Index x = 0; x < amp.rows(); ++x) {
      next.row(2 * x) = b0.row(x);
      next.row(2 * x + 1) = b1.row(x);
    }
    amp = std::move(next);
  }
  return amp.col(0);
}

} // namespace tts
