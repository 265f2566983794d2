#ifndef TTS_MPS_HPP
#define TTS_MPS_HPP

#include "tts/common.hpp"
#include "tts/rng.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace tts {

// Rank-3 MPS site tensor with physical dimension 2, stored as one matrix per
// physical index: a[s] has shape (left bond) x (right bond).
struct SiteTensor {
  std::array<MatC, 2> a;

  Eigen::Index left_dim() const { return a[0].rows(); }
  Eigen::Index right_dim() const { return a[0].cols(); }
};

// Schmidt data at a single cut. Bonds are 0-based: bond b sits between sites
// b and b+1, i.e. the spec-level cut index k corresponds to bond k-1.
struct SchmidtCut {
  int bond = 0;
  VecD singular_values;       // nonincreasing, squared values sum to 1
  MatC left_basis;            // (2^?-free) isometric factor U of the center SVD
  MatC right_basis;           // isometric factor V^dagger rows
};

struct TruncationReport {
  std::vector<double> per_bond_discarded; // eps_k = sum of squared discarded s
  double two_norm_bound = 0.0;            // sqrt(2 * sum_k eps_k)

  double total_discarded() const {
    double t = 0.0;
    for (double e : per_bond_discarded) t += e;
    return t;
  }
};

// Matrix product operator: per site a (bond_l x bond_r) grid of 2x2 blocks.
struct Mpo {
  std::vector<std::vector<std::vector<Mat2>>> site_blocks;

  int n_sites() const { return static_cast<int>(site_blocks.size()); }

  // Product operator O_0 x O_1 x ... (bond dimension 1). Sites not present in
  // `factors` get the identity.
  static Mpo product(int n, const std::vector<std::pair<int, Mat2>> &factors);
};

class MpsState {
public:
  MpsState() = default;

  static MpsState product_state(int n, const std::string &bits);
  // Exact MPS from a dense state vector (n <= 14 guard, test bridge).
  static MpsState from_dense(const VecC &psi);

  int n_qubits() const { return static_cast<int>(sites_.size()); }
  int ortho_center() const { return ortho_center_; }
  const std::vector<int> &qubit_ordering() const { return qubit_ordering_; }
  const SiteTensor &site(int i) const { return sites_.at(i); }
  SiteTensor &site(int i) { return sites_.at(i); }

  Eigen::Index bond_dim(int bond) const { return sites_.at(bond).right_dim(); }
  Eigen::Index max_bond_dim() const;

  double norm() const;
  void normalize();

  // Moves the orthogonality center to `site` via QR sweeps (lossless).
  void move_center(int site);

  // Bookkeeping only: records that the center is at `site` after an operation
  // that already restored the isometry structure (e.g. an SVD split).
  void move_center_mark(int site) { ortho_center_ = site; }

  void set_qubit_ordering(std::vector<int> order);
  void set_sites(std::vector<SiteTensor> sites, int center);

private:
  std::vector<SiteTensor> sites_;
  int ortho_center_ = -1; // -1: unknown / not canonical
  std::vector<int> qubit_ordering_;

  void canonicalize_step_right(int i); // QR, center i -> i+1
  void canonicalize_step_left(int i);  // LQ, center i -> i-1
};

MpsState new_product_state(int n, const std::string &bits);

// Applies a 4x4 unitary to (site, site+1); site is the left qubit, 0-based.
void apply_two_qubit_gate(MpsState &state, const Mat4 &gate, int site);

// Contracts a general 2x2 operator into one site; returns <psi|K^dag K|psi>.
// The state is left unnormalized; callers renormalize by the square root.
double apply_single_qubit_operator(MpsState &state, const Mat2 &op, int site);

SchmidtCut schmidt_at_bond(MpsState &state, int bond);
double entropy_at_bond(MpsState &state, int bond);

// Truncates the listed bonds (all bonds if not given) to max dimension chi,
// renormalizes, and reports the discarded weight per bond.
TruncationReport truncate(MpsState &state, Eigen::Index chi,
                          const std::optional<std::vector<int>> &bonds = std::nullopt);

Complex expectation_mpo(MpsState &state, const Mpo &mpo);

std::string sample_bitstring(MpsState &state, RngStream &rng);

VecC to_dense(const MpsState &state);

} // namespace tts

#endif
