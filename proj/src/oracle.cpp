#include "tts/oracle.hpp"

#include "tts/circuit_gen.hpp"
#include "tts/mps.hpp"
#include "tts/wootters.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace tts {
namespace oracle {

MatC full_operator(int n, int site, const MatC &local) {
  const Eigen::Index ld = local.rows();
  int span = 0;
  while ((Eigen::Index(1) << span) < ld) ++span;
  if ((Eigen::Index(1) << span) != ld)
    throw std::invalid_argument("full_operator: local dim must be a power of two");
  if (site < 0 || site + span > n) throw std::out_of_range("full_operator: site out of range");
  const Eigen::Index dl = Eigen::Index(1) << site;
  const Eigen::Index dr = Eigen::Index(1) << (n - site - span);
  return kron(kron(MatC::Identity(dl, dl), local), MatC::Identity(dr, dr));
}

MatC dense_evolve(const CircuitDescription &circuit, const MatC &rho_in) {
  circuit.validate();
  const int n = circuit.n_qubits;
  if (n > 10) throw std::invalid_argument("dense_evolve: n <= 10 only");
  const Eigen::Index dim = Eigen::Index(1) << n;
  if (rho_in.rows() != dim || rho_in.cols() != dim)
    throw std::invalid_argument("dense_evolve: dimension mismatch");

  MatC rho = rho_in;
  for (const Layer &layer : circuit.layers) {
    if (const auto *ul = std::get_if<UnitaryLayer>(&layer)) {
      for (const GateOp &g : ul->gates) {
        MatC u = full_operator(n, g.site, g.gate);
        rho = u * rho * u.adjoint();
      }
    } else if (const auto *nl = std::get_if<NoiseLayer>(&layer)) {
      for (const auto &[site, spec] : nl->channels) {
        MatC next = MatC::Zero(dim, dim);
        for (const Mat2 &k : spec.base.ops) {
          MatC kf = full_operator(n, site, k);
          next += kf * rho * kf.adjoint();
        }
        rho = std::move(next);
      }
    }
    // Truncate layers: exact evolution ignores them.
  }
  return rho;
}

MatC dense_evolve(const CircuitDescription &circuit) {
  MpsState init = MpsState::product_state(circuit.n_qubits, circuit.initial_bits);
  VecC psi = to_dense(init);
  return dense_evolve(circuit, MatC(psi * psi.adjoint()));
}

double trace_distance(const MatC &rho, const MatC &sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw std::invalid_argument("trace_distance: shape mismatch");
  MatC diff = rho - sigma;
  if ((diff - diff.adjoint()).cwiseAbs().maxCoeff() < 1e-10) {
    Eigen::SelfAdjointEigenSolver<MatC> es((diff + diff.adjoint()) / 2.0);
    return es.eigenvalues().cwiseAbs().sum();
  }
  Eigen::JacobiSVD<MatC> svd(diff);
  return svd.singularValues().sum();
}

double tv_distance(const std::vector<double> &p, const std::vector<double> &q) {
  if (p.size() != q.size()) throw std::invalid_argument("tv_distance: shape mismatch");
  double t = 0.0;
  for (size_t i = 0; i < p.size(); ++i) t += std::abs(p[i] - q[i]);
  return t / 2.0;
}

double pure_trace_distance(const VecC &psi, const VecC &phi) {
  if (psi.size() != phi.size()) throw std::invalid_argument("pure_trace_distance: shape mismatch");
  const double a = psi.squaredNorm();
  const double b = phi.squaredNorm();
  const double ov = std::norm((psi.adjoint() * phi)(0));
  return std::sqrt(std::max(0.0, (a + b) * (a + b) - 4.0 * ov));
}

std::vector<double> born_probabilities(const VecC &psi) {
  std::vector<double> p(psi.size());
  for (Eigen::Index i = 0; i < psi.size(); ++i) p[i] = std::norm(psi(i));
  return p;
}

namespace {

// Pure-state entanglement entropy through the two-qubit concurrence closed
// form; ~an order of magnitude faster than an SVD in the inner loop.
double pure_entropy(const VecC &w, double p) {
  const double c = 2.0 * std::abs(w(0) * w(3) - w(1) * w(2)) / p;
  const double x = (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))) / 2.0;
  double h = 0.0;
  if (x > 1e-15) h -= x * std::log2(x);
  if (1.0 - x > 1e-15) h -= (1.0 - x) * std::log2(1.0 - x);
  return h;
}

double ensemble_entropy(const MatC &w) {
  double e = 0.0;
  for (Eigen::Index i = 0; i < w.cols(); ++i) {
    const double p = w.col(i).squaredNorm();
    if (p > 1e-14) e += p * pure_entropy(w.col(i), p);
  }
  return e;
}

// Average entropy after mixing columns (i, j) by the Givens-type rotation
// parameterized by (t, phi); other columns are untouched.
double pair_objective(const MatC &w, int i, int j, double t, double phi, double rest) {
  const Complex e = std::exp(Complex(0, phi));
  VecC wi = std::cos(t) * w.col(i) + e * std::sin(t) * w.col(j);
  VecC wj = -std::conj(e) * std::sin(t) * w.col(i) + std::cos(t) * w.col(j);
  double acc = rest;
  const double pi = wi.squaredNorm();
  if (pi > 1e-14) acc += pi * pure_entropy(wi, pi);
  const double pj = wj.squaredNorm();
  if (pj > 1e-14) acc += pj * pure_entropy(wj, pj);
  return acc;
}

} // namespace

double brute_force_eof(const Mat4 &rho, int restarts, int iters, std::uint64_t seed) {
  TwoQubitDensity d = TwoQubitDensity::from_matrix(rho);
  MatC v = MatC::Zero(4, 4);
  v.leftCols(d.rank) = d.eigen_matrix();

  double best = ensemble_entropy(v);
  RngStream rng(seed ? seed : 1);

  for (int r = 0; r < restarts; ++r) {
    MatC w = v * haar_unitary(4, rng).adjoint();
    double current = ensemble_entropy(w);
    for (int sweep = 0; sweep < iters; ++sweep) {
      double improved = 0.0;
      for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
          const double rest = current - [&] {
            double e = 0.0;
            for (int k : {i, j}) {
              const double p = w.col(k).squaredNorm();
              if (p > 1e-14) e += p * pure_entropy(w.col(k), p);
            }
            return e;
          }();
          // Coarse grid then three shrinking refinements around the best.
          double bt = 0.0, bphi = 0.0, bval = current;
          double span_t = M_PI / 2.0, span_p = M_PI;
          const int grid = 8;
          for (int a = 0; a < grid; ++a)
            for (int b = 0; b < grid; ++b) {
              const double t = -span_t + (2.0 * span_t) * (a + 0.5) / grid;
              const double phi = -span_p + (2.0 * span_p) * (b + 0.5) / grid;
              const double val = pair_objective(w, i, j, t, phi, rest);
              if (val < bval) {
                bval = val;
                bt = t;
                bphi = phi;
              }
            }
          for (int level = 0; level < 6; ++level) {
            span_t /= 4.0;
            span_p /= 4.0;
            for (int a = -2; a <= 2; ++a)
              for (int b = -2; b <= 2; ++b) {
                const double t = bt + span_t * a / 2.0;
                const double phi = bphi + span_p * b / 2.0;
                const double val = pair_objective(w, i, j, t, phi, rest);
                if (val < bval) {
                  bval = val;
                  bt = t;
                  bphi = phi;
                }
              }
          }
          if (bval < current - 1e-15) {
            const Complex e = std::exp(Complex(0, bphi));
            VecC wi = std::cos(bt) * w.col(i) + e * std::sin(bt) * w.col(j);
            VecC wj = -std::conj(e) * std::sin(bt) * w.col(i) + std::cos(bt) * w.col(j);
            w.col(i) = wi;
            w.col(j) = wj;
            improved += current - bval;
            current = bval;
          }
        }
      }
      if (improved < 1e-11) break;
    }
    best = std::min(best, current);
  }
  return best;
}

} // namespace oracle
} // namespace tts
