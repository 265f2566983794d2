#ifndef TTS_UNRAVELER_HPP
#define TTS_UNRAVELER_HPP

#include "tts/channels.hpp"
#include "tts/common.hpp"
#include "tts/mps.hpp"
#include "tts/rng.hpp"
#include "tts/wootters.hpp"

#include <optional>
#include <string>

namespace tts {

// Schmidt data of the target-site : rest cut. The environment isometry stays
// implicit in the remaining MPS tensors and is never formed.
struct EffectiveTwoQubitState {
  double s = 1.0; // larger Schmidt coefficient, s >= sqrt(1 - s^2)
  Mat2 basis;     // U = |u0><0| + |u1><1| (columns u0, u1)
  VecC psi_eff;   // s|u0>(x)|0> + sqrt(1-s^2)|u1>(x)|1>, target first factor

  static EffectiveTwoQubitState bell();
  static EffectiveTwoQubitState from_schmidt(double s, const Mat2 &basis);
};

enum class Strategy {
  Orthogonal,
  Projective,
  HaarOptimal,
  LocallyOptimal,
  LeastUnitary,
  Custom,
};

struct UnravelingStrategy {
  Strategy tag = Strategy::Orthogonal;
  MatC custom_u; // rotation applied to the base set when tag == Custom

  static UnravelingStrategy from_string(const std::string &tag);
  std::string name() const;
};

EffectiveTwoQubitState effective_two_qubit(MpsState &state, int site);

// Theorem-2 pipeline: rotate the channel so its induced ensemble on psi_eff
// attains E_av = E_oF(rho_eff).
std::pair<KrausChannel, OptimalDecomposition>
locally_optimal_kraus(const KrausChannel &channel, const EffectiveTwoQubitState &eff);

// Optimal decomposition of the Choi state == locally optimal at a maximally
// entangled effective state.
KrausChannel least_unitary_kraus(const KrausChannel &channel);

// Resolves the Kraus set a strategy uses for this channel at this state.
KrausChannel resolve_kraus_set(MpsState &state, const ChannelSpec &spec, int site,
                               const UnravelingStrategy &strategy);

struct UnravelResult {
  int branch_index = 0;
  double branch_prob = 1.0;
  int branch_count = 1;
};

// Algorithm-1 subprocedure: choose the Kraus set per strategy, sample a branch
// with p_i = <psi|K_i^dag K_i|psi>, apply and renormalize in place.
UnravelResult unravel_channel(MpsState &state, const ChannelSpec &spec, int site,
                              const UnravelingStrategy &strategy, RngStream &rng);

// Deterministic branch application used by exhaustive tree enumeration:
// applies branch `index` of the resolved set, returns its probability.
double apply_branch(MpsState &state, const KrausChannel &kraus, int site, int index);

} // namespace tts

#endif
