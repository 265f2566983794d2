#ifndef TTS_CHANNELS_HPP
#define TTS_CHANNELS_HPP

#include "tts/common.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tts {

enum class NoiseModel { Dephasing, Depolarizing, AmplitudeDamping };
enum class KrausFlavor { Orthogonal, Projective, HaarOptimal };

NoiseModel noise_model_from_string(const std::string &s);
KrausFlavor kraus_flavor_from_string(const std::string &s);
std::string to_string(NoiseModel m);
std::string to_string(KrausFlavor f);

// An ordered set of single-qubit Kraus operators, trace-preserving:
// sum_i K_i^dag K_i = I.
struct KrausChannel {
  std::vector<Mat2> ops;
  std::string label;

  int size() const { return static_cast<int>(ops.size()); }
};

// 4x4 Hermitian PSD matrix with unit trace.
struct ChoiState {
  Mat4 rho;
};

void validate_tp(const KrausChannel &channel, double tol = 1e-10);

// Noise entry as stored in circuits: either a named model (so fixed-flavor
// strategies can re-derive their standard sets) or a custom Kraus list.
struct ChannelSpec {
  std::optional<NoiseModel> model;
  double rate = 0.0;
  KrausChannel base; // orthogonal set for named models, the given ops otherwise

  static ChannelSpec named(NoiseModel model, double rate);
  static ChannelSpec custom(KrausChannel channel);
};

// Named decompositions of the standard single-qubit channels. The projective
// flavor is undefined for amplitude damping.
KrausChannel named_kraus(NoiseModel model, double rate, KrausFlavor flavor);

// Unitary freedom: K'_{i'} = sum_i U_{i,i'} K_i. The channel is zero-padded to
// U's dimension first; zero operators (Frobenius norm < 1e-12) are dropped
// from the output.
KrausChannel rotate_kraus(const KrausChannel &channel, const MatC &u);

// Internal rotation with row-mixing convention K'_i = sum_j M(i,j) K_j,
// without dropping zero operators. rotate_kraus(c, U) == mix_kraus(c, U^T).
std::vector<Mat2> mix_kraus(const std::vector<Mat2> &ops, const MatC &m);

// Column-stacking vectorization |K>> = (K (x) I)|Omega>, Omega = sum_j |jj>:
// component (2i + j) is K(i, j).
VecC choi_vec(const Mat2 &k);
Mat2 choi_unvec(const VecC &v);

// Choi state C = (1/2) sum_i |K_i>><<K_i|.
ChoiState choi(const KrausChannel &channel);

// Shannon entropy (base 2) of the squared Frobenius-normalized singular
// values; 1 for unitaries, 0 for rank-1 operators.
double unitarity(const Mat2 &k);

// (1/2) sum_i ||K_i||_F^2 * unitarity(K_i).
double average_unitarity(const KrausChannel &channel);

} // namespace tts

#endif
