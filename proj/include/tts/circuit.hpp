#ifndef TTS_CIRCUIT_HPP
#define TTS_CIRCUIT_HPP

#include "tts/channels.hpp"
#include "tts/common.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace tts {

struct GateOp {
  int site = 0; // left qubit of the nearest-neighbor pair
  Mat4 gate;
};

struct UnitaryLayer {
  std::vector<GateOp> gates; // disjoint nearest-neighbor pairs
};

struct NoiseLayer {
  std::vector<std::pair<int, ChannelSpec>> channels; // site -> channel
};

struct TruncateLayer {
  // Bonds to truncate (0-based, bond b between sites b and b+1); all bonds if
  // absent. chi overrides the run-level bond cap when set.
  std::optional<std::vector<int>> bonds;
  std::optional<Eigen::Index> chi;
};

using Layer = std::variant<UnitaryLayer, NoiseLayer, TruncateLayer>;

enum class LayeringMode { Global, Local };

struct CircuitDescription {
  int n_qubits = 0;
  std::vector<int> qubit_ordering;
  std::string initial_bits; // computational-basis product start state
  std::vector<Layer> layers;
  LayeringMode layering_mode = LayeringMode::Global;

  void validate() const;
  int count_noise_sites() const;
};

} // namespace tts

#endif
