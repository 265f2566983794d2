#ifndef TTS_SERIALIZE_HPP
#define TTS_SERIALIZE_HPP

#include "tts/circuit.hpp"
#include "tts/lindblad.hpp"
#include "tts/mps.hpp"
#include "tts/trajectory.hpp"

#include <json.hpp>

namespace tts {

// Complex matrices serialize as row-major nested arrays of [re, im] pairs.
nlohmann::json matrix_to_json(const MatC &m);
MatC matrix_from_json(const nlohmann::json &j);

nlohmann::json mps_to_json(const MpsState &state);
MpsState mps_from_json(const nlohmann::json &j);

nlohmann::json channel_spec_to_json(const ChannelSpec &spec);
ChannelSpec channel_spec_from_json(const nlohmann::json &j);

nlohmann::json circuit_to_json(const CircuitDescription &circuit);
CircuitDescription circuit_from_json(const nlohmann::json &j);

// One NDJSON line per trajectory (state included only when requested).
nlohmann::json record_to_json(const TrajectoryRecord &record, bool include_state = false);

// Lindblad model from Pauli-string terms + jump operators.
LindbladModel lindblad_from_json(const nlohmann::json &j);

} // namespace tts

#endif
