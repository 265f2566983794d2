#include "tts/serialize.hpp"

namespace tts {

using nlohmann::json;

json matrix_to_json(const MatC &m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

MatC matrix_from_json(const json &j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix_from_json: bad shape");
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(j.at(0).size());
  MatC m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(j.at(i).size()) != cols)
      throw std::invalid_argument("matrix_from_json: ragged rows");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto &entry = j.at(i).at(c);
      m(i, c) = Complex(entry.at(0).get<double>(), entry.at(1).get<double>());
    }
  }
  return m;
}

json mps_to_json(const MpsState &state) {
  json tensors = json::array();
  for (int i = 0; i < state.n_qubits(); ++i) {
    const SiteTensor &t = state.site(i);
    tensors.push_back(json{{"left", t.left_dim()},
                           {"right", t.right_dim()},
                           {"a0", matrix_to_json(t.a[0])},
                           {"a1", matrix_to_json(t.a[1])}});
  }
  return json{{"n_qubits", state.n_qubits()},
              {"ortho_center", state.ortho_center()},
              {"qubit_ordering", state.qubit_ordering()},
              {"tensors", std::move(tensors)}};
}

MpsState mps_from_json(const json &j) {
  const int n = j.at("n_qubits").get<int>();
  std::vector<SiteTensor> sites(n);
  const auto &tensors = j.at("tensors");
  if (static_cast<int>(tensors.size()) != n)
    throw std::invalid_argument("mps_from_json: tensor count mismatch");
  for (int i = 0; i < n; ++i) {
    sites[i].a[0] = matrix_from_json(tensors.at(i).at("a0"));
    sites[i].a[1] = matrix_from_json(tensors.at(i).at("a1"));
    if (sites[i].a[0].rows() != sites[i].a[1].rows() ||
        sites[i].a[0].cols() != sites[i].a[1].cols())
      throw std::invalid_argument("mps_from_json: inconsistent physical blocks");
  }
  MpsState state;
  state.set_sites(std::move(sites), j.at("ortho_center").get<int>());
  if (j.contains("qubit_ordering"))
    state.set_qubit_ordering(j.at("qubit_ordering").get<std::vector<int>>());
  return state;
}

json channel_spec_to_json(const ChannelSpec &spec) {
  if (spec.model)
    return json{{"model", to_string(*spec.model)}, {"rate", spec.rate}};
  json ops = json::array();
  for (const Mat2 &k : spec.base.ops) ops.push_back(matrix_to_json(k));
  return json{{"custom", std::move(ops)}};
}

ChannelSpec channel_spec_from_json(const json &j) {
  if (j.contains("model")) {
    return ChannelSpec::named(noise_model_from_string(j.at("model").get<std::string>()),
                              j.at("rate").get<double>());
  }
  if (j.contains("custom")) {
    KrausChannel c;
    c.label = "custom";
    for (const auto &op : j.at("custom")) {
      MatC m = matrix_from_json(op);
      if (m.rows() != 2 || m.cols() != 2)
        throw std::invalid_argument("channel_spec_from_json: Kraus operators must be 2x2");
      c.ops.push_back(Mat2(m));
    }
    return ChannelSpec::custom(std::move(c));
  }
  throw std::invalid_argument("channel_spec_from_json: need 'model' or 'custom'");
}

json circuit_to_json(const CircuitDescription &circuit) {
  json layers = json::array();
  for (const Layer &layer : circuit.layers) {
    if (const auto *ul = std::get_if<UnitaryLayer>(&layer)) {
      json gates = json::array();
      for (const GateOp &g : ul->gates)
        gates.push_back(json{{"site", g.site}, {"matrix", matrix_to_json(g.gate)}});
      layers.push_back(json{{"type", "unitary"}, {"gates", std::move(gates)}});
    } else if (const auto *nl = std::get_if<NoiseLayer>(&layer)) {
      json channels = json::array();
      for (const auto &[site, spec] : nl->channels)
        channels.push_back(json{{"site", site}, {"channel", channel_spec_to_json(spec)}});
      layers.push_back(json{{"type", "noise"}, {"channels", std::move(channels)}});
    } else if (const auto *tl = std::get_if<TruncateLayer>(&layer)) {
      json t{{"type", "truncate"}};
      if (tl->bonds) t["bonds"] = *tl->bonds;
      if (tl->chi) t["chi"] = *tl->chi;
      layers.push_back(std::move(t));
    }
  }
  return json{{"version", 1},
              {"n_qubits", circuit.n_qubits},
              {"initial_bits", circuit.initial_bits},
              {"layering_mode", circuit.layering_mode == LayeringMode::Global ? "global" : "local"},
              {"layers", std::move(layers)}};
}

CircuitDescription circuit_from_json(const json &j) {
  CircuitDescription circuit;
  circuit.n_qubits = j.at("n_qubits").get<int>();
  circuit.initial_bits = j.at("initial_bits").get<std::string>();
  if (j.contains("layering_mode"))
    circuit.layering_mode = j.at("layering_mode").get<std::string>() == "local"
                                ? LayeringMode::Local
                                : LayeringMode::Global;
  for (const auto &layer : j.at("layers")) {
    const std::string type = layer.at("type").get<std::string>();
    if (type == "unitary") {
      UnitaryLayer ul;
      for (const auto &g : layer.at("gates")) {
        MatC m = matrix_from_json(g.at("matrix"));
        if (m.rows() != 4 || m.cols() != 4)
          throw std::invalid_argument("circuit_from_json: gates must be 4x4");
        ul.gates.push_back(GateOp{g.at("site").get<int>(), Mat4(m)});
      }
      circuit.layers.push_back(std::move(ul));
    } else if (type == "noise") {
      NoiseLayer nl;
      for (const auto &c : layer.at("channels"))
        nl.channels.emplace_back(c.at("site").get<int>(),
                                 channel_spec_from_json(c.at("channel")));
      circuit.layers.push_back(std::move(nl));
    } else if (type == "truncate") {
      TruncateLayer tl;
      if (layer.contains("bonds")) tl.bonds = layer.at("bonds").get<std::vector<int>>();
      if (layer.contains("chi")) tl.chi = layer.at("chi").get<Eigen::Index>();
      circuit.layers.push_back(std::move(tl));
    } else {
      throw std::invalid_argument("circuit_from_json: unknown layer type " + type);
    }
  }
  circuit.validate();
  return circuit;
}

json record_to_json(const TrajectoryRecord &record, bool include_state) {
  json j{{"seed", record.seed},
         {"eps_bound", record.eps_bound},
         {"eps_max", record.eps_max},
         {"per_layer_errors", record.per_layer_errors},
         {"branch_history", record.branch_history}};
  if (!record.midcut_entropy.empty()) j["midcut_entropy"] = record.midcut_entropy;
  if (include_state) j["final_state"] = mps_to_json(record.final_state);
  return j;
}

LindbladModel lindblad_from_json(const json &j) {
  LindbladModel model;
  model.n_qubits = j.at("n").get<int>();
  model.dt = j.at("dt").get<double>();
  const int n = model.n_qubits;
  model.two_site_terms.assign(std::max(n - 1, 0), Mat4::Zero());
  model.one_site_terms.assign(n, Mat2::Zero());
  for (const auto &term : j.value("terms", json::array())) {
    const std::string paulis = term.at("paulis").get<std::string>();
    const int site = term.at("site").get<int>();
    const double coeff = term.at("coeff").get<double>();
    if (paulis.size() == 1) {
      if (site < 0 || site >= n) throw std::invalid_argument("lindblad_from_json: bad site");
      model.one_site_terms[site] += coeff * pauli_by_name(paulis[0]);
    } else if (paulis.size() == 2) {
      if (site < 0 || site + 1 >= n) throw std::invalid_argument("lindblad_from_json: bad site");
      model.two_site_terms[site] +=
          coeff * kron(pauli_by_name(paulis[0]), pauli_by_name(paulis[1]));
    } else {
      throw std::invalid_argument("lindblad_from_json: terms are 1- or 2-local");
    }
  }
  for (const auto &jump : j.value("jumps", json::array())) {
    JumpTerm t;
    t.site = jump.at("site").get<int>();
    t.gamma = jump.at("gamma").get<double>();
    if (jump.contains("op") && jump.at("op").is_string()) {
      const std::string op = jump.at("op").get<std::string>();
      t.c = Mat2::Zero();
      if (op == "lower") t.c(0, 1) = 1.0;       // |0><1|
      else if (op == "raise") t.c(1, 0) = 1.0;  // |1><0|
      else if (op == "p0") t.c(0, 0) = 1.0;     // |0><0|
      else if (op == "p1") t.c(1, 1) = 1.0;     // |1><1|
      else throw std::invalid_argument("lindblad_from_json: unknown jump op " + op);
    } else {
      MatC m = matrix_from_json(jump.at("op"));
      if (m.rows() != 2 || m.cols() != 2)
        throw std::invalid_argument("lindblad_from_json: jump op must be 2x2");
      t.c = Mat2(m);
    }
    model.jumps.push_back(std::move(t));
  }
  model.validate();
  return model;
}

} // namespace tts
