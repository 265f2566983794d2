#include "tts/circuit_gen.hpp"
#include "tts/lindblad.hpp"
#include "tts/oracle.hpp"
#include "tts/serialize.hpp"
#include "tts/trajectory.hpp"

#include "criteria.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tts;

namespace {

std::string git_hash() {
  FILE *p = popen("git rev-parse HEAD 2>/dev/null", "r");
  if (!p) return "unknown";
  char buf[64] = {0};
  std::string out;
  if (fgets(buf, sizeof(buf), p)) out = buf;
  pclose(p);
  while (!out.empty() && (out.back() == '\n' || out.back() == '\r')) out.pop_back();
  return out.empty() ? "unknown" : out;
}

ChannelSpec noise_from_config(const json &noise) {
  if (noise.is_null() || noise.value("model", "none") == "none")
    throw std::invalid_argument("config: noise.model required for brickwork");
  return ChannelSpec::named(noise_model_from_string(noise.at("model").get<std::string>()),
                            noise.at("rate").get<double>());
}

// Builds the circuit described by the config; `rng` drives any random gates.
CircuitDescription build_circuit(const json &cfg, RngStream &rng) {
  const std::string model = cfg.at("model").get<std::string>();
  const LayeringMode mode =
      cfg.value("layering", "global") == "local" ? LayeringMode::Local
                                                 : LayeringMode::Global;
  CircuitDescription circuit;
  if (model == "heisenberg") {
    LindbladModel lm = heisenberg_model(cfg.at("n").get<int>(),
                                        cfg.value("dt", 0.05),
                                        cfg.value("swap_xy", false));
    const json noise = cfg.value("noise", json());
    if (!noise.is_null() && noise.value("model", "none") != "none") {
      const std::string kind = noise.at("model").get<std::string>();
      Mat2 c = Mat2::Zero();
      if (kind == "amplitude_damping") c(0, 1) = 1.0;
      else if (kind == "dephasing") c(0, 0) = 1.0;
      else throw std::invalid_argument("config: heisenberg noise must be amplitude_damping or dephasing");
      for (int i = 0; i < lm.n_qubits; ++i) {
        JumpTerm j;
        j.site = i;
        j.c = c;
        j.gamma = noise.at("rate").get<double>();
        lm.jumps.push_back(j);
      }
    }
    circuit = trotterize(lm, cfg.at("steps").get<int>(), mode);
  } else if (model == "lindblad") {
    LindbladModel lm = lindblad_from_json(cfg.at("lindblad"));
    circuit = trotterize(lm, cfg.at("steps").get<int>(), mode);
  } else if (model == "brickwork") {
    const std::string gate_kind = cfg.value("gates", "haar");
    const double theta = cfg.value("theta", 0.05);
    GateSource gates;
    if (gate_kind == "haar")
      gates = [](RngStream &r) { return haar_two_qubit(r); };
    else if (gate_kind == "low_entangling")
      gates = [theta](RngStream &r) { return low_entangling_with_local(r, theta); };
    else
      throw std::invalid_argument("config: gates must be haar or low_entangling");
    ChannelSpec spec = noise_from_config(cfg.value("noise", json()));
    circuit = brickwork_circuit(cfg.at("n").get<int>(), cfg.at("depth").get<int>(),
                                gates, [spec](int) { return spec; }, rng, mode);
  } else if (model == "circuit") {
    circuit = circuit_from_json(cfg.at("circuit"));
  } else {
    throw std::invalid_argument("config: unknown model " + model);
  }
  if (cfg.contains("initial_bits"))
    circuit.initial_bits = cfg.at("initial_bits").get<std::string>();
  circuit.validate();
  return circuit;
}

int run_experiment(const std::string &config_path, const std::string &out_dir,
                   int workers, std::uint64_t seed) {
  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "cannot open config: " << config_path << "\n";
    return 2;
  }
  json cfg = json::parse(in);
  if (cfg.value("version", 1) != 1) {
    std::cerr << "unsupported config version\n";
    return 2;
  }
  if (cfg.contains("seed") && seed == 0) seed = cfg.at("seed").get<std::uint64_t>();
  if (seed == 0) seed = 1;

  const Eigen::Index chi = cfg.value("chi", 16);
  if (chi < 1) {
    std::cerr << "config: chi must be >= 1\n";
    return 2;
  }
  const int n_traj = cfg.value("trajectories", 100);
  const double delta = cfg.value("delta", 0.05);
  std::vector<std::string> strategies =
      cfg.value("strategies", std::vector<std::string>{"orthogonal"});

  RngStream gate_rng(seed);
  CircuitDescription circuit = build_circuit(cfg, gate_rng);

  fs::create_directories(out_dir);
  json manifest{{"seed", seed},
                {"git_hash", git_hash()},
                {"config", cfg},
                {"n_qubits", circuit.n_qubits},
                {"workers_flag", workers}};
  json certs = json::object();

  for (const std::string &strat : strategies) {
    RunOptions opts;
    opts.chi = chi;
    opts.strategy = UnravelingStrategy::from_string(strat); // throws on bad tag
    opts.eps_max = cfg.value("eps_max", 2.0);
    opts.record_entropy = true;
    auto records = run_trajectories(circuit, opts, seed, n_traj, workers);

    // Per-depth aggregates: one row per truncation layer.
    const size_t layers = records.front().midcut_entropy.size();
    std::ofstream csv(fs::path(out_dir) / (strat + ".csv"));
    csv << "depth,mean_entropy_midcut,mean_eps,bound\n";
    const double buffer = std::sqrt(opts.eps_max * opts.eps_max /
                                    (2.0 * records.size()) * std::log(1.0 / delta));
    for (size_t l = 0; l < layers; ++l) {
      double mean_s = 0.0, mean_eps = 0.0;
      for (const auto &rec : records) {
        mean_s += rec.midcut_entropy[l];
        double acc = 0.0;
        for (size_t k = 0; k <= l && k < rec.per_layer_errors.size(); ++k)
          acc += rec.per_layer_errors[k];
        mean_eps += std::min(acc, rec.eps_max);
      }
      mean_s /= double(records.size());
      mean_eps /= double(records.size());
      csv << (l + 1) << ',' << mean_s << ',' << mean_eps << ','
          << (mean_eps + buffer) << '\n';
    }

    std::ofstream ndjson(fs::path(out_dir) / (strat + ".ndjson"));
    for (const auto &rec : records) ndjson << record_to_json(rec) << '\n';

    ErrorEstimate est = estimate_error(records, delta);
    certs[strat] = json{{"n", est.n},
                        {"mean", est.mean},
                        {"buffer", est.buffer},
                        {"total", est.total},
                        {"delta", est.delta}};
  }
  manifest["certificates"] = std::move(certs);
  std::ofstream mf(fs::path(out_dir) / "manifest.json");
  mf << manifest.dump(2) << '\n';
  std::cout << "wrote " << strategies.size() << " series to " << out_dir << "\n";
  return 0;
}

int run_verify(const std::string &suite) {
  int failures = 0;
  for (int id : tts::acceptance::suite_criteria(suite)) {
    tts::acceptance::CriterionResult r = tts::acceptance::run_criterion(id);
    std::printf("[%s] criterion %2d: %s — %s\n", r.passed ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.detail.c_str());
    std::fflush(stdout);
    if (!r.passed) ++failures;
  }
  return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"noisy-circuit MPS trajectory simulator with certified error bounds"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out", suite = "all";
  int workers = 0;
  std::uint64_t seed = 0;

  CLI::App *run = app.add_subcommand("run", "run an experiment from a JSON config");
  run->add_option("--config", config_path, "config file path")->required();
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--workers", workers, "worker threads (0 = hardware)");
  run->add_option("--seed", seed, "master seed (overrides config)");

  CLI::App *verify = app.add_subcommand("verify", "run an acceptance suite");
  verify->add_option("--suite", suite, "suite tag (default: all)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return run_experiment(config_path, out_dir, workers, seed);
    return run_verify(suite);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
