#include "qsp/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "qsp/baa.hpp"
#include "qsp/cost_model.hpp"
#include "qsp/errors.hpp"
#include "qsp/measures.hpp"
#include "qsp/qasm.hpp"
#include "qsp/random.hpp"
#include "qsp/simulator.hpp"
#include "qsp/synthesis.hpp"

namespace qsp::cli {
namespace {

using Clock = std::chrono::steady_clock;

/// Bad command-line value (maps to exit code 3).
class ArgumentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw InputError("write failed for '" + path.string() + "'");
}

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

nlohmann::json report_json(const SynthesisReport& r) {
  return {{"n", r.n},
          {"rank", r.rank},
          {"m", r.m},
          {"predicted_loss", r.predicted_loss},
          {"cnots", r.cnots},
          {"depth", r.depth},
          {"model_estimate", r.model_estimate},
          {"model_estimate_ceil", static_cast<std::int64_t>(std::ceil(r.model_estimate))},
          {"phase_cnots", r.phase_cnots},
          {"recursed", r.recursed}};
}

struct Loaded {
  StateVector psi;
  std::string digest;
};

Loaded load_with_digest(const std::string& path, std::ostream& err) {
  const auto text = read_file(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
  return {state_from_json(j, err), digest(text)};
}

std::vector<int> parse_index_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ArgumentError("bad qubit index '" + item + "'");
    }
  }
  return out;
}

}  // namespace

StateVector state_from_json(const nlohmann::json& j, std::ostream& warn) {
  try {
    const int n = j.at("n").get<int>();
    if (n < 1 || n > 24) throw InputError("state file: n out of range");
    const auto& amps = j.at("amplitudes");
    const auto dim = std::size_t{1} << n;
    if (!amps.is_array() || amps.size() != dim) {
      throw InputError("state file: expected " + std::to_string(dim) + " amplitudes");
    }
    CVector v(static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < dim; ++i) {
      const auto& pair = amps[i];
      if (!pair.is_array() || pair.size() != 2) throw InputError("state file: amplitude must be [re, im]");
      v(static_cast<Eigen::Index>(i)) = Complex(pair[0].get<double>(), pair[1].get<double>());
    }
    if (!v.allFinite()) throw InputError("state file: non-finite amplitude");
    const double norm2 = v.squaredNorm();
    const double dev = std::abs(norm2 - 1.0);
    if (dev > 1e-3) throw InputError("state file: amplitudes are not normalized (|psi|^2 = " + std::to_string(norm2) + ")");
    if (dev > 1e-6) warn << "warning: renormalizing state (|psi|^2 = " << norm2 << ")\n";
    return StateVector::normalized(std::move(v));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("state file: ") + e.what());
  }
}

StateVector load_state_file(const std::filesystem::path& path, std::ostream& warn) {
  return load_with_digest(path.string(), warn).psi;
}

nlohmann::json state_to_json(const StateVector& psi) {
  nlohmann::json amps = nlohmann::json::array();
  for (std::size_t i = 0; i < psi.dim(); ++i) amps.push_back({psi[i].real(), psi[i].imag()});
  return {{"n", psi.num_qubits()}, {"amplitudes", amps}};
}

std::string digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Low-rank quantum state preparation compiler"};
  app.require_subcommand(1);

  // measure
  std::string m_state;
  std::string m_subset;
  auto* measure_cmd = app.add_subcommand("measure", "Entanglement measures of a state file");
  measure_cmd->add_option("state", m_state, "State JSON file")->required();
  measure_cmd->add_option("--subset-a", m_subset, "Comma-separated A-side qubits (default: first floor(n/2))");

  // synth
  std::string s_state, s_out, s_report;
  int s_rank = 0;
  auto* synth_cmd = app.add_subcommand("synth", "Synthesize a preparation circuit");
  synth_cmd->add_option("state", s_state, "State JSON file")->required();
  synth_cmd->add_option("--rank", s_rank, "Maximum Schmidt rank kept (default: full)");
  synth_cmd->add_option("--out", s_out, "QASM output path");
  synth_cmd->add_option("--report", s_report, "Report JSON path (default: stdout)");

  // baa
  std::string b_state, b_out, b_plan, b_cost = "model";
  double b_loss = 0;
  auto* baa_cmd = app.add_subcommand("baa", "Bounded-loss product approximation search");
  baa_cmd->add_option("state", b_state, "State JSON file")->required();
  baa_cmd->add_option("--max-loss", b_loss, "Maximum total fidelity loss")->required();
  baa_cmd->add_option("--cost", b_cost, "Cost function: model or realized");
  baa_cmd->add_option("--out", b_out, "QASM output path");
  baa_cmd->add_option("--plan", b_plan, "Plan JSON path (default: stdout)");

  // simulate
  std::string q_file, q_target;
  std::int64_t q_shots = 8192;
  std::uint64_t q_seed = 0;
  std::optional<double> q_noise;
  auto* sim_cmd = app.add_subcommand("simulate", "Sample a QASM circuit");
  sim_cmd->add_option("qasm", q_file, "QASM file")->required();
  sim_cmd->add_option("--shots", q_shots, "Number of shots");
  sim_cmd->add_option("--seed", q_seed, "Sampling seed");
  sim_cmd->add_option("--noise-cnot", q_noise, "Depolarizing probability after each CNOT");
  sim_cmd->add_option("--target", q_target, "Target state JSON for MAE and fidelity");

  // sweep
  std::string w_state, w_out;
  std::optional<int> w_random;
  std::uint64_t w_seed = 0;
  auto* sweep_cmd = app.add_subcommand("sweep", "CNOT count and depth for every m");
  sweep_cmd->add_option("state", w_state, "State JSON file");
  sweep_cmd->add_option("--random", w_random, "Use a random n-qubit state instead of a file");
  sweep_cmd->add_option("--seed", w_seed, "Seed for --random");
  sweep_cmd->add_option("--out", w_out, "CSV output path (default: stdout)");

  // gen-state
  int g_n = 0;
  std::uint64_t g_seed = 0;
  std::string g_out;
  auto* gen_cmd = app.add_subcommand("gen-state", "Write a random state file");
  gen_cmd->add_option("n", g_n, "Qubit count")->required();
  gen_cmd->add_option("--seed", g_seed, "Seed");
  gen_cmd->add_option("--out", g_out, "Output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitArgument;
  }

  const auto start = Clock::now();
  try {
    if (*measure_cmd) {
      const auto [psi, dig] = load_with_digest(m_state, err);
      const int n = psi.num_qubits();
      if (n < 2) throw ArgumentError("measure needs at least 2 qubits");
      Bipartition bp = Bipartition::half_split(n);
      if (!m_subset.empty()) {
        try {
          bp = Bipartition::from_subset(n, parse_index_list(m_subset));
        } catch (const InvalidInput& e) {
          throw ArgumentError(e.what());
        }
      }
      const auto r = measure(psi, bp);
      out << nlohmann::json{{"schema", "v1"},
                            {"command", "measure"},
                            {"input_digest", dig},
                            {"bipartition", {{"a", bp.a()}, {"b", bp.b()}}},
                            {"purity", r.purity},
                            {"schmidt_rank", r.schmidt_rank},
                            {"schmidt_measure", r.schmidt_measure},
                            {"m", r.m_qubits},
                            {"meyer_wallach", r.meyer_wallach},
                            {"elapsed_ms", elapsed_ms(start)}}
                 .dump(2)
          << "\n";
    } else if (*synth_cmd) {
      if (synth_cmd->count("--rank") && s_rank < 1) throw ArgumentError("--rank must be >= 1");
      const auto [psi, dig] = load_with_digest(s_state, err);
      LrspConfig cfg;
      if (s_rank >= 1) cfg.max_rank = s_rank;
      const auto res = lrsp(psi, cfg);
      if (!s_out.empty()) write_file(s_out, emit_qasm(res.circuit));
      nlohmann::json rep{{"schema", "v1"},
                         {"command", "synth"},
                         {"input_digest", dig},
                         {"requested_rank", s_rank >= 1 ? nlohmann::json(s_rank) : nlohmann::json(nullptr)},
                         {"report", report_json(res.report)},
                         {"elapsed_ms", elapsed_ms(start)}};
      if (s_report.empty()) {
        out << rep.dump(2) << "\n";
      } else {
        write_file(s_report, rep.dump(2) + "\n");
      }
    } else if (*baa_cmd) {
      if (!(b_loss >= 0.0 && b_loss <= 1.0)) throw ArgumentError("--max-loss must lie in [0, 1]");
      CostFunction fn;
      try {
        fn = cost_function_from_string(b_cost);
      } catch (const InvalidInput& e) {
        throw ArgumentError(e.what());
      }
      const auto [psi, dig] = load_with_digest(b_state, err);
      const auto plan = baa_search(psi, b_loss, fn);
      const auto circuit = synth_plan(plan);
      if (!b_out.empty()) write_file(b_out, emit_qasm(circuit));
      auto j = to_json(plan);
      j["command"] = "baa";
      j["input_digest"] = dig;
      j["max_loss"] = b_loss;
      j["realized_cnots"] = cnot_count(circuit);
      j["realized_depth"] = depth(circuit);
      j["elapsed_ms"] = elapsed_ms(start);
      if (b_plan.empty()) {
        out << j.dump(2) << "\n";
      } else {
        write_file(b_plan, j.dump(2) + "\n");
      }
    } else if (*sim_cmd) {
      if (q_shots < 1) throw ArgumentError("--shots must be >= 1");
      if (q_noise && !(*q_noise >= 0.0 && *q_noise <= 1.0)) throw ArgumentError("--noise-cnot must lie in [0, 1]");
      const auto text = read_file(q_file);
      Circuit c;
      try {
        c = parse_qasm(text);
      } catch (const ParseError& e) {
        throw InputError(std::string("QASM ") + e.what());
      }
      const double p = q_noise.value_or(0.0);
      const auto counts = simulate_noisy(c, p, q_shots, q_seed);
      auto j = to_json(counts);
      j["schema"] = "v1";
      j["command"] = "simulate";
      j["input_digest"] = digest(text);
      j["seed"] = q_seed;
      j["noise_cnot"] = p;
      if (!q_target.empty()) {
        const auto [target, tdig] = load_with_digest(q_target, err);
        if (target.num_qubits() != c.width()) throw InputError("target state width does not match circuit");
        j["target_digest"] = tdig;
        j["mae"] = mae(counts, target);
        j["fidelity"] = p == 0.0 ? nlohmann::json(fidelity(simulate(c), target)) : nlohmann::json(nullptr);
      }
      j["elapsed_ms"] = elapsed_ms(start);
      out << j.dump(2) << "\n";
    } else if (*sweep_cmd) {
      if (w_random.has_value() == !w_state.empty()) throw ArgumentError("give exactly one of a state file or --random");
      StateVector psi;
      if (w_random) {
        if (*w_random < 2 || *w_random > 16) throw ArgumentError("--random n must lie in [2, 16]");
        Rng rng(w_seed);
        psi = random_state(*w_random, rng);
      } else {
        psi = load_with_digest(w_state, err).psi;
      }
      const int n = psi.num_qubits();
      if (n < 2) throw ArgumentError("sweep needs at least 2 qubits");
      std::ostringstream csv;
      csv << "m,cnots,depth,predicted_loss,model_estimate\n";
      for (int m = 0; m <= n / 2; ++m) {
        LrspConfig cfg;
        cfg.max_rank = 1 << m;
        const auto r = lrsp(psi, cfg).report;
        char line[160];
        std::snprintf(line, sizeof line, "%d,%zu,%zu,%.17g,%.17g\n", m, r.cnots, r.depth, r.predicted_loss,
                      lrsp_estimate(n, m).total);
        csv << line;
      }
      if (w_out.empty()) {
        out << csv.str();
      } else {
        write_file(w_out, csv.str());
      }
    } else if (*gen_cmd) {
      if (g_n < 1 || g_n > 24) throw ArgumentError("n must lie in [1, 24]");
      Rng rng(g_seed);
      const auto text = state_to_json(random_state(g_n, rng)).dump() + "\n";
      if (g_out.empty()) {
        out << text;
      } else {
        write_file(g_out, text);
      }
    }
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return kExitArgument;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}

}  // namespace qsp::cli
