#include "slinv/lab/config.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "slinv/io.hpp"

namespace slinv::lab {

using nlohmann::json;

namespace {

cplx complex_from(const json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2) return {v.at(0).get<double>(), v.at(1).get<double>()};
  if (v.is_object()) return {v.value("re", 0.0), v.value("im", 0.0)};
  throw InputError("expected a number, [re, im] or {re, im}");
}

std::vector<cplx> complex_list(const json& a) {
  if (!a.is_array()) throw InputError("expected a coefficient array");
  std::vector<cplx> out;
  for (const auto& v : a) out.push_back(complex_from(v));
  return out;
}

template <class T>
void take(const json& j, const char* key, T& dst) {
  if (j.contains(key)) dst = j.at(key).get<T>();
}

}  // namespace

ExperimentConfig config_from_json(const std::string& text) {
  ExperimentConfig cfg;
  try {
    const json j = json::parse(text);
    if (!j.is_object()) throw InputError("config must be a JSON object");
    take(j, "command", cfg.command);
    if (j.contains("problem")) {
      const auto& pr = j.at("problem");
      cfg.has_problem = true;
      if (pr.contains("potential")) {
        const auto& pot = pr.at("potential");
        take(pot, "name", cfg.potential.name);
        take(pot, "params", cfg.potential.params);
      }
      take(pr, "p", cfg.p);
      if (pr.contains("c")) cfg.c = complex_list(pr.at("c"));
      if (pr.contains("d")) cfg.d = complex_list(pr.at("d"));
    }
    if (j.contains("data")) cfg.data_path = j.at("data").get<std::string>();
    if (j.contains("model_p")) cfg.model_p = j.at("model_p").get<int>();
    take(j, "N", cfg.N);
    take(j, "M", cfg.M);
    take(j, "forward_M", cfg.forward_M);
    if (j.contains("dump_x")) cfg.dump_x = j.at("dump_x").get<double>();
    take(j, "eps_rho", cfg.eps_rho);
    take(j, "r_search", cfg.r_search);
    take(j, "low_height", cfg.low_height);
    take(j, "x_eval", cfg.x_eval);
    take(j, "alpha", cfg.alpha);
    take(j, "eta", cfg.eta);
    take(j, "epsilon", cfg.epsilon);
    take(j, "sweep", cfg.sweep);
    take(j, "N_list", cfg.N_list);
    take(j, "omega_cap", cfg.omega_cap);
    take(j, "K_cap", cfg.K_cap);
    take(j, "samples", cfg.samples);
    take(j, "delta_scale", cfg.delta_scale);
    take(j, "out", cfg.out_dir);
    take(j, "threads", cfg.threads);
    take(j, "seed", cfg.seed);
  } catch (const json::exception& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) { return config_from_json(io::read_text(path)); }

void validate(const ExperimentConfig& cfg) {
  const auto& cmds = known_commands();
  if (std::find(cmds.begin(), cmds.end(), cfg.command) == cmds.end())
    throw InputError("unknown command '" + cfg.command + "'");
  if (cfg.N < 8 || cfg.N > 512) throw InputError("N must lie in [8, 512]");
  if (cfg.M < 64 || cfg.M > 65536) throw InputError("M must lie in [64, 65536]");
  if (cfg.forward_M != 0 && (cfg.forward_M < 64 || cfg.forward_M > 65536))
    throw InputError("forward_M must be 0 or lie in [64, 65536]");
  if (cfg.dump_x && !(*cfg.dump_x >= 0.0 && *cfg.dump_x <= pi)) throw InputError("dump_x must lie in [0, pi]");
  if (!(cfg.eps_rho > 0.0)) throw InputError("eps_rho must be positive");
  if (!(cfg.r_search > 0.0 && cfg.r_search < 0.5)) throw InputError("r_search must lie in (0, 0.5)");
  if (!(cfg.low_height > 0.0)) throw InputError("low_height must be positive");
  if (cfg.x_eval < 2) throw InputError("x_eval must be at least 2");
  if (cfg.threads < 1) throw InputError("threads must be at least 1");
  if (cfg.samples < 2) throw InputError("samples must be at least 2");

  const bool has_data = cfg.data_path.has_value() || cfg.model_p.has_value();
  if (cfg.data_path && cfg.model_p) throw InputError("give either a data file or model_p, not both");
  if (cfg.model_p && *cfg.model_p < 0) throw InputError("model_p must be non-negative");
  const std::string& c = cfg.command;
  if (c == "forward" || c == "roundtrip") {
    if (!cfg.has_problem) throw InputError(c + " needs a problem spec");
    if (has_data) throw InputError(c + " takes a problem spec, not spectral data");
  }
  if (c == "inverse" || c == "diagnose") {
    if (!has_data) throw InputError(c + " needs spectral data (data path or model_p)");
    if (cfg.has_problem) throw InputError(c + " takes spectral data, not a problem spec");
  }
  if (cfg.has_problem) {
    if (cfg.p < 0) throw InputError("p must be non-negative");
    if (static_cast<int>(cfg.c.size()) != cfg.p + 1 || static_cast<int>(cfg.d.size()) != cfg.p + 1)
      throw InputError("c and d must each hold p + 1 coefficients");
    if (std::abs(cfg.c.back()) == 0.0) throw InputError("leading coefficient of r1 must be nonzero");
    if (cfg.N < cfg.p + 2) throw InputError("N must be at least p + 2");
  }
  if (c == "stability") {
    if (cfg.sweep.empty() && cfg.samples < 2) throw InputError("stability needs a sweep");
    if (!(cfg.delta_scale > 0.0)) throw InputError("delta_scale must be positive");
  }
  if (c == "example1" && (cfg.alpha == 0.0 || cfg.eta == 0.0)) throw InputError("alpha and eta must be nonzero");
  if (c == "example2" && !(cfg.epsilon > 0.0)) throw InputError("epsilon must be positive");
  for (int n : cfg.N_list)
    if (n < 2 || n > 512) throw InputError("N_list entries must lie in [2, 512]");
}

}  // namespace slinv::lab
