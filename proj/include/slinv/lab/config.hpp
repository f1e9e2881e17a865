#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "slinv/types.hpp"

namespace slinv::lab {

struct PotentialSpec {
  std::string name = "zero";
  std::vector<double> params;
};

struct ExperimentConfig {
  std::string command;

  // problem spec
  bool has_problem = false;
  PotentialSpec potential;
  int p = 0;
  std::vector<cplx> c{cplx{1.0}};
  std::vector<cplx> d{cplx{0.0}};

  // data source
  std::optional<std::string> data_path;
  std::optional<int> model_p;

  // numeric knobs
  int N = 64;
  int M = 512;
  /// Grid for the forward solver; 0 means M.
  int forward_M = 0;
  double eps_rho = 1e-9;
  double r_search = 0.45;
  double low_height = 4.0;
  int x_eval = 9;

  // example and experiment parameters
  double alpha = 1e-3;
  double eta = 1.0;
  double epsilon = 1e-3;
  std::vector<double> sweep{1e-2, 1e-3, 1e-4};
  std::vector<int> N_list{16, 32, 64, 128};
  double omega_cap = 1.0;
  double K_cap = 2.0;
  int samples = 10;
  double delta_scale = 1e-3;

  std::optional<double> dump_x;

  std::string out_dir = "out";
  int threads = 1;
  std::uint64_t seed = 0;
};

/// Parses a JSON config; throws InputError on malformed input.
ExperimentConfig config_from_json(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Range and consistency checks; throws InputError.
void validate(const ExperimentConfig& cfg);

inline const std::vector<std::string>& known_commands() {
  static const std::vector<std::string> names{"forward", "inverse",  "roundtrip", "stability",
                                              "diagnose", "example1", "example2"};
  return names;
}

}  // namespace slinv::lab
