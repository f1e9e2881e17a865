#include <iostream>

#include <CLI11.hpp>

#include "slinv/lab/run.hpp"

int main(int argc, char** argv) {
  using namespace slinv::lab;
  CLI::App app{"Inverse spectral experiments for Sturm-Liouville operators with polynomial boundary conditions"};
  std::string command, config_path;
  std::optional<std::string> out, data;
  std::optional<int> threads, N, M, model_p;
  std::optional<std::uint64_t> seed;
  std::optional<double> alpha, eta, epsilon;

  app.add_option("command", command, "forward, inverse, roundtrip, stability, diagnose, example1 or example2");
  app.add_option("-c,--config", config_path, "JSON experiment config")->check(CLI::ExistingFile);
  app.add_option("-o,--out", out, "Output directory");
  app.add_option("--data", data, "Spectral data JSON file");
  app.add_option("--model-p", model_p, "Use the model data of this degree");
  app.add_option("-j,--threads", threads, "Worker threads");
  app.add_option("--seed", seed, "Seed for random perturbations");
  app.add_option("-N,--N", N, "Truncation level");
  app.add_option("-M,--M", M, "Grid cells on [0, pi]");
  app.add_option("--alpha", alpha, "Weight parameter for the reference examples");
  app.add_option("--eta", eta, "Dummy eigenvalue square root for example1");
  app.add_option("--epsilon", epsilon, "Perturbation size for example2");
  CLI11_PARSE(app, argc, argv);

  configure_logging();
  ExperimentConfig cfg;
  try {
    if (!config_path.empty()) cfg = load_config(config_path);
  } catch (const slinv::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_input;
  }
  if (!command.empty()) cfg.command = command;
  if (out) cfg.out_dir = *out;
  if (data) cfg.data_path = *data;
  if (model_p) cfg.model_p = *model_p;
  if (threads) cfg.threads = *threads;
  if (seed) cfg.seed = *seed;
  if (N) cfg.N = *N;
  if (M) cfg.M = *M;
  if (alpha) cfg.alpha = *alpha;
  if (eta) cfg.eta = *eta;
  if (epsilon) cfg.epsilon = *epsilon;
  return run(cfg, std::cout);
}
