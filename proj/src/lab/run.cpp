#include "slinv/lab/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <random>
#include <sstream>

#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "slinv/diagnostics.hpp"
#include "slinv/io.hpp"
#include "slinv/lab/potentials.hpp"
#include "slinv/reference_cases.hpp"

namespace slinv::lab {

namespace fs = std::filesystem;
using nlohmann::json;

void configure_logging() {
  auto logger = spdlog::stderr_color_mt("slinv");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  const char* env = std::getenv("SOLVER_LOG");
  const std::string level = env ? env : "error";
  if (level == "debug")
    spdlog::set_level(spdlog::level::debug);
  else if (level == "info")
    spdlog::set_level(spdlog::level::info);
  else
    spdlog::set_level(spdlog::level::err);
}

namespace {

std::string fmt_c(cplx z) {
  std::ostringstream s;
  s.precision(10);
  s << '(' << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i)";
  return s.str();
}

std::string fmt_d(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

struct Context {
  const ExperimentConfig& cfg;
  Executor exec;
  fs::path out;
  std::ostringstream text;
  std::vector<std::string> files;

  void emit(const std::string& name) { files.push_back(name); }
  fs::path file(const std::string& name) {
    emit(name);
    return out / name;
  }
};

InverseOptions inverse_options(const ExperimentConfig& cfg) {
  InverseOptions o;
  o.N = cfg.N;
  o.M = cfg.M;
  o.main.eps_rho = cfg.eps_rho;
  return o;
}

SearchOptions search_options(const ExperimentConfig& cfg) {
  SearchOptions o;
  o.r_search = cfg.r_search;
  o.low_height = cfg.low_height;
  return o;
}

std::vector<double> x_nodes(int count) {
  std::vector<double> xs;
  for (int i = 0; i < count; ++i) xs.push_back(pi * i / (count - 1));
  return xs;
}

SpectralData load_data(const ExperimentConfig& cfg) {
  if (cfg.data_path) return io::read_spectral(*cfg.data_path);
  if (cfg.model_p) return model_spectral_data(*cfg.model_p, cfg.N);
  return model_spectral_data(1, cfg.N);
}

BoundaryPolynomials problem_polys(const ExperimentConfig& cfg) {
  return BoundaryPolynomials::normalized(cfg.c, cfg.d);
}

void describe_polys(std::ostream& os, const BoundaryPolynomials& r) {
  os << "  r1 coefficients c:";
  for (auto z : r.c()) os << ' ' << fmt_c(z);
  os << "\n  r2 coefficients d:";
  for (auto z : r.d()) os << ' ' << fmt_c(z);
  os << '\n';
}

void maybe_dump(Context& ctx, const SpectralData& S, const std::string& tag) {
  if (!ctx.cfg.dump_x) return;
  const auto sys = build_h_tilde(S, *ctx.cfg.dump_x, ctx.cfg.N, inverse_options(ctx.cfg).main);
  io::write_system(ctx.file("system_" + tag + ".csv"), sys);
}

ReconstructionResult inverse_and_write(Context& ctx, const SpectralData& S, const std::string& tag) {
  const auto R = solve_inverse(S, inverse_options(ctx.cfg), ctx.exec);
  const std::string sigma_name = "sigma_" + tag + ".csv";
  io::write_potential(ctx.file(sigma_name), R.sigma);
  io::write_result(ctx.file("result_" + tag + ".json"), R, sigma_name);
  return R;
}

void cmd_forward(Context& ctx) {
  const auto& cfg = ctx.cfg;
  const int fm = cfg.forward_M ? cfg.forward_M : cfg.M;
  const auto sigma = generate_potential(cfg.potential, fm);
  const auto r = problem_polys(cfg);
  spdlog::info("forward: potential {} on {} cells, p = {}, N = {}", cfg.potential.name, fm, r.degree(), cfg.N);
  const auto S = forward_spectral_data(sigma, r, cfg.N, search_options(cfg), ctx.exec);
  io::write_spectral(ctx.file("spectral.json"), S);
  io::write_potential(ctx.file("potential.csv"), sigma);
  const auto rep = validate_spectral_data(S);
  ctx.text << "forward problem: sigma = " << cfg.potential.name << ", p = " << r.degree() << ", N = " << cfg.N << '\n';
  describe_polys(ctx.text, r);
  for (int n = 1; n <= std::min<int>(8, S.size()); ++n)
    ctx.text << "  n=" << n << " lambda=" << fmt_c(S.items[n - 1].lambda) << " alpha=" << fmt_c(S.items[n - 1].alpha)
             << '\n';
  ctx.text << "  Omega estimate: " << fmt_d(rep.omega) << '\n';
}

void cmd_inverse(Context& ctx) {
  const auto S = load_data(ctx.cfg);
  spdlog::info("inverse: p = {}, stored items = {}, N = {}", S.p, S.size(), ctx.cfg.N);
  maybe_dump(ctx, S, "inverse");
  const auto R = inverse_and_write(ctx, S, "inverse");
  ctx.text << "inverse problem: p = " << S.p << ", N = " << ctx.cfg.N << ", M = " << ctx.cfg.M << '\n';
  ctx.text << "  ||sigma||_L2 = " << fmt_d(R.sigma.l2_norm()) << '\n';
  describe_polys(ctx.text, R.polys);
  ctx.text << "  leading deviation |c_p - 1| before normalization: " << fmt_d(R.diagnostics.leading_deviation) << '\n';
  ctx.text << "  effective degree of r2: " << R.diagnostics.r2_effective_degree << '\n';
}

void cmd_roundtrip(Context& ctx) {
  const auto& cfg = ctx.cfg;
  const int fm = cfg.forward_M ? cfg.forward_M : cfg.M;
  const auto sigma_f = generate_potential(cfg.potential, fm);
  const auto r = problem_polys(cfg);
  const auto S = forward_spectral_data(sigma_f, r, cfg.N, search_options(cfg), ctx.exec);
  io::write_spectral(ctx.file("spectral.json"), S);
  const auto R = inverse_and_write(ctx, S, "roundtrip");
  const auto sigma_true = generate_potential(cfg.potential, cfg.M);
  io::write_potential(ctx.file("sigma_true.csv"), sigma_true);
  const double err = l2_norm_on_grid(R.sigma.values() - sigma_true.values());
  const double ref = sigma_true.l2_norm();
  ctx.text << "round trip: sigma = " << cfg.potential.name << ", p = " << r.degree() << ", N = " << cfg.N << '\n';
  ctx.text << "  sigma L2 error = " << fmt_d(err);
  if (ref > 0.0) ctx.text << " (relative " << fmt_d(err / ref) << ')';
  ctx.text << "\n  coefficient distance = " << fmt_d(coefficient_distance(r, R.polys)) << '\n';
  ctx.text << "  true:\n";
  describe_polys(ctx.text, r);
  ctx.text << "  recovered:\n";
  describe_polys(ctx.text, R.polys);
}

void cmd_stability(Context& ctx) {
  const auto& cfg = ctx.cfg;
  const auto base = load_data(cfg);
  const auto opts = inverse_options(cfg);
  std::mt19937_64 rng(cfg.seed);
  std::vector<double> scales;
  for (int i = 0; i < cfg.samples; ++i)
    scales.push_back(cfg.delta_scale * std::pow(10.0, -1.0 + 2.0 * i / (cfg.samples - 1)));
  const int count = std::min<int>(8, base.size());
  std::vector<SpectralData> members;
  for (double s : scales) members.push_back(cases::random_perturbation(base, s, count, rng));
  std::size_t idx = 0;
  auto family = [&](double) { return members[idx++]; };
  const auto xs = x_nodes(cfg.x_eval);
  const auto rows = stability_sweep(base, family, scales, opts, xs, ctx.exec);
  io::write_sweep(ctx.file("sweep.csv"), rows);
  std::vector<double> zs, ds;
  double cmax = 0.0;
  bool members_ok = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    zs.push_back(rows[i].report.Z);
    ds.push_back(rows[i].report.distance());
    cmax = std::max(cmax, rows[i].report.ratio.value_or(0.0));
    members_ok = members_ok && omega_bound(members[i]) <= cfg.omega_cap && rows[i].K_hat <= cfg.K_cap;
  }
  ctx.text << "stability sweep: " << rows.size() << " random perturbations, delta scale " << fmt_d(cfg.delta_scale)
           << ", seed " << cfg.seed << '\n';
  ctx.text << "  log-log slope of distance against Z: " << fmt_d(loglog_slope(zs, ds)) << '\n';
  ctx.text << "  empirical constant (max ratio): " << fmt_d(cmax) << '\n';
  ctx.text << "  all members inside caps (Omega, K) = (" << fmt_d(cfg.omega_cap) << ", " << fmt_d(cfg.K_cap)
           << "): " << (members_ok ? "yes" : "no") << '\n';
}

void cmd_diagnose(Context& ctx) {
  const auto& cfg = ctx.cfg;
  const auto S = load_data(cfg);
  const auto rep = validate_spectral_data(S);
  const auto prof = solvability_profile(S, cfg.N_list, inverse_options(cfg).main);
  const auto mem = membership_check(S, cfg.omega_cap, cfg.K_cap, cfg.N, x_nodes(cfg.x_eval),
                                    inverse_options(cfg).main, ctx.exec);
  maybe_dump(ctx, S, "diagnose");
  json j;
  j["A"] = prof.A;
  j["B"] = prof.B;
  j["index_set"] = prof.index_set;
  j["triggered"] = prof.triggered;
  j["truncations"] = prof.truncations;
  j["min_singular_values"] = prof.min_singular_values;
  j["omega"] = mem.omega;
  j["normH"] = mem.normH;
  j["K_hat"] = std::isfinite(mem.K_hat) ? json(mem.K_hat) : json("inf");
  j["member"] = mem.member();
  j["branch_violations"] = rep.branch_violations;
  j["xi_violations"] = rep.xi_violations;
  j["ordering_violations"] = rep.ordering_violations;
  io::write_text(ctx.file("diagnose.json"), j.dump(2) + "\n");
  ctx.text << "diagnostics: p = " << S.p << ", A = " << prof.A << ", B = " << prof.B
           << ", non-solvability condition " << (prof.triggered ? "holds" : "does not hold") << '\n';
  for (std::size_t i = 0; i < prof.truncations.size(); ++i)
    ctx.text << "  N=" << prof.truncations[i] << " smallest singular value of E+H(pi): "
             << fmt_d(prof.min_singular_values[i]) << '\n';
  ctx.text << "  Omega = " << fmt_d(mem.omega) << ", K_hat = " << fmt_d(mem.K_hat) << ", member of the ball: "
           << (mem.member() ? "yes" : "no") << '\n';
}

void sweep_summary(Context& ctx, const std::vector<SweepRow>& rows, const char* param) {
  double lo = INFINITY, hi = 0.0;
  for (const auto& r : rows) {
    const double c = r.report.distance() / r.family_param;
    ctx.text << "  " << param << "=" << fmt_d(r.family_param) << " Z=" << fmt_d(r.report.Z)
             << " sigma_dist=" << fmt_d(r.report.sigma_distance) << " coeff_dist=" << fmt_d(r.report.coeff_distance)
             << " dist/" << param << "=" << fmt_d(c) << " K_hat=" << fmt_d(r.K_hat) << '\n';
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  ctx.text << "  spread of dist/" << param << " across the sweep: factor " << fmt_d(hi / lo) << '\n';
}

void cmd_example1(Context& ctx) {
  const auto& cfg = ctx.cfg;
  const int N = cfg.N;
  const cplx eta = cfg.eta, alpha = cfg.alpha;
  const auto S1 = cases::dummy_eigenvalue_data(eta, 0.0, N);
  const auto S2 = cases::dummy_eigenvalue_data(eta, alpha, N);
  double block_err = 0.0, printed_gap = 0.0;
  for (double x : x_nodes(cfg.x_eval)) {
    const auto sys = build_h_tilde(S2, x, N, inverse_options(cfg).main);
    const Eigen::Matrix2cd got = sys.H.block(2, 2, 2, 2);
    block_err = std::max(block_err, (got - cases::dummy_eigenvalue_block(x, eta, alpha)).cwiseAbs().maxCoeff());
    printed_gap =
        std::max(printed_gap, (got - cases::dummy_eigenvalue_block_as_printed(x, eta, alpha)).cwiseAbs().maxCoeff());
  }
  maybe_dump(ctx, S2, "example1");
  const auto R1 = inverse_and_write(ctx, S1, "L1");
  inverse_and_write(ctx, S2, "L2");
  int removed = 0;
  const auto reduced = reduce_common_roots(R1.polys, 1e-6, &removed);
  const auto rows = stability_sweep(
      S1, [&](double a) { return cases::dummy_eigenvalue_data(eta, a, N); }, cfg.sweep, inverse_options(cfg),
      x_nodes(cfg.x_eval), ctx.exec);
  io::write_sweep(ctx.file("sweep.csv"), rows);
  ctx.text << "example 1 (dummy eigenvalue eta^2 with weight alpha), eta = " << fmt_d(cfg.eta)
           << ", alpha = " << fmt_d(cfg.alpha) << '\n';
  ctx.text << "  max |H_22 - closed form| over x nodes: " << fmt_d(block_err) << '\n';
  ctx.text << "  max |H_22 - displayed form with '+' first row|: " << fmt_d(printed_gap) << '\n';
  ctx.text << "  L1 reconstruction: ||sigma|| = " << fmt_d(R1.sigma.l2_norm()) << '\n';
  describe_polys(ctx.text, R1.polys);
  ctx.text << "  common roots removed from (r1, r2) of L1: " << removed << ", reduced degree " << reduced.degree()
           << '\n';
  sweep_summary(ctx, rows, "alpha");
}

void cmd_example2(Context& ctx) {
  const auto& cfg = ctx.cfg;
  const int N = cfg.N;
  const cplx alpha = cfg.alpha;
  const auto S1 = cases::split_weight_data(alpha, 0.0, 0.0, N);
  double phi_err = 0.0, col_err = 0.0;
  for (double x : x_nodes(cfg.x_eval)) {
    const auto sys = build_h_tilde(S1, x, N, inverse_options(cfg).main);
    const auto phi = recover_phi(solve_main_equation(sys, inverse_options(cfg).main), sys);
    phi_err = std::max({phi_err, std::abs(phi[0] - 1.0), std::abs(phi[2] - 1.0)});
    for (int n = 1; n <= N; ++n)
      col_err = std::max(col_err, (sys.H.block(2 * (n - 1), 0, 2, 2) - cases::split_weight_column1_block(x, n, alpha))
                                      .cwiseAbs()
                                      .maxCoeff());
  }
  maybe_dump(ctx, S1, "example2");
  const auto R1 = inverse_and_write(ctx, S1, "L1");
  int removed = 0;
  const auto reduced = reduce_common_roots(R1.polys, 1e-6, &removed);
  auto family = [&](double eps) { return cases::split_weight_data(alpha, eps, 0.5 * eps, N); };
  inverse_and_write(ctx, family(cfg.epsilon), "L2");
  const auto rows = stability_sweep(S1, family, cfg.sweep, inverse_options(cfg), x_nodes(cfg.x_eval), ctx.exec);
  io::write_sweep(ctx.file("sweep.csv"), rows);
  ctx.text << "example 2 (weight 1/pi split over a double zero eigenvalue), alpha = " << fmt_d(cfg.alpha)
           << ", epsilon = " << fmt_d(cfg.epsilon) << '\n';
  ctx.text << "  max |phi_10 - 1|, |phi_20 - 1| over x nodes: " << fmt_d(phi_err) << '\n';
  ctx.text << "  max |column k=1 block - closed form|: " << fmt_d(col_err) << '\n';
  ctx.text << "  L1 reconstruction: ||sigma|| = " << fmt_d(R1.sigma.l2_norm()) << '\n';
  describe_polys(ctx.text, R1.polys);
  ctx.text << "  common roots removed: " << removed << ", reduced degree " << reduced.degree() << '\n';
  ctx.text << "  perturbation: rho_10 = epsilon, rho_20 = epsilon / 2\n";
  sweep_summary(ctx, rows, "epsilon");
}

void write_manifest(Context& ctx) {
  json j;
  j["command"] = ctx.cfg.command;
  j["N"] = ctx.cfg.N;
  j["M"] = ctx.cfg.M;
  j["seed"] = ctx.cfg.seed;
  j["threads"] = ctx.cfg.threads;
  ctx.emit("summary.txt");
  j["files"] = ctx.files;
  io::write_text(ctx.out / "summary.txt", ctx.text.str());
  io::write_text(ctx.out / "manifest.json", j.dump(2) + "\n");
}

}  // namespace

int run(const ExperimentConfig& cfg, std::ostream& summary) {
  try {
    validate(cfg);
    Context ctx{cfg, Executor(cfg.threads), fs::path(cfg.out_dir), {}, {}};
    fs::create_directories(ctx.out);
    const std::string& c = cfg.command;
    if (c == "forward")
      cmd_forward(ctx);
    else if (c == "inverse")
      cmd_inverse(ctx);
    else if (c == "roundtrip")
      cmd_roundtrip(ctx);
    else if (c == "stability")
      cmd_stability(ctx);
    else if (c == "diagnose")
      cmd_diagnose(ctx);
    else if (c == "example1")
      cmd_example1(ctx);
    else if (c == "example2")
      cmd_example2(ctx);
    write_manifest(ctx);
    summary << ctx.text.str();
    return exit_ok;
  } catch (const InputError& e) {
    spdlog::error("input error: {}", e.what());
    summary << "error: " << e.what() << '\n';
    return exit_input;
  } catch (const NumericalError& e) {
    spdlog::error("numerical failure in {}: {}", e.stage(), e.what());
    summary << "numerical failure [" << e.stage() << "]: " << e.what() << '\n';
    return exit_numerical;
  } catch (const fs::filesystem_error& e) {
    spdlog::error("file system: {}", e.what());
    summary << "error: " << e.what() << '\n';
    return exit_input;
  } catch (const std::exception& e) {
    spdlog::error("failure: {}", e.what());
    summary << "failure: " << e.what() << '\n';
    return exit_numerical;
  }
}

}  // namespace slinv::lab
