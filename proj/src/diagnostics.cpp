#include "slinv/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/SVD>

namespace slinv {

SolvabilityCounts solvability_counts(const SpectralData& S, double zero_weight, double cluster_radius) {
  SolvabilityCounts out;
  std::vector<int> cluster_of;  // representative position in index_set
  for (int n = 1; n <= static_cast<int>(S.size()); ++n) {
    const auto& d = S.items[n - 1];
    if (std::abs(d.alpha) <= zero_weight) {
      ++out.A;
      continue;
    }
    bool found = false;
    for (std::size_t c = 0; c < out.index_set.size(); ++c) {
      if (std::abs(S.items[out.index_set[c] - 1].lambda - d.lambda) <= cluster_radius) {
        ++out.multiplicities[c];
        found = true;
        break;
      }
    }
    if (!found) {
      out.index_set.push_back(n);
      out.multiplicities.push_back(1);
    }
  }
  for (int m : out.multiplicities) out.B += m - 1;
  return out;
}

double min_singular_value(const Eigen::MatrixXcd& A) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(A);
  const auto& s = svd.singularValues();
  return s.size() ? s[s.size() - 1] : 0.0;
}

SolvabilityProfile solvability_profile(const SpectralData& S, const std::vector<int>& N_list,
                                       const MainEquationOptions& opts) {
  SolvabilityProfile prof;
  const auto counts = solvability_counts(S);
  prof.A = counts.A;
  prof.B = counts.B;
  prof.index_set = counts.index_set;
  prof.triggered = counts.A + counts.B >= S.p + 1;
  for (int N : N_list) {
    const auto sys = build_h_tilde(S, pi, N, opts);
    prof.truncations.push_back(N);
    prof.min_singular_values.push_back(min_singular_value(sys.system_matrix()));
  }
  return prof;
}

MembershipReport membership_check(const SpectralData& S, double omega_cap, double K_cap, int N,
                                  const std::vector<double>& x_nodes, const MainEquationOptions& opts,
                                  const Executor& exec) {
  MembershipReport rep;
  rep.omega = omega_bound(S);
  const auto norms = estimate_operator_norms(S, N, x_nodes, opts, exec);
  rep.normH = norms.normH;
  rep.K_hat = norms.K_hat;
  rep.omega_ok = rep.omega <= omega_cap;
  rep.K_ok = rep.K_hat <= K_cap;
  return rep;
}

double coefficient_distance(const BoundaryPolynomials& a, const BoundaryPolynomials& b) {
  const int p = std::max(a.degree(), b.degree());
  auto at = [](const std::vector<cplx>& v, int j) { return j < static_cast<int>(v.size()) ? v[j] : cplx{0.0}; };
  double acc = 0.0;
  for (int n = 0; n <= p - 1; ++n) acc += std::abs(at(a.c(), n) - at(b.c(), n));
  for (int n = 0; n <= p; ++n) acc += std::abs(at(a.d(), n) - at(b.d(), n));
  return acc;
}

StabilityReport compare_reconstructions(const SpectralData& S1, const ReconstructionResult& R1,
                                        const SpectralData& S2, const ReconstructionResult& R2) {
  if (R1.sigma.cells() != R2.sigma.cells()) throw InputError("reconstructions use different grids");
  StabilityReport rep;
  rep.Z = z_distance(S1, S2);
  rep.sigma_distance = l2_norm_on_grid(R1.sigma.values() - R2.sigma.values());
  rep.coeff_distance = coefficient_distance(R1.polys, R2.polys);
  if (rep.Z > 0.0) rep.ratio = rep.distance() / rep.Z;
  return rep;
}

namespace {

ReconstructionResult tagged_inverse(const SpectralData& S, const InverseOptions& opts, const Executor& exec,
                                    const char* tag) {
  try {
    return solve_inverse(S, opts, exec);
  } catch (const NumericalError& e) {
    throw NumericalError(std::string("stability experiment, data set ") + tag, e.what());
  }
}

}  // namespace

StabilityReport stability_experiment(const SpectralData& S1, const SpectralData& S2, const InverseOptions& opts,
                                     const Executor& exec) {
  const auto R1 = tagged_inverse(S1, opts, exec, "S1");
  const auto R2 = tagged_inverse(S2, opts, exec, "S2");
  return compare_reconstructions(S1, R1, S2, R2);
}

std::vector<SweepRow> stability_sweep(const SpectralData& base, const std::function<SpectralData(double)>& family,
                                      const std::vector<double>& params, const InverseOptions& opts,
                                      const std::vector<double>& x_nodes, const Executor& exec) {
  const auto R0 = tagged_inverse(base, opts, exec, "base");
  std::vector<SweepRow> rows;
  for (double t : params) {
    const auto S = family(t);
    const auto R = tagged_inverse(S, opts, exec, "family member");
    SweepRow row;
    row.family_param = t;
    row.report = compare_reconstructions(base, R0, S, R);
    row.K_hat = estimate_operator_norms(S, opts.N, x_nodes, opts.main, exec).K_hat;
    rows.push_back(row);
  }
  return rows;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  return (n * sxy - sx * sy) / denom;
}

}  // namespace slinv
