#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "slinv/reconstruction.hpp"

namespace slinv {

struct SolvabilityCounts {
  int A = 0;
  int B = 0;
  /// 1-based indices of distinct eigenvalues with nonzero weight.
  std::vector<int> index_set;
  std::vector<int> multiplicities;
};

SolvabilityCounts solvability_counts(const SpectralData& S, double zero_weight = 1e-12,
                                     double cluster_radius = 1e-8);

struct SolvabilityProfile {
  int A = 0;
  int B = 0;
  std::vector<int> index_set;
  bool triggered = false;
  std::vector<int> truncations;
  std::vector<double> min_singular_values;
};

SolvabilityProfile solvability_profile(const SpectralData& S, const std::vector<int>& N_list,
                                       const MainEquationOptions& opts = {});

double min_singular_value(const Eigen::MatrixXcd& A);

struct MembershipReport {
  double omega = 0.0;
  double normH = 0.0;
  double K_hat = 0.0;
  bool omega_ok = false;
  bool K_ok = false;

  bool member() const { return omega_ok && K_ok; }
};

MembershipReport membership_check(const SpectralData& S, double omega_cap, double K_cap, int N,
                                  const std::vector<double>& x_nodes, const MainEquationOptions& opts = {},
                                  const Executor& exec = Executor{});

struct StabilityReport {
  double Z = 0.0;
  double sigma_distance = 0.0;
  double coeff_distance = 0.0;
  /// Empty when Z = 0.
  std::optional<double> ratio;

  double distance() const { return sigma_distance + coeff_distance; }
};

/// Left side of the stability estimate: c-sum over n <= p - 1, d-sum over n <= p.
double coefficient_distance(const BoundaryPolynomials& a, const BoundaryPolynomials& b);

StabilityReport compare_reconstructions(const SpectralData& S1, const ReconstructionResult& R1,
                                        const SpectralData& S2, const ReconstructionResult& R2);

/// Throws the inverse-solve error with the offending data set named.
StabilityReport stability_experiment(const SpectralData& S1, const SpectralData& S2, const InverseOptions& opts = {},
                                     const Executor& exec = Executor{});

struct SweepRow {
  double family_param = 0.0;
  StabilityReport report;
  double K_hat = 0.0;
};

std::vector<SweepRow> stability_sweep(const SpectralData& base, const std::function<SpectralData(double)>& family,
                                      const std::vector<double>& params, const InverseOptions& opts = {},
                                      const std::vector<double>& x_nodes = {0.0, pi / 2, pi},
                                      const Executor& exec = Executor{});

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace slinv
