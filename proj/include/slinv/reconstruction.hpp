#pragma once

#include <string>
#include <vector>

#include "slinv/forward.hpp"
#include "slinv/main_equation.hpp"

namespace slinv {

/// Terms of the boundary formulas for r1 and r2 at x = pi.
struct BoundaryData {
  std::vector<cplx> phi_pi;    // phi_{k0}(pi)
  std::vector<cplx> quasi_pi;  // phi^[1]_{k0}(pi)
  cplx sigma_terms{0.0};       // sum_k sum_j (-1)^j alpha_kj (1 - phi~_kj phi_kj) at the chosen x
};

enum class PhiAtPiSource { main_equation, reintegration };

struct InverseOptions {
  int N = 64;
  int M = 512;
  MainEquationOptions main{};
  /// Position at which the sigma-type series of r2 is evaluated.
  double r2_x = pi;
  PhiAtPiSource phi_pi_source = PhiAtPiSource::main_equation;
  /// Leading coefficients of r1 further than this from 1 are rejected.
  double leading_tolerance = 0.1;
  double r2_zero_threshold = 1e-8;
  bool reduce_common_roots = false;
  double common_root_tolerance = 1e-6;
};

struct ReconstructionDiagnostics {
  double leading_deviation = 0.0;
  int r2_effective_degree = -1;
  std::vector<int> truncated_r2_coefficients;
  /// sum over retained k of xi_k / k, a proxy for the neglected product tail.
  double tail_bound = 0.0;
  /// L2 norms of the bracketed terms of the sigma series, per k.
  std::vector<double> sigma_term_norms;
  double omega = 0.0;
  std::vector<cplx> nodes;
  std::vector<cplx> r1_values;
  std::vector<cplx> r2_values;
  int common_roots_removed = 0;
};

struct ReconstructionResult {
  PotentialGrid sigma;
  BoundaryPolynomials polys;
  ReconstructionDiagnostics diagnostics;
  BoundaryData boundary;
};

/// sigma on the field's nodes by the bracketed series.
PotentialGrid reconstruct_sigma(const PairedData& P, const PhiField& phi);

/// L2 norm of the k-th bracketed term of the sigma series over the field nodes.
std::vector<double> sigma_term_norms(const PairedData& P, const PhiField& phi);

struct EndpointValues {
  std::vector<cplx> phi_pi;
  std::vector<cplx> quasi_pi;
};

/// phi_{k0}(pi) and phi^[1]_{k0}(pi) by integrating with sigma at lambda_{k0}.
EndpointValues quasi_derivatives_at_pi(const PotentialGrid& sigma, const PairedData& P,
                                       const Executor& exec = Executor{});

/// sum_k sum_j (-1)^j alpha_kj (1 - cos(rho_kj x) phi_kj(x)) for phi given in flat order.
cplx sigma_type_series(const PairedData& P, double x, const Eigen::VectorXcd& phi_flat);

/// Prefactor of both boundary formulas: the finite product times the truncated infinite product.
cplx boundary_prefactor(const PairedData& P, cplx lambda);

/// Disk radius factor eps(Omega) of the interpolation argument.
double excluded_disk_factor(int p, double omega);

/// Throws PoleProximityError if |lambda - lambda_kj| < eps k^2 for some retained k.
void check_excluded_disks(const PairedData& P, cplx lambda, double eps);

cplx eval_r1(const PairedData& P, const BoundaryData& b, cplx lambda, double disk_eps = 0.0);
cplx eval_r2(const PairedData& P, const BoundaryData& b, cplx lambda, double disk_eps = 0.0);

/// lambda_i = -6 Omega^2 - (i / (p + 2)) Omega^2, i = 1..p+1, with Omega floored at 1.
std::vector<cplx> interpolation_nodes(int p, double omega);

/// Monomial coefficients of the degree-(n-1) interpolant through n points.
std::vector<cplx> interpolate_coefficients(const std::vector<cplx>& values, const std::vector<cplx>& nodes);

/// Roots shared by r1 and r2 within tol, removed from both; returns the reduced pair.
BoundaryPolynomials reduce_common_roots(const BoundaryPolynomials& polys, double tol, int* removed = nullptr);

ReconstructionResult solve_inverse(const SpectralData& S, const InverseOptions& opts = {},
                                   const Executor& exec = Executor{});

}  // namespace slinv
