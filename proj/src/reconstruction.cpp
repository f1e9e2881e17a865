#include "slinv/reconstruction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "slinv/diagnostics.hpp"
#include "slinv/kernels.hpp"

namespace slinv {

namespace {

// phi~^[1](pi) of the model solution at rho.
cplx model_quasi_at_pi(cplx rho) { return kernels::phi_model_quasi(pi, rho); }

double paired_omega(const PairedData& P) {
  double acc = 0.0;
  for (int k = 0; k < P.N; ++k) {
    const double xi = std::abs(P.rho0[k] - P.rho1[k]) + std::abs(P.alpha0[k] - P.alpha1[k]);
    acc += xi * xi;
  }
  return std::sqrt(acc);
}

std::vector<cplx> polynomial_roots(const std::vector<cplx>& monic) {
  const int n = static_cast<int>(monic.size()) - 1;
  if (n < 1) return {};
  if (n == 1) return {-monic[0]};
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) C(i, n - 1) = -monic[i];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ces(C, false);
  return {ces.eigenvalues().data(), ces.eigenvalues().data() + n};
}

std::vector<cplx> deflate(const std::vector<cplx>& a, cplx root) {
  const int n = static_cast<int>(a.size()) - 1;
  std::vector<cplx> q(std::max(n, 1), cplx{0.0});
  if (n < 1) return q;
  q[n - 1] = a[n];
  for (int i = n - 1; i >= 1; --i) q[i - 1] = a[i] + root * q[i];
  return q;
}

}  // namespace

PotentialGrid reconstruct_sigma(const PairedData& P, const PhiField& phi) {
  const Eigen::Index nodes = phi.x.size();
  Eigen::VectorXcd sigma = Eigen::VectorXcd::Zero(nodes);
  for (Eigen::Index j = 0; j < nodes; ++j) {
    const double x = phi.x[j];
    cplx acc{0.0};
    for (int k = 0; k < P.N; ++k) {
      const cplx t0 = P.alpha0[k] * (1.0 - 2.0 * std::cos(P.rho0[k] * x) * phi.values(j, 2 * k));
      const cplx t1 = P.alpha1[k] * (1.0 - 2.0 * std::cos(P.rho1[k] * x) * phi.values(j, 2 * k + 1));
      acc += t0 - t1;
    }
    sigma[j] = acc;
  }
  return PotentialGrid(std::move(sigma));
}

std::vector<double> sigma_term_norms(const PairedData& P, const PhiField& phi) {
  std::vector<double> out(P.N);
  const Eigen::Index nodes = phi.x.size();
  for (int k = 0; k < P.N; ++k) {
    Eigen::VectorXcd term(nodes);
    for (Eigen::Index j = 0; j < nodes; ++j) {
      const double x = phi.x[j];
      term[j] = P.alpha0[k] * (1.0 - 2.0 * std::cos(P.rho0[k] * x) * phi.values(j, 2 * k)) -
                P.alpha1[k] * (1.0 - 2.0 * std::cos(P.rho1[k] * x) * phi.values(j, 2 * k + 1));
    }
    out[k] = l2_norm_on_grid(term);
  }
  return out;
}

EndpointValues quasi_derivatives_at_pi(const PotentialGrid& sigma, const PairedData& P, const Executor& exec) {
  auto ends = exec.map<Endpoint>(P.N, [&](std::size_t k) { return shoot(sigma, P.lambda0[k], phi_init, false); });
  EndpointValues out;
  out.phi_pi.reserve(P.N);
  out.quasi_pi.reserve(P.N);
  for (const auto& e : ends) {
    out.phi_pi.push_back(e.y);
    out.quasi_pi.push_back(e.y1);
  }
  return out;
}

cplx sigma_type_series(const PairedData& P, double x, const Eigen::VectorXcd& phi_flat) {
  cplx acc{0.0};
  for (int k = 0; k < P.N; ++k) {
    acc += P.alpha0[k] * (1.0 - std::cos(P.rho0[k] * x) * phi_flat[2 * k]) -
           P.alpha1[k] * (1.0 - std::cos(P.rho1[k] * x) * phi_flat[2 * k + 1]);
  }
  return acc;
}

cplx boundary_prefactor(const PairedData& P, cplx lambda) {
  cplx prod{1.0};
  for (int k = 0; k < P.N; ++k) {
    if (k < P.p)
      prod *= lambda - P.lambda0[k];
    else
      prod *= (lambda - P.lambda0[k]) / (lambda - P.lambda1[k]);
  }
  return prod;
}

double excluded_disk_factor(int p, double omega) {
  const double om = std::max(1.0, omega);
  const double kstar = std::ceil(4.0 * (p + 1 + om));
  return std::min(0.5, om * om / (kstar * kstar));
}

void check_excluded_disks(const PairedData& P, cplx lambda, double eps) {
  if (eps <= 0.0) return;
  for (int k = 0; k < P.N; ++k) {
    const double bound = eps * (k + 1.0) * (k + 1.0);
    if (std::abs(lambda - P.lambda0[k]) < bound || std::abs(lambda - P.lambda1[k]) < bound)
      throw PoleProximityError("evaluation point inside the excluded disk of index " + std::to_string(k + 1));
  }
}

cplx eval_r1(const PairedData& P, const BoundaryData& b, cplx lambda, double disk_eps) {
  check_excluded_disks(P, lambda, disk_eps);
  cplx series{0.0};
  for (int k = 0; k < P.N; ++k)
    series += P.alpha0[k] * model_quasi_at_pi(P.rho0[k]) * b.phi_pi[k] / (lambda - P.lambda0[k]);
  return boundary_prefactor(P, lambda) * (1.0 - series);
}

cplx eval_r2(const PairedData& P, const BoundaryData& b, cplx lambda, double disk_eps) {
  check_excluded_disks(P, lambda, disk_eps);
  cplx series{0.0};
  for (int k = 0; k < P.N; ++k)
    series += P.alpha0[k] * model_quasi_at_pi(P.rho0[k]) * b.quasi_pi[k] / (lambda - P.lambda0[k]);
  return boundary_prefactor(P, lambda) * (series + b.sigma_terms);
}

std::vector<cplx> interpolation_nodes(int p, double omega) {
  const double om = std::max(1.0, omega);
  std::vector<cplx> nodes;
  for (int i = 1; i <= p + 1; ++i) nodes.emplace_back(-6.0 * om * om - (static_cast<double>(i) / (p + 2)) * om * om);
  return nodes;
}

std::vector<cplx> interpolate_coefficients(const std::vector<cplx>& values, const std::vector<cplx>& nodes) {
  const int n = static_cast<int>(nodes.size());
  if (n == 0 || static_cast<int>(values.size()) != n) throw InputError("interpolation needs matching nodes and values");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(nodes[i] - nodes[j]) < 1e-12 * std::max(1.0, std::abs(nodes[i])))
        throw ReconstructionQualityError("interpolation nodes collide");
  // Lagrange basis polynomials expanded into monomials.
  std::vector<cplx> coeffs(n, cplx{0.0});
  for (int i = 0; i < n; ++i) {
    std::vector<cplx> basis{cplx{1.0}};
    cplx denom{1.0};
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      std::vector<cplx> next(basis.size() + 1, cplx{0.0});
      for (std::size_t t = 0; t < basis.size(); ++t) {
        next[t + 1] += basis[t];
        next[t] -= nodes[j] * basis[t];
      }
      basis = std::move(next);
      denom *= nodes[i] - nodes[j];
    }
    for (int t = 0; t < n; ++t) coeffs[t] += values[i] * basis[t] / denom;
  }
  return coeffs;
}

BoundaryPolynomials reduce_common_roots(const BoundaryPolynomials& polys, double tol, int* removed) {
  std::vector<cplx> c = polys.c(), d = polys.d();
  int count = 0;
  bool changed = true;
  while (changed && c.size() > 1) {
    changed = false;
    for (const cplx root : polynomial_roots(c)) {
      double dscale = 0.0;
      for (const auto& v : d) dscale = std::max(dscale, std::abs(v));
      if (std::abs(polyval(d, root)) <= tol * std::max(1.0, dscale)) {
        c = deflate(c, root);
        d = deflate(d, root);
        ++count;
        changed = true;
        break;
      }
    }
  }
  if (removed) *removed = count;
  return {c, d};
}

ReconstructionResult solve_inverse(const SpectralData& S, const InverseOptions& opts, const Executor& exec) {
  if (opts.M < 1) throw InputError("grid size M must be positive");
  const PairedData P = pair_with_model(S, opts.N);
  const int p = P.p;
  const Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(opts.M + 1, 0.0, pi);

  PhiField field;
  try {
    field = solve_on_grid(P, x, opts.main, exec);
  } catch (const NonInvertibleError& e) {
    SpectralData head = S;
    if (static_cast<int>(head.items.size()) > opts.N) head.items.resize(opts.N);
    const auto counts = solvability_counts(head);
    std::string note = " [A=" + std::to_string(counts.A) + ", B=" + std::to_string(counts.B);
    note += counts.A + counts.B >= p + 1 ? ", non-solvability condition A+B >= p+1 holds]" : "]";
    throw NonInvertibleError(e.x(), e.truncation(), e.condition(), note);
  }

  ReconstructionResult R;
  R.sigma = reconstruct_sigma(P, field);
  R.diagnostics.sigma_term_norms = sigma_term_norms(P, field);

  const int last = opts.M;
  const auto ends = quasi_derivatives_at_pi(R.sigma, P, exec);
  BoundaryData& b = R.boundary;
  b.quasi_pi = ends.quasi_pi;
  if (opts.phi_pi_source == PhiAtPiSource::reintegration) {
    b.phi_pi = ends.phi_pi;
  } else {
    b.phi_pi.resize(P.N);
    for (int k = 0; k < P.N; ++k) b.phi_pi[k] = field.values(last, 2 * k);
  }
  if (opts.r2_x == pi) {
    b.sigma_terms = sigma_type_series(P, pi, field.values.row(last).transpose());
  } else {
    const auto sys = build_h_tilde(P, opts.r2_x, opts.main);
    b.sigma_terms = sigma_type_series(P, opts.r2_x, recover_phi(solve_main_equation(sys, opts.main), sys));
  }

  const double omega = paired_omega(P);
  auto& diag = R.diagnostics;
  diag.omega = omega;
  diag.nodes = interpolation_nodes(p, omega);
  const double eps = excluded_disk_factor(p, omega);
  for (const auto& node : diag.nodes) {
    diag.r1_values.push_back(eval_r1(P, b, node, eps));
    diag.r2_values.push_back(eval_r2(P, b, node, eps));
  }
  auto c = interpolate_coefficients(diag.r1_values, diag.nodes);
  auto d = interpolate_coefficients(diag.r2_values, diag.nodes);
  diag.leading_deviation = std::abs(c.back() - 1.0);
  if (diag.leading_deviation > opts.leading_tolerance)
    throw ReconstructionQualityError("leading coefficient of r1 deviates from 1 by " +
                                     std::to_string(diag.leading_deviation));
  const cplx lead = c.back();
  for (auto& v : c) v /= lead;
  for (auto& v : d) v /= lead;
  c.back() = 1.0;
  for (int j = 0; j <= p; ++j) {
    if (std::abs(d[j]) < opts.r2_zero_threshold) {
      if (d[j] != 0.0) diag.truncated_r2_coefficients.push_back(j);
      d[j] = 0.0;
    } else {
      diag.r2_effective_degree = j;
    }
  }
  R.polys = BoundaryPolynomials(c, d);
  if (opts.reduce_common_roots) R.polys = reduce_common_roots(R.polys, opts.common_root_tolerance, &diag.common_roots_removed);

  for (int k = 0; k < P.N; ++k) {
    const double xi = std::abs(P.rho0[k] - P.rho1[k]) + std::abs(P.alpha0[k] - P.alpha1[k]);
    diag.tail_bound += xi / (k + 1.0);
  }
  return R;
}

}  // namespace slinv
