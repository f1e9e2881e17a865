#include "slinv/main_equation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "slinv/kernels.hpp"

namespace slinv {

namespace k = kernels;

namespace {

// Condition estimate of a factorization; infinite for zero or non-finite pivots,
// which the rcond estimator does not always notice.
double condition_of(const Eigen::PartialPivLU<Eigen::MatrixXcd>& lu) {
  const auto pivots = lu.matrixLU().diagonal().cwiseAbs();
  if (!pivots.allFinite() || pivots.minCoeff() == 0.0) return std::numeric_limits<double>::infinity();
  const double rcond = lu.rcond();
  const double growth = pivots.maxCoeff() / pivots.minCoeff();
  const double cond = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  return std::max(cond, growth);
}

}  // namespace

double max_row_sum(const Eigen::MatrixXcd& A) {
  if (A.size() == 0) return 0.0;
  return A.cwiseAbs().rowwise().sum().maxCoeff();
}

Eigen::VectorXcd build_psi_tilde(const PairedData& P, double x, const MainEquationOptions& opts) {
  Eigen::VectorXcd psi(2 * P.N);
  for (int n = 0; n < P.N; ++n) {
    const cplx r0 = P.rho0[n], r1 = P.rho1[n];
    psi[2 * n] = std::abs(r0 - r1) < opts.eps_rho ? k::phi_model_drho(x, r1) : k::cos_divdiff(x, r0, r1);
    psi[2 * n + 1] = k::phi_model(x, r1);
  }
  return psi;
}

Eigen::VectorXcd build_psi_tilde(const SpectralData& S, double x, int N, const MainEquationOptions& opts) {
  return build_psi_tilde(pair_with_model(S, N), x, opts);
}

TruncatedMainSystem build_h_tilde(const PairedData& P, double x, const MainEquationOptions& opts) {
  const int N = P.N;
  TruncatedMainSystem sys;
  sys.x = x;
  sys.N = N;
  sys.H.resize(2 * N, 2 * N);
  sys.rho_hat.resize(N);
  sys.zero_mask.resize(N);
  std::vector<cplx> weight(N);  // rho^_k with the mask applied
  for (int n = 0; n < N; ++n) {
    sys.rho_hat[n] = P.rho_hat(n);
    sys.zero_mask[n] = std::abs(sys.rho_hat[n]) < opts.eps_rho;
    weight[n] = sys.zero_mask[n] ? cplx{0.0} : sys.rho_hat[n];
  }
  for (int n = 0; n < N; ++n) {
    const cplx rn0 = P.rho0[n], rn1 = P.rho1[n];
    const bool masked = sys.zero_mask[n];
    for (int kk = 0; kk < N; ++kk) {
      const cplx a0 = P.alpha0[kk], a1 = P.alpha1[kk];
      const cplx rk0 = P.rho0[kk], rk1 = P.rho1[kk];
      // Row (n,1): Q~ rows at rho_{n1}, columns combined by T_k^{-1}.
      const cplx d_k0 = k::d_tilde(x, rn1, rk0);
      const cplx d_k1 = k::d_tilde(x, rn1, rk1);
      sys.H(2 * n + 1, 2 * kk) = weight[kk] * a0 * d_k0;
      sys.H(2 * n + 1, 2 * kk + 1) = a0 * d_k0 - a1 * d_k1;
      // Row (n,0): divided difference between rho_{n0} and rho_{n1}, or the
      // rho-derivative at rho_{n0} on the masked branch.
      const cplx dd_k0 = masked ? k::d_tilde_drho1(x, rn0, rk0) : k::d_tilde_divdiff(x, rn0, rn1, rk0);
      const cplx dd_k1 = masked ? k::d_tilde_drho1(x, rn0, rk1) : k::d_tilde_divdiff(x, rn0, rn1, rk1);
      sys.H(2 * n, 2 * kk) = weight[kk] * a0 * dd_k0;
      sys.H(2 * n, 2 * kk + 1) = a0 * dd_k0 - a1 * dd_k1;
    }
  }
  sys.psi_tilde = build_psi_tilde(P, x, opts);
  return sys;
}

TruncatedMainSystem build_h_tilde(const SpectralData& S, double x, int N, const MainEquationOptions& opts) {
  return build_h_tilde(pair_with_model(S, N), x, opts);
}

Eigen::VectorXcd solve_main_equation(const TruncatedMainSystem& sys, const MainEquationOptions& opts) {
  const Eigen::MatrixXcd A = sys.system_matrix();
  if (!A.allFinite() || !sys.psi_tilde.allFinite())
    throw NonInvertibleError(sys.x, sys.N, std::numeric_limits<double>::infinity(), " (non-finite entries)");
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
  const double cond = condition_of(lu);
  if (!(cond <= opts.max_condition)) throw NonInvertibleError(sys.x, sys.N, cond);
  Eigen::VectorXcd psi = lu.solve(sys.psi_tilde);
  if (!psi.allFinite()) throw NonInvertibleError(sys.x, sys.N, cond, " (non-finite solution)");
  return psi;
}

Eigen::VectorXcd solve_main_equation(const SpectralData& S, double x, int N, const MainEquationOptions& opts) {
  return solve_main_equation(build_h_tilde(S, x, N, opts), opts);
}

Eigen::VectorXcd recover_phi(const Eigen::VectorXcd& psi, const TruncatedMainSystem& sys) {
  Eigen::VectorXcd phi(psi.size());
  for (int n = 0; n < sys.N; ++n) {
    const cplx w = sys.zero_mask[n] ? cplx{0.0} : sys.rho_hat[n];
    phi[2 * n] = w * psi[2 * n] + psi[2 * n + 1];
    phi[2 * n + 1] = psi[2 * n + 1];
  }
  return phi;
}

PhiField solve_on_grid(const PairedData& P, const Eigen::VectorXd& x_nodes, const MainEquationOptions& opts,
                       const Executor& exec) {
  PhiField field;
  field.N = P.N;
  field.x = x_nodes;
  field.values.resize(x_nodes.size(), 2 * P.N);
  exec.for_each_index(static_cast<std::size_t>(x_nodes.size()), [&](std::size_t j) {
    const auto sys = build_h_tilde(P, x_nodes[j], opts);
    field.values.row(j) = recover_phi(solve_main_equation(sys, opts), sys).transpose();
  });
  return field;
}

OperatorNorms estimate_operator_norms(const PairedData& P, const std::vector<double>& x_nodes,
                                      const MainEquationOptions& opts, const Executor& exec) {
  struct Local {
    double h, k;
  };
  auto parts = exec.map<Local>(x_nodes.size(), [&](std::size_t j) {
    const auto sys = build_h_tilde(P, x_nodes[j], opts);
    const Eigen::MatrixXcd A = sys.system_matrix();
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
    double kk = std::numeric_limits<double>::infinity();
    if (condition_of(lu) <= opts.max_condition) kk = max_row_sum(lu.inverse());
    return Local{max_row_sum(sys.H), kk};
  });
  OperatorNorms out;
  for (const auto& l : parts) {
    out.normH = std::max(out.normH, l.h);
    out.K_hat = std::max(out.K_hat, l.k);
  }
  return out;
}

OperatorNorms estimate_operator_norms(const SpectralData& S, int N, const std::vector<double>& x_nodes,
                                      const MainEquationOptions& opts, const Executor& exec) {
  return estimate_operator_norms(pair_with_model(S, N), x_nodes, opts, exec);
}

}  // namespace slinv
