#pragma once

#include <vector>

#include "slinv/parallel.hpp"
#include "slinv/spectral_core.hpp"

namespace slinv {

struct MainEquationOptions {
  /// |rho^_n| below this selects the derivative branch.
  double eps_rho = 1e-9;
  /// Reciprocal condition estimates beyond this are treated as singular.
  double max_condition = 1e12;
};

/// E + H~(x) truncated to the first N index pairs, with its right-hand side.
struct TruncatedMainSystem {
  double x = 0.0;
  int N = 0;
  Eigen::MatrixXcd H;
  Eigen::VectorXcd psi_tilde;
  Eigen::VectorXcd rho_hat;
  std::vector<bool> zero_mask;

  Eigen::MatrixXcd system_matrix() const {
    return Eigen::MatrixXcd::Identity(H.rows(), H.cols()) + H;
  }
};

Eigen::VectorXcd build_psi_tilde(const PairedData& P, double x, const MainEquationOptions& opts = {});
Eigen::VectorXcd build_psi_tilde(const SpectralData& S, double x, int N, const MainEquationOptions& opts = {});

TruncatedMainSystem build_h_tilde(const PairedData& P, double x, const MainEquationOptions& opts = {});
TruncatedMainSystem build_h_tilde(const SpectralData& S, double x, int N, const MainEquationOptions& opts = {});

/// psi with (E + H~) psi = psi~; throws NonInvertibleError carrying x and N.
Eigen::VectorXcd solve_main_equation(const TruncatedMainSystem& sys, const MainEquationOptions& opts = {});
Eigen::VectorXcd solve_main_equation(const SpectralData& S, double x, int N, const MainEquationOptions& opts = {});

/// phi_{ni}(x) in flat order from psi.
Eigen::VectorXcd recover_phi(const Eigen::VectorXcd& psi, const TruncatedMainSystem& sys);

/// phi_{ni}(x_j) for every node; rows follow x, columns the flat index.
struct PhiField {
  int N = 0;
  Eigen::VectorXd x;
  Eigen::MatrixXcd values;

  cplx operator()(int node, int n, int i) const { return values(node, PairedIndex{n, i}.flat()); }
};

PhiField solve_on_grid(const PairedData& P, const Eigen::VectorXd& x_nodes, const MainEquationOptions& opts = {},
                       const Executor& exec = Executor{});

struct OperatorNorms {
  double normH = 0.0;
  /// Induced sup-norm of the inverse; +inf when inversion fails.
  double K_hat = 0.0;
};

OperatorNorms estimate_operator_norms(const PairedData& P, const std::vector<double>& x_nodes,
                                      const MainEquationOptions& opts = {}, const Executor& exec = Executor{});
OperatorNorms estimate_operator_norms(const SpectralData& S, int N, const std::vector<double>& x_nodes,
                                      const MainEquationOptions& opts = {}, const Executor& exec = Executor{});

double max_row_sum(const Eigen::MatrixXcd& A);

}  // namespace slinv
