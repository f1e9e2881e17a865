#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "slinv/errors.hpp"

namespace slinv {

using cplx = std::complex<double>;
inline constexpr double pi = std::numbers::pi;

/// Square root on the branch arg(rho) in [-pi/2, pi/2). Points on the cut
/// (negative reals) resolve to the lower half-line.
cplx branch_sqrt(cplx lambda);

/// One eigenvalue with its square root and weight number.
struct SpectralDatum {
  cplx lambda{};
  cplx rho{};
  cplx alpha{};

  static SpectralDatum from_lambda(cplx lambda, cplx alpha);
  /// Builds the datum from rho; rho is mapped onto the branch if needed.
  static SpectralDatum from_rho(cplx rho, cplx alpha);
};

/// Eigenvalues and weight numbers; indices past items.size() are either
/// model data (tail_is_model) or simply unknown.
struct SpectralData {
  int p = 0;
  std::vector<SpectralDatum> items;
  bool tail_is_model = true;

  std::size_t size() const noexcept { return items.size(); }
};

/// (r1, r2) with r1 monic of degree p and deg r2 <= p.
class BoundaryPolynomials {
 public:
  BoundaryPolynomials() : c_(1, cplx{1.0}), d_(1, cplx{0.0}) {}

  /// Requires c.size() == d.size() and c.back() == 1 (within 1e-12).
  BoundaryPolynomials(std::vector<cplx> c, std::vector<cplx> d);

  /// Divides both polynomials by the leading coefficient of r1.
  static BoundaryPolynomials normalized(std::vector<cplx> c, std::vector<cplx> d);

  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  const std::vector<cplx>& c() const noexcept { return c_; }
  const std::vector<cplx>& d() const noexcept { return d_; }

  cplx r1(cplx lambda) const;
  cplx r2(cplx lambda) const;
  cplx dr1(cplx lambda) const;
  cplx dr2(cplx lambda) const;

 private:
  std::vector<cplx> c_;
  std::vector<cplx> d_;
};

cplx polyval(const std::vector<cplx>& coeffs, cplx z);
cplx polyder_val(const std::vector<cplx>& coeffs, cplx z);

/// Complex samples of sigma on the uniform grid x_j = pi j / M, j = 0..M.
class PotentialGrid {
 public:
  PotentialGrid() = default;
  explicit PotentialGrid(Eigen::VectorXcd values);

  static PotentialGrid zero(int cells);

  int cells() const noexcept { return static_cast<int>(values_.size()) - 1; }
  double step() const noexcept { return pi / cells(); }
  double x(int j) const noexcept { return pi * j / cells(); }
  Eigen::VectorXd nodes() const;

  const Eigen::VectorXcd& values() const noexcept { return values_; }
  cplx operator[](int j) const { return values_[j]; }

  /// Trapezoid L2 norm over [0, pi].
  double l2_norm() const;
  bool all_finite() const;

 private:
  Eigen::VectorXcd values_;
};

/// Trapezoid L2 norm of grid samples on [0, pi].
double l2_norm_on_grid(const Eigen::VectorXcd& values);

}  // namespace slinv
