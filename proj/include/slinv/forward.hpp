#pragma once

#include <vector>

#include "slinv/parallel.hpp"
#include "slinv/types.hpp"

namespace slinv {

/// Initial pair (y(0), y^[1](0)).
struct InitPair {
  cplx y{1.0};
  cplx y1{0.0};
};

inline constexpr InitPair phi_init{cplx{1.0}, cplx{0.0}};
inline constexpr InitPair s_init{cplx{0.0}, cplx{1.0}};

/// Solution of y' = sigma y + y1, y1' = -sigma y1 - (sigma^2 + lambda) y on the
/// grid nodes. dy, dy1 hold the lambda-derivative when requested, else empty.
struct QuasiSolution {
  Eigen::VectorXcd y;
  Eigen::VectorXcd y1;
  Eigen::VectorXcd dy;
  Eigen::VectorXcd dy1;
  cplx lambda{};
};

/// Values at x = pi only.
struct Endpoint {
  cplx y{}, y1{};
  cplx dy{}, dy1{};
};

QuasiSolution integrate_phi(const PotentialGrid& sigma, cplx lambda, InitPair init = phi_init,
                            bool with_derivative = false);

Endpoint shoot(const PotentialGrid& sigma, cplx lambda, InitPair init = phi_init,
               bool with_derivative = false);

struct CharacteristicValue {
  cplx delta{};
  cplx ddelta{};
};

CharacteristicValue char_function(const PotentialGrid& sigma, const BoundaryPolynomials& r, cplx lambda);

struct SearchOptions {
  double r_search = 0.45;
  int samples = 512;
  /// Half-height of the low-index rectangle in the rho-plane.
  double low_height = 4.0;
  int newton_max = 50;
  double newton_tol = 1e-13;
};

/// lambda_1..lambda_N ordered by the asymptotics.
std::vector<cplx> find_eigenvalues(const PotentialGrid& sigma, const BoundaryPolynomials& r, int N,
                                   const SearchOptions& opts = {}, const Executor& exec = Executor{});

/// Residues of the Weyl function at simple zeros of the characteristic function.
std::vector<cplx> weight_numbers(const PotentialGrid& sigma, const BoundaryPolynomials& r,
                                 const std::vector<cplx>& eigs, const Executor& exec = Executor{});

/// (1/2 pi i) times the contour integral of M over |lambda - center| = radius,
/// trapezoid rule with the given sample count.
cplx weyl_contour_integral(const PotentialGrid& sigma, const BoundaryPolynomials& r, cplx center,
                           double radius, int samples = 256);

/// Residue at an eigenvalue by contour quadrature on a circle sized from the
/// distance to its neighbours.
cplx weight_by_contour(const PotentialGrid& sigma, const BoundaryPolynomials& r,
                       const std::vector<cplx>& eigs, std::size_t index, int samples = 128);

/// M(lambda) from the endpoint ratio; throws PoleProximityError within 1e-8 of a pole.
cplx weyl_function(const PotentialGrid& sigma, const BoundaryPolynomials& r, cplx lambda);

/// Partial-fraction sum over stored items plus tail_terms further model terms.
cplx weyl_series(const SpectralData& S, cplx lambda, int tail_terms = 10000);

SpectralData forward_spectral_data(const PotentialGrid& sigma, const BoundaryPolynomials& r, int N,
                                   const SearchOptions& opts = {}, const Executor& exec = Executor{});

}  // namespace slinv
