#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "slinv/types.hpp"

namespace slinv::cases {

/// p = 1 model data with a dummy eigenvalue eta^2 at index 2 carrying weight alpha.
/// alpha = 0 gives the unperturbed problem.
SpectralData dummy_eigenvalue_data(cplx eta, cplx alpha, int N);

/// p = 1 data whose first weight 1/pi is split into (alpha, 1/pi - alpha) over
/// eigenvalues rho10^2 and rho20^2; rho = 0 gives the unperturbed problem.
SpectralData split_weight_data(cplx alpha, cplx rho10, cplx rho20, int N);

/// Model data of degree p with alpha_1 replaced by zero.
SpectralData zero_first_weight_data(int p, int N);

/// (2,2) block of H~(x) for the dummy-eigenvalue data, closed form.
Eigen::Matrix2cd dummy_eigenvalue_block(double x, cplx eta, cplx alpha);

/// Same block with a plus sign in the first row, the commonly quoted variant
/// (kept for comparison only).
Eigen::Matrix2cd dummy_eigenvalue_block_as_printed(double x, cplx eta, cplx alpha);

/// Column k = 1 block of H~(x) in row n for the unperturbed split-weight data, closed form.
Eigen::Matrix2cd split_weight_column1_block(double x, int n, cplx alpha);

/// int_0^x t sin(rho t) dt and int_0^x cos(rho t) dt in closed form.
cplx int_t_sin(double x, cplx rho);
cplx int_cos(double x, cplx rho);

/// Random perturbation of the first `count` items of base: alpha for all of
/// them, rho only past index p + 1. The direction has unit l2 norm in the
/// delta metric before scaling.
SpectralData random_perturbation(const SpectralData& base, double scale, int count, std::mt19937_64& rng);

}  // namespace slinv::cases
