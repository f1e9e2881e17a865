#pragma once

#include <limits>
#include <vector>

#include "slinv/kernels.hpp"
#include "slinv/types.hpp"

namespace slinv {

/// The n-th (1-based) item of the model data for degree p.
SpectralDatum model_datum(int p, int n);

/// First N items of the model data; throws InsufficientTruncationError if N < p + 2.
SpectralData model_spectral_data(int p, int N);

/// Item n (1-based) of S, falling back to the model tail when allowed.
SpectralDatum datum_at(const SpectralData& S, int n);

/// xi_n = |rho_n - rho~_n| + |alpha_n - alpha~_n| over stored items.
std::vector<double> xi_sequence(const SpectralData& S);

double omega_bound(const SpectralData& S);

/// l2 distance of delta_n = |rho1 - rho2| + |alpha1 - alpha2|; shorter data are
/// padded with the model tail.
double z_distance(const SpectralData& S1, const SpectralData& S2);

struct ValidationReport {
  std::vector<int> branch_violations;
  std::vector<int> xi_violations;
  std::vector<int> ordering_violations;
  std::vector<int> ordering_ties;
  double omega = 0.0;
  bool omega_cap_exceeded = false;

  bool clean() const {
    return branch_violations.empty() && xi_violations.empty() && ordering_violations.empty() &&
           !omega_cap_exceeded;
  }
};

ValidationReport validate_spectral_data(const SpectralData& S, double xi_cap = 10.0,
                                        double omega_cap = std::numeric_limits<double>::infinity());

/// Flat (n, i) view of S paired with the model data, truncated at N.
/// i = 0 refers to S, i = 1 to the model.
struct PairedData {
  int p = 0;
  int N = 0;
  std::vector<cplx> lambda0, rho0, alpha0;
  std::vector<cplx> lambda1, rho1, alpha1;

  cplx rho_hat(int k) const { return rho0[k] - rho1[k]; }
};

/// Throws InsufficientTruncationError when N exceeds the stored items of data
/// whose tail is not the model, or when N < p + 2.
PairedData pair_with_model(const SpectralData& S, int N);

/// Flat position of (n, i), n 1-based.
struct PairedIndex {
  int n = 1;
  int i = 0;

  int flat() const noexcept { return 2 * (n - 1) + i; }
  static PairedIndex from_flat(int f) noexcept { return {f / 2 + 1, f % 2}; }
};

}  // namespace slinv
