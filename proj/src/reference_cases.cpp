#include "slinv/reference_cases.hpp"

#include <cmath>

#include "slinv/spectral_core.hpp"

namespace slinv::cases {

SpectralData dummy_eigenvalue_data(cplx eta, cplx alpha, int N) {
  auto S = model_spectral_data(1, N);
  S.items[1] = SpectralDatum::from_rho(eta, alpha);
  return S;
}

SpectralData split_weight_data(cplx alpha, cplx rho10, cplx rho20, int N) {
  auto S = model_spectral_data(1, N);
  S.items[0] = SpectralDatum::from_rho(rho10, alpha);
  S.items[1] = SpectralDatum::from_rho(rho20, 1.0 / pi - alpha);
  return S;
}

SpectralData zero_first_weight_data(int p, int N) {
  auto S = model_spectral_data(p, N);
  S.items[0].alpha = 0.0;
  return S;
}

Eigen::Matrix2cd dummy_eigenvalue_block(double x, cplx eta, cplx alpha) {
  const cplx top = x / 2.0 + std::sin(2.0 * eta * x) / (4.0 * eta) - std::sin(eta * x) / eta;
  Eigen::Matrix2cd B;
  B << alpha * top, alpha / eta * top, alpha * std::sin(eta * x), alpha * std::sin(eta * x) / eta;
  return B;
}

Eigen::Matrix2cd dummy_eigenvalue_block_as_printed(double x, cplx eta, cplx alpha) {
  const cplx top = x / 2.0 + std::sin(2.0 * eta * x) / (4.0 * eta) + std::sin(eta * x) / eta;
  Eigen::Matrix2cd B;
  B << alpha * top, alpha / eta * top, alpha * std::sin(eta * x), alpha * std::sin(eta * x) / eta;
  return B;
}

cplx int_t_sin(double x, cplx rho) {
  if (rho == 0.0) return 0.0;
  return (std::sin(rho * x) - rho * x * std::cos(rho * x)) / (rho * rho);
}

cplx int_cos(double x, cplx rho) {
  if (rho == 0.0) return x;
  return std::sin(rho * x) / rho;
}

Eigen::Matrix2cd split_weight_column1_block(double x, int n, cplx alpha) {
  const cplx rho = model_datum(1, n).rho;
  const cplx w = 1.0 / pi - alpha;
  Eigen::Matrix2cd B;
  B << 0.0, w * int_t_sin(x, rho), 0.0, -w * int_cos(x, rho);
  return B;
}

SpectralData random_perturbation(const SpectralData& base, double scale, int count, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int p = base.p;
  std::vector<cplx> d_alpha(count), d_rho(count, cplx{0.0});
  double norm2 = 0.0;
  for (int k = 0; k < count; ++k) {
    d_alpha[k] = {gauss(rng), gauss(rng)};
    if (k >= p + 1) d_rho[k] = {gauss(rng), gauss(rng)};
    const double delta = std::abs(d_alpha[k]) + std::abs(d_rho[k]);
    norm2 += delta * delta;
  }
  const double unit = 1.0 / std::sqrt(norm2);
  SpectralData S = base;
  for (int k = 0; k < count; ++k) {
    const auto& d = base.items[k];
    S.items[k] = SpectralDatum::from_rho(d.rho + scale * unit * d_rho[k], d.alpha + scale * unit * d_alpha[k]);
  }
  return S;
}

}  // namespace slinv::cases
