#include "slinv/spectral_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace slinv {

cplx branch_sqrt(cplx lambda) {
  cplx r = std::sqrt(lambda);
  // std::sqrt returns Re >= 0; the half-open branch excludes arg = +pi/2.
  if (r.real() == 0.0 && r.imag() > 0.0) r = -r;
  return r;
}

SpectralDatum SpectralDatum::from_lambda(cplx lambda, cplx alpha) {
  return {lambda, branch_sqrt(lambda), alpha};
}

SpectralDatum SpectralDatum::from_rho(cplx rho, cplx alpha) {
  const double arg = std::arg(rho);
  if (!(arg >= -pi / 2 && arg < pi / 2) && std::abs(rho) > 0.0) rho = -rho;
  if (rho.real() == 0.0 && rho.imag() > 0.0) rho = -rho;
  return {rho * rho, rho, alpha};
}

BoundaryPolynomials::BoundaryPolynomials(std::vector<cplx> c, std::vector<cplx> d)
    : c_(std::move(c)), d_(std::move(d)) {
  if (c_.empty() || c_.size() != d_.size())
    throw InputError("boundary polynomials need equal, nonzero coefficient counts");
  if (std::abs(c_.back() - 1.0) > 1e-12) throw InputError("r1 must be monic");
  c_.back() = 1.0;
}

BoundaryPolynomials BoundaryPolynomials::normalized(std::vector<cplx> c, std::vector<cplx> d) {
  if (c.empty() || c.size() != d.size())
    throw InputError("boundary polynomials need equal, nonzero coefficient counts");
  const cplx lead = c.back();
  if (std::abs(lead) == 0.0) throw InputError("leading coefficient of r1 vanishes");
  for (auto& v : c) v /= lead;
  for (auto& v : d) v /= lead;
  c.back() = 1.0;
  return {std::move(c), std::move(d)};
}

cplx polyval(const std::vector<cplx>& coeffs, cplx z) {
  cplx acc{0.0};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

cplx polyder_val(const std::vector<cplx>& coeffs, cplx z) {
  cplx acc{0.0};
  for (std::size_t k = coeffs.size(); k-- > 1;) acc = acc * z + static_cast<double>(k) * coeffs[k];
  return acc;
}

cplx BoundaryPolynomials::r1(cplx lambda) const { return polyval(c_, lambda); }
cplx BoundaryPolynomials::r2(cplx lambda) const { return polyval(d_, lambda); }
cplx BoundaryPolynomials::dr1(cplx lambda) const { return polyder_val(c_, lambda); }
cplx BoundaryPolynomials::dr2(cplx lambda) const { return polyder_val(d_, lambda); }

PotentialGrid::PotentialGrid(Eigen::VectorXcd values) : values_(std::move(values)) {
  if (values_.size() < 2) throw InputError("potential grid needs at least one cell");
}

PotentialGrid PotentialGrid::zero(int cells) {
  if (cells < 1) throw InputError("potential grid needs at least one cell");
  return PotentialGrid(Eigen::VectorXcd::Zero(cells + 1));
}

Eigen::VectorXd PotentialGrid::nodes() const {
  return Eigen::VectorXd::LinSpaced(values_.size(), 0.0, pi);
}

double l2_norm_on_grid(const Eigen::VectorXcd& values) {
  const Eigen::Index m = values.size() - 1;
  if (m < 1) return 0.0;
  const double h = pi / static_cast<double>(m);
  double acc = values.squaredNorm() - 0.5 * (std::norm(values[0]) + std::norm(values[m]));
  return std::sqrt(h * acc);
}

double PotentialGrid::l2_norm() const { return l2_norm_on_grid(values_); }

bool PotentialGrid::all_finite() const {
  return values_.real().allFinite() && values_.imag().allFinite();
}

SpectralDatum model_datum(int p, int n) {
  if (n < 1) throw InputError("spectral index is 1-based");
  const double rho = n <= p + 1 ? 0.0 : static_cast<double>(n - p - 1);
  double alpha = 2.0 / pi;
  if (n == 1)
    alpha = 1.0 / pi;
  else if (n <= p + 1)
    alpha = 0.0;
  return {cplx{rho * rho}, cplx{rho}, cplx{alpha}};
}

SpectralData model_spectral_data(int p, int N) {
  if (p < 0) throw InputError("degree p must be non-negative");
  if (N < p + 2)
    throw InsufficientTruncationError("model data need N >= p + 2 (p = " + std::to_string(p) +
                                      ", N = " + std::to_string(N) + ")");
  SpectralData S;
  S.p = p;
  S.tail_is_model = true;
  S.items.reserve(N);
  for (int n = 1; n <= N; ++n) S.items.push_back(model_datum(p, n));
  return S;
}

SpectralDatum datum_at(const SpectralData& S, int n) {
  if (n >= 1 && n <= static_cast<int>(S.size())) return S.items[n - 1];
  if (!S.tail_is_model)
    throw InsufficientTruncationError("index " + std::to_string(n) + " beyond stored data of size " +
                                      std::to_string(S.size()));
  return model_datum(S.p, n);
}

std::vector<double> xi_sequence(const SpectralData& S) {
  std::vector<double> xi;
  xi.reserve(S.size());
  for (int n = 1; n <= static_cast<int>(S.size()); ++n) {
    const auto& d = S.items[n - 1];
    const auto m = model_datum(S.p, n);
    xi.push_back(std::abs(d.rho - m.rho) + std::abs(d.alpha - m.alpha));
  }
  return xi;
}

double omega_bound(const SpectralData& S) {
  double acc = 0.0;
  for (double v : xi_sequence(S)) acc += v * v;
  return std::sqrt(acc);
}

double z_distance(const SpectralData& S1, const SpectralData& S2) {
  if (S1.p != S2.p) throw InputError("z_distance needs data of equal degree p");
  const int n_max = static_cast<int>(std::max(S1.size(), S2.size()));
  double acc = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    const auto a = datum_at(S1, n);
    const auto b = datum_at(S2, n);
    const double delta = std::abs(a.rho - b.rho) + std::abs(a.alpha - b.alpha);
    acc += delta * delta;
  }
  return std::sqrt(acc);
}

ValidationReport validate_spectral_data(const SpectralData& S, double xi_cap, double omega_cap) {
  ValidationReport rep;
  const auto xi = xi_sequence(S);
  for (int n = 1; n <= static_cast<int>(S.size()); ++n) {
    const auto& d = S.items[n - 1];
    const double arg = std::arg(d.rho);
    const bool on_branch = std::abs(d.rho) == 0.0 || (arg >= -pi / 2 && arg < pi / 2);
    const double scale = std::max(1.0, std::abs(d.lambda));
    if (!on_branch || std::abs(d.rho * d.rho - d.lambda) > 1e-12 * scale) rep.branch_violations.push_back(n);
    if (xi[n - 1] > xi_cap) rep.xi_violations.push_back(n);
    if (n > S.p + 2) {
      const double prev = S.items[n - 2].rho.real();
      if (d.rho.real() < prev) rep.ordering_violations.push_back(n);
      if (d.rho.real() == prev) rep.ordering_ties.push_back(n);
    }
  }
  double acc = 0.0;
  for (double v : xi) acc += v * v;
  rep.omega = std::sqrt(acc);
  rep.omega_cap_exceeded = rep.omega > omega_cap;
  return rep;
}

PairedData pair_with_model(const SpectralData& S, int N) {
  if (N < S.p + 2)
    throw InsufficientTruncationError("truncation N = " + std::to_string(N) + " below p + 2");
  PairedData P;
  P.p = S.p;
  P.N = N;
  for (auto* v : {&P.lambda0, &P.rho0, &P.alpha0, &P.lambda1, &P.rho1, &P.alpha1}) v->reserve(N);
  for (int n = 1; n <= N; ++n) {
    const auto d = datum_at(S, n);
    const auto m = model_datum(S.p, n);
    P.lambda0.push_back(d.lambda);
    P.rho0.push_back(d.rho);
    P.alpha0.push_back(d.alpha);
    P.lambda1.push_back(m.lambda);
    P.rho1.push_back(m.rho);
    P.alpha1.push_back(m.alpha);
  }
  return P;
}

}  // namespace slinv
