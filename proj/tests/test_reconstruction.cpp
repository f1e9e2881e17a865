#include <doctest.h>

#include "slinv/reconstruction.hpp"
#include "slinv/reference_cases.hpp"

using namespace slinv;

namespace {

PotentialGrid sine_potential(int M, double a) {
  Eigen::VectorXcd v(M + 1);
  for (int j = 0; j <= M; ++j) v[j] = a * std::sin(pi * j / M);
  return PotentialGrid(v);
}

const BoundaryPolynomials& desk_polys() {
  static const BoundaryPolynomials r({cplx(1.0), cplx(1.0)}, {cplx(0.5), cplx(0.0)});
  return r;
}

const SpectralData& desk_data() {
  static const SpectralData S = forward_spectral_data(sine_potential(512, 0.3), desk_polys(), 64);
  return S;
}

double grid_distance(const PotentialGrid& a, const PotentialGrid& b) {
  return l2_norm_on_grid(a.values() - b.values());
}

}  // namespace

TEST_CASE("model data reconstruct the model problem") {
  for (int p = 0; p <= 2; ++p) {
    InverseOptions o;
    o.N = 50;
    o.M = 256;
    const auto R = solve_inverse(model_spectral_data(p, 50), o);
    CHECK(R.sigma.l2_norm() <= 1e-6);
    REQUIRE(R.polys.degree() == p);
    for (int j = 0; j <= p; ++j) {
      CHECK(std::abs(R.polys.c()[j] - (j == p ? 1.0 : 0.0)) <= 1e-8);
      CHECK(std::abs(R.polys.d()[j]) <= 1e-8);
    }
    CHECK(R.diagnostics.r2_effective_degree == -1);
  }
}

TEST_CASE("boundary formulas evaluate to the model polynomials") {
  const auto S = model_spectral_data(2, 40);
  InverseOptions o;
  o.N = 40;
  o.M = 128;
  const auto R = solve_inverse(S, o);
  const auto P = pair_with_model(S, 40);
  for (cplx lambda : {cplx(-7.0), cplx(-9.5, 1.0)}) {
    CHECK(std::abs(eval_r1(P, R.boundary, lambda) - lambda * lambda) < 1e-8);
    CHECK(std::abs(eval_r2(P, R.boundary, lambda)) < 1e-8);
  }
}

TEST_CASE("interpolation recovers polynomial coefficients") {
  const std::vector<cplx> coeffs{cplx(0.3, -1.0), cplx(2.0), cplx(-0.5, 0.25), cplx(1.0)};
  const auto nodes = interpolation_nodes(3, 1.5);
  REQUIRE(nodes.size() == 4);
  CHECK(nodes[0] == cplx(-6.0 * 2.25 - 2.25 / 5.0));
  std::vector<cplx> values;
  for (auto z : nodes) values.push_back(polyval(coeffs, z));
  const auto back = interpolate_coefficients(values, nodes);
  double scale = 0.0;
  for (auto v : values) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 0; i < coeffs.size(); ++i) CHECK(std::abs(back[i] - coeffs[i]) < 1e-11 * scale);
  CHECK(interpolation_nodes(1, 0.2)[0] == cplx(-6.0 - 1.0 / 3.0));
}

TEST_CASE("common roots are removed from both polynomials") {
  // r1 = (l - 1)(l + 2), r2 = 3 (l - 1)
  const BoundaryPolynomials r({cplx(-2.0), cplx(1.0), cplx(1.0)}, {cplx(-3.0), cplx(3.0), cplx(0.0)});
  int removed = 0;
  const auto red = reduce_common_roots(r, 1e-6, &removed);
  CHECK(removed == 1);
  REQUIRE(red.degree() == 1);
  CHECK(std::abs(red.c()[0] - 2.0) < 1e-10);
  CHECK(std::abs(red.d()[0] - 3.0) < 1e-10);
  int none = -1;
  reduce_common_roots(BoundaryPolynomials({cplx(1.0), cplx(1.0)}, {cplx(0.5), cplx(0.0)}), 1e-6, &none);
  CHECK(none == 0);
}

TEST_CASE("forward, inverse, forward reproduces the spectral data") {
  const auto& S = desk_data();
  InverseOptions o;
  o.N = 40;
  o.M = 512;
  const auto R = solve_inverse(S, o);
  const auto again = forward_spectral_data(R.sigma, R.polys, 20);
  for (int n = 0; n < 20; ++n) {
    CHECK(std::abs(again.items[n].lambda - S.items[n].lambda) < 1e-4 * (1.0 + std::abs(S.items[n].lambda)));
    CHECK(std::abs(again.items[n].alpha - S.items[n].alpha) < 1e-3);
  }
}

TEST_CASE("both sources of phi at pi agree") {
  InverseOptions a, b;
  a.N = b.N = 40;
  b.phi_pi_source = PhiAtPiSource::reintegration;
  const auto Ra = solve_inverse(desk_data(), a);
  const auto Rb = solve_inverse(desk_data(), b);
  for (int j = 0; j <= 1; ++j) {
    CHECK(std::abs(Ra.polys.c()[j] - Rb.polys.c()[j]) < 1e-3);
    CHECK(std::abs(Ra.polys.d()[j] - Rb.polys.d()[j]) < 1e-3);
  }
}

TEST_CASE("sigma converges monotonically in the truncation") {
  InverseOptions o;
  o.M = 512;
  std::vector<PotentialGrid> sig;
  for (int N : {16, 32, 64}) {
    o.N = N;
    sig.push_back(solve_inverse(desk_data(), o).sigma);
  }
  CHECK(grid_distance(sig[1], sig[2]) < grid_distance(sig[0], sig[1]));
}

TEST_CASE("paired sigma terms decay while the unpaired ones do not") {
  const int N = 64;
  const auto S = cases::split_weight_data(1e-3, 0.1, 0.05, N);
  const auto P = pair_with_model(S, N);
  Eigen::VectorXd xs = Eigen::VectorXd::LinSpaced(257, 0.0, pi);
  const auto field = solve_on_grid(P, xs);
  const auto paired = sigma_term_norms(P, field);
  double paired_tail = 0.0, unpaired_tail = INFINITY;
  for (int k = N / 2; k < N; ++k) {
    paired_tail = std::max(paired_tail, paired[k]);
    Eigen::VectorXcd single(xs.size());
    for (Eigen::Index j = 0; j < xs.size(); ++j)
      single[j] = P.alpha0[k] * (1.0 - 2.0 * std::cos(P.rho0[k] * xs[j]) * field(j, k + 1, 0));
    unpaired_tail = std::min(unpaired_tail, l2_norm_on_grid(single));
  }
  CHECK(10.0 * paired_tail < unpaired_tail);
}

TEST_CASE("split-weight data reconstruct the degree-one model") {
  InverseOptions o;
  o.N = 48;
  o.M = 256;
  const auto R = solve_inverse(cases::split_weight_data(1e-3, 0.0, 0.0, 48), o);
  CHECK(R.sigma.l2_norm() < 1e-6);
  CHECK(std::abs(R.polys.c()[0]) < 1e-8);
  CHECK(std::abs(R.polys.d()[0]) < 1e-8);
  CHECK(std::abs(R.polys.d()[1]) < 1e-8);
}

TEST_CASE("excluded disks reject nodes near the spectrum") {
  const auto P = pair_with_model(model_spectral_data(1, 20), 20);
  CHECK_THROWS_AS(check_excluded_disks(P, cplx(4.01), 0.5), PoleProximityError);
  CHECK_NOTHROW(check_excluded_disks(P, cplx(-6.5), excluded_disk_factor(1, 0.0)));
  CHECK(excluded_disk_factor(1, 0.0) <= 0.5);
}
