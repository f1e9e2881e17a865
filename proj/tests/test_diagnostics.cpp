#include <doctest.h>

#include <random>

#include "slinv/diagnostics.hpp"
#include "slinv/reference_cases.hpp"

using namespace slinv;

TEST_CASE("counts for the reference data sets") {
  const auto model = solvability_counts(model_spectral_data(2, 20));
  CHECK(model.A == 2);
  CHECK(model.B == 0);

  const auto zero_first = solvability_counts(cases::zero_first_weight_data(0, 20));
  CHECK(zero_first.A == 1);
  CHECK(zero_first.B == 0);

  const auto unperturbed = solvability_counts(cases::dummy_eigenvalue_data(1.0, 0.0, 20));
  CHECK(unperturbed.A == 1);
  CHECK(unperturbed.B == 0);

  const auto dummy = solvability_counts(cases::dummy_eigenvalue_data(1.0, 1e-3, 20));
  CHECK(dummy.A == 0);
  CHECK(dummy.B == 1);
  REQUIRE(dummy.index_set.size() == 19);
  CHECK(dummy.index_set[1] == 2);
  CHECK(dummy.multiplicities[1] == 2);
}

TEST_CASE("counts are invariant under reordering equal eigenvalues and rescaling weights") {
  auto S = cases::dummy_eigenvalue_data(1.0, 1e-3, 20);
  const auto base = solvability_counts(S);
  std::swap(S.items[1], S.items[2]);
  for (auto& d : S.items) d.alpha *= cplx(-3.0, 2.0);
  const auto moved = solvability_counts(S);
  CHECK(moved.A == base.A);
  CHECK(moved.B == base.B);
}

TEST_CASE("singular value probe separates triggered and model data") {
  const std::vector<int> Ns{16, 32, 64, 128};
  const auto model = solvability_profile(model_spectral_data(0, 128), Ns);
  CHECK_FALSE(model.triggered);
  for (double s : model.min_singular_values) CHECK(s == doctest::Approx(1.0));

  const auto bad = solvability_profile(cases::zero_first_weight_data(0, 128), Ns);
  CHECK(bad.triggered);
  CHECK(bad.min_singular_values.back() < 1e-4);
}

TEST_CASE("smallest singular value of a known matrix") {
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(3, 3);
  A(0, 0) = 3.0;
  A(1, 1) = cplx(0.0, -0.5);
  A(2, 2) = 2.0;
  CHECK(min_singular_value(A) == doctest::Approx(0.5));
}

TEST_CASE("coefficient distance skips the monic leading term") {
  const BoundaryPolynomials a({cplx(1.0), cplx(2.0), cplx(1.0)}, {cplx(0.0), cplx(0.0), cplx(0.0)});
  const BoundaryPolynomials b({cplx(1.5), cplx(2.0), cplx(1.0)}, {cplx(0.0), cplx(0.0), cplx(0.25)});
  CHECK(coefficient_distance(a, b) == doctest::Approx(0.75));
  CHECK(coefficient_distance(a, a) == 0.0);
}

TEST_CASE("log-log slope of an exact power law") {
  const std::vector<double> x{1e-4, 1e-3, 1e-2}, y{3e-8, 3e-6, 3e-4};
  CHECK(loglog_slope(x, y) == doctest::Approx(2.0));
}

TEST_CASE("membership of model data and a small perturbation") {
  const auto m = membership_check(model_spectral_data(1, 32), 1.0, 2.0, 32, {0.0, pi / 2, pi});
  CHECK(m.member());
  CHECK(m.omega == 0.0);
  std::mt19937_64 rng(2);
  const auto far = cases::random_perturbation(model_spectral_data(1, 32), 5.0, 8, rng);
  CHECK_FALSE(membership_check(far, 1.0, 2.0, 32, {0.0, pi}).omega_ok);
}

TEST_CASE("stability experiment names the failing data set") {
  InverseOptions o;
  o.N = 24;
  o.M = 128;
  const auto good = model_spectral_data(0, 24);
  const auto bad = cases::zero_first_weight_data(0, 24);
  try {
    stability_experiment(good, bad, o);
    FAIL("expected a failure");
  } catch (const NumericalError& e) {
    CHECK(std::string(e.what()).find("data set S2") != std::string::npos);
  }
  const auto same = stability_experiment(good, good, o);
  CHECK(same.Z == 0.0);
  CHECK_FALSE(same.ratio.has_value());
  CHECK(same.distance() == 0.0);
}

TEST_CASE("perturbation sweep distance is linear in Z") {
  InverseOptions o;
  o.N = 32;
  o.M = 256;
  const auto base = model_spectral_data(1, 32);
  std::mt19937_64 rng(4);
  std::vector<SpectralData> members;
  const std::vector<double> scales{1e-4, 1e-3, 1e-2};
  for (double s : scales) members.push_back(cases::random_perturbation(base, s, 6, rng));
  std::size_t i = 0;
  const auto rows = stability_sweep(base, [&](double) { return members[i++]; }, scales, o);
  std::vector<double> z, d;
  for (const auto& r : rows) {
    CHECK(r.report.Z == doctest::Approx(r.family_param));
    z.push_back(r.report.Z);
    d.push_back(r.report.distance());
  }
  CHECK(std::abs(loglog_slope(z, d) - 1.0) < 0.15);
}
