#include "slinv/lab/potentials.hpp"

#include <cmath>

namespace slinv::lab {

namespace {

double param(const PotentialSpec& s, std::size_t i, double fallback) {
  return i < s.params.size() ? s.params[i] : fallback;
}

}  // namespace

PotentialGrid generate_potential(const PotentialSpec& spec, int M) {
  if (M < 1) throw InputError("grid size must be positive");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(M + 1);
  auto x = [M](int j) { return pi * j / M; };
  if (spec.name == "zero") {
  } else if (spec.name == "sine") {
    const double a = param(spec, 0, 1.0), k = param(spec, 1, 1.0);
    for (int j = 0; j <= M; ++j) v[j] = a * std::sin(k * x(j));
  } else if (spec.name == "step") {
    const double a = param(spec, 0, 1.0), x0 = param(spec, 1, pi / 2);
    for (int j = 0; j <= M; ++j) v[j] = x(j) >= x0 - 1e-14 ? a : 0.0;
  } else if (spec.name == "sawtooth") {
    const double a = param(spec, 0, 1.0);
    for (int j = 0; j <= M; ++j) v[j] = a * (x(j) / pi - 0.5);
  } else {
    throw InputError("unknown potential generator '" + spec.name + "'");
  }
  return PotentialGrid(std::move(v));
}

}  // namespace slinv::lab
