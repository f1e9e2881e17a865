#include "slinv/forward.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include <Eigen/Eigenvalues>

#include "slinv/spectral_core.hpp"

namespace slinv {

namespace {

// exp(h A) = c I + s A for the cell matrix A, whose square is -lambda I.
struct CellPropagator {
  cplx c, s, dc, ds;
};

CellPropagator cell_propagator(cplx lambda, double h) {
  CellPropagator P{};
  const cplx z = lambda * h * h;
  if (std::abs(z) < 1.0) {
    cplx cos_sum{1.0}, sin_sum{1.0}, dsin_sum{0.0};
    cplx zk{1.0};  // (-z)^k
    double fact_even = 1.0, fact_odd = 1.0;
    for (int k = 1; k <= 14; ++k) {
      fact_even *= (2.0 * k - 1.0) * (2.0 * k);
      fact_odd *= (2.0 * k) * (2.0 * k + 1.0);
      dsin_sum -= static_cast<double>(k) * zk / fact_odd;  // zk = (-z)^(k-1)
      zk *= -z;
      cos_sum += zk / fact_even;
      sin_sum += zk / fact_odd;
    }
    P.c = cos_sum;
    P.s = h * sin_sum;
    P.ds = h * h * h * dsin_sum;
  } else {
    const cplx rho = std::sqrt(lambda);
    P.c = std::cos(rho * h);
    P.s = std::sin(rho * h) / rho;
    P.ds = (h * P.c - P.s) / (2.0 * lambda);
  }
  P.dc = -0.5 * h * P.s;
  return P;
}

void require_grid(const PotentialGrid& sigma) {
  if (sigma.cells() < 1) throw InputError("empty potential grid");
  if (!sigma.all_finite()) throw InputError("potential grid contains non-finite samples");
}

template <class Visit>
void march(const PotentialGrid& sigma, cplx lambda, InitPair init, bool deriv, Visit&& visit) {
  require_grid(sigma);
  const auto P = cell_propagator(lambda, sigma.step());
  const auto& v = sigma.values();
  cplx y = init.y, y1 = init.y1, dy{0.0}, dy1{0.0};
  visit(0, y, y1, dy, dy1);
  for (int j = 0; j < sigma.cells(); ++j) {
    const cplx sm = 0.5 * (v[j] + v[j + 1]);
    const cplx a21 = -sm * sm - lambda;
    const cplx ay = sm * y + y1;
    const cplx ay1 = a21 * y - sm * y1;
    if (deriv) {
      const cplx ady = sm * dy + dy1;
      const cplx ady1 = a21 * dy - sm * dy1;
      const cplx ndy = P.c * dy + P.s * ady + P.dc * y + P.ds * ay;
      const cplx ndy1 = P.c * dy1 + P.s * ady1 + P.dc * y1 + P.ds * ay1 - P.s * y;
      dy = ndy;
      dy1 = ndy1;
    }
    y = P.c * y + P.s * ay;
    y1 = P.c * y1 + P.s * ay1;
    visit(j + 1, y, y1, dy, dy1);
  }
}

cplx endpoint_delta(const BoundaryPolynomials& r, cplx lambda, const Endpoint& e) {
  return r.r1(lambda) * e.y1 + r.r2(lambda) * e.y;
}

CharacteristicValue char_from_endpoint(const BoundaryPolynomials& r, cplx lambda, const Endpoint& e) {
  return {endpoint_delta(r, lambda, e),
          r.dr1(lambda) * e.y1 + r.r1(lambda) * e.dy1 + r.dr2(lambda) * e.y + r.r2(lambda) * e.dy};
}

// rho-plane view F(rho) = Delta(rho^2), F'(rho) = 2 rho Delta'(rho^2).
struct RhoSample {
  cplx f, df;
};

RhoSample rho_sample(const PotentialGrid& sigma, const BoundaryPolynomials& r, cplx rho) {
  const cplx lambda = rho * rho;
  const auto cv = char_function(sigma, r, lambda);
  return {cv.delta, 2.0 * rho * cv.ddelta};
}

using Path = std::function<cplx(double)>;

double arg_increment(const Path& path, const std::function<cplx(cplx)>& f, double t0, double t1, cplx f0,
                     cplx f1, int depth, const std::string& region) {
  const double d = std::arg(f1 / f0);
  if (std::abs(d) <= pi / 2 || depth >= 24) return d;
  const double tm = 0.5 * (t0 + t1);
  const cplx fm = f(path(tm));
  if (fm == 0.0) throw MultiplicityError(region, "characteristic function vanishes on the contour");
  return arg_increment(path, f, t0, tm, f0, fm, depth + 1, region) +
         arg_increment(path, f, tm, t1, fm, f1, depth + 1, region);
}

// Winding number of f along the closed path, from uniform samples in t.
int winding_count(const Path& path, const std::function<cplx(cplx)>& f, const std::vector<cplx>& values,
                  const std::string& region) {
  const int K = static_cast<int>(values.size());
  for (const auto& v : values)
    if (v == 0.0 || !std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw MultiplicityError(region, "characteristic function vanishes or overflows on the contour");
  double total = 0.0;
  for (int j = 0; j < K; ++j) {
    const double t0 = static_cast<double>(j) / K;
    const double t1 = static_cast<double>(j + 1) / K;
    total += arg_increment(path, f, t0, t1, values[j], values[(j + 1) % K], 0, region);
  }
  return static_cast<int>(std::lround(total / (2.0 * pi)));
}

std::string disk_name(int center, double radius) {
  return "rho-disk |rho - " + std::to_string(center) + "| <= " + std::to_string(radius);
}

cplx newton_refine(const PotentialGrid& sigma, const BoundaryPolynomials& r, cplx lambda,
                   const SearchOptions& opts) {
  for (int it = 0; it < opts.newton_max; ++it) {
    const auto cv = char_function(sigma, r, lambda);
    if (cv.delta == 0.0) return lambda;
    if (cv.ddelta == 0.0) throw RefinementError("vanishing derivative at lambda = " + std::to_string(lambda.real()));
    const cplx step = cv.delta / cv.ddelta;
    lambda -= step;
    if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag()))
      throw RefinementError("Newton iteration diverged");
    if (std::abs(step) <= opts.newton_tol * std::max(1.0, std::abs(lambda))) return lambda;
  }
  throw RefinementError("Newton iteration did not converge in " + std::to_string(opts.newton_max) +
                        " steps");
}

cplx eigenvalue_in_disk(const PotentialGrid& sigma, const BoundaryPolynomials& r, int center,
                        const SearchOptions& opts) {
  const double rad = opts.r_search;
  const int K = opts.samples;
  const std::string region = disk_name(center, rad);
  Path path = [&](double t) { return cplx(center) + rad * std::polar(1.0, 2.0 * pi * t); };
  auto f = [&](cplx rho) { return char_function(sigma, r, rho * rho).delta; };

  std::vector<cplx> fv(K);
  cplx moment{0.0};
  for (int j = 0; j < K; ++j) {
    const cplx e = std::polar(1.0, 2.0 * pi * j / K);
    const cplx rho = cplx(center) + rad * e;
    const auto smp = rho_sample(sigma, r, rho);
    fv[j] = smp.f;
    moment += rho * smp.df / smp.f * e;
  }
  const int count = winding_count(path, f, fv, region);
  if (count != 1)
    throw MultiplicityError(region, "expected exactly one zero, counted " + std::to_string(count));
  const cplx rho_est = moment * (rad / K);
  const cplx lambda = newton_refine(sigma, r, rho_est * rho_est, opts);
  const cplx rho = branch_sqrt(lambda);
  if (std::abs(rho - cplx(center)) > rad * (1.0 + 1e-9))
    throw RefinementError("Newton left " + region);
  return lambda;
}

// Gauss-Legendre rule on [-1, 1] by the Golub-Welsch construction.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    J(k, k - 1) = b;
    J(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  nodes.resize(n);
  weights.resize(n);
  for (int k = 0; k < n; ++k) {
    nodes[k] = es.eigenvalues()[k];
    weights[k] = 2.0 * es.eigenvectors()(0, k) * es.eigenvectors()(0, k);
  }
}

std::vector<cplx> low_eigenvalues(const PotentialGrid& sigma, const BoundaryPolynomials& r, int m,
                                  const SearchOptions& opts, const Executor& exec) {
  const double H = opts.low_height;
  const double W = 0.5;
  const std::string region = "rho-rectangle [-0.5, 0.5] x [-" + std::to_string(H) + ", " + std::to_string(H) + "]";
  const cplx corners[4] = {{-W, -H}, {W, -H}, {W, H}, {-W, H}};
  double lengths[4];
  double perimeter = 0.0;
  for (int e = 0; e < 4; ++e) {
    lengths[e] = std::abs(corners[(e + 1) % 4] - corners[e]);
    perimeter += lengths[e];
  }
  Path path = [=](double t) {
    double s = t * perimeter;
    for (int e = 0; e < 4; ++e) {
      if (s <= lengths[e] || e == 3) {
        const cplx a = corners[e], b = corners[(e + 1) % 4];
        return a + (b - a) * std::min(1.0, s / lengths[e]);
      }
      s -= lengths[e];
    }
    return corners[0];
  };
  auto f = [&](cplx rho) { return char_function(sigma, r, rho * rho).delta; };

  const int K = opts.samples;
  auto fv = exec.map<cplx>(K, [&](std::size_t j) { return f(path(static_cast<double>(j) / K)); });
  const int count = winding_count(path, f, fv, region);
  if (count != 2 * m)
    throw MultiplicityError(region, "expected " + std::to_string(2 * m) + " rho-zeros, counted " +
                                        std::to_string(count));

  // Power sums of the squared zeros from composite Gauss-Legendre moments.
  std::vector<double> gx, gw;
  gauss_legendre(16, gx, gw);
  struct Node {
    cplx rho, w;
  };
  std::vector<Node> quad;
  for (int e = 0; e < 4; ++e) {
    const cplx a = corners[e], b = corners[(e + 1) % 4];
    const int panels = std::max(1, static_cast<int>(std::ceil(lengths[e] / 0.25)));
    for (int q = 0; q < panels; ++q) {
      const cplx pa = a + (b - a) * (static_cast<double>(q) / panels);
      const cplx pb = a + (b - a) * (static_cast<double>(q + 1) / panels);
      for (int k = 0; k < 16; ++k) quad.push_back({0.5 * (pa + pb) + 0.5 * (pb - pa) * gx[k], 0.5 * (pb - pa) * gw[k]});
    }
  }
  auto logder = exec.map<cplx>(quad.size(), [&](std::size_t k) {
    const auto smp = rho_sample(sigma, r, quad[k].rho);
    return smp.df / smp.f;
  });
  std::vector<cplx> power(m + 1, cplx{0.0});
  for (std::size_t k = 0; k < quad.size(); ++k) {
    const cplx lam = quad[k].rho * quad[k].rho;
    cplx lk{1.0};
    for (int j = 0; j <= m; ++j) {
      power[j] += lk * logder[k] * quad[k].w;
      lk *= lam;
    }
  }
  for (auto& v : power) v /= cplx(0.0, 4.0 * pi);  // two rho-zeros per lambda-zero

  std::vector<cplx> e(m + 1, cplx{0.0});
  e[0] = 1.0;
  for (int k = 1; k <= m; ++k) {
    cplx acc{0.0};
    for (int i = 1; i <= k; ++i) acc += (i % 2 == 1 ? 1.0 : -1.0) * e[k - i] * power[i];
    e[k] = acc / static_cast<double>(k);
  }
  std::vector<cplx> roots;
  if (m == 1) {
    roots.push_back(e[1]);
  } else {
    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(m, m);
    for (int i = 1; i < m; ++i) C(i, i - 1) = 1.0;
    // monic z^m + a_{m-1} z^{m-1} + ... with a_{m-j} = (-1)^j e_j
    for (int j = 1; j <= m; ++j) C(m - j, m - 1) = -((j % 2 == 1) ? -e[j] : e[j]);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ces(C, false);
    for (int i = 0; i < m; ++i) roots.push_back(ces.eigenvalues()[i]);
  }
  for (auto& lam : roots) lam = newton_refine(sigma, r, lam, opts);

  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (std::abs(roots[i] - roots[j]) < 1e-6 * std::max(1.0, std::abs(roots[i])))
        throw MultiplicityError(region, "multiple eigenvalue near lambda = (" + std::to_string(roots[i].real()) +
                                            ", " + std::to_string(roots[i].imag()) + ")");
  for (const auto& lam : roots) {
    const cplx rho = branch_sqrt(lam);
    if (std::abs(rho.real()) > W + 1e-6 || std::abs(rho.imag()) > H + 1e-6)
      throw RefinementError("Newton left " + region);
  }
  std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
    const cplx ra = branch_sqrt(a), rb = branch_sqrt(b);
    if (ra.real() != rb.real()) return ra.real() < rb.real();
    return ra.imag() < rb.imag();
  });
  return roots;
}

cplx weyl_ratio(const PotentialGrid& sigma, const BoundaryPolynomials& r, cplx lambda) {
  const auto phi = shoot(sigma, lambda, phi_init, false);
  const auto s = shoot(sigma, lambda, s_init, false);
  return -endpoint_delta(r, lambda, s) / endpoint_delta(r, lambda, phi);
}

}  // namespace

QuasiSolution integrate_phi(const PotentialGrid& sigma, cplx lambda, InitPair init, bool with_derivative) {
  QuasiSolution out;
  out.lambda = lambda;
  const int n = sigma.cells() + 1;
  out.y.resize(n);
  out.y1.resize(n);
  if (with_derivative) {
    out.dy.resize(n);
    out.dy1.resize(n);
  }
  march(sigma, lambda, init, with_derivative, [&](int j, cplx y, cplx y1, cplx dy, cplx dy1) {
    out.y[j] = y;
    out.y1[j] = y1;
    if (with_derivative) {
      out.dy[j] = dy;
      out.dy1[j] = dy1;
    }
  });
  return out;
}

Endpoint shoot(const PotentialGrid& sigma, cplx lambda, InitPair init, bool with_derivative) {
  Endpoint e;
  const int last = sigma.cells();
  march(sigma, lambda, init, with_derivative, [&](int j, cplx y, cplx y1, cplx dy, cplx dy1) {
    if (j == last) e = {y, y1, dy, dy1};
  });
  return e;
}

CharacteristicValue char_function(const PotentialGrid& sigma, const BoundaryPolynomials& r, cplx lambda) {
  return char_from_endpoint(r, lambda, shoot(sigma, lambda, phi_init, true));
}

std::vector<cplx> find_eigenvalues(const PotentialGrid& sigma, const BoundaryPolynomials& r, int N,
                                   const SearchOptions& opts, const Executor& exec) {
  const int p = r.degree();
  if (N < p + 1) throw InsufficientTruncationError("need N >= p + 1 eigenvalues");
  require_grid(sigma);
  auto eigs = low_eigenvalues(sigma, r, p + 1, opts, exec);
  const int rest = N - (p + 1);
  auto high = exec.map<cplx>(rest, [&](std::size_t i) {
    return eigenvalue_in_disk(sigma, r, static_cast<int>(i) + 1, opts);
  });
  eigs.insert(eigs.end(), high.begin(), high.end());
  eigs.resize(N);
  return eigs;
}

std::vector<cplx> weight_numbers(const PotentialGrid& sigma, const BoundaryPolynomials& r,
                                 const std::vector<cplx>& eigs, const Executor& exec) {
  return exec.map<cplx>(eigs.size(), [&](std::size_t i) {
    const cplx lambda = eigs[i];
    const auto cv = char_function(sigma, r, lambda);
    if (std::abs(cv.ddelta) < 1e-12)
      throw NearMultipleEigenvalueError("characteristic derivative below 1e-12 at eigenvalue " +
                                        std::to_string(i + 1));
    const auto s = shoot(sigma, lambda, s_init, false);
    return -endpoint_delta(r, lambda, s) / cv.ddelta;
  });
}

cplx weyl_contour_integral(const PotentialGrid& sigma, const BoundaryPolynomials& r, cplx center, double radius,
                           int samples) {
  cplx acc{0.0};
  for (int j = 0; j < samples; ++j) {
    const cplx e = std::polar(1.0, 2.0 * pi * j / samples);
    acc += weyl_ratio(sigma, r, center + radius * e) * e;
  }
  return acc * (radius / samples);
}

cplx weight_by_contour(const PotentialGrid& sigma, const BoundaryPolynomials& r, const std::vector<cplx>& eigs,
                       std::size_t index, int samples) {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < eigs.size(); ++j)
    if (j != index) gap = std::min(gap, std::abs(eigs[j] - eigs[index]));
  const double radius = std::isfinite(gap) ? 0.3 * gap : 0.1;
  return weyl_contour_integral(sigma, r, eigs[index], radius, samples);
}

cplx weyl_function(const PotentialGrid& sigma, const BoundaryPolynomials& r, cplx lambda) {
  const auto phi = shoot(sigma, lambda, phi_init, true);
  const auto cv = char_from_endpoint(r, lambda, phi);
  if (std::abs(cv.delta) <= 1e-8 * std::abs(cv.ddelta))
    throw PoleProximityError("lambda within 1e-8 of an eigenvalue");
  const auto s = shoot(sigma, lambda, s_init, false);
  return -endpoint_delta(r, lambda, s) / cv.delta;
}

cplx weyl_series(const SpectralData& S, cplx lambda, int tail_terms) {
  cplx acc{0.0};
  for (const auto& d : S.items) acc += d.alpha / (lambda - d.lambda);
  const int first = static_cast<int>(S.size()) + 1;
  for (int n = first; n < first + tail_terms; ++n) {
    const auto m = model_datum(S.p, n);
    acc += m.alpha / (lambda - m.lambda);
  }
  // Remaining model terms (2/pi)/(lambda - j^2), j > J, by the midpoint rule:
  // sum_j 1/(j^2 - lambda) ~ int_{J+1/2}^inf dt/(t^2 - lambda).
  const int J = first + tail_terms - 1 - S.p - 1;
  if (J >= 1) {
    const double a = J + 0.5;
    cplx rem{0.0};
    if (std::abs(lambda) < 0.25 * a * a) {
      cplx term = 1.0 / a;
      for (int k = 0; k < 30; ++k) {
        rem += term / static_cast<double>(2 * k + 1);
        term *= lambda / (a * a);
      }
    } else {
      const cplx rho = std::sqrt(lambda);
      rem = std::log((a + rho) / (a - rho)) / (2.0 * rho);
    }
    acc -= (2.0 / pi) * rem;
  }
  return acc;
}

SpectralData forward_spectral_data(const PotentialGrid& sigma, const BoundaryPolynomials& r, int N,
                                   const SearchOptions& opts, const Executor& exec) {
  const auto eigs = find_eigenvalues(sigma, r, N, opts, exec);
  const auto alphas = weight_numbers(sigma, r, eigs, exec);
  SpectralData S;
  S.p = r.degree();
  S.tail_is_model = false;
  for (std::size_t i = 0; i < eigs.size(); ++i) S.items.push_back(SpectralDatum::from_lambda(eigs[i], alphas[i]));
  return S;
}

}  // namespace slinv
