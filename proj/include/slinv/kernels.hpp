#pragma once

// Closed-form kernels of the model problem (sigma = 0). Everything here is
// templated on the scalar so the same code serves real and complex rho.
//
//   phi~(x, rho)      = cos(rho x)
//   D~(x, a, b)       = int_0^x cos(a t) cos(b t) dt
//   sin_moment(k,w,x) = int_0^x t^k sin(w t) dt
//
// Divided differences are written as integrals of entire functions so that
// no subtraction of nearly equal values happens when a1 -> a2.

#include <cmath>
#include <complex>

namespace slinv::kernels {

using std::abs;
using std::cos;
using std::sin;

/// sin(z)/z; Taylor series for |z| < 1.
template <class T>
T sinc(T z) {
  // even function: fold onto one half-plane so sinc(-z) == sinc(z) bitwise
  if (std::real(z) < 0.0 || (std::real(z) == 0.0 && std::imag(z) < 0.0)) z = -z;
  if (abs(z) < 1.0) {
    const T z2 = z * z;
    // 1 - z^2/3! + z^4/5! - ... , nine terms reach 1/17! ~ 3e-15
    T term{1.0};
    T sum{1.0};
    for (int k = 1; k <= 8; ++k) {
      term *= -z2 / static_cast<double>((2 * k) * (2 * k + 1));
      sum += term;
    }
    return sum;
  }
  return sin(z) / z;
}

template <class T>
T phi_model(double x, T rho) {
  return cos(rho * x);
}

/// d/drho cos(rho x).
template <class T>
T phi_model_drho(double x, T rho) {
  return -x * sin(rho * x);
}

/// Quasi-derivative of the model solution, -rho sin(rho x).
template <class T>
T phi_model_quasi(double x, T rho) {
  return -rho * sin(rho * x);
}

/// int_0^x cos(a t) cos(b t) dt.
template <class T>
T d_tilde(double x, T a, T b) {
  return 0.5 * x * (sinc((a - b) * x) + sinc((a + b) * x));
}

/// int_0^x t^k sin(w t) dt for k >= 0.
template <class T>
T sin_moment(int k, T w, double x) {
  const T u = w * x;
  if (abs(u) < 4.0) {
    // x^{k+1} sum_j (-1)^j u^{2j+1} / ((2j+1)! (k+2j+2))
    const T u2 = u * u;
    T power = u;  // (-1)^j u^{2j+1} / (2j+1)!
    T sum = power / static_cast<double>(k + 2);
    for (int j = 1; j < 40; ++j) {
      power *= -u2 / static_cast<double>((2 * j) * (2 * j + 1));
      const T term = power / static_cast<double>(k + 2 * j + 2);
      sum += term;
      if (abs(term) < 1e-18 * abs(sum)) break;
    }
    return std::pow(x, k + 1) * sum;
  }
  // integration by parts, started from the k = 0 moments
  const T su = sin(u);
  const T cu = cos(u);
  T s_moment = (T{1.0} - cu) / w;  // int t^0 sin
  T c_moment = su / w;             // int t^0 cos
  double xk = 1.0;
  for (int m = 1; m <= k; ++m) {
    xk *= x;
    const T s_next = -xk * cu / w + static_cast<double>(m) / w * c_moment;
    const T c_next = xk * su / w - static_cast<double>(m) / w * s_moment;
    s_moment = s_next;
    c_moment = c_next;
  }
  return s_moment;
}

/// d/da D~(x, a, b) = -int_0^x t sin(a t) cos(b t) dt.
template <class T>
T d_tilde_drho1(double x, T a, T b) {
  return -0.5 * (sin_moment(1, a + b, x) + sin_moment(1, a - b, x));
}

/// Relative-gap threshold |a1 - a2| x below which divided differences use
/// the midpoint expansion.
inline constexpr double divdiff_switch = 1e-3;

/// (D~(x, a1, b) - D~(x, a2, b)) / (a1 - a2); equals d_tilde_drho1 at a1 == a2.
template <class T>
T d_tilde_divdiff(double x, T a1, T a2, T b) {
  const T delta = a1 - a2;
  if (abs(delta) * x >= divdiff_switch) {
    return (d_tilde(x, a1, b) - d_tilde(x, a2, b)) / delta;
  }
  // -int_0^x t sin(m t) cos(b t) sinc(h t) dt, sinc expanded to h^4
  const T m = 0.5 * (a1 + a2);
  const T h = 0.5 * delta;
  const T h2 = h * h;
  const T c0 = sin_moment(1, m + b, x) + sin_moment(1, m - b, x);
  const T c1 = sin_moment(3, m + b, x) + sin_moment(3, m - b, x);
  const T c2 = sin_moment(5, m + b, x) + sin_moment(5, m - b, x);
  return -0.5 * (c0 - h2 / 6.0 * c1 + h2 * h2 / 120.0 * c2);
}

/// (cos(a1 x) - cos(a2 x)) / (a1 - a2), exact product form.
template <class T>
T cos_divdiff(double x, T a1, T a2) {
  const T m = 0.5 * (a1 + a2);
  const T h = 0.5 * (a1 - a2);
  return -x * sin(m * x) * sinc(h * x);
}

}  // namespace slinv::kernels
