#pragma once

// Reference computations used only by the tests. They avoid the library's
// closed forms so that agreement means something.

#include <cmath>
#include <complex>
#include <functional>

#include "slinv/types.hpp"

namespace oracle {

using slinv::cplx;

/// Composite Simpson rule on [a, b] with an even number of panels.
inline cplx simpson(const std::function<cplx(double)>& f, double a, double b, int panels = 2000) {
  if (panels % 2) ++panels;
  const double h = (b - a) / panels;
  cplx s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

/// int_0^x cos(a t) cos(b t) dt by quadrature.
inline cplx d_tilde(double x, cplx a, cplx b, int panels = 8000) {
  if (x == 0.0) return 0.0;
  return simpson([&](double t) { return std::cos(a * t) * std::cos(b * t); }, 0.0, x, panels);
}

struct State {
  cplx y, y1;
};

/// Classical RK4 for y' = s y + y1, y1' = -s y1 - (s^2 + lambda) y with a
/// smooth potential given as a function.
inline State rk4(const std::function<cplx(double)>& sigma, cplx lambda, State init, int steps) {
  const double h = slinv::pi / steps;
  auto rhs = [&](double x, State u) {
    const cplx s = sigma(x);
    return State{s * u.y + u.y1, -s * u.y1 - (s * s + lambda) * u.y};
  };
  auto axpy = [](State u, double a, State v) { return State{u.y + a * v.y, u.y1 + a * v.y1}; };
  State u = init;
  for (int i = 0; i < steps; ++i) {
    const double x = i * h;
    const State k1 = rhs(x, u);
    const State k2 = rhs(x + h / 2, axpy(u, h / 2, k1));
    const State k3 = rhs(x + h / 2, axpy(u, h / 2, k2));
    const State k4 = rhs(x + h, axpy(u, h, k3));
    u.y += h / 6 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y);
    u.y1 += h / 6 * (k1.y1 + 2.0 * k2.y1 + 2.0 * k3.y1 + k4.y1);
  }
  return u;
}

/// Bisection on a real function with a sign change in [a, b].
inline double bisect(const std::function<double(double)>& f, double a, double b, double tol = 1e-13) {
  double fa = f(a);
  while (b - a > tol) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace oracle
