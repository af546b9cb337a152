#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace uvest {

inline constexpr double kQuadratureRelTol = 1e-10;

// Adaptive Gauss-Kronrod (15-point) over [a, b]; b may be +infinity.
// Integrands must be smooth on the open interval: callers split at kinks.
template <typename F>
double integrate(F&& f, double a, double b, double rel_tol = kQuadratureRelTol) {
  if (a == b) return 0.0;
  double error = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, 30, rel_tol, &error);
  if (!std::isfinite(value)) throw std::runtime_error("quadrature diverged");
  return value;
}

}  // namespace uvest
