// Composite Gauss-Legendre integration with panel doubling.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <utility>

#include "fcq/gauss_rules.hpp"

namespace fcq {

namespace detail {

inline double value_norm(double x) { return std::abs(x); }
template <typename Derived>
double value_norm(const Eigen::MatrixBase<Derived>& x) {
  return x.norm();
}

}  // namespace detail

/// Integrate f over [a,b] by a composite 12-point Gauss rule, doubling the
/// panel count until two successive levels agree to rel_tol. Convergence is
/// measured relative to max(result norm, abs_floor), with a roundoff floor
/// proportional to the total absolute mass sum_j |w_j| |f_j| so that heavily
/// cancelling integrands terminate. Throws if max_level is exhausted,
/// reporting the last error estimate.
template <class Value, class F>
Value integrate_doubling(F&& f, double a, double b, double rel_tol,
                         Value zero, double abs_floor = 1e-300,
                         int max_level = 16) {
  const QuadRule gl = gauss_legendre(12);
  Value prev = zero;
  double err = std::numeric_limits<double>::infinity();
  for (int level = 0; level <= max_level; ++level) {
    const int panels = 1 << level;
    const double width = (b - a) / panels;
    Value sum = zero;
    double mass = 0.0;
    for (int p = 0; p < panels; ++p) {
      const double mid = a + (p + 0.5) * width;
      for (int j = 0; j < gl.nodes.size(); ++j) {
        const double w = 0.5 * width * gl.weights[j];
        Value fx = f(mid + 0.5 * width * gl.nodes[j]);
        mass += w * detail::value_norm(fx);
        sum += w * fx;
      }
    }
    if (level > 0) {
      err = detail::value_norm(sum - prev);
      const double scale = std::max(detail::value_norm(sum), abs_floor);
      const double eps = std::numeric_limits<double>::epsilon();
      if (err <= rel_tol * scale + 64.0 * eps * mass) return sum;
    }
    prev = sum;
  }
  char msg[128];
  std::snprintf(msg, sizeof msg,
                "integrate_doubling: no convergence, last error estimate %.3e",
                err);
  throw std::runtime_error(msg);
}

}  // namespace fcq
