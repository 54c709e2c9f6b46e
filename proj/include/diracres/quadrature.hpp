#pragma once
//! Thin wrappers over Boost.Math quadrature used across modules.

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <complex>
#include <vector>

namespace diracres::quad {

//! Adaptive 31-point Gauss-Kronrod on [a, b]; works for real and complex integrands.
template <class F>
auto adaptive(F f, double a, double b, double abs_tol, double* err = nullptr, unsigned depth = 25) {
  using R = decltype(f(a));
  if (a == b) {
    if (err) *err = 0.0;
    return R{};
  }
  // Boost terminates on a relative test; a depth-0 pass supplies the L1 scale.
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  double e = 0.0;
  double l1 = 0.0;
  R v = GK::integrate(f, a, b, 0, 1.0, &e, &l1);
  if (e > abs_tol) {
    const double rel = l1 > 0.0 ? std::max(abs_tol / l1, 1e-15) : 1e-15;
    v = GK::integrate(f, a, b, depth, rel, &e, &l1);
  }
  if (err) *err = e;
  return v;
}

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

//! Composite Gauss-Legendre rule with `panels` panels of 8 nodes on [a, b].
Rule composite_gauss(double a, double b, int panels);
//! Composite midpoint rule with n nodes on [a, b].
Rule composite_midpoint(double a, double b, int n);

}  // namespace diracres::quad
