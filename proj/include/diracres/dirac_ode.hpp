#pragma once
//! Adaptive integration of the radial Dirac system with potential v.
//!   f1' = -kappa/x f1 + (m - v + lambda) f2
//!   f2' = (m + v - lambda) f1 + kappa/x f2
//! The integrated variable is u = exp(-i*shift*x) f.

#include <array>

#include "diracres/potential.hpp"
#include "diracres/spectral_plane.hpp"

namespace diracres::ode {

using State2 = std::array<cplx, 2>;

struct System {
  const PotentialSpec* v = nullptr;
  cplx lambda;
  double mass = 0.0;
  int kappa = 1;
  cplx shift{0.0, 0.0};
};

System make_system(const PotentialSpec& v, const SpectralParam& sp, cplx shift = {0.0, 0.0});

//! Right-hand side at x on piece `piece` (v taken from that piece's polynomial).
State2 rhs(const System& s, std::size_t piece, double x, const State2& u);

//! Integrate u from x_from to x_to (either direction), splitting at breakpoints.
State2 integrate(const System& s, State2 u, double x_from, double x_to, double rtol);

//! Integrate u backward from gamma to x_to together with
//!   I(x) = int_x^gamma v phi0^T f dy   and   J(x) = int_x^gamma |v phi0^T f| dy,
//! where f = exp(i*shift*y) u and phi0 is the free regular solution.
struct Augmented {
  State2 u;
  cplx integral;
  double abs_integral = 0.0;
};
Augmented integrate_with_free_overlap(const System& s, const SpectralParam& sp, State2 u_gamma, double x_to,
                                      double rtol);

//! Frobenius start of the regular solution at small x0 (first-order corrected).
State2 regular_start(const System& s, double x0);

}  // namespace diracres::ode
