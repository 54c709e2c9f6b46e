#include "diracres/jost.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "diracres/dirac_ode.hpp"
#include "diracres/errors.hpp"
#include "diracres/special_functions.hpp"

namespace diracres {

namespace {

constexpr double kStartFactor = 1e-6;
const cplx I(0.0, 1.0);

std::vector<std::size_t> order_by(const std::vector<double>& xs, bool descending) {
  std::vector<std::size_t> idx(xs.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return descending ? xs[a] > xs[b] : xs[a] < xs[b];
  });
  return idx;
}

void check_range(const PotentialSpec& v, double x) {
  if (!(x > 0.0) || x > v.gamma() * (1.0 + 1e-14)) throw UsageError("x must lie in (0, gamma]");
}

//! Backward sweep of a solution fixed at gamma; shift k for the Jost solution.
std::vector<Solution2> backward(const PotentialSpec& v, const SpectralParam& sp, const Solution2& at_gamma,
                                const std::vector<double>& xs, cplx shift, double rtol) {
  const double g = v.gamma();
  const ode::System sys = ode::make_system(v, sp, shift);
  // u(gamma) = exp(-i shift gamma) f(gamma); the modulus goes into the log-scale.
  const double L = at_gamma.scale + shift.imag() * g;
  const cplx ph = std::polar(1.0, -shift.real() * g);
  ode::State2 u{at_gamma.value[0] * ph, at_gamma.value[1] * ph};
  std::vector<Solution2> out(xs.size());
  double x_now = g;
  for (std::size_t i : order_by(xs, true)) {
    check_range(v, xs[i]);
    u = ode::integrate(sys, u, x_now, xs[i], rtol);
    x_now = xs[i];
    const cplx back = std::polar(1.0, shift.real() * x_now);
    out[i] = Solution2{x_now, {u[0] * back, u[1] * back}, L - shift.imag() * x_now};
  }
  return out;
}

JostOptions relaxed(const PotentialSpec& v, const SpectralParam& sp, const JostOptions& o, double rho) {
  JostOptions r = o;
  const double dk = rho * std::max(1.0, std::abs(sp.lambda / sp.k));
  r.validity_ceiling = o.validity_ceiling + 2.0 * v.gamma() * dk + 1e-9;
  return r;
}

template <class F>
cplx cauchy_derivative(cplx center, double rho, int n, F&& f) {
  cplx acc(0.0, 0.0);
  for (int j = 0; j < n; ++j) {
    const cplx w = std::polar(rho, 2.0 * std::numbers::pi * (j + 0.5) / n);
    acc += f(center + w) / w;
  }
  return acc / static_cast<double>(n);
}

}  // namespace

void check_ceiling(const PotentialSpec& v, const SpectralParam& sp, const JostOptions& o) {
  const double c = 2.0 * std::abs(sp.k.imag()) * v.gamma();
  if (c > o.validity_ceiling)
    throw ValidityCeilingError("2|Im k| gamma = " + std::to_string(c) + " exceeds the validity ceiling " +
                               std::to_string(o.validity_ceiling));
}

std::vector<Solution2> jost_solution(const PotentialSpec& v, const SpectralParam& sp, std::vector<double> xs,
                                     const JostOptions& o) {
  check_ceiling(v, sp, o);
  const Solution2 psi = free_jost(sp, v.kappa(), v.gamma(), +1);
  return backward(v, sp, psi, xs, sp.k, o.rtol);
}

Solution2 jost_solution(const PotentialSpec& v, const SpectralParam& sp, double x, const JostOptions& o) {
  return jost_solution(v, sp, std::vector<double>{x}, o)[0];
}

std::vector<Solution2> regular_solution(const PotentialSpec& v, const SpectralParam& sp, std::vector<double> xs,
                                        const JostOptions& o, double x0_factor) {
  const double x0 = x0_factor * v.gamma();
  const ode::System sys = ode::make_system(v, sp);
  ode::State2 u = ode::regular_start(sys, x0);
  std::vector<Solution2> out(xs.size());
  double x_now = x0;
  for (std::size_t i : order_by(xs, false)) {
    if (!(xs[i] > 0.0)) throw UsageError("x must be positive");
    u = ode::integrate(sys, u, x_now, xs[i], o.rtol);
    x_now = xs[i];
    out[i] = Solution2{x_now, u, 0.0};
  }
  return out;
}

Solution2 regular_solution(const PotentialSpec& v, const SpectralParam& sp, double x, const JostOptions& o) {
  const double h = 0.5 * v.gamma();
  const auto a = regular_solution(v, sp, {x, h}, o, kStartFactor);
  const auto b = regular_solution(v, sp, {h}, o, 0.5 * kStartFactor);
  const double scale = std::abs(a[1].f1()) + std::abs(a[1].f2());
  const double diff = std::abs(a[1].f1() - b[0].f1()) + std::abs(a[1].f2() - b[0].f2());
  if (diff > 1e-8 * scale)
    throw InitializationAccuracyError("regular solution depends on the start point beyond 1e-8");
  return a[0];
}

cplx jost_g(const PotentialSpec& v, const SpectralParam& sp, const JostOptions& o) {
  check_ceiling(v, sp, o);
  const double g = v.gamma();
  const Solution2 psi = free_jost(sp, v.kappa(), g, +1);
  const Solution2 phi = regular_solution(v, sp, std::vector<double>{g}, o, kStartFactor)[0];
  return det(psi, phi);
}

cplx jost_g_minus(const PotentialSpec& v, const SpectralParam& sp, const JostOptions& o) {
  return std::conj(jost_g(v, star(sp), o));
}

double derivative_radius(const SpectralParam& sp, const JostOptions& o) {
  return std::min(o.derivative_radius, branch_distance(sp.lambda, sp.mass) / 4.0);
}

cplx jost_g_derivative(const PotentialSpec& v, const SpectralParam& sp, const JostOptions& o) {
  check_ceiling(v, sp, o);
  const double rho = derivative_radius(sp, o);
  const JostOptions r = relaxed(v, sp, o, rho);
  return cauchy_derivative(sp.lambda, rho, o.derivative_nodes,
                           [&](cplx z) { return jost_g(v, continue_from(sp, z), r); });
}

namespace {

struct DualRoutes {
  JostSample s;
  double amplification = 1.0;  //!< largest intermediate magnitude over |g|, either route
};

DualRoutes dual_routes(const PotentialSpec& v, const SpectralParam& sp, const JostOptions& o) {
  const double g = v.gamma();
  const std::vector<double> xs{0.5 * g, 0.25 * g};
  const auto f = jost_solution(v, sp, xs, o);
  const auto phi = regular_solution(v, sp, xs, o, kStartFactor);
  DualRoutes d;
  JostSample& s = d.s;
  s.lambda = sp.lambda;
  s.g_plus = det(f[0], phi[0]);
  const cplx g4 = det(f[1], phi[1]);
  s.wronskian_drift = std::abs(s.g_plus - g4) / std::abs(s.g_plus);

  // Integral route: g+ = k0 + int v phi0^T f+ dy with the free regular solution phi0.
  const Solution2 psi = free_jost(sp, v.kappa(), g, +1);
  const double L = psi.scale + sp.k.imag() * g;
  const cplx ph = std::polar(1.0, -sp.k.real() * g);
  const ode::System sys = ode::make_system(v, sp, sp.k);
  const auto aug = ode::integrate_with_free_overlap(sys, sp, {psi.value[0] * ph, psi.value[1] * ph},
                                                    kStartFactor * g, o.rtol);
  s.g_integral = sp.k0 + aug.integral * std::exp(L);
  const double cond = std::abs(sp.k0) + aug.abs_integral * std::exp(L);
  const double wr = (std::abs(f[0].f1()) + std::abs(f[0].f2())) * (std::abs(phi[0].f1()) + std::abs(phi[0].f2()));
  d.amplification = std::max(cond, wr) / std::abs(s.g_plus);
  s.residual = std::abs(s.g_plus - s.g_integral) / std::abs(s.g_plus);
  if (std::abs(s.g_plus - s.g_integral) > o.route_tol * cond)
    throw InconsistencyError("Wronskian and integral routes for g+ disagree (relative " +
                             std::to_string(std::abs(s.g_plus - s.g_integral) / cond) + ")");
  return d;
}

}  // namespace

JostSample jost_function(const PotentialSpec& v, const SpectralParam& sp, const JostOptions& o) {
  check_ceiling(v, sp, o);
  DualRoutes d = dual_routes(v, sp, o);
  //! Cancellation against |g| amplifies the integrator tolerance; repeat once with it compensated.
  constexpr double kFloor = 1e-14;
  if (d.amplification > 1.0 && o.rtol > kFloor) {
    JostOptions t = o;
    t.rtol = std::max(kFloor, o.rtol / d.amplification);
    d = dual_routes(v, sp, t);
  }
  JostSample& s = d.s;
  s.route = JostRoute::wronskian;
  s.g_minus = jost_g_minus(v, sp, o);
  s.dg_dlambda = jost_g_derivative(v, sp, o);
  return s;
}

cplx frak_F(const PotentialSpec& v, cplx lambda, const JostOptions& o) {
  const double m = v.mass();
  const SpectralParam sp = quasimomentum(lambda, m, in_gap(lambda, m) ? Rim::upper : Rim::bulk);
  return (lambda - m) * jost_g(v, sp, o) * jost_g_minus(v, sp, o);
}

cplx frak_F_derivative(const PotentialSpec& v, cplx lambda, const JostOptions& o) {
  const double m = v.mass();
  double rho = o.derivative_radius;
  if (m > 0.0) rho = std::min(rho, branch_distance(lambda, m) / 4.0);
  return cauchy_derivative(lambda, rho, o.derivative_nodes, [&](cplx z) { return frak_F(v, z, o); });
}

Solution2 theta_tilde(const PotentialSpec& v, const SpectralParam& sp, double x, const JostOptions& o) {
  check_ceiling(v, sp, o);
  return backward(v, sp, free_theta(sp, v.kappa(), v.gamma()), {x}, {0.0, 0.0}, o.rtol)[0];
}

Solution2 phi_tilde(const PotentialSpec& v, const SpectralParam& sp, double x, const JostOptions& o) {
  check_ceiling(v, sp, o);
  return backward(v, sp, free_phi(sp, v.kappa(), v.gamma()), {x}, {0.0, 0.0}, o.rtol)[0];
}

OriginLimit origin_limit(const PotentialSpec& v, const SpectralParam& sp, TildeKind kind, const JostOptions& o) {
  check_ceiling(v, sp, o);
  const double g = v.gamma();
  const std::vector<double> xs{1e-5 * g, 1e-6 * g};
  std::vector<Solution2> s;
  const int kap = v.kappa();
  switch (kind) {
    case TildeKind::theta: s = backward(v, sp, free_theta(sp, kap, g), xs, {0.0, 0.0}, o.rtol); break;
    case TildeKind::phi: s = backward(v, sp, free_phi(sp, kap, g), xs, {0.0, 0.0}, o.rtol); break;
    case TildeKind::jost: s = jost_solution(v, sp, xs, o); break;
  }
  const double df = odd_double_factorial(kap);
  const cplx a1 = std::pow(xs[0], kap) * s[0].f1() / df;
  const cplx a2 = std::pow(xs[1], kap) * s[1].f1() / df;
  // Leading correction is O(x^2); the two points differ by a factor 10.
  const cplx c = (100.0 * a2 - a1) / 99.0;
  return {c, std::abs(c - a2)};
}

cplx frak_F_via_tilde(const PotentialSpec& v, cplx lambda, const JostOptions& o) {
  const double m = v.mass();
  const SpectralParam sp = quasimomentum(lambda, m, in_gap(lambda, m) ? Rim::upper : Rim::bulk);
  const cplx ct = origin_limit(v, sp, TildeKind::theta, o).value;
  const cplx cp = origin_limit(v, sp, TildeKind::phi, o).value;
  cplx q = lambda * lambda - m * m;
  cplx q2k(1.0, 0.0);
  for (int i = 0; i < 2 * v.kappa(); ++i) q2k *= q;
  return (lambda + m) * ct * ct + (lambda - m) * q2k * cp * cp;
}

std::vector<double> scattering_phase(const PotentialSpec& v, const std::vector<double>& grid, const JostOptions& o) {
  std::vector<double> ph;
  ph.reserve(grid.size());
  for (double l : grid) {
    const double a = std::arg(jost_g(v, quasimomentum(l, v.mass()), o)) + 0.5 * std::numbers::pi;
    if (ph.empty()) {
      ph.push_back(a);
    } else {
      double d = a - ph.back();
      d -= 2.0 * std::numbers::pi * std::round(d / (2.0 * std::numbers::pi));
      ph.push_back(ph.back() + d);
    }
  }
  if (!ph.empty()) {
    const double n = std::round((v.integral() - ph.back()) / (2.0 * std::numbers::pi));
    for (double& p : ph) p += 2.0 * std::numbers::pi * n;
  }
  return ph;
}

}  // namespace diracres
