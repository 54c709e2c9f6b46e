#include "diracres/dirac_ode.hpp"

#include <boost/numeric/odeint.hpp>
#include <cmath>

#include "diracres/free_model.hpp"
#include "diracres/special_functions.hpp"

namespace diracres::ode {

namespace odeint = boost::numeric::odeint;

namespace {

constexpr double kAbsFloor = 1e-300;

//! Segments [a, b] of the path from x_from to x_to cut at potential breakpoints.
std::vector<std::pair<double, double>> segments(const PotentialSpec& v, double x_from, double x_to) {
  std::vector<double> cuts{x_from};
  const double lo = std::min(x_from, x_to);
  const double hi = std::max(x_from, x_to);
  std::vector<double> inner;
  for (double b : v.breakpoints())
    if (b > lo && b < hi) inner.push_back(b);
  if (x_to < x_from) std::reverse(inner.begin(), inner.end());
  cuts.insert(cuts.end(), inner.begin(), inner.end());
  cuts.push_back(x_to);
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) out.emplace_back(cuts[i], cuts[i + 1]);
  return out;
}

std::size_t piece_of(const PotentialSpec& v, double a, double b) {
  const double mid = 0.5 * (a + b);
  if (mid >= v.gamma()) return static_cast<std::size_t>(-1);
  return v.piece_index(mid);
}

template <class State, class Rhs>
void run(Rhs&& f, State& u, double a, double b, double rtol) {
  using Stepper = odeint::runge_kutta_fehlberg78<State>;
  auto ctrl = odeint::make_controlled(kAbsFloor, rtol, Stepper());
  const double dt = (b - a) / 64.0;
  odeint::integrate_adaptive(ctrl, f, u, a, b, dt);
}

}  // namespace

System make_system(const PotentialSpec& v, const SpectralParam& sp, cplx shift) {
  return {&v, sp.lambda, sp.mass, v.kappa(), shift};
}

State2 rhs(const System& s, std::size_t piece, double x, const State2& u) {
  const double vx = piece == static_cast<std::size_t>(-1) ? 0.0 : s.v->on_piece(piece, x);
  const double kx = s.kappa / x;
  const cplx is = cplx(0.0, 1.0) * s.shift;
  return {(-kx - is) * u[0] + (s.mass - vx + s.lambda) * u[1],
          (s.mass + vx - s.lambda) * u[0] + (kx - is) * u[1]};
}

State2 integrate(const System& s, State2 u, double x_from, double x_to, double rtol) {
  for (auto [a, b] : segments(*s.v, x_from, x_to)) {
    const std::size_t p = piece_of(*s.v, a, b);
    auto f = [&](const State2& y, State2& dy, double x) { dy = rhs(s, p, x, y); };
    run(f, u, a, b, rtol);
  }
  return u;
}

Augmented integrate_with_free_overlap(const System& s, const SpectralParam& sp, State2 u_gamma, double x_to,
                                      double rtol) {
  using State4 = std::array<cplx, 4>;
  State4 y{u_gamma[0], u_gamma[1], cplx(0.0, 0.0), cplx(0.0, 0.0)};
  const cplx ik = cplx(0.0, 1.0) * s.shift;
  for (auto [a, b] : segments(*s.v, s.v->gamma(), x_to)) {
    const std::size_t p = piece_of(*s.v, a, b);
    auto f = [&](const State4& st, State4& dst, double x) {
      const State2 d = rhs(s, p, x, {st[0], st[1]});
      dst[0] = d[0];
      dst[1] = d[1];
      const Solution2 ph = free_phi(sp, s.kappa, x);
      const cplx e = std::exp(ik * x + ph.scale);
      const cplx overlap = s.v->on_piece(p, x) * (ph.value[0] * st[0] + ph.value[1] * st[1]) * e;
      dst[2] = -overlap;
      dst[3] = cplx(-std::abs(overlap), 0.0);
    };
    run(f, y, a, b, rtol);
  }
  return {{y[0], y[1]}, y[2], y[3].real()};
}

State2 regular_start(const System& s, double x0) {
  const double v0 = s.v->on_piece(0, 0.0);
  const double c = std::pow(x0, s.kappa) / odd_double_factorial(s.kappa);
  return {c * (s.lambda + s.mass - v0) * x0 / (2.0 * s.kappa + 1.0), cplx(c, 0.0)};
}

}  // namespace diracres::ode
