#include "diracres/free_model.hpp"

#include <cmath>
#include <numbers>

#include "diracres/errors.hpp"
#include "diracres/quadrature.hpp"
#include "diracres/special_functions.hpp"

namespace diracres {

namespace {

const cplx I(0.0, 1.0);

cplx kpow(cplx k, int n) {
  cplx r(1.0, 0.0);
  const cplx b = n < 0 ? 1.0 / k : k;
  for (int i = 0; i < std::abs(n); ++i) r *= b;
  return r;
}

Solution2 combine(double x, const ScaledValue& a, const ScaledValue& b) {
  Solution2 s;
  s.x = x;
  s.scale = std::max(a.log_scale, b.log_scale);
  s.value = {a.value_shifted(s.scale), b.value_shifted(s.scale)};
  return s;
}

void check_x(double x) {
  if (!(x > 0.0)) throw UsageError("coordinate must be positive");
}

}  // namespace

cplx Solution2::f1() const { return value[0] * std::exp(scale); }
cplx Solution2::f2() const { return value[1] * std::exp(scale); }

cplx det(const Solution2& a, const Solution2& b) {
  return (a.value[0] * b.value[1] - a.value[1] * b.value[0]) * std::exp(a.scale + b.scale);
}

Solution2 free_phi(const SpectralParam& sp, int kappa, double x) {
  check_x(x);
  const cplx z = sp.k * x;
  const cplx pre = kpow(sp.k, -kappa);
  return combine(x, riccati_j(kappa, z) * (pre * I * sp.k0), riccati_j(kappa - 1, z) * pre);
}

Solution2 free_theta(const SpectralParam& sp, int kappa, double x) {
  check_x(x);
  const cplx z = sp.k * x;
  const cplx pre = kpow(sp.k, kappa);
  return combine(x, riccati_eta(kappa, z) * pre, riccati_eta(kappa - 1, z) * (pre / (I * sp.k0)));
}

Solution2 free_jost(const SpectralParam& sp, int kappa, double x, int sign) {
  check_x(x);
  const cplx z = sp.k * x;
  const cplx pre = -static_cast<double>(sign) * I * kpow(sp.k, kappa);
  return combine(x, riccati_h(kappa, z, sign) * (pre * I * sp.k0), riccati_h(kappa - 1, z, sign) * pre);
}

ResolventKernelValue free_resolvent_kernel(const SpectralParam& sp, int kappa, double x, double y) {
  if (!(x > 0.0) || !(y > 0.0)) throw UsageError("kernel coordinates must be positive");
  const cplx a = I * sp.k0;
  auto lower = [&](double big, double small) {
    const cplx z = sp.k * big;
    const cplx zeta = sp.k * small;
    const ScaledValue h1 = riccati_h(kappa, z, 1);
    const ScaledValue h0 = riccati_h(kappa - 1, z, 1);
    const ScaledValue j1 = riccati_j(kappa, zeta);
    const ScaledValue j0 = riccati_j(kappa - 1, zeta);
    Matrix2c b;
    b(0, 0) = a * (h1 * j1).value();
    b(0, 1) = (h1 * j0).value();
    b(1, 0) = (h0 * j1).value();
    b(1, 1) = (h0 * j0).value() / a;
    return b;
  };
  ResolventKernelValue r{x, y, Matrix2c::Zero()};
  if (y < x) {
    r.block = lower(x, y);
  } else if (x < y) {
    r.block = lower(y, x).transpose();
  } else {
    const Matrix2c b = lower(x, x);
    r.block = 0.5 * (b + b.transpose());
  }
  return r;
}

double omega(const PotentialSpec& v, double lambda, double abs_tol) {
  const double m = v.mass();
  if (branch_distance(lambda, m) < kBranchExclusion) throw BranchPointError("Omega at +-m");
  if (std::abs(lambda) < m) return 0.0;
  if (v.is_zero()) return 0.0;
  const SpectralParam sp = quasimomentum(lambda, m);
  const double k = sp.k.real();
  const double c1 = m == 0.0 ? 1.0 : k / (lambda - m);
  const double c0 = m == 0.0 ? 1.0 : k / (lambda + m);
  const int kap = v.kappa();
  double total = 0.0;
  const auto& pieces = v.pieces();
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    auto f = [&](double y) {
      const double j1 = riccati_j(kap, cplx(k * y, 0.0)).value().real();
      const double j0 = riccati_j(kap - 1, cplx(k * y, 0.0)).value().real();
      return v.on_piece(i, y) * (c1 * j1 * j1 + c0 * j0 * j0);
    };
    total += quad::adaptive(f, pieces[i].lo, pieces[i].hi, abs_tol / pieces.size());
  }
  return total;
}

double spectral_density(const SpectralParam& sp, int kappa) {
  const double s = sp.lambda.real();
  if (sp.lambda.imag() != 0.0 || std::abs(s) <= sp.mass)
    throw UsageError("spectral density is defined on the continuous spectrum only");
  const double k = sp.k.real();
  return std::pow(k, 2 * kappa + 1) / (std::numbers::pi * (s + sp.mass));
}

OmegaTraceReport omega_trace_crosscheck(const PotentialSpec& v, cplx lambda, double s_max) {
  if (lambda.imag() == 0.0) throw UsageError("omega_trace_crosscheck needs Im lambda != 0");
  OmegaTraceReport rep;
  if (v.is_zero()) return rep;
  const double m = v.mass();
  const int kap = v.kappa();
  const double lo = std::max(m, 1e-9);
  std::array<std::pair<double, double>, 2> ranges{{{lo, s_max}, {-s_max, -lo}}};

  // Left side: x outer (composite Gauss per piece), s inner (adaptive).
  const auto& pieces = v.pieces();
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const quad::Rule rule = quad::composite_gauss(pieces[i].lo, pieces[i].hi, 16);
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double x = rule.nodes[q];
      auto inner = [&](double s) {
        const SpectralParam sp = quasimomentum(s, m);
        const Solution2 ph = free_phi(sp, kap, x);
        const cplx p1 = ph.f1();
        const cplx p2 = ph.f2();
        return spectral_density(sp, kap) * (p1 * p1 + p2 * p2) / ((s - lambda) * (s - lambda));
      };
      cplx s_int(0.0, 0.0);
      for (auto [a, b] : ranges) s_int += quad::adaptive(inner, a, b, 1e-11);
      rep.lhs += rule.weights[q] * v.on_piece(i, x) * s_int;
    }
  }

  // Right side through Omega.
  auto outer = [&](double s) { return omega(v, s, 1e-11) / ((s - lambda) * (s - lambda)); };
  for (auto [a, b] : ranges) rep.rhs += quad::adaptive(outer, a, b, 1e-9) / std::numbers::pi;

  rep.difference = std::abs(rep.lhs - rep.rhs);
  rep.tail_estimate =
      std::abs(v.integral() / std::numbers::pi * (1.0 / (s_max - lambda) + 1.0 / (s_max + lambda)));
  return rep;
}

}  // namespace diracres
