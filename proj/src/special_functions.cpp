#include "diracres/special_functions.hpp"

#include <cmath>

#include "diracres/errors.hpp"

namespace diracres {

namespace {

constexpr int kMaxSeriesTerms = 60;
constexpr double kSeriesStop = 1e-18;

void check_order(int order) {
  if (order < -1) throw UsageError("Riccati-Bessel order must be >= -1");
}

cplx ipow(cplx base, int n) {
  cplx r(1.0, 0.0);
  if (n < 0) {
    base = 1.0 / base;
    n = -n;
  }
  for (int i = 0; i < n; ++i) r *= base;
  return r;
}

//! Polynomial in 1/(2z) of the finite Hankel expansion; sign selects h^+ or h^-.
cplx hankel_poly(int n, cplx z, int sign) {
  if (n <= 0) return {1.0, 0.0};
  const cplx is(0.0, static_cast<double>(sign));
  const cplx inv = 1.0 / (2.0 * z);
  cplx sum(0.0, 0.0);
  cplx pw(1.0, 0.0);
  for (int k = 0; k <= n; ++k) {
    // (n+k)! / (k! (n-k)!)
    double c = 1.0;
    for (int j = n - k + 1; j <= n + k; ++j) c *= j;
    for (int j = 2; j <= k; ++j) c /= j;
    sum += c * pw;
    pw *= is * inv;
  }
  return sum;
}

}  // namespace

ScaledValue::ScaledValue(cplx m, double ls) : mantissa(m), log_scale(ls) { normalize(); }

void ScaledValue::normalize() {
  const double a = std::abs(mantissa);
  if (a == 0.0 || !std::isfinite(a)) {
    if (a == 0.0) log_scale = 0.0;
    return;
  }
  log_scale += std::log(a);
  mantissa /= a;
}

cplx ScaledValue::value() const { return mantissa * std::exp(log_scale); }

cplx ScaledValue::value_shifted(double shift) const {
  return mantissa * std::exp(log_scale - shift);
}

ScaledValue operator*(const ScaledValue& a, const ScaledValue& b) {
  return {a.mantissa * b.mantissa, a.log_scale + b.log_scale};
}

ScaledValue operator*(const ScaledValue& a, cplx c) { return {a.mantissa * c, a.log_scale}; }

ScaledValue operator+(const ScaledValue& a, const ScaledValue& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const double s = std::max(a.log_scale, b.log_scale);
  return {a.mantissa * std::exp(a.log_scale - s) + b.mantissa * std::exp(b.log_scale - s), s};
}

ScaledValue operator-(const ScaledValue& a, const ScaledValue& b) { return a + b * cplx(-1.0, 0.0); }

double odd_double_factorial(int n) {
  double r = 1.0;
  for (int j = 2 * n - 1; j > 1; j -= 2) r *= j;
  return r;
}

double riccati_switch_radius(int order) { return std::max(6.0, 2.0 * order); }

namespace detail {

ScaledValue riccati_j_series(int n, cplx z) {
  check_order(n);
  if (z == cplx(0.0, 0.0)) return ScaledValue::from(n == -1 ? 1.0 : 0.0);
  const cplx z2 = z * z;
  cplx term(1.0, 0.0);
  cplx sum = term;
  for (int l = 0; l < kMaxSeriesTerms; ++l) {
    term *= -z2 / (2.0 * (l + 1) * (2.0 * l + 2.0 * n + 3.0));
    sum += term;
    if (std::abs(term) < kSeriesStop * std::abs(sum)) break;
  }
  // z^{n+1} / (2n+1)!!
  const double ls = (n + 1) * std::log(std::abs(z));
  const cplx phase = std::polar(1.0, (n + 1) * std::arg(z));
  return {sum * phase / odd_double_factorial(n + 1), ls};
}

ScaledValue riccati_eta_series(int n, cplx z) {
  check_order(n);
  if (z == cplx(0.0, 0.0)) throw SingularArgumentError("riccati_eta at z = 0");
  if (n == -1) return riccati_j_series(0, z) * cplx(-1.0, 0.0);
  const cplx z2 = z * z;
  cplx term(1.0, 0.0);
  cplx sum = term;
  for (int l = 0; l < kMaxSeriesTerms; ++l) {
    term *= -z2 / (2.0 * (l + 1) * (2.0 * l - 2.0 * n + 1.0));
    sum += term;
    if (std::abs(term) < kSeriesStop * std::abs(sum)) break;
  }
  const double ls = -n * std::log(std::abs(z));
  const cplx phase = std::polar(1.0, -n * std::arg(z));
  return {sum * phase * odd_double_factorial(n), ls};
}

ScaledValue riccati_j_trig(int n, cplx z) {
  const ScaledValue hp = riccati_h(n, z, +1);
  const ScaledValue hm = riccati_h(n, z, -1);
  return (hp - hm) * cplx(0.0, -0.5);
}

ScaledValue riccati_eta_trig(int n, cplx z) {
  const ScaledValue hp = riccati_h(n, z, +1);
  const ScaledValue hm = riccati_h(n, z, -1);
  return (hp + hm) * cplx(0.5, 0.0);
}

}  // namespace detail

ScaledValue riccati_h(int n, cplx z, int sign) {
  check_order(n);
  if (sign != 1 && sign != -1) throw UsageError("riccati_h sign must be +1 or -1");
  if (z == cplx(0.0, 0.0)) throw SingularArgumentError("riccati_h at z = 0");
  // z h^+_n = (-i)^n e^{iz} P_n(z),  z h^-_n = i^n e^{-iz} P^-_n(z)
  const cplx pref = ipow(cplx(0.0, -static_cast<double>(sign)), n);
  const cplx osc = std::polar(1.0, sign * z.real());
  return {pref * osc * hankel_poly(n, z, sign), -sign * z.imag()};
}

ScaledValue riccati_j(int n, cplx z) {
  check_order(n);
  if (std::abs(z) < riccati_switch_radius(n)) return detail::riccati_j_series(n, z);
  return detail::riccati_j_trig(n, z);
}

ScaledValue riccati_eta(int n, cplx z) {
  check_order(n);
  if (z == cplx(0.0, 0.0)) throw SingularArgumentError("riccati_eta at z = 0");
  if (std::abs(z) < riccati_switch_radius(n)) return detail::riccati_eta_series(n, z);
  return detail::riccati_eta_trig(n, z);
}

}  // namespace diracres
