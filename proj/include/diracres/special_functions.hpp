#pragma once
//! Riccati-Bessel functions z*j_n(z), z*eta_n(z) = -z*y_n(z) and z*h_n^{+-}(z)
//! for integer order n >= -1 and complex argument.

#include <complex>

namespace diracres {

using cplx = std::complex<double>;

//! Value represented as mantissa * exp(log_scale), |mantissa| in [0.5, 2].
struct ScaledValue {
  cplx mantissa{0.0, 0.0};
  double log_scale = 0.0;

  ScaledValue() = default;
  ScaledValue(cplx m, double ls);
  static ScaledValue from(cplx v) { return ScaledValue(v, 0.0); }

  //! Descaled value; may overflow if log_scale > ~700.
  [[nodiscard]] cplx value() const;
  //! Value times exp(-shift).
  [[nodiscard]] cplx value_shifted(double shift) const;
  [[nodiscard]] bool is_zero() const { return mantissa == cplx(0.0, 0.0); }

  void normalize();
};

ScaledValue operator*(const ScaledValue& a, const ScaledValue& b);
ScaledValue operator*(const ScaledValue& a, cplx c);
ScaledValue operator+(const ScaledValue& a, const ScaledValue& b);
ScaledValue operator-(const ScaledValue& a, const ScaledValue& b);

//! (2n-1)!! with the convention (2n-1)!! = 1 for 2n-1 <= 0.
double odd_double_factorial(int n);

//! Radius below which the power series branch is used.
double riccati_switch_radius(int order);

ScaledValue riccati_j(int order, cplx z);
ScaledValue riccati_eta(int order, cplx z);
//! z*h^{+-}(z) = z*(eta(z) +- i j(z)); sign is +1 or -1.
ScaledValue riccati_h(int order, cplx z, int sign);

namespace detail {
ScaledValue riccati_j_series(int order, cplx z);
ScaledValue riccati_j_trig(int order, cplx z);
ScaledValue riccati_eta_series(int order, cplx z);
ScaledValue riccati_eta_trig(int order, cplx z);
}  // namespace detail

}  // namespace diracres
