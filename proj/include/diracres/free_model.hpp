#pragma once
//! Closed-form objects of the free radial Dirac operator.

#include <Eigen/Core>
#include <array>

#include "diracres/potential.hpp"
#include "diracres/spectral_plane.hpp"

namespace diracres {

//! Pair (f1, f2) at x with a shared log-scale: actual value = value * exp(scale).
struct Solution2 {
  double x = 0.0;
  std::array<cplx, 2> value{};
  double scale = 0.0;

  [[nodiscard]] cplx f1() const;
  [[nodiscard]] cplx f2() const;
};

//! det(a, b) = a1 b2 - a2 b1, descaled.
cplx det(const Solution2& a, const Solution2& b);

using Matrix2c = Eigen::Matrix2cd;

struct ResolventKernelValue {
  double x = 0.0;
  double y = 0.0;
  Matrix2c block;
};

Solution2 free_phi(const SpectralParam& sp, int kappa, double x);
Solution2 free_theta(const SpectralParam& sp, int kappa, double x);
//! psi^{+-}; sign is +1 or -1.
Solution2 free_jost(const SpectralParam& sp, int kappa, double x, int sign);

ResolventKernelValue free_resolvent_kernel(const SpectralParam& sp, int kappa, double x, double y);

//! Omega(lambda) for real lambda; zero inside the gap.
double omega(const PotentialSpec& v, double lambda, double abs_tol = 1e-10);

//! rho'(s) = k^{2 kappa + 1} / (pi (s + m)) on the continuous spectrum.
double spectral_density(const SpectralParam& sp, int kappa);

struct OmegaTraceReport {
  cplx lhs;            //!< double integral over (x, s) with s innermost
  cplx rhs;            //!< (1/pi) int Omega(s) / (s - lambda)^2 ds
  double difference = 0.0;
  double tail_estimate = 0.0;  //!< modelled size of the |s| > S_max contribution
};

OmegaTraceReport omega_trace_crosscheck(const PotentialSpec& v, cplx lambda, double s_max);

}  // namespace diracres
