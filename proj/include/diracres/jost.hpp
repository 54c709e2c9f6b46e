#pragma once
//! Jost solution, regular solution, Jost function g+ and the entire function
//! F(lambda) = (lambda - m) g+(lambda) g-(lambda) for the perturbed system.

#include <vector>

#include "diracres/free_model.hpp"
#include "diracres/potential.hpp"
#include "diracres/spectral_plane.hpp"

namespace diracres {

struct JostOptions {
  //! Largest admissible 2|Im k| gamma.
  double validity_ceiling = 40.0;
  double rtol = 1e-11;
  //! Relative route disagreement (against the integrand scale) that raises InconsistencyError.
  double route_tol = 1e-6;
  int derivative_nodes = 16;
  double derivative_radius = 0.1;
};

enum class JostRoute { wronskian, integral };

struct JostSample {
  cplx lambda;
  cplx g_plus;
  cplx g_minus;
  cplx dg_dlambda;
  JostRoute route = JostRoute::wronskian;
  double residual = 0.0;       //!< |g_wronskian - g_integral| / |g_wronskian|
  cplx g_integral;             //!< value from the integral route
  double wronskian_drift = 0.0;  //!< relative change of det(f+, phi) between gamma/2 and gamma/4
};

//! Throws ValidityCeilingError when 2|Im k| gamma exceeds the ceiling.
void check_ceiling(const PotentialSpec& v, const SpectralParam& sp, const JostOptions& o);

Solution2 jost_solution(const PotentialSpec& v, const SpectralParam& sp, double x, const JostOptions& o = {});
//! Several points at once (one backward sweep); xs in any order.
std::vector<Solution2> jost_solution(const PotentialSpec& v, const SpectralParam& sp, std::vector<double> xs,
                                     const JostOptions& o = {});

//! Regular solution with the start-point consistency check.
Solution2 regular_solution(const PotentialSpec& v, const SpectralParam& sp, double x, const JostOptions& o = {});
std::vector<Solution2> regular_solution(const PotentialSpec& v, const SpectralParam& sp, std::vector<double> xs,
                                        const JostOptions& o = {}, double x0_factor = 1e-6);

//! g+ from det(psi+(gamma), phi(gamma)): one forward sweep, no cross-checks.
cplx jost_g(const PotentialSpec& v, const SpectralParam& sp, const JostOptions& o = {});
//! g-(lambda) = conj(g+(conj lambda)).
cplx jost_g_minus(const PotentialSpec& v, const SpectralParam& sp, const JostOptions& o = {});
//! dg+/dlambda by a Cauchy integral; nodes follow the branch of sp analytically.
cplx jost_g_derivative(const PotentialSpec& v, const SpectralParam& sp, const JostOptions& o = {});
//! Radius of the Cauchy derivative circle around sp.
double derivative_radius(const SpectralParam& sp, const JostOptions& o);

//! Both routes, derivative and conjugate value.
JostSample jost_function(const PotentialSpec& v, const SpectralParam& sp, const JostOptions& o = {});

//! F(lambda); real lambda inside the gap uses the upper rim for g+ and the lower one for g-.
cplx frak_F(const PotentialSpec& v, cplx lambda, const JostOptions& o = {});
cplx frak_F_derivative(const PotentialSpec& v, cplx lambda, const JostOptions& o = {});

//! Solutions equal to the free theta / phi at gamma, integrated backward.
Solution2 theta_tilde(const PotentialSpec& v, const SpectralParam& sp, double x, const JostOptions& o = {});
Solution2 phi_tilde(const PotentialSpec& v, const SpectralParam& sp, double x, const JostOptions& o = {});

//! lim_{x->0} x^kappa s1(x) / (2 kappa - 1)!! for a solution fixed at gamma, by
//! Richardson extrapolation from x = 1e-5 gamma and 1e-6 gamma.
struct OriginLimit {
  cplx value;
  double extrapolation_change = 0.0;  //!< |extrapolated - value at 1e-6 gamma|
};
enum class TildeKind { theta, phi, jost };
OriginLimit origin_limit(const PotentialSpec& v, const SpectralParam& sp, TildeKind kind, const JostOptions& o = {});

//! F from the theta~/phi~ limits: (l+m) c_theta^2 + (l-m)(l^2-m^2)^{2 kappa} c_phi^2.
cplx frak_F_via_tilde(const PotentialSpec& v, cplx lambda, const JostOptions& o = {});

//! Scattering phase arg g+ + pi/2 on an increasing real grid in the continuous
//! spectrum, unwrapped and shifted by 2 pi n so the last value is nearest Omega_0.
std::vector<double> scattering_phase(const PotentialSpec& v, const std::vector<double>& grid,
                                     const JostOptions& o = {});

}  // namespace diracres
