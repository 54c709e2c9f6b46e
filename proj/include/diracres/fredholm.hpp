#pragma once
//! Modified Fredholm determinant det2(I + V R0) by Nystrom discretization and
//! the identities linking it to the Jost function.

#include <Eigen/Dense>
#include <vector>

#include "diracres/jost.hpp"
#include "diracres/potential.hpp"
#include "diracres/spectral_plane.hpp"

namespace diracres {

enum class NodeRule { gauss, midpoint };

struct NystromOperator {
  std::vector<double> nodes;
  std::vector<double> weights;
  Eigen::MatrixXcd matrix;  //!< 2N x 2N, entry ((i,a),(j,b)) = v(x_i) R0(x_i,x_j)_{ab} w_j
  cplx lambda;
};

//! Quadrature rule with N nodes spread over the potential pieces.
void nystrom_rule(const PotentialSpec& v, int n, NodeRule rule, std::vector<double>& nodes,
                  std::vector<double>& weights);

NystromOperator nystrom_operator(const PotentialSpec& v, const SpectralParam& sp, int n,
                                 NodeRule rule = NodeRule::gauss);

//! det(I + K) exp(-tr K) via LU with log accumulation.
cplx det2(const NystromOperator& op);
cplx det2(const PotentialSpec& v, const SpectralParam& sp, int n, NodeRule rule = NodeRule::gauss);

struct Det2Estimate {
  cplx d_n;
  cplx d_2n;
  cplx value;  //!< first-order Richardson extrapolation 2 D_2n - D_n
  double error_estimate = 0.0;
};
Det2Estimate det2_richardson(const PotentialSpec& v, const SpectralParam& sp, int n,
                             NodeRule rule = NodeRule::gauss);

//! Omega sampled on composite Gauss panels over |t| <= t_max (gap excluded).
struct OmegaTable {
  double t_max = 0.0;
  double omega0 = 0.0;
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> values;
};
OmegaTable omega_table(const PotentialSpec& v, double t_max, double panel_width = 1.0);

//! Right side of g+ = k0 D exp(i Omega_0 + (1/pi) int (Omega(t) - Omega_0)/(t - z) dt).
struct RelationReport {
  cplx g_direct;
  cplx g_from_determinant;
  cplx determinant;
  cplx cauchy_integral;  //!< truncated (1/pi) integral including the modelled tail
  double mismatch = 0.0;   //!< relative
  double tail_bound = 0.0; //!< size of the modelled tail contribution
};
RelationReport determinant_jost_relation_check(const PotentialSpec& v, const SpectralParam& sp, int n = 512,
                                               double t_max = 400.0, const JostOptions& o = {});
//! Same with a precomputed Omega table (its t_max is used).
RelationReport determinant_jost_relation_check(const PotentialSpec& v, const SpectralParam& sp, int n,
                                               const OmegaTable& table, const JostOptions& o = {});

//! Scattering phase identity phi_sc = Omega + arg D(lambda + i0) on the continuous spectrum.
struct PhaseIdentityReport {
  double phi_sc = 0.0;      //!< arg g+ + pi/2 (mod 2 pi)
  double omega = 0.0;
  double arg_d = 0.0;       //!< arg D(lambda + i eps)
  double mismatch = 0.0;    //!< |phi_sc - omega - arg_d| wrapped to [0, pi]
  double eps_sensitivity = 0.0;  //!< |D(lambda + i eps) - D(lambda + i eps/2)| / |D|
};
PhaseIdentityReport phase_identity_check(const PotentialSpec& v, double lambda, int n = 512, double eps = 1e-4,
                                         const JostOptions& o = {});

//! S(lambda) from D(lambda - i0)/D(lambda + i0) e^{-2 i Omega} and from -conj(g)/g.
struct ScatteringReport {
  cplx s_determinant;
  cplx s_jost;
  double mismatch = 0.0;
};
ScatteringReport scattering_matrix_check(const PotentialSpec& v, double lambda, int n = 512, double eps = 1e-4,
                                         const JostOptions& o = {});

//! Tr(R - R0) = k0'/k0 - g'/g.
cplx resolvent_trace_difference(const PotentialSpec& v, const SpectralParam& sp, const JostOptions& o = {});

//! Tr(V R0^2) = (1/pi) int Omega(s)/(s-lambda)^2 ds on |s| <= s_max plus the Omega_0 tail model.
cplx trace_v_r0_squared(const PotentialSpec& v, cplx lambda, double s_max = 500.0);
cplx trace_v_r0_squared(const OmegaTable& table, cplx lambda);

//! Determinant route: -D'/D - Tr(V R0^2), with D'/D by a Cauchy derivative of det2.
struct TraceRoutes {
  cplx closed_form;
  cplx determinant_route;
  double mismatch = 0.0;  //!< relative
};
TraceRoutes resolvent_trace_routes(const PotentialSpec& v, const SpectralParam& sp, int n = 256,
                                   double s_max = 500.0, const JostOptions& o = {});

}  // namespace diracres
