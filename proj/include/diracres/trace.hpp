#pragma once
//! Massless trace formulas: Hadamard product over resonances, Breit-Wigner
//! phase derivative, resolvent-trace sum and the Krein-type integral check.

#include <vector>

#include "diracres/states.hpp"

namespace diracres {

struct ResonanceSet {
  std::vector<State> states;  //!< sorted by |lambda| ascending, zero at the origin excluded
  double gamma = 0.0;
  int sigma = 0;              //!< order of the zero at lambda = 0
  cplx c_kappa;               //!< g(0) for sigma = 0, g'(0) for sigma = 1
  double radius = 0.0;        //!< every zero with |lambda| <= radius is present
  double sumcond = 0.0;       //!< sum |Im l_n| / |l_n|^2
  std::vector<double> sumcond_partial;
};

struct ResonanceSetOptions {
  StateFinderOptions finder;
  double depth_margin = 2.0;  //!< region depth = margin + 1.5 ln(1 + R) / gamma
  double origin_radius = 1e-3;
  int origin_nodes = 32;
};

//! Collects every zero of g with |lambda| <= radius and checks the count
//! against the winding number on the circle |lambda| = radius.
ResonanceSet build_resonance_set(const PotentialSpec& v, double radius, const ResonanceSetOptions& o = {});

cplx hadamard_eval(const ResonanceSet& rs, cplx lambda, double truncation_radius);
//! iγ + σ/λ + Σ 1/(λ - λn) over |λn| <= r.
cplx hadamard_log_derivative(const ResonanceSet& rs, cplx lambda, double truncation_radius);

//! γ + sign Σ Im λn / |λ - λn|^2 over |λn| <= r.
double phase_derivative_sum(const ResonanceSet& rs, double lambda, double truncation_radius, int sign = 1);
//! d/dλ arg g on the real line by a five-point stencil on phase increments.
double phase_derivative_direct(const PotentialSpec& v, double lambda, double h = 1e-2, const JostOptions& o = {});

struct SignResolution {
  int sign = 1;
  double probe = 0.0;
  double direct = 0.0;
  double with_plus = 0.0;
  double with_minus = 0.0;
};
//! Chooses the global sign of the resonance sum against the direct phase derivative.
SignResolution resolve_phase_sign(const PotentialSpec& v, const ResonanceSet& rs, double probe,
                                  double truncation_radius);

//! -iγ - σ/λ - Σ 1/(λ - λn) over |λn| <= r.
cplx resolvent_trace_sum(const ResonanceSet& rs, cplx lambda, double truncation_radius);

//! Far-zero model Im λn ≈ -(a ln|λn| + b), density γ/π per unit |Re λ| on each side,
//! fitted over r/4 <= |λn| <= r. Diagnostic only; the sums above stay truncated.
struct TailModel {
  double a = 0.0;
  double b = 0.0;
  int fitted = 0;
};
TailModel fit_tail_model(const ResonanceSet& rs, double truncation_radius);
//! Estimated omitted part of resolvent_trace_sum beyond r (constant and linear-in-λ terms).
cplx resolvent_tail_estimate(const ResonanceSet& rs, const TailModel& t, cplx lambda, double truncation_radius);
//! Estimated omitted part of phase_derivative_sum (sign +1) beyond r.
double phase_tail_estimate(const ResonanceSet& rs, const TailModel& t, double truncation_radius);

struct KreinReport {
  double direct = 0.0;      //!< -(1/π) ∫ f dφ from the unwrapped phase
  double resonance = 0.0;   //!< -(1/π) ∫ f (γ + sign Σ ...) dλ
  double difference = 0.0;  //!< relative
  double coverage = 0.0;    //!< max |f| at the grid ends over max |f|
};
//! Grid must be increasing and avoid λ = 0; f given on the same grid.
KreinReport krein_trace_check(const PotentialSpec& v, const ResonanceSet& rs, const std::vector<double>& grid,
                              const std::vector<double>& f, double truncation_radius, int sign = 1,
                              const JostOptions& o = {});

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms = 0.0;
};
//! Least-squares slope of ln|g(-it)| over t in [t0, t1].
SlopeFit exponential_type_slope(const PotentialSpec& v, double t0 = 20.0, double t1 = 60.0, int n = 21,
                                const JostOptions& o = {});

}  // namespace diracres
