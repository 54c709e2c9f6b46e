#pragma once
//! Quasimomentum k(lambda) = sqrt(lambda^2 - m^2) on the cut plane C \ [-m, m].

#include <complex>

namespace diracres {

using cplx = std::complex<double>;

enum class Rim { bulk, upper, lower };

const char* to_string(Rim r);

struct SpectralParam {
  cplx lambda;
  double mass = 0.0;
  Rim rim = Rim::bulk;
  cplx k;   //!< quasimomentum
  cplx k0;  //!< (lambda + m) / (i k)
};

//! Distance below which lambda counts as the branch point +-m.
inline constexpr double kBranchExclusion = 1e-10;

//! True when lambda is real and lies strictly inside (-m, m).
bool in_gap(cplx lambda, double mass);

SpectralParam quasimomentum(cplx lambda, double mass, Rim rim = Rim::bulk);

//! Parameter with k taken on the branch that continues `center` analytically
//! to `lambda`; used for small circles around rim points.
SpectralParam continue_from(const SpectralParam& center, cplx lambda);

//! conj(lambda)
inline cplx star(cplx lambda) { return std::conj(lambda); }

//! Distance from lambda to the nearer of +-m.
double branch_distance(cplx lambda, double mass);

}  // namespace diracres

namespace diracres {
//! Parameter at conj(lambda) on the mirrored branch (k -> conj k, rims swapped).
SpectralParam star(const SpectralParam& sp);
}  // namespace diracres

namespace diracres {
//! Same lambda with k -> -k, k0 -> -k0 (the other sheet of the quasimomentum).
SpectralParam flip_sheet(const SpectralParam& sp);
}  // namespace diracres
