#include "diracres/spectral_plane.hpp"

#include <cmath>

#include "diracres/errors.hpp"

namespace diracres {

const char* to_string(Rim r) {
  switch (r) {
    case Rim::bulk: return "bulk";
    case Rim::upper: return "upper_rim";
    case Rim::lower: return "lower_rim";
  }
  return "?";
}

bool in_gap(cplx lambda, double mass) {
  return lambda.imag() == 0.0 && std::abs(lambda.real()) < mass;
}

double branch_distance(cplx lambda, double mass) {
  return std::min(std::abs(lambda - mass), std::abs(lambda + mass));
}

namespace {

SpectralParam finish(cplx lambda, double mass, Rim rim, cplx k) {
  SpectralParam sp;
  sp.lambda = lambda;
  sp.mass = mass;
  sp.rim = rim;
  sp.k = k;
  sp.k0 = mass == 0.0 ? cplx(0.0, -1.0) : (lambda + mass) / (cplx(0.0, 1.0) * k);
  return sp;
}

}  // namespace

SpectralParam quasimomentum(cplx lambda, double mass, Rim rim) {
  if (mass < 0.0) throw UsageError("mass must be nonnegative");
  if (branch_distance(lambda, mass) < kBranchExclusion)
    throw BranchPointError("lambda too close to a branch point +-m");
  if (in_gap(lambda, mass)) {
    if (rim == Rim::bulk) throw AmbiguousRimError("real lambda inside the gap needs a rim tag");
    const double a = lambda.real();
    const double s = std::sqrt(mass * mass - a * a);
    return finish(lambda, mass, rim, cplx(0.0, rim == Rim::upper ? s : -s));
  }
  if (rim != Rim::bulk) throw UsageError("rim tags are only legal for real lambda in (-m, m)");
  if (mass == 0.0) return finish(lambda, mass, rim, lambda);
  const cplx w = 1.0 - (mass * mass) / (lambda * lambda);
  return finish(lambda, mass, rim, lambda * std::sqrt(w));
}

SpectralParam continue_from(const SpectralParam& center, cplx lambda) {
  if (center.mass == 0.0) return quasimomentum(lambda, 0.0);
  const double m = center.mass;
  if (branch_distance(lambda, m) < kBranchExclusion)
    throw BranchPointError("lambda too close to a branch point +-m");
  cplx kp;
  if (in_gap(lambda, m)) {
    kp = cplx(0.0, std::sqrt(m * m - lambda.real() * lambda.real()));
  } else {
    kp = lambda * std::sqrt(1.0 - (m * m) / (lambda * lambda));
  }
  const cplx predicted = center.k + (center.lambda / center.k) * (lambda - center.lambda);
  const cplx k = std::abs(kp - predicted) <= std::abs(-kp - predicted) ? kp : -kp;
  Rim rim = Rim::bulk;
  if (in_gap(lambda, m)) rim = k.imag() > 0 ? Rim::upper : Rim::lower;
  return finish(lambda, m, rim, k);
}

}  // namespace diracres

namespace diracres {

SpectralParam star(const SpectralParam& sp) {
  SpectralParam s = sp;
  s.lambda = std::conj(sp.lambda);
  s.k = std::conj(sp.k);
  s.k0 = sp.mass == 0.0 ? cplx(0.0, -1.0) : (s.lambda + sp.mass) / (cplx(0.0, 1.0) * s.k);
  if (sp.rim == Rim::upper) s.rim = Rim::lower;
  if (sp.rim == Rim::lower) s.rim = Rim::upper;
  return s;
}

}  // namespace diracres

namespace diracres {

SpectralParam flip_sheet(const SpectralParam& sp) {
  SpectralParam s = sp;
  s.k = -sp.k;
  s.k0 = -sp.k0;
  if (sp.rim == Rim::upper) s.rim = Rim::lower;
  if (sp.rim == Rim::lower) s.rim = Rim::upper;
  return s;
}

}  // namespace diracres
