#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "diracres/errors.hpp"
#include "diracres/fredholm.hpp"
#include "diracres/trace.hpp"

using namespace diracres;

namespace {
const cplx I(0.0, 1.0);
const PotentialSpec well = PotentialSpec::square_well(1, 0.0, 4.0);

const ResonanceSet& well_set() {
  static const ResonanceSet rs = build_resonance_set(well, 240.0);
  return rs;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

std::vector<double> grid() {
  std::vector<double> g;
  for (int i = 0; i < 8000; ++i) g.push_back(-40.0 + 80.0 * (i + 0.5) / 8000);
  return g;
}
std::vector<double> gaussian(const std::vector<double>& g, double w2, double shift = 0.0) {
  std::vector<double> f;
  for (double x : g) f.push_back(std::exp(-(x - shift) * (x - shift) / w2));
  return f;
}
}  // namespace

TEST_CASE("free potential") {
  const PotentialSpec z = PotentialSpec::free(1, 0.0);
  const ResonanceSet rs = build_resonance_set(z, 50.0);
  CHECK(rs.states.empty());
  CHECK(rs.sigma == 0);
  CHECK(rs.gamma == 0.0);
  CHECK(hadamard_eval(rs, cplx(3.0, 1.0), 50.0) == cplx(0.0, -1.0));
  CHECK(phase_derivative_sum(rs, 2.0, 50.0) == 0.0);
  CHECK(std::abs(phase_derivative_direct(z, 2.0)) < 1e-9);
  CHECK(resolvent_trace_sum(rs, cplx(0.0, 2.0), 50.0) == cplx(0.0, 0.0));
  const auto g = grid();
  const KreinReport k = krein_trace_check(z, rs, g, gaussian(g, 25.0), 50.0);
  CHECK(std::abs(k.direct) < 1e-9);
  CHECK(k.resonance == 0.0);
}

TEST_CASE("resonance set structure") {
  const ResonanceSet& rs = well_set();
  CHECK(rs.sigma == 0);
  CHECK(rs.gamma == 1.0);
  CHECK(rs.states.size() > 100);
  for (std::size_t i = 1; i < rs.states.size(); ++i) {
    CHECK(std::abs(rs.states[i - 1].location) <= std::abs(rs.states[i].location));
    CHECK(rs.sumcond_partial[i] >= rs.sumcond_partial[i - 1]);
  }
  CHECK(std::abs(rs.c_kappa - jost_g(well, quasimomentum(cplx(1e-9, 1e-9), 0.0))) < 1e-6);
  const std::size_t n = rs.sumcond_partial.size();
  const double early = rs.sumcond_partial[9] / 10.0;
  const double late = (rs.sumcond_partial[n - 1] - rs.sumcond_partial[n - 11]) / 10.0;
  MESSAGE("sum |Im l|/|l|^2 = " << rs.sumcond << "; mean increment first 10 " << early << ", last 10 " << late);
  CHECK(late < early);
}

TEST_CASE("Hadamard reconstruction") {
  const ResonanceSet& rs = well_set();
  for (cplx l : {cplx(3.0, 0.0), cplx(5.0, 5.0), cplx(-8.0, 1.0), cplx(0.0, -4.0)}) {
    const cplx direct = jost_g(well, quasimomentum(l, 0.0));
    double prev = 1e300;
    for (double r : {60.0, 120.0, 240.0}) {
      const double e = rel(hadamard_eval(rs, l, r), direct);
      CHECK(e <= prev);
      prev = e;
      if (r == 120.0) {
        MESSAGE("Hadamard relative error at " << l << " with r = 120: " << e);
        CHECK(e <= 0.10);
      }
    }
  }
  CHECK_THROWS_AS(hadamard_eval(rs, cplx(40.0, 0.0), 120.0), UsageError);
  CHECK_THROWS_AS(hadamard_eval(rs, cplx(1.0, 0.0), 300.0), UsageError);
}

TEST_CASE("logarithmic derivative at 5i") {
  const cplx l(0.0, 5.0);
  const SpectralParam sp = quasimomentum(l, 0.0);
  const cplx direct = jost_g_derivative(well, sp) / jost_g(well, sp);
  const cplx sum = hadamard_log_derivative(well_set(), l, 120.0);
  MESSAGE("g'/g at 5i: direct " << direct << ", sum " << sum);
  CHECK(rel(sum, direct) <= 0.10);
}

TEST_CASE("phase derivative sum") {
  const ResonanceSet& rs = well_set();
  const SignResolution s = resolve_phase_sign(well, rs, 3.0, 120.0);
  MESSAGE("resolved sign " << s.sign << " (direct " << s.direct << ", +: " << s.with_plus << ", -: " << s.with_minus << ")");
  CHECK(s.sign == 1);
  const double d = phase_derivative_direct(well, 3.0);
  CHECK(std::abs(phase_derivative_sum(rs, 3.0, 120.0, s.sign) - d) <= 0.05 * std::abs(d));
  //! Breit-Wigner bump of the narrow resonance near 0.4724 - 0.0914i.
  const State& narrow = rs.states.front();
  REQUIRE(std::abs(narrow.location - cplx(0.4724, -0.0914)) < 1e-3);
  const double a = narrow.location.real(), b = -narrow.location.imag();
  const double bump = phase_derivative_direct(well, a, 1e-3);
  const double single = narrow.location.imag() / (b * b);
  MESSAGE("Breit-Wigner peak: direct " << bump << ", single term " << single);
  CHECK(std::abs(bump - single) <= 0.1 * std::abs(single));
  //! Half width: the single-term profile halves at a +- b.
  const double half = phase_derivative_direct(well, a + b, 1e-3) - phase_derivative_direct(well, a + 4 * b, 1e-3);
  CHECK(std::abs(half / (bump - phase_derivative_direct(well, a + 4 * b, 1e-3)) - 0.5) < 0.15);
}

TEST_CASE("resolvent trace sum") {
  const ResonanceSet& rs = well_set();
  const cplx l(0.0, 2.0);
  const cplx direct = resolvent_trace_difference(well, quasimomentum(l, 0.0));
  double prev = 1e300;
  for (double r : {60.0, 120.0, 240.0}) {
    const double e = rel(resolvent_trace_sum(rs, l, r), direct);
    MESSAGE("r = " << r << ": relative error " << e << ", modelled tail " << std::abs(resolvent_tail_estimate(rs, fit_tail_model(rs, r), l, r)) / std::abs(direct)
                           << ", corrected error " << rel(resolvent_trace_sum(rs, l, r) + resolvent_tail_estimate(rs, fit_tail_model(rs, r), l, r), direct));
    CHECK(e < prev);
    prev = e;
  }
  CHECK(rel(resolvent_trace_sum(rs, l, 120.0), direct) <= 0.05);
  CHECK_THROWS_AS(resolvent_trace_sum(rs, 2.0, 120.0), UsageError);
}

TEST_CASE("Krein-type integral") {
  const ResonanceSet& rs = well_set();
  const auto g = grid();
  const auto f1 = gaussian(g, 50.0), f2 = gaussian(g, 20.0, 3.0);
  const KreinReport a = krein_trace_check(well, rs, g, f1, 120.0);
  MESSAGE("Gaussian width^2 50: direct " << a.direct << ", resonance sum " << a.resonance);
  CHECK(a.difference <= 0.05);
  std::vector<double> f3(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) f3[i] = f1[i] + 2.0 * f2[i];
  const KreinReport b = krein_trace_check(well, rs, g, f2, 120.0), c = krein_trace_check(well, rs, g, f3, 120.0);
  CHECK(std::abs(c.direct - a.direct - 2.0 * b.direct) < 1e-10);
  CHECK(std::abs(c.resonance - a.resonance - 2.0 * b.resonance) < 1e-10);
  CHECK_THROWS_AS(krein_trace_check(well, rs, g, gaussian(g, 2000.0), 120.0), UsageError);
}

TEST_CASE("exponential type from the imaginary axis") {
  JostOptions o;
  o.validity_ceiling = 200.0;
  const SlopeFit s = exponential_type_slope(well, 20.0, 60.0, 21, o);
  MESSAGE("slope " << s.slope << " (2 gamma = 2)");
  CHECK(std::abs(s.slope - 2.0) <= 0.15 * 2.0);
}
