#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>

#include "diracres/errors.hpp"
#include "diracres/states.hpp"
#include "oracle.hpp"

using namespace diracres;

namespace {
const cplx I(0.0, 1.0);
const PotentialSpec well = PotentialSpec::square_well(1, 0.0, 4.0);
const PotentialSpec two_levels = PotentialSpec::square_well(1, 1.0, -12.0, 2.0);

//! Newton on the closed-form well with a central-difference derivative.
cplx oracle_root(cplx z) {
  for (int i = 0; i < 50; ++i) {
    const double h = 1e-6;
    const cplx g = oracle::well_jost(1, 0.0, 4.0, 1.0, z);
    const cplx d = (oracle::well_jost(1, 0.0, 4.0, 1.0, z + h) - oracle::well_jost(1, 0.0, 4.0, 1.0, z - h)) / (2 * h);
    const cplx step = g / d;
    z -= step;
    if (std::abs(step) < 1e-14 * std::max(1.0, std::abs(z))) break;
  }
  return z;
}

//! |g| on the upper rim of the gap for a constant well, closed form.
double gap_abs_g(double depth, double gamma, double x) {
  const SpectralParam sp = quasimomentum(x, 1.0, Rim::upper);
  return std::abs(det(free_jost(sp, 1, gamma, +1), oracle::well_phi(1, 1.0, depth, x, gamma)));
}
}  // namespace

TEST_CASE("free potential has no states") {
  CHECK(find_states(PotentialSpec::free(1, 0.0), Region{-10, 10, -3, 0}).states.empty());
  CHECK(find_states(PotentialSpec::free(2, 1.0), Region{-10, 10, -3, -0.1}).states.empty());
  CHECK(gap_states(PotentialSpec::free(1, 1.0)).empty());
  for (const CountingRow& r : counting_function(PotentialSpec::free(1, 0.0), {5.0, 10.0})) CHECK(r.count == 0);
  for (const CountingRow& r : counting_function(PotentialSpec::free(1, 1.0), {5.0})) CHECK(r.count == 0);
}

TEST_CASE("resonances of the square well against the closed form") {
  const StateSearch s = find_states(well, Region{-10, 10, -3, 0});
  CHECK(s.states.size() == 5);
  CHECK(static_cast<int>(s.states.size()) == s.total_winding);
  for (const State& st : s.states) {
    CHECK(st.kind == StateKind::resonance);
    CHECK(st.multiplicity == 1);
    CHECK(st.residual <= 1e-8 * st.local_scale);
    CHECK(std::abs(st.location - oracle_root(st.location)) < 1e-8);
  }
  for (std::size_t i = 1; i < s.states.size(); ++i) CHECK(s.states[i - 1].location.real() <= s.states[i].location.real());
  int asym = 0;
  for (const State& a : s.states) {
    bool paired = false;
    for (const State& b : s.states) paired |= std::abs(b.location + std::conj(a.location)) < 1e-6;
    asym += !paired;
  }
  MESSAGE("resonances without a -conj partner: " << asym << " of " << s.states.size());
}

TEST_CASE("winding accounting") {
  const StateSearch s = find_states(well, Region{-10, 10, -3, 0});
  int leaves = 0;
  for (const ContourCell& c : s.cells) {
    CHECK(c.winding >= 0);
    if (c.status == CellStatus::isolated) {
      CHECK(c.winding == 1);
      leaves += c.winding;
    }
    if (c.status == CellStatus::isolated || c.status == CellStatus::empty) {
      std::function<cplx(cplx)> g = [&](cplx z) { return jost_g(well, quasimomentum(z, 0.0)); };
      const Winding w = winding_number(g, {cplx(c.re_lo, c.im_lo), cplx(c.re_hi, c.im_lo), cplx(c.re_hi, c.im_hi), cplx(c.re_lo, c.im_hi)}, 0.1, {});
      CHECK(w.value == c.winding);
    }
  }
  CHECK(leaves == s.total_winding);
  //! Each polished root re-inserted into a small square has winding >= 1.
  for (const State& st : s.states) {
    const double h = 1e-3;
    const Winding w = winding_number([&](cplx z) { return jost_g(well, quasimomentum(z, 0.0)); },
                                     {st.location + cplx(-h, -h), st.location + cplx(h, -h), st.location + cplx(h, h), st.location + cplx(-h, h)},
                                     h / 4, {});
    CHECK(w.value >= 1);
  }
}

TEST_CASE("region beyond the validity ceiling is refused") {
  CHECK_THROWS_AS(find_states(well, Region{-5, 5, -30, 0}), ValidityCeilingError);
}

TEST_CASE("gap states: two eigenvalues, interlacing, oracle, mirror points") {
  const std::vector<State> gs = gap_states(two_levels);
  std::vector<double> eig;
  for (const State& s : gs) {
    CHECK(s.kind != StateKind::unclassified);
    if (s.kind == StateKind::eigenvalue) {
      eig.push_back(s.location.real());
      CHECK(s.rim == Rim::upper);
      CHECK(frak_F_derivative(two_levels, s.location).real() < 0.0);
    }
  }
  REQUIRE(eig.size() >= 2);
  for (std::size_t i = 1; i < eig.size(); ++i) {
    int between = 0;
    for (const State& s : gs)
      between += s.kind == StateKind::anti_bound && s.location.real() > eig[i - 1] && s.location.real() < eig[i];
    CHECK(between % 2 == 1);
  }
  //! Oracle: minimize the closed-form |g| on a 10^4 grid of the upper rim, then refine.
  const int n = 10000;
  std::vector<double> xs(n + 1), ys(n + 1);
  for (int i = 0; i <= n; ++i) {
    xs[i] = -1.0 + 1e-6 + (2.0 - 2e-6) * i / n;
    ys[i] = gap_abs_g(-12.0, 2.0, xs[i]);
  }
  std::vector<double> oracle_eig;
  for (int i = 1; i < n; ++i)
    if (ys[i] < ys[i - 1] && ys[i] < ys[i + 1]) {
      const auto r = boost::math::tools::brent_find_minima([](double x) { return gap_abs_g(-12.0, 2.0, x); }, xs[i - 1], xs[i + 1], 52);
      if (r.second < 1e-8) oracle_eig.push_back(r.first);
    }
  REQUIRE(oracle_eig.size() == eig.size());
  for (std::size_t i = 0; i < eig.size(); ++i) CHECK(std::abs(oracle_eig[i] - eig[i]) < 1e-6);
  //! The mirror point on the lower rim is not a zero.
  for (double e : eig) {
    const double eps = 1e-6;
    const double up = std::abs(jost_g(two_levels, quasimomentum(cplx(e, eps), 1.0)));
    const double dn = std::abs(jost_g(two_levels, quasimomentum(cplx(e, -eps), 1.0)));
    CHECK(dn >= 1e3 * up);
  }
}

TEST_CASE("frak F zeros are symmetric about the real axis") {
  const StateSearch s = find_states(two_levels, Region{-6, 6, -2, 0});
  REQUIRE(!s.states.empty());
  StateFinderOptions o;
  for (const State& st : s.states) {
    const cplx c = std::conj(st.location);
    const double h = 1e-4;
    const Winding w = winding_number([&](cplx z) { return frak_F(two_levels, z); },
                                     {c + cplx(-h, -h), c + cplx(h, -h), c + cplx(h, h), c + cplx(-h, h)}, h / 4, o);
    CHECK(w.value >= 1);
    CHECK(std::abs(frak_F(two_levels, c)) < 1e-8 * std::abs(frak_F_derivative(two_levels, c)) * 0.1 + 1e-12);
  }
}

TEST_CASE("virtual-state indicator") {
  for (int sgn : {-1, 1}) {
    const VirtualIndicator v = virtual_indicator(PotentialSpec::free(1, 1.0), sgn);
    CHECK_FALSE(v.is_virtual);
    CHECK(std::abs(v.value) > 0.1);
    CHECK(std::abs(v.value - 1.0) < 1e-6);
  }
  //! Sweep the depth through the emergence of an eigenvalue at +m.
  double best_depth = 0.0, best = 1e300, worst = 0.0, closest_depth = 0.0, closest = 1e300;
  for (double d = -8.0; d >= -9.01; d -= 0.05) {
    const PotentialSpec w = PotentialSpec::square_well(1, 1.0, d);
    const double c = std::abs(virtual_indicator(w, +1).value);
    if (c < best) best = c, best_depth = d;
    worst = std::max(worst, c);
    for (const State& s : gap_states(w))
      if (s.kind == StateKind::eigenvalue && 1.0 - s.location.real() < closest) closest = 1.0 - s.location.real(), closest_depth = d;
  }
  MESSAGE("indicator minimum " << best << " at depth " << best_depth << ", eigenvalue closest to m at " << closest_depth);
  CHECK(best < 0.1 * worst);
  CHECK(std::abs(best_depth - closest_depth) <= 0.1);
}

TEST_CASE("counting function and angular concentration") {
  StateFinderOptions o;
  o.jost.validity_ceiling = 400.0;
  const std::vector<CountingRow> rows = counting_function(well, {50.0, 100.0}, o);
  for (const CountingRow& r : rows) {
    CHECK(r.ratio >= 0.8);
    CHECK(r.ratio <= 1.2);
    CHECK(std::abs(r.raw_winding - r.count) < 1e-6);
  }
  CHECK(std::abs(rows[1].ratio - 1.0) <= std::abs(rows[0].ratio - 1.0));
  //! Counting for m > 0 includes gap states; compare with direct searches.
  const std::vector<CountingRow> mr = counting_function(two_levels, {6.0}, o);
  const StateSearch s = find_states(two_levels, Region{-6.5, 6.5, -6.5, 0});
  int inside = 0;
  for (const State& st : s.states) inside += std::abs(st.location) <= 6.0;
  for (const State& st : gap_states(two_levels)) inside += st.kind != StateKind::unclassified;
  CHECK(mr[0].count == inside);

  const StateSearch big = find_states(well, Region{-40, 40, -8, 0});
  const double f10 = sector_fraction(big.states, 10.0, 0.2), f40 = sector_fraction(big.states, 40.0, 0.2);
  MESSAGE("fraction outside the sectors: r=10 " << f10 << ", r=40 " << f40);
  CHECK(f40 < f10);
}
