#include "diracres/trace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "diracres/errors.hpp"

namespace diracres {

namespace {

void require_massless(const PotentialSpec& v) {
  if (v.mass() != 0.0) throw UsageError("trace formulas are available only for m = 0");
}

void check_truncation(const ResonanceSet& rs, double r) {
  if (!(r > 0.0)) throw UsageError("truncation radius must be positive");
  if (r > rs.radius * (1.0 + 1e-12))
    throw UsageError("truncation radius exceeds the radius covered by the resonance set");
}

cplx g_at(const PotentialSpec& v, cplx lambda, const JostOptions& o) {
  return jost_g(v, quasimomentum(lambda, 0.0), o);
}

}  // namespace

ResonanceSet build_resonance_set(const PotentialSpec& v, double radius, const ResonanceSetOptions& o) {
  require_massless(v);
  if (!(radius > 0.0)) throw UsageError("resonance set radius must be positive");
  ResonanceSet rs;
  rs.radius = radius;
  if (v.is_zero()) {
    rs.c_kappa = cplx(0.0, -1.0);
    rs.sumcond_partial.push_back(0.0);
    return rs;
  }
  rs.gamma = v.gamma();
  const JostOptions& jo = o.finder.jost;

  //! Order and leading coefficient at the origin from a small circle (mean-value formulas).
  const double rho = o.origin_radius;
  std::function<cplx(cplx)> g = [&](cplx z) { return g_at(v, z, jo); };
  rs.sigma = winding_on_circle(g, 0.0, rho, rho / 4.0, o.finder).value;
  if (rs.sigma > 1) throw ClassificationError("zero of order > 1 or nearby resonance at the origin");
  cplx acc = 0.0;
  for (int j = 0; j < o.origin_nodes; ++j) {
    const double th = 2.0 * std::numbers::pi * (j + 0.5) / o.origin_nodes;
    acc += g(std::polar(rho, th)) * std::polar(1.0, -rs.sigma * th);
  }
  rs.c_kappa = acc / (o.origin_nodes * std::pow(rho, rs.sigma));

  const double depth = o.depth_margin + 1.5 * std::log1p(radius) / rs.gamma;
  const StateSearch search = find_states(v, Region{-radius - 0.5, radius + 0.5, -depth, 0.0}, o.finder);
  int found = rs.sigma;
  for (const State& s : search.states) {
    if (std::abs(s.location) < 1e-6 || std::abs(s.location) > radius) continue;
    rs.states.push_back(s);
    found += s.multiplicity;
  }
  std::sort(rs.states.begin(), rs.states.end(),
            [](const State& a, const State& b) { return std::abs(a.location) < std::abs(b.location); });

  StateFinderOptions wide = o.finder;
  wide.jost.validity_ceiling = std::max(wide.jost.validity_ceiling, 2.0 * radius * rs.gamma + 10.0);
  const Winding w = winding_on_circle([&](cplx z) { return g_at(v, z, wide.jost); }, 0.0, radius,
                                      0.25 / std::max(rs.gamma, 1.0), wide);
  if (w.value != found)
    throw ContourError("resonance set incomplete: circle winding " + std::to_string(w.value) + " vs " +
                       std::to_string(found) + " zeros located");

  double s = 0.0;
  for (const State& st : rs.states) {
    s += st.multiplicity * std::abs(st.location.imag()) / std::norm(st.location);
    rs.sumcond_partial.push_back(s);
  }
  rs.sumcond = s;
  return rs;
}

cplx hadamard_eval(const ResonanceSet& rs, cplx lambda, double r) {
  check_truncation(rs, r);
  if (std::abs(lambda) > r / 4.0) throw UsageError("lambda too close to the truncation boundary");
  cplx p = rs.c_kappa * std::exp(cplx(0.0, rs.gamma) * lambda);
  if (rs.sigma == 1) p *= lambda;
  for (const State& s : rs.states) {
    if (std::abs(s.location) > r) break;
    p *= std::pow(1.0 - lambda / s.location, s.multiplicity);
  }
  return p;
}

cplx hadamard_log_derivative(const ResonanceSet& rs, cplx lambda, double r) {
  check_truncation(rs, r);
  cplx sum(0.0, rs.gamma);
  if (rs.sigma == 1) sum += 1.0 / lambda;
  for (const State& s : rs.states) {
    if (std::abs(s.location) > r) break;
    sum += static_cast<double>(s.multiplicity) / (lambda - s.location);
  }
  return sum;
}

double phase_derivative_sum(const ResonanceSet& rs, double lambda, double r, int sign) {
  check_truncation(rs, r);
  double sum = 0.0;
  for (const State& s : rs.states) {
    if (std::abs(s.location) > r) break;
    sum += s.multiplicity * s.location.imag() / std::norm(lambda - s.location);
  }
  return rs.gamma + sign * sum;
}

double phase_derivative_direct(const PotentialSpec& v, double lambda, double h, const JostOptions& o) {
  require_massless(v);
  if (std::abs(lambda) < 2.5 * h) throw UsageError("phase stencil reaches lambda = 0");
  cplx gs[5];
  for (int j = -2; j <= 2; ++j) gs[j + 2] = g_at(v, lambda + j * h, o);
  auto inc = [&](int a, int b) { return std::arg(gs[b + 2] / gs[a + 2]); };
  const double d1 = inc(-1, 0) + inc(0, 1);
  const double d2 = inc(-2, -1) + d1 + inc(1, 2);
  return (8.0 * d1 - d2) / (12.0 * h);
}

SignResolution resolve_phase_sign(const PotentialSpec& v, const ResonanceSet& rs, double probe, double r) {
  SignResolution sr;
  sr.probe = probe;
  sr.direct = phase_derivative_direct(v, probe);
  sr.with_plus = phase_derivative_sum(rs, probe, r, +1);
  sr.with_minus = phase_derivative_sum(rs, probe, r, -1);
  sr.sign = std::abs(sr.direct - sr.with_plus) <= std::abs(sr.direct - sr.with_minus) ? 1 : -1;
  return sr;
}

cplx resolvent_trace_sum(const ResonanceSet& rs, cplx lambda, double r) {
  if (lambda.imag() == 0.0) throw UsageError("resolvent trace needs Im lambda != 0");
  return -hadamard_log_derivative(rs, lambda, r);
}

TailModel fit_tail_model(const ResonanceSet& rs, double r) {
  check_truncation(rs, r);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  TailModel t;
  for (const State& s : rs.states) {
    const double m = std::abs(s.location);
    if (m < r / 4.0 || m > r) continue;
    const double x = std::log(m), y = -s.location.imag();
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++t.fitted;
  }
  if (t.fitted < 3) return t;
  const double n = t.fitted;
  t.a = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  t.b = (sy - t.a * sx) / n;
  return t;
}

namespace {
//! ∫_r^∞ (a ln s + b) / s^2 ds
double tail_moment(const TailModel& t, double r) { return (t.a * (std::log(r) + 1.0) + t.b) / r; }
}  // namespace

cplx resolvent_tail_estimate(const ResonanceSet& rs, const TailModel& t, cplx lambda, double r) {
  //! A pair ±s - iy adds -2iy/s^2 - 2λ/s^2 to the log-derivative; the trace carries the opposite sign.
  const double d = 2.0 * rs.gamma / std::numbers::pi;
  return cplx(0.0, d * tail_moment(t, r)) + d * lambda / r;
}

double phase_tail_estimate(const ResonanceSet& rs, const TailModel& t, double r) {
  return -2.0 * rs.gamma / std::numbers::pi * tail_moment(t, r);
}

KreinReport krein_trace_check(const PotentialSpec& v, const ResonanceSet& rs, const std::vector<double>& grid,
                              const std::vector<double>& f, double r, int sign, const JostOptions& o) {
  require_massless(v);
  if (grid.size() < 3 || grid.size() != f.size()) throw UsageError("test function grid is malformed");
  double fmax = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i > 0 && !(grid[i] > grid[i - 1])) throw UsageError("test function grid must increase");
    if (grid[i] == 0.0) throw UsageError("test function grid must avoid lambda = 0");
    fmax = std::max(fmax, std::abs(f[i]));
  }
  KreinReport rep;
  rep.coverage = std::max(std::abs(f.front()), std::abs(f.back())) / fmax;
  if (rep.coverage > 1e-6) throw UsageError("grid coverage insufficient for the decay of the test function");

  std::vector<cplx> gs(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) gs[i] = g_at(v, grid[i], o);
  double direct = 0.0, res = 0.0;
  double prev = f[0] * phase_derivative_sum(rs, grid[0], r, sign);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double dphi = std::arg(gs[i + 1] / gs[i]);
    if (std::abs(dphi) > 1.0) throw NumericalError("test function grid too coarse for the phase of g");
    direct += 0.5 * (f[i] + f[i + 1]) * dphi;
    const double next = f[i + 1] * phase_derivative_sum(rs, grid[i + 1], r, sign);
    res += 0.5 * (prev + next) * (grid[i + 1] - grid[i]);
    prev = next;
  }
  rep.direct = -direct / std::numbers::pi;
  rep.resonance = -res / std::numbers::pi;
  const double scale = std::max(std::abs(rep.direct), std::abs(rep.resonance));
  rep.difference = scale > 0.0 ? std::abs(rep.direct - rep.resonance) / scale : 0.0;
  return rep;
}

SlopeFit exponential_type_slope(const PotentialSpec& v, double t0, double t1, int n, const JostOptions& o) {
  require_massless(v);
  if (n < 2 || !(t1 > t0)) throw UsageError("slope fit needs n >= 2 and t1 > t0");
  std::vector<double> ts(n), ys(n);
  double st = 0, sy = 0;
  for (int i = 0; i < n; ++i) {
    ts[i] = t0 + (t1 - t0) * i / (n - 1);
    ys[i] = std::log(std::abs(g_at(v, cplx(0.0, -ts[i]), o)));
    st += ts[i];
    sy += ys[i];
  }
  const double tm = st / n, ym = sy / n;
  double sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    sxx += (ts[i] - tm) * (ts[i] - tm);
    sxy += (ts[i] - tm) * (ys[i] - ym);
  }
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = ym - fit.slope * tm;
  double ss = 0;
  for (int i = 0; i < n; ++i) ss += std::pow(ys[i] - fit.intercept - fit.slope * ts[i], 2);
  fit.rms = std::sqrt(ss / n);
  return fit;
}

}  // namespace diracres
