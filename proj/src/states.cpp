#include "diracres/states.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <map>
#include <numbers>

#include "diracres/errors.hpp"

namespace diracres {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

//! Phase change of f along the path p(t), t in [t0, t1], refined adaptively.
class PhaseTracker {
 public:
  PhaseTracker(const std::function<cplx(cplx)>& f, const StateFinderOptions& o) : f_(f), o_(o) {}

  template <class Path>
  double along(Path&& p, double t0, double t1, int n0) {
    double total = 0.0;
    double ta = t0;
    cplx fa = eval(p(ta));
    for (int i = 1; i <= n0; ++i) {
      const double tb = t0 + (t1 - t0) * i / n0;
      const cplx fb = eval(p(tb));
      total += refine(p, ta, fa, tb, fb, 0);
      ta = tb;
      fa = fb;
    }
    return total;
  }

  int samples() const { return samples_; }

 private:
  cplx eval(cplx z) {
    ++samples_;
    const cplx v = f_(z);
    if (v == cplx(0.0, 0.0) || !std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw ContourError("function vanishes or is not finite on the contour");
    return v;
  }

  template <class Path>
  double refine(Path& p, double ta, cplx fa, double tb, cplx fb, int depth) {
    const double d = std::arg(fb / fa);
    if (std::abs(d) < o_.max_phase_step) return d;
    if (depth >= o_.max_refine_depth)
      throw ContourError("phase continuation did not resolve near lambda = (" + std::to_string(p(ta).real()) + ", " +
                         std::to_string(p(ta).imag()) + ")");
    const double tm = 0.5 * (ta + tb);
    const cplx fm = eval(p(tm));
    return refine(p, ta, fa, tm, fm, depth + 1) + refine(p, tm, fm, tb, fb, depth + 1);
  }

  const std::function<cplx(cplx)>& f_;
  const StateFinderOptions& o_;
  int samples_ = 0;
};

double segment_phase(PhaseTracker& tr, cplx a, cplx b, double spacing) {
  const int n0 = std::max(4, static_cast<int>(std::ceil(std::abs(b - a) / spacing)));
  return tr.along([&](double t) { return a + t * (b - a); }, 0.0, 1.0, n0);
}

Winding finish(double phase, int samples) {
  Winding w;
  w.raw = phase / kTwoPi;
  w.value = static_cast<int>(std::lround(w.raw));
  w.samples = samples;
  if (std::abs(w.raw - w.value) > 1e-6) throw ContourError("accumulated phase is not a multiple of 2 pi");
  return w;
}

double default_spacing(const PotentialSpec& v, const StateFinderOptions& o) {
  return o.initial_spacing > 0.0 ? o.initial_spacing : 0.25 / std::max(v.gamma(), 1.0);
}

struct BitKey {
  double a, b;
  bool operator<(const BitKey& o) const { return a < o.a || (a == o.a && b < o.b); }
};

}  // namespace

const char* to_string(StateKind k) {
  switch (k) {
    case StateKind::eigenvalue: return "eigenvalue";
    case StateKind::resonance: return "resonance";
    case StateKind::anti_bound: return "anti_bound";
    case StateKind::virtual_state: return "virtual";
    case StateKind::unclassified: return "unclassified";
  }
  return "?";
}

Winding winding_number(const std::function<cplx(cplx)>& f, const std::vector<cplx>& vertices, double spacing,
                       const StateFinderOptions& o) {
  PhaseTracker tr(f, o);
  double phase = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    phase += segment_phase(tr, vertices[i], vertices[(i + 1) % vertices.size()], spacing);
  return finish(phase, tr.samples());
}

Winding winding_on_circle(const std::function<cplx(cplx)>& f, cplx center, double r, double spacing,
                          const StateFinderOptions& o) {
  PhaseTracker tr(f, o);
  const int n0 = std::max(16, static_cast<int>(std::ceil(kTwoPi * r / spacing)));
  // Start off the real axis so no sample lands exactly on the gap.
  const double off = 0.5 / n0;
  const double phase =
      tr.along([&](double t) { return center + std::polar(r, kTwoPi * (t + off)); }, 0.0, 1.0, n0);
  return finish(phase, tr.samples());
}

bool newton_polish(const PotentialSpec& v, cplx start, const StateFinderOptions& o, State& out,
                   const Region* confine) {
  const double m = v.mass();
  cplx z = start;
  auto param = [&](cplx l) { return quasimomentum(l, m); };
  bool converged = false;
  for (int it = 0; it < o.newton_max_iter; ++it) {
    SpectralParam sp;
    try {
      sp = param(z);
    } catch (const NumericalError&) {
      return false;
    }
    const cplx g = jost_g(v, sp, o.jost);
    const cplx dg = jost_g_derivative(v, sp, o.jost);
    if (dg == cplx(0.0, 0.0)) return false;
    const cplx step = g / dg;
    z -= step;
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    if (confine) {
      const double pad = 1e-9 * (1.0 + std::abs(z));
      if (z.real() < confine->re_lo - pad || z.real() > confine->re_hi + pad || z.imag() < confine->im_lo - pad ||
          z.imag() > confine->im_hi + pad)
        return false;
    }
    if (std::abs(step) <= o.newton_tol * std::max(1.0, std::abs(z))) {
      converged = true;
      break;
    }
  }
  if (!converged) return false;
  const SpectralParam sp = param(z);
  out.location = z;
  out.residual = std::abs(jost_g(v, sp, o.jost));
  out.local_scale = derivative_radius(sp, o.jost) * std::abs(jost_g_derivative(v, sp, o.jost));
  out.rim = Rim::bulk;
  return out.residual <= 1e-8 * out.local_scale;
}

StateSearch find_states(const PotentialSpec& v, const Region& region, const StateFinderOptions& o) {
  StateSearch res;
  const double m = v.mass();
  const double c = o.gap_clearance;
  Region r = region;
  if (!(r.re_hi > r.re_lo) || !(r.im_hi > r.im_lo)) throw UsageError("empty search region");
  if (m > 0.0) {
    const bool touches = r.re_lo < m + c && r.re_hi > -m - c && r.im_lo < c && r.im_hi > -c;
    if (touches) r.im_hi = -c;
    if (!(r.im_hi > r.im_lo)) throw UsageError("search region lies within the gap clearance");
  } else {
    // The only branch-like point for m = 0 is lambda = 0; move edges through it outward.
    if (std::abs(r.im_hi) < c && r.re_lo < c && r.re_hi > -c) r.im_hi = 2.0 * c;
    if (std::abs(r.im_lo) < c && r.re_lo < c && r.re_hi > -c) r.im_lo = -2.0 * c;
    if (std::abs(r.re_lo) < c && r.im_lo < c && r.im_hi > -c) r.re_lo = -2.0 * c;
    if (std::abs(r.re_hi) < c && r.im_lo < c && r.im_hi > -c) r.re_hi = 2.0 * c;
  }
  res.searched = r;

  std::map<BitKey, cplx> cache;
  std::function<cplx(cplx)> g = [&](cplx z) {
    const BitKey key{z.real(), z.imag()};
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const cplx val = jost_g(v, quasimomentum(z, m), o.jost);
    cache.emplace(key, val);
    return val;
  };
  const double spacing = default_spacing(v, o);

  // Edge phases are cached by endpoints so shared edges are traced once.
  std::map<std::array<double, 4>, std::pair<double, int>> edges;
  auto edge = [&](cplx a, cplx b) {
    const bool swap = std::make_pair(a.real(), a.imag()) > std::make_pair(b.real(), b.imag());
    const cplx p = swap ? b : a;
    const cplx q = swap ? a : b;
    const std::array<double, 4> key{p.real(), p.imag(), q.real(), q.imag()};
    auto it = edges.find(key);
    if (it == edges.end()) {
      PhaseTracker tr(g, o);
      const double ph = segment_phase(tr, p, q, spacing);
      it = edges.emplace(key, std::make_pair(ph, tr.samples())).first;
    }
    return std::make_pair(swap ? -it->second.first : it->second.first, it->second.second);
  };
  auto cell_winding = [&](ContourCell& cell) {
    const cplx v00(cell.re_lo, cell.im_lo), v10(cell.re_hi, cell.im_lo), v11(cell.re_hi, cell.im_hi),
        v01(cell.re_lo, cell.im_hi);
    double ph = 0.0;
    int ns = 0;
    for (auto [a, b] : {std::pair{v00, v10}, std::pair{v10, v11}, std::pair{v11, v01}, std::pair{v01, v00}}) {
      const auto e = edge(a, b);
      ph += e.first;
      ns += e.second;
    }
    const Winding w = finish(ph, ns);
    cell.winding = w.value;
    cell.phase_samples = ns;
    if (cell.winding < 0) throw ContourError("negative winding number for an analytic function");
  };

  ContourCell root{r.re_lo, r.re_hi, r.im_lo, r.im_hi, 0, 0, CellStatus::pending};
  cell_winding(root);
  res.total_winding = root.winding;
  const double diam = std::hypot(r.re_hi - r.re_lo, r.im_hi - r.im_lo);
  const double min_size = o.min_cell_fraction * diam;

  std::vector<ContourCell> stack{root};
  while (!stack.empty()) {
    ContourCell cell = stack.back();
    stack.pop_back();
    if (cell.winding == 0) {
      cell.status = CellStatus::empty;
      res.cells.push_back(cell);
      continue;
    }
    const double w = cell.re_hi - cell.re_lo;
    const double h = cell.im_hi - cell.im_lo;
    const Region box{cell.re_lo, cell.re_hi, cell.im_lo, cell.im_hi};
    const cplx center(0.5 * (cell.re_lo + cell.re_hi), 0.5 * (cell.im_lo + cell.im_hi));
    const bool small = std::max(w, h) <= min_size;
    if (cell.winding == 1 || small) {
      State s;
      if (newton_polish(v, center, o, s, &box)) {
        s.multiplicity = cell.winding;
        if (s.location.imag() < 0.0) {
          s.kind = StateKind::resonance;
        } else if (m == 0.0 && std::abs(s.location) < 1e-6) {
          s.kind = StateKind::eigenvalue;
        }
        res.states.push_back(s);
        cell.status = CellStatus::isolated;
        res.cells.push_back(cell);
        continue;
      }
      if (small) throw ContourError("Newton failed to polish a zero in a minimum-size cell");
    }
    // Split the longer side; alternative offsets dodge zeros on the cut line.
    bool done = false;
    for (double f : {0.5, 0.4375, 0.5625, 0.375, 0.625}) {
      ContourCell a = cell, b = cell;
      if (w >= h) {
        const double x = cell.re_lo + f * w;
        a.re_hi = x;
        b.re_lo = x;
      } else {
        const double y = cell.im_lo + f * h;
        a.im_hi = y;
        b.im_lo = y;
      }
      try {
        cell_winding(a);
        cell_winding(b);
      } catch (const ContourError&) {
        continue;
      }
      if (a.winding + b.winding != cell.winding) continue;
      cell.status = CellStatus::split;
      res.cells.push_back(cell);
      stack.push_back(b);
      stack.push_back(a);
      done = true;
      break;
    }
    if (!done)
      throw ContourError("winding mismatch between a cell and its children near (" +
                         std::to_string(center.real()) + ", " + std::to_string(center.imag()) + ")");
  }
  std::sort(res.states.begin(), res.states.end(), [](const State& a, const State& b) {
    return a.location.real() < b.location.real() ||
           (a.location.real() == b.location.real() && a.location.imag() < b.location.imag());
  });
  res.evaluations = cache.size();
  return res;
}

std::vector<State> gap_states(const PotentialSpec& v, const StateFinderOptions& o) {
  const double m = v.mass();
  if (!(m > 0.0)) throw UsageError("gap states need m > 0");
  std::vector<State> out;
  if (v.is_zero()) return out;
  const double delta = std::max(o.gap_clearance, 1e-6 * m);
  const double a = -m + delta;
  const double b = m - delta;
  auto F = [&](double x) { return frak_F(v, x, o.jost).real(); };
  const int n = o.gap_samples;
  std::vector<double> xs(n + 1), fs(n + 1);
  for (int i = 0; i <= n; ++i) {
    xs[i] = a + (b - a) * i / n;
    fs[i] = F(xs[i]);
  }
  for (int i = 0; i < n; ++i) {
    if (fs[i] == 0.0 || (fs[i] > 0.0) == (fs[i + 1] > 0.0)) continue;
    boost::uintmax_t iters = 200;
    const auto br = boost::math::tools::toms748_solve(F, xs[i], xs[i + 1], fs[i], fs[i + 1],
                                                      boost::math::tools::eps_tolerance<double>(50), iters);
    State s;
    s.location = 0.5 * (br.first + br.second);
    s.residual = std::abs(frak_F(v, s.location, o.jost));
    s.local_scale = std::abs(frak_F_derivative(v, s.location, o.jost)) * o.jost.derivative_radius;
    for (double eps = o.classify_eps; eps >= o.classify_eps * 1e-2 && s.kind == StateKind::unclassified; eps /= 10) {
      const double x = s.location.real();
      const double up = std::abs(jost_g(v, quasimomentum(cplx(x, eps), m), o.jost));
      const double dn = std::abs(jost_g(v, quasimomentum(cplx(x, -eps), m), o.jost));
      if (up * o.classify_ratio <= dn) {
        s.kind = StateKind::eigenvalue;
        s.rim = Rim::upper;
      } else if (dn * o.classify_ratio <= up) {
        s.kind = StateKind::anti_bound;
        s.rim = Rim::lower;
      }
    }
    out.push_back(s);
  }
  return out;
}

VirtualIndicator virtual_indicator(const PotentialSpec& v, int endpoint_sign, const StateFinderOptions& o) {
  const double m = v.mass();
  if (!(m > 0.0)) throw UsageError("virtual states need m > 0");
  VirtualIndicator vi;
  vi.endpoint = endpoint_sign * m;
  const double lambda = endpoint_sign * (m - 1e-8);
  const SpectralParam sp = quasimomentum(lambda, m, Rim::upper);
  const OriginLimit lim = origin_limit(v, sp, TildeKind::theta, o.jost);
  vi.value = lim.value;
  vi.extrapolation_change = lim.extrapolation_change;
  if (lim.extrapolation_change > 1e-6 * std::max(1.0, std::abs(lim.value)))
    throw NumericalError("virtual-state indicator extrapolation is inconsistent");
  vi.is_virtual = std::abs(lim.value) < 1e-4;
  return vi;
}

std::vector<CountingRow> counting_function(const PotentialSpec& v, const std::vector<double>& radii,
                                           const StateFinderOptions& o) {
  const double m = v.mass();
  const double gamma = v.gamma();
  const double spacing = default_spacing(v, o);
  std::vector<CountingRow> rows;
  std::vector<State> gap;
  if (m > 0.0 && !v.is_zero()) gap = gap_states(v, o);
  for (double r : radii) {
    CountingRow row;
    row.r = r;
    if (m == 0.0) {
      if (r < o.gap_clearance) throw UsageError("counting radius too small");
      std::function<cplx(cplx)> g = [&](cplx z) { return jost_g(v, quasimomentum(z, 0.0), o.jost); };
      const Winding w = winding_on_circle(g, 0.0, r, spacing, o);
      row.count = w.value;
      row.raw_winding = w.raw;
      row.samples = w.samples;
    } else {
      const double c = o.dogbone_clearance * m;
      if (r <= m + 2.0 * c) throw UsageError("counting circle too close to the gap");
      std::function<cplx(cplx)> F = [&](cplx z) { return frak_F(v, z, o.jost); };
      const Winding outer = winding_on_circle(F, 0.0, r, spacing, o);
      // Stadium around [-m, m] with clearance c, counter-clockwise.
      std::vector<cplx> bone;
      const int arc = 16;
      for (int i = 0; i <= arc; ++i) bone.push_back(cplx(m, 0.0) + std::polar(c, -0.5 * std::numbers::pi + std::numbers::pi * i / arc));
      for (int i = 0; i <= arc; ++i) bone.push_back(cplx(-m, 0.0) + std::polar(c, 0.5 * std::numbers::pi + std::numbers::pi * i / arc));
      const Winding inner = winding_number(F, bone, std::min(spacing, 0.1 * m), o);
      const int off_gap = outer.value - inner.value;
      int inside = 0;
      for (const State& s : gap)
        if (std::abs(s.location) <= r && s.kind != StateKind::unclassified) ++inside;
      row.count = off_gap / 2 + inside;
      row.raw_winding = outer.raw - inner.raw;
      row.samples = outer.samples + inner.samples;
    }
    row.ratio = gamma > 0.0 ? row.count / (2.0 * r * gamma / std::numbers::pi) : 0.0;
    rows.push_back(row);
  }
  return rows;
}

double sector_fraction(const std::vector<State>& states, double r, double delta) {
  int total = 0, outside = 0;
  for (const State& s : states) {
    if (std::abs(s.location) > r) continue;
    ++total;
    const double a = std::arg(s.location);
    const bool near_pos = std::abs(a) < delta;
    const bool near_neg = std::abs(std::abs(a) - std::numbers::pi) < delta;
    if (!near_pos && !near_neg) ++outside;
  }
  return total == 0 ? 0.0 : static_cast<double>(outside) / total;
}

}  // namespace diracres
