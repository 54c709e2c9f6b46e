#include "diracres/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <numbers>
#include <sstream>

#include "diracres/errors.hpp"
#include "diracres/fredholm.hpp"
#include "diracres/trace.hpp"

namespace diracres {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

double to_double(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  double x = 0.0;
  try {
    x = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw UsageError(what + ": malformed number '" + s + "'");
  }
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos != s.size() || !std::isfinite(x)) throw UsageError(what + ": malformed number '" + s + "'");
  return x;
}

//! Real points inside the gap sit on the upper rim.
SpectralParam param(cplx l, double m) {
  if (m > 0.0 && l.imag() == 0.0 && std::abs(l.real()) < m) return quasimomentum(l, m, Rim::upper);
  return quasimomentum(l, m);
}

JostOptions jost_options(const RunConfig& c) {
  JostOptions o;
  o.rtol = c.tol;
  o.validity_ceiling = c.ceiling;
  return o;
}

StateFinderOptions finder_options(const RunConfig& c) {
  StateFinderOptions o;
  o.jost = jost_options(c);
  return o;
}

bool in_continuum(cplx l, double m) { return l.imag() == 0.0 && std::abs(l.real()) > m; }

void require_points(const RunConfig& c) {
  if (c.points.empty()) throw UsageError(c.command + " needs --grid or --points");
}

std::string at(const std::string& route, double r) {
  std::ostringstream os;
  os << route << "@" << r;
  return os.str();
}

void eval_jost(const RunConfig& c, std::vector<OutputRow>& rows) {
  const PotentialSpec& v = c.potential;
  const JostOptions o = jost_options(c);
  const double m = v.mass();
  for (cplx l : c.points) {
    const JostSample s = jost_function(v, param(l, m), o);
    const double err = std::max(s.residual, c.tol) * std::abs(s.g_plus);
    rows.push_back({l, s.g_plus, err, "wronskian"});
    rows.push_back({l, s.g_integral, err, "integral"});
    rows.push_back({l, s.g_minus, std::max(s.residual, c.tol) * std::abs(s.g_minus), "g_minus"});
    if (in_continuum(l, m)) {
      const double phi = std::arg(s.g_plus) + 0.5 * std::numbers::pi;
      rows.push_back({l, phi, std::max(s.residual, c.tol), "phase"});
    }
    if (m == 0.0 && in_continuum(l, m)) {
      const cplx lim = cplx(0.0, -1.0) * std::exp(cplx(0.0, v.integral()));
      rows.push_back({l, s.g_plus - lim, err, "limit_residual"});
    }
  }
}

void find_states_cmd(const RunConfig& c, std::vector<OutputRow>& rows) {
  if (!c.region) throw UsageError("find-states needs --region");
  const PotentialSpec& v = c.potential;
  const StateFinderOptions o = finder_options(c);
  if (v.is_zero()) return;
  const StateSearch s = find_states(v, *c.region, o);
  for (const State& st : s.states)
    rows.push_back({st.location, cplx(st.multiplicity, 0.0), st.local_scale > 0 ? st.residual / st.local_scale * o.jost.derivative_radius : 0.0,
                    to_string(st.kind)});
  const double m = v.mass();
  const Region& r = *c.region;
  if (m > 0.0 && r.im_lo <= 0.0 && r.im_hi >= 0.0 && r.re_lo < m && r.re_hi > -m) {
    for (const State& st : gap_states(v, o))
      if (st.location.real() >= r.re_lo && st.location.real() <= r.re_hi)
        rows.push_back({st.location, 1.0, o.gap_clearance, to_string(st.kind)});
    for (int sgn : {-1, 1}) {
      if (sgn * m < r.re_lo || sgn * m > r.re_hi) continue;
      const VirtualIndicator vi = virtual_indicator(v, sgn, o);
      if (vi.is_virtual) rows.push_back({vi.endpoint, vi.value, vi.extrapolation_change, "virtual"});
    }
  }
}

void counting_cmd(const RunConfig& c, std::vector<OutputRow>& rows) {
  if (c.radii.empty()) throw UsageError("counting needs --radii");
  for (const CountingRow& r : counting_function(c.potential, c.radii, finder_options(c)))
    rows.push_back({r.r, cplx(r.count, r.ratio), std::abs(r.raw_winding - std::round(r.raw_winding)), "winding"});
}

void omega_cmd(const RunConfig& c, std::vector<OutputRow>& rows) {
  require_points(c);
  const PotentialSpec& v = c.potential;
  const double o0 = v.integral();
  rows.push_back({0.0, o0, 0.0, "omega0"});
  for (cplx l : c.points) {
    if (l.imag() != 0.0) throw UsageError("omega is evaluated on the real line");
    const double w = omega(v, l.real());
    rows.push_back({l, w, 1e-10, "omega"});
    const double a = std::abs(l.real());
    if (a > std::numbers::e) rows.push_back({l, (w - o0) * a / std::log(a), 1e-10 * a / std::log(a), "asymptotic_c"});
  }
}

void det_cmd(const RunConfig& c, std::vector<OutputRow>& rows) {
  require_points(c);
  for (cplx l : c.points) {
    const Det2Estimate d = det2_richardson(c.potential, param(l, c.potential.mass()), c.nodes / 2);
    rows.push_back({l, d.value, d.error_estimate, "det2"});
  }
}

void relation_cmd(const RunConfig& c, std::vector<OutputRow>& rows) {
  require_points(c);
  const PotentialSpec& v = c.potential;
  const JostOptions o = jost_options(c);
  std::optional<OmegaTable> table;
  for (cplx l : c.points) {
    if (l.imag() > 0.0) {
      if (!table) table = omega_table(v, c.t_max);
      const RelationReport r = determinant_jost_relation_check(v, param(l, v.mass()), c.nodes, *table, o);
      rows.push_back({l, r.g_direct, c.tol * std::abs(r.g_direct), "jost"});
      rows.push_back({l, r.g_from_determinant, r.mismatch * std::abs(r.g_direct), "relation"});
    } else if (in_continuum(l, v.mass())) {
      const PhaseIdentityReport p = phase_identity_check(v, l.real(), c.nodes, 1e-4, o);
      rows.push_back({l, cplx(p.phi_sc, p.omega + p.arg_d), p.mismatch, "phase_identity"});
      const ScatteringReport s = scattering_matrix_check(v, l.real(), c.nodes, 1e-4, o);
      rows.push_back({l, s.s_determinant, s.mismatch, "s_matrix"});
    } else {
      throw UsageError("relation-check needs Im lambda > 0 or lambda in the continuous spectrum");
    }
  }
}

void trace_cmd(const RunConfig& c, std::vector<OutputRow>& rows) {
  require_points(c);
  const PotentialSpec& v = c.potential;
  const JostOptions o = jost_options(c);
  ResonanceSetOptions ro;
  ro.finder = finder_options(c);
  const ResonanceSet rs = build_resonance_set(v, c.trunc, ro);
  int sign = 1;
  bool resolved = false;
  for (cplx l : c.points) {
    if (l.imag() != 0.0) {
      const cplx direct = resolvent_trace_difference(v, param(l, 0.0), o);
      rows.push_back({l, direct, c.tol * std::abs(direct), "trf3_direct"});
      for (double r : {c.trunc / 2, c.trunc}) {
        const cplx s = resolvent_trace_sum(rs, l, r);
        rows.push_back({l, s, std::abs(s - direct), at("trf3_sum", r)});
      }
    } else {
      if (!resolved) {
        const SignResolution sr = resolve_phase_sign(v, rs, l.real(), c.trunc);
        sign = sr.sign;
        resolved = true;
        rows.push_back({l, static_cast<double>(sign), 0.0, "phase_sign"});
      }
      const double direct = phase_derivative_direct(v, l.real(), 1e-2, o);
      rows.push_back({l, direct, 1e-6 * std::max(1.0, std::abs(direct)), "phase_direct"});
      for (double r : {c.trunc / 2, c.trunc}) {
        const double s = phase_derivative_sum(rs, l.real(), r, sign);
        rows.push_back({l, s, std::abs(s - direct), at("phase_sum", r)});
      }
    }
  }
}

void hadamard_cmd(const RunConfig& c, std::vector<OutputRow>& rows) {
  require_points(c);
  const PotentialSpec& v = c.potential;
  std::vector<double> radii = c.radii.empty() ? std::vector<double>{c.trunc} : c.radii;
  ResonanceSetOptions ro;
  ro.finder = finder_options(c);
  const ResonanceSet rs = build_resonance_set(v, *std::max_element(radii.begin(), radii.end()), ro);
  for (cplx l : c.points) {
    const cplx direct = jost_g(v, param(l, 0.0), jost_options(c));
    rows.push_back({l, direct, c.tol * std::abs(direct), "direct"});
    for (double r : radii) {
      const cplx h = hadamard_eval(rs, l, r);
      rows.push_back({l, h, std::abs(h - direct), at("hadamard", r)});
    }
  }
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

const std::vector<std::string>& known_commands() {
  static const std::vector<std::string> cmds{"eval-jost", "find-states",    "counting",    "omega",
                                             "det",       "relation-check", "trace-check", "hadamard"};
  return cmds;
}

std::vector<cplx> parse_grid(const std::string& spec) {
  const auto f = split(spec, ',');
  if (f.size() != 3 && f.size() != 4) throw UsageError("--grid expects lo,hi,n[,im]");
  const double lo = to_double(f[0], "--grid"), hi = to_double(f[1], "--grid");
  const double nd = to_double(f[2], "--grid");
  const double im = f.size() == 4 ? to_double(f[3], "--grid") : 0.0;
  if (nd < 1 || nd != std::floor(nd)) throw UsageError("--grid: n must be a positive integer");
  const int n = static_cast<int>(nd);
  std::vector<cplx> pts;
  for (int i = 0; i < n; ++i) pts.emplace_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1), im);
  return pts;
}

std::vector<cplx> parse_points(const std::string& spec) {
  std::vector<cplx> pts;
  for (const std::string& item : split(spec, ',')) {
    const auto p = split(item, ':');
    if (p.size() == 1) pts.emplace_back(to_double(p[0], "--points"), 0.0);
    else if (p.size() == 2) pts.emplace_back(to_double(p[0], "--points"), to_double(p[1], "--points"));
    else throw UsageError("--points expects re or re:im items");
  }
  return pts;
}

Region parse_region(const std::string& spec) {
  const auto f = split(spec, ',');
  if (f.size() != 4) throw UsageError("--region expects re_lo,re_hi,im_lo,im_hi");
  Region r{to_double(f[0], "--region"), to_double(f[1], "--region"), to_double(f[2], "--region"),
           to_double(f[3], "--region")};
  if (!(r.re_hi > r.re_lo) || !(r.im_hi > r.im_lo)) throw UsageError("--region is empty");
  return r;
}

std::vector<double> parse_list(const std::string& spec) {
  std::vector<double> out;
  for (const std::string& s : split(spec, ',')) out.push_back(to_double(s, "list"));
  if (out.empty()) throw UsageError("empty list");
  return out;
}

void validate(const RunConfig& c) {
  const auto& cmds = known_commands();
  if (std::find(cmds.begin(), cmds.end(), c.command) == cmds.end())
    throw UsageError("unknown command '" + c.command + "'");
  if (!(c.tol > 0.0) || !(c.ceiling > 0.0) || !(c.trunc > 0.0) || !(c.t_max > 0.0) || c.nodes < 4)
    throw UsageError("tolerances, ceiling, truncation, t_max must be positive and nodes >= 4");
  const PotentialSpec& v = c.potential;
  const double m = v.mass();
  const double gamma = v.gamma();
  const JostOptions o = jost_options(c);
  auto check_point = [&](cplx l) {
    if (c.command == "omega") return;
    check_ceiling(v, param(l, m), o);
  };
  for (cplx l : c.points) check_point(l);
  if (c.region && c.command == "find-states") {
    const Region& r = *c.region;
    for (cplx corner : {cplx(r.re_lo, r.im_lo), cplx(r.re_hi, r.im_lo)})
      if (branch_distance(corner, m) > 0.0) check_ceiling(v, quasimomentum(corner, m), o);
  }
  if (c.command == "counting") {
    for (double r : c.radii) {
      if (!(r > 0.0)) throw UsageError("--radii must be positive");
      if (2.0 * std::hypot(r, m) * gamma > c.ceiling)
        throw ValidityCeilingError("counting radius " + fmt(r) + " needs --ceiling >= " +
                                   fmt(2.0 * std::hypot(r, m) * gamma));
    }
  }
  if ((c.command == "trace-check" || c.command == "hadamard") && m != 0.0)
    throw UsageError(c.command + " requires m = 0");
}

void execute(const RunConfig& c, std::vector<OutputRow>& rows) {
  if (c.command == "eval-jost") eval_jost(c, rows);
  else if (c.command == "find-states") find_states_cmd(c, rows);
  else if (c.command == "counting") counting_cmd(c, rows);
  else if (c.command == "omega") omega_cmd(c, rows);
  else if (c.command == "det") det_cmd(c, rows);
  else if (c.command == "relation-check") relation_cmd(c, rows);
  else if (c.command == "trace-check") trace_cmd(c, rows);
  else if (c.command == "hadamard") hadamard_cmd(c, rows);
  else throw UsageError("unknown command '" + c.command + "'");
}

void write_rows(std::ostream& os, const RunConfig& c, const std::vector<OutputRow>& rows) {
  if (c.format == OutputFormat::csv) {
    os << "re_lambda,im_lambda,re_value,im_value,abs_error_estimate,route\n";
    for (const OutputRow& r : rows)
      os << fmt(r.lambda.real()) << ',' << fmt(r.lambda.imag()) << ',' << fmt(r.value.real()) << ','
         << fmt(r.value.imag()) << ',' << fmt(r.error) << ',' << r.route << '\n';
    return;
  }
  nlohmann::ordered_json j;
  j["command"] = c.command;
  j["potential"] = {{"name", c.potential.name()},
                    {"kappa", c.potential.kappa()},
                    {"mass", c.potential.mass()},
                    {"gamma", c.potential.gamma()}};
  j["rows"] = nlohmann::ordered_json::array();
  for (const OutputRow& r : rows)
    j["rows"].push_back({{"re_lambda", r.lambda.real()},
                         {"im_lambda", r.lambda.imag()},
                         {"re_value", r.value.real()},
                         {"im_value", r.value.imag()},
                         {"abs_error_estimate", r.error},
                         {"route", r.route}});
  os << j.dump(2) << '\n';
}

int run(const RunConfig& c, std::ostream& diag) {
  std::vector<OutputRow> rows;
  int code = 0;
  std::string kind, message;
  try {
    validate(c);
    execute(c, rows);
  } catch (const ValidityCeilingError& e) {
    code = 4, kind = "validity_ceiling", message = e.what();
  } catch (const NumericalError& e) {
    code = 3, kind = "numerical", message = e.what();
  } catch (const UsageError& e) {
    code = 2, kind = "usage", message = e.what();
  } catch (const ConfigError& e) {
    code = 2, kind = "config", message = e.what();
  }
  if (c.out == "-") {
    write_rows(std::cout, c, rows);
  } else {
    std::ofstream f(c.out);
    if (!f) {
      diag << "error: cannot write " << c.out << '\n';
      return 2;
    }
    write_rows(f, c, rows);
  }
  if (code != 0) {
    nlohmann::ordered_json m;
    m["command"] = c.command;
    m["potential"] = c.potential_path;
    m["exit_code"] = code;
    m["failure"] = kind;
    m["message"] = message;
    m["rows_written"] = rows.size();
    diag << "error (" << kind << "): " << message << '\n';
    if (c.out == "-") {
      diag << m.dump(2) << '\n';
    } else {
      std::ofstream mf(c.out + ".failure.json");
      mf << m.dump(2) << '\n';
    }
  }
  return code;
}

}  // namespace diracres
