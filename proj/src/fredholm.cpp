#include "diracres/fredholm.hpp"

#include <cmath>
#include <numbers>

#include "diracres/errors.hpp"
#include "diracres/free_model.hpp"
#include "diracres/quadrature.hpp"
#include "diracres/special_functions.hpp"

namespace diracres {

namespace {

const cplx I(0.0, 1.0);

struct NodeValues {
  ScaledValue h1, h0, j1, j0;
};

}  // namespace

void nystrom_rule(const PotentialSpec& v, int n, NodeRule rule, std::vector<double>& nodes,
                  std::vector<double>& weights) {
  if (n < 16) throw UsageError("Nystrom discretization needs N >= 16");
  nodes.clear();
  weights.clear();
  const double g = v.gamma();
  const auto& pieces = v.pieces();
  int used = 0;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const double len = pieces[i].hi - pieces[i].lo;
    int share = i + 1 == pieces.size() ? n - used : static_cast<int>(std::lround(n * len / g));
    if (rule == NodeRule::gauss) share = std::max(8, share - share % 8);
    share = std::max(share, 1);
    used += share;
    const quad::Rule r = rule == NodeRule::gauss ? quad::composite_gauss(pieces[i].lo, pieces[i].hi, share / 8)
                                                 : quad::composite_midpoint(pieces[i].lo, pieces[i].hi, share);
    nodes.insert(nodes.end(), r.nodes.begin(), r.nodes.end());
    weights.insert(weights.end(), r.weights.begin(), r.weights.end());
  }
}

NystromOperator nystrom_operator(const PotentialSpec& v, const SpectralParam& sp, int n, NodeRule rule) {
  NystromOperator op;
  op.lambda = sp.lambda;
  nystrom_rule(v, n, rule, op.nodes, op.weights);
  const std::size_t N = op.nodes.size();
  const int kap = v.kappa();
  std::vector<NodeValues> nv(N);
  std::vector<double> vx(N);
  for (std::size_t i = 0; i < N; ++i) {
    const cplx z = sp.k * op.nodes[i];
    nv[i] = {riccati_h(kap, z, 1), riccati_h(kap - 1, z, 1), riccati_j(kap, z), riccati_j(kap - 1, z)};
    vx[i] = v(op.nodes[i]);
  }
  const cplx a = I * sp.k0;
  // Block of R0(x, y) for x >= y, built from the Riccati values at x (Hankel) and y (Bessel).
  auto lower = [&](std::size_t big, std::size_t small) {
    Matrix2c b;
    b(0, 0) = a * (nv[big].h1 * nv[small].j1).value();
    b(0, 1) = (nv[big].h1 * nv[small].j0).value();
    b(1, 0) = (nv[big].h0 * nv[small].j1).value();
    b(1, 1) = (nv[big].h0 * nv[small].j0).value() / a;
    return b;
  };
  op.matrix.resize(2 * N, 2 * N);
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) {
      Matrix2c b;
      if (op.nodes[i] > op.nodes[j]) {
        b = lower(i, j);
      } else if (op.nodes[i] < op.nodes[j]) {
        b = lower(j, i).transpose();
      } else {
        const Matrix2c l = lower(i, i);
        b = 0.5 * (l + l.transpose());
      }
      op.matrix.block<2, 2>(2 * i, 2 * j) = vx[i] * op.weights[j] * b;
    }
  }
  return op;
}

cplx det2(const NystromOperator& op) {
  const Eigen::Index n = op.matrix.rows();
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(n, n) + op.matrix;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
  const Eigen::MatrixXcd& u = lu.matrixLU();
  cplx log_sum(0.0, 0.0);
  for (Eigen::Index i = 0; i < n; ++i) log_sum += std::log(u(i, i));
  log_sum -= op.matrix.trace();
  return std::exp(log_sum) * static_cast<double>(lu.permutationP().determinant());
}

cplx det2(const PotentialSpec& v, const SpectralParam& sp, int n, NodeRule rule) {
  if (v.is_zero()) return {1.0, 0.0};
  return det2(nystrom_operator(v, sp, n, rule));
}

Det2Estimate det2_richardson(const PotentialSpec& v, const SpectralParam& sp, int n, NodeRule rule) {
  Det2Estimate e;
  e.d_n = det2(v, sp, n, rule);
  e.d_2n = det2(v, sp, 2 * n, rule);
  // The diagonal jump of R0 makes the leading error O(1/N).
  e.value = 2.0 * e.d_2n - e.d_n;
  e.error_estimate = std::abs(e.d_2n - e.d_n);
  return e;
}

}  // namespace diracres

namespace diracres {

namespace {

//! Panels [a, b] subdivided into pieces of width about w, with 8 Gauss nodes each.
void add_panels(OmegaTable& t, double a, double b, double w) {
  const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / w)));
  const quad::Rule r = quad::composite_gauss(a, b, panels);
  t.nodes.insert(t.nodes.end(), r.nodes.begin(), r.nodes.end());
  t.weights.insert(t.weights.end(), r.weights.begin(), r.weights.end());
}

}  // namespace

OmegaTable omega_table(const PotentialSpec& v, double t_max, double panel_width) {
  OmegaTable t;
  t.t_max = t_max;
  t.omega0 = v.integral();
  const double m = v.mass();
  if (m > 0.0) {
    add_panels(t, -t_max, -m, panel_width);
    add_panels(t, m, t_max, panel_width);
  } else {
    add_panels(t, -t_max, t_max, panel_width);
  }
  t.values.resize(t.nodes.size());
  for (std::size_t i = 0; i < t.nodes.size(); ++i) t.values[i] = omega(v, t.nodes[i], 1e-10);
  return t;
}

RelationReport determinant_jost_relation_check(const PotentialSpec& v, const SpectralParam& sp, int n,
                                               const OmegaTable& table, const JostOptions& o) {
  const cplx z = sp.lambda;
  if (!(z.imag() > 0.0)) throw UsageError("the determinant relation is checked for Im lambda > 0");
  RelationReport r;
  r.g_direct = jost_g(v, sp, o);
  if (v.is_zero()) {
    r.determinant = 1.0;
    r.g_from_determinant = sp.k0;
    r.mismatch = std::abs(r.g_direct - sp.k0) / std::abs(sp.k0);
    return r;
  }
  const double o0 = table.omega0;
  const double m = v.mass();
  const double T = table.t_max;
  cplx ci(0.0, 0.0);
  for (std::size_t i = 0; i < table.nodes.size(); ++i)
    ci += table.weights[i] * (table.values[i] - o0) / (table.nodes[i] - z);
  // On the gap Omega vanishes, leaving -Omega_0 / (t - z).
  if (m > 0.0) ci += -o0 * (std::log(m - z) - std::log(-m - z));
  // Tail |t| > T with Omega - Omega_0 ~ c/|t|, c fitted on the outer quarter of the table.
  double cp = 0.0, wp = 0.0, cm = 0.0, wm = 0.0;
  for (std::size_t i = 0; i < table.nodes.size(); ++i) {
    const double t = table.nodes[i];
    if (t >= 0.75 * T) {
      cp += table.weights[i] * (table.values[i] - o0) * t;
      wp += table.weights[i];
    } else if (t <= -0.75 * T) {
      cm += table.weights[i] * (table.values[i] - o0) * (-t);
      wm += table.weights[i];
    }
  }
  cp = wp > 0.0 ? cp / wp : 0.0;
  cm = wm > 0.0 ? cm / wm : 0.0;
  const cplx tail = -(cp * std::log(1.0 - z / T) + cm * std::log(1.0 + z / T)) / z;
  r.tail_bound = std::abs(tail) / std::numbers::pi;
  r.cauchy_integral = (ci + tail) / std::numbers::pi;
  r.determinant = det2_richardson(v, sp, n / 2).value;
  r.g_from_determinant = sp.k0 * r.determinant * std::exp(I * o0 + r.cauchy_integral);
  r.mismatch = std::abs(r.g_direct - r.g_from_determinant) / std::abs(r.g_direct);
  return r;
}

RelationReport determinant_jost_relation_check(const PotentialSpec& v, const SpectralParam& sp, int n,
                                               double t_max, const JostOptions& o) {
  return determinant_jost_relation_check(v, sp, n, v.is_zero() ? OmegaTable{} : omega_table(v, t_max), o);
}

PhaseIdentityReport phase_identity_check(const PotentialSpec& v, double lambda, int n, double eps,
                                         const JostOptions& o) {
  const double m = v.mass();
  if (std::abs(lambda) <= m) throw UsageError("phase identity holds on the continuous spectrum");
  PhaseIdentityReport r;
  const SpectralParam sp = quasimomentum(lambda, m);
  r.phi_sc = std::arg(jost_g(v, sp, o)) + 0.5 * std::numbers::pi;
  r.omega = omega(v, lambda);
  const SpectralParam up = quasimomentum(cplx(lambda, eps), m);
  const cplx d = det2_richardson(v, up, n / 2).value;
  r.arg_d = std::arg(d);
  const cplx d_half = det2_richardson(v, quasimomentum(cplx(lambda, 0.5 * eps), m), n / 2).value;
  r.eps_sensitivity = std::abs(d - d_half) / std::abs(d);
  double diff = r.phi_sc - r.omega - r.arg_d;
  diff -= 2.0 * std::numbers::pi * std::round(diff / (2.0 * std::numbers::pi));
  r.mismatch = std::abs(diff);
  return r;
}

ScatteringReport scattering_matrix_check(const PotentialSpec& v, double lambda, int n, double eps,
                                         const JostOptions& o) {
  const double m = v.mass();
  if (std::abs(lambda) <= m) throw UsageError("scattering matrix lives on the continuous spectrum");
  ScatteringReport r;
  const cplx g = jost_g(v, quasimomentum(lambda, m), o);
  r.s_jost = -std::conj(g) / g;
  const cplx d_up = det2_richardson(v, quasimomentum(cplx(lambda, eps), m), n / 2).value;
  // Physical-sheet value below the axis: Im k > 0, i.e. the flipped principal branch.
  const cplx d_down = det2_richardson(v, flip_sheet(quasimomentum(cplx(lambda, -eps), m)), n / 2).value;
  r.s_determinant = d_down / d_up * std::exp(cplx(0.0, -2.0 * omega(v, lambda)));
  r.mismatch = std::abs(r.s_determinant - r.s_jost);
  return r;
}

cplx resolvent_trace_difference(const PotentialSpec& v, const SpectralParam& sp, const JostOptions& o) {
  if (sp.lambda.imag() == 0.0) throw UsageError("resolvent trace needs Im lambda != 0");
  const cplx g = jost_g(v, sp, o);
  const cplx dg = jost_g_derivative(v, sp, o);
  const double rho = derivative_radius(sp, o);
  if (std::abs(g) <= 1e-12 * (std::abs(g) + rho * std::abs(dg)))
    throw PoleError("lambda is a zero of the Jost function");
  const double m = sp.mass;
  const cplx l = sp.lambda;
  const cplx dk0 = m == 0.0 ? cplx(0.0, 0.0) : 1.0 / (l + m) - l / (l * l - m * m);
  return dk0 - dg / g;
}

cplx trace_v_r0_squared(const OmegaTable& table, cplx lambda) {
  cplx s(0.0, 0.0);
  for (std::size_t i = 0; i < table.nodes.size(); ++i) {
    const cplx d = table.nodes[i] - lambda;
    s += table.weights[i] * table.values[i] / (d * d);
  }
  const double S = table.t_max;
  s += table.omega0 * (1.0 / (S - lambda) + 1.0 / (S + lambda));
  return s / std::numbers::pi;
}

cplx trace_v_r0_squared(const PotentialSpec& v, cplx lambda, double s_max) {
  if (v.is_zero()) return {0.0, 0.0};
  return trace_v_r0_squared(omega_table(v, s_max), lambda);
}

TraceRoutes resolvent_trace_routes(const PotentialSpec& v, const SpectralParam& sp, int n, double s_max,
                                   const JostOptions& o) {
  TraceRoutes r;
  r.closed_form = resolvent_trace_difference(v, sp, o);
  if (v.is_zero()) return r;
  const double rho = derivative_radius(sp, o);
  const int nodes = o.derivative_nodes;
  cplx dd(0.0, 0.0);
  const cplx d0 = det2_richardson(v, sp, n / 2).value;
  for (int j = 0; j < nodes; ++j) {
    const cplx w = std::polar(rho, 2.0 * std::numbers::pi * (j + 0.5) / nodes);
    dd += det2_richardson(v, continue_from(sp, sp.lambda + w), n / 2).value / w;
  }
  dd /= static_cast<double>(nodes);
  r.determinant_route = -dd / d0 - trace_v_r0_squared(v, sp.lambda, s_max);
  r.mismatch = std::abs(r.closed_form - r.determinant_route) / std::abs(r.closed_form);
  return r;
}

}  // namespace diracres
