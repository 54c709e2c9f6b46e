#include "diracres/quadrature.hpp"

namespace diracres::quad {

Rule composite_gauss(double a, double b, int panels) {
  using G = boost::math::quadrature::gauss<double, 8>;
  Rule r;
  const double h = (b - a) / panels;
  const auto& x = G::abscissa();
  const auto& w = G::weights();
  for (int p = 0; p < panels; ++p) {
    const double c = a + (p + 0.5) * h;
    const double half = 0.5 * h;
    // abscissa() lists the nonnegative half of the symmetric 8-point rule.
    for (std::size_t i = 0; i < x.size(); ++i) {
      r.nodes.push_back(c - half * x[i]);
      r.weights.push_back(half * w[i]);
      if (x[i] != 0.0) {
        r.nodes.push_back(c + half * x[i]);
        r.weights.push_back(half * w[i]);
      }
    }
  }
  return r;
}

Rule composite_midpoint(double a, double b, int n) {
  Rule r;
  const double h = (b - a) / n;
  for (int i = 0; i < n; ++i) {
    r.nodes.push_back(a + (i + 0.5) * h);
    r.weights.push_back(h);
  }
  return r;
}

}  // namespace diracres::quad
