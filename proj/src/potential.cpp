#include "diracres/potential.hpp"

#include <cmath>
#include <sstream>

#include "diracres/errors.hpp"

namespace diracres {

namespace {

double horner(const std::vector<double>& c, double x) {
  double r = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
  return r;
}

double antiderivative(const std::vector<double>& c, double x) {
  double r = 0.0;
  for (std::size_t j = c.size(); j-- > 0;) r = r * x + c[j] / static_cast<double>(j + 1);
  return r * x;
}

}  // namespace

PotentialSpec::PotentialSpec(int kappa, double mass, std::vector<PotentialPiece> pieces, std::string name)
    : kappa_(kappa), mass_(mass), pieces_(std::move(pieces)), name_(std::move(name)) {
  if (kappa_ < 1) throw ConfigError("kappa must be an integer >= 1");
  if (!(mass_ >= 0.0) || !std::isfinite(mass_)) throw ConfigError("mass must be finite and >= 0");
  if (pieces_.empty()) throw ConfigError("potential needs at least one piece");
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const auto& p = pieces_[i];
    std::ostringstream where;
    where << "piece " << i << ": ";
    if (!std::isfinite(p.lo) || !std::isfinite(p.hi)) throw ConfigError(where.str() + "non-finite bounds");
    if (!(p.hi > p.lo)) throw ConfigError(where.str() + "hi must exceed lo");
    if (p.coeffs.empty()) throw ConfigError(where.str() + "empty coefficient list");
    for (double c : p.coeffs)
      if (!std::isfinite(c)) throw ConfigError(where.str() + "non-finite coefficient");
    if (i == 0) {
      if (std::abs(p.lo) > 1e-12) throw ConfigError(where.str() + "support must start at 0");
    } else {
      const double prev = pieces_[i - 1].hi;
      if (p.lo < prev - 1e-12) throw ConfigError(where.str() + "overlaps the previous piece");
      if (p.lo > prev + 1e-12) throw ConfigError(where.str() + "leaves a gap after the previous piece");
      pieces_[i].lo = prev;
    }
  }
  pieces_[0].lo = 0.0;
}

PotentialSpec PotentialSpec::free(int kappa, double mass, double gamma) {
  return {kappa, mass, {{0.0, gamma, {0.0}}}, "free"};
}

PotentialSpec PotentialSpec::square_well(int kappa, double mass, double depth, double gamma) {
  return {kappa, mass, {{0.0, gamma, {depth}}}, "square_well"};
}

PotentialSpec PotentialSpec::tent(int kappa, double mass, double peak, double gamma) {
  const double h = 0.5 * gamma;
  const double s = peak / h;
  return {kappa, mass, {{0.0, h, {0.0, s}}, {h, gamma, {2.0 * peak, -s}}}, "tent"};
}

std::size_t PotentialSpec::piece_index(double x, bool left) const {
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (left ? x <= pieces_[i].hi : x < pieces_[i].hi) return i;
  }
  return pieces_.size() - 1;
}

double PotentialSpec::operator()(double x) const {
  if (x > gamma() || x < 0.0) return 0.0;
  return on_piece(piece_index(x), x);
}

double PotentialSpec::on_piece(std::size_t i, double x) const { return horner(pieces_[i].coeffs, x); }

double PotentialSpec::integral() const { return tail_integral(0.0); }

double PotentialSpec::tail_integral(double x) const {
  double s = 0.0;
  for (const auto& p : pieces_) {
    const double a = std::max(p.lo, x);
    if (a >= p.hi) continue;
    s += antiderivative(p.coeffs, p.hi) - antiderivative(p.coeffs, a);
  }
  return s;
}

bool PotentialSpec::is_zero() const {
  for (const auto& p : pieces_)
    for (double c : p.coeffs)
      if (c != 0.0) return false;
  return true;
}

bool PotentialSpec::is_continuous(double tol) const {
  for (std::size_t i = 0; i + 1 < pieces_.size(); ++i) {
    const double b = pieces_[i].hi;
    if (std::abs(on_piece(i, b) - on_piece(i + 1, b)) > tol) return false;
  }
  return std::abs(on_piece(pieces_.size() - 1, gamma())) <= tol;
}

std::vector<double> PotentialSpec::breakpoints() const {
  std::vector<double> b{0.0};
  for (const auto& p : pieces_) b.push_back(p.hi);
  return b;
}

}  // namespace diracres
