#pragma once
//! Piecewise-polynomial, compactly supported potential v on [0, gamma].

#include <string>
#include <vector>

namespace diracres {

struct PotentialPiece {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<double> coeffs;  //!< v(x) = sum c_j x^j in absolute x
};

class PotentialSpec {
 public:
  PotentialSpec() = default;
  //! Validates on construction; throws ConfigError on malformed input.
  PotentialSpec(int kappa, double mass, std::vector<PotentialPiece> pieces, std::string name = "");

  //! v = 0 on [0, gamma] with the given channel and mass.
  static PotentialSpec free(int kappa, double mass, double gamma = 1.0);
  static PotentialSpec square_well(int kappa, double mass, double depth, double gamma = 1.0);
  //! Continuous tent: rises linearly to `peak` at gamma/2 and back to 0 at gamma.
  static PotentialSpec tent(int kappa, double mass, double peak = 1.0, double gamma = 1.0);

  [[nodiscard]] int kappa() const { return kappa_; }
  [[nodiscard]] double mass() const { return mass_; }
  [[nodiscard]] double gamma() const { return pieces_.empty() ? 0.0 : pieces_.back().hi; }
  [[nodiscard]] const std::vector<PotentialPiece>& pieces() const { return pieces_; }
  [[nodiscard]] const std::string& name() const { return name_; }

  //! v(x); 0 for x > gamma. At a breakpoint the right piece is used.
  [[nodiscard]] double operator()(double x) const;
  //! v on a specific piece (extends the polynomial to the closed interval).
  [[nodiscard]] double on_piece(std::size_t i, double x) const;
  //! Index of the piece containing x, preferring the left piece at breakpoints if `left`.
  [[nodiscard]] std::size_t piece_index(double x, bool left = false) const;
  //! Omega_0 = integral of v, exact.
  [[nodiscard]] double integral() const;
  //! Integral of v over [x, gamma], exact.
  [[nodiscard]] double tail_integral(double x) const;
  [[nodiscard]] bool is_zero() const;
  //! True if v is continuous at every interior breakpoint and vanishes at gamma.
  [[nodiscard]] bool is_continuous(double tol = 1e-12) const;
  //! Breakpoints 0 = b_0 < ... < b_n = gamma.
  [[nodiscard]] std::vector<double> breakpoints() const;

 private:
  int kappa_ = 1;
  double mass_ = 0.0;
  std::vector<PotentialPiece> pieces_;
  std::string name_;
};

}  // namespace diracres
