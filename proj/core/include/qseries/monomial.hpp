#pragma once

#include <cstdint>
#include <string>

#include "qseries/cyclo.hpp"
#include "qseries/rational.hpp"

namespace qseries {

// The coefficient ring and exponent grid shared by every series in one
// computation: exponents live in (1/D)Z, coefficients in Q(zeta_m).
struct Ring {
  int grid_denominator = 2;
  int cyclotomic_order = 1;

  friend bool operator==(const Ring&, const Ring&) = default;
};

struct SeriesContext {
  QRational truncation_order{50};
  int grid_denominator = 2;
  int cyclotomic_order = 1;

  // Validates the invariants (D >= 1, m supported, order > 0).
  SeriesContext(QRational order = QRational(50), int grid_denominator = 2,
                int cyclotomic_order = 1);

  Ring ring() const { return {grid_denominator, cyclotomic_order}; }
  // Order on the grid: the number of ticks t with t/D < truncation_order.
  std::int64_t order_ticks() const;
  SeriesContext with_order(QRational order) const;
};

// Converts a grid rational to ticks, throwing GridError when off-grid.
std::int64_t to_ticks(const QRational& e, int grid_denominator);
inline QRational from_ticks(std::int64_t t, int grid_denominator) {
  return QRational(t, grid_denominator);
}

// c * q^e with c != 0. Parameter specializations and Pochhammer bases are
// both monomials; a base with c = -1 realizes the substitution q -> -q.
class ParamMonomial {
 public:
  ParamMonomial() : coeff_(1, mpq_class(1)), exp_(0) {}
  ParamMonomial(CycloCoeff c, QRational e);
  ParamMonomial(const mpq_class& c, QRational e) : ParamMonomial(CycloCoeff(1, c), e) {}

  // q^e.
  static ParamMonomial q(QRational e) { return ParamMonomial(mpq_class(1), e); }
  static ParamMonomial constant(const mpq_class& c) { return ParamMonomial(c, QRational(0)); }

  const CycloCoeff& coeff() const { return coeff_; }
  const QRational& exponent() const { return exp_; }
  int cyclotomic_order() const { return coeff_.cyclotomic_order(); }

  friend ParamMonomial operator*(const ParamMonomial& a, const ParamMonomial& b);
  friend ParamMonomial operator/(const ParamMonomial& a, const ParamMonomial& b);
  ParamMonomial operator-() const { return ParamMonomial(-coeff_, exp_); }
  ParamMonomial pow(std::int64_t k) const;
  ParamMonomial inverse() const { return pow(-1); }
  // Exact square root: halves the exponent and needs a square rational
  // coefficient (or a root of unity of even order in the field).
  ParamMonomial sqrt() const;

  // Both coefficient and exponent agree (after field promotion).
  friend bool operator==(const ParamMonomial& a, const ParamMonomial& b);

  // "3/2*q^(1/2)", "-q^3", "1".
  std::string to_string() const;

 private:
  CycloCoeff coeff_;
  QRational exp_;
};

// A single exact term c * q^(t/D) already placed on a grid.
struct GridTerm {
  std::int64_t tick;
  CycloCoeff coeff;
};

GridTerm to_grid(const ParamMonomial& p, const Ring& ring);

// "q", "q^3", "q^-2", "q^(1/2)"; empty for exponent 0.
std::string format_qpow(const QRational& e);

}  // namespace qseries
