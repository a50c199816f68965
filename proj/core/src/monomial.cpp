#include "qseries/monomial.hpp"

#include <gmp.h>

#include "qseries/error.hpp"

namespace qseries {

SeriesContext::SeriesContext(QRational order, int grid_denominator, int cyclotomic_order)
    : truncation_order(order), grid_denominator(grid_denominator), cyclotomic_order(cyclotomic_order) {
  if (grid_denominator < 1) throw InvalidSpecializationError("grid denominator must be >= 1");
  if (!CycloField::supported(cyclotomic_order)) {
    throw InvalidSpecializationError("cyclotomic order must be one of 1,2,3,4,6,8,12");
  }
  if (truncation_order <= QRational(0)) {
    throw InvalidSpecializationError("truncation order must be positive");
  }
}

std::int64_t SeriesContext::order_ticks() const {
  QRational t = truncation_order * QRational(grid_denominator);
  std::int64_t f = t.floor();
  return t.is_integer() ? f : f + 1;
}

SeriesContext SeriesContext::with_order(QRational order) const {
  return SeriesContext(order, grid_denominator, cyclotomic_order);
}

std::int64_t to_ticks(const QRational& e, int grid_denominator) {
  QRational t = e * QRational(grid_denominator);
  if (!t.is_integer()) {
    throw GridError("exponent " + e.to_string() + " is not on the grid (1/" +
                    std::to_string(grid_denominator) + ")Z");
  }
  return t.num();
}

ParamMonomial::ParamMonomial(CycloCoeff c, QRational e) : coeff_(std::move(c)), exp_(e) {
  if (coeff_.is_zero()) throw InvalidSpecializationError("monomial coefficient must be nonzero");
}

ParamMonomial operator*(const ParamMonomial& a, const ParamMonomial& b) {
  return ParamMonomial(a.coeff_ * b.coeff_, a.exp_ + b.exp_);
}

ParamMonomial operator/(const ParamMonomial& a, const ParamMonomial& b) {
  return ParamMonomial(a.coeff_ / b.coeff_, a.exp_ - b.exp_);
}

ParamMonomial ParamMonomial::pow(std::int64_t k) const {
  return ParamMonomial(coeff_.pow(k), exp_ * QRational(k));
}

namespace {

bool rational_sqrt(const mpq_class& x, mpq_class& out) {
  if (sgn(x) < 0) return false;
  mpz_class n = x.get_num(), d = x.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  out = mpq_class(rn, rd);
  out.canonicalize();
  return true;
}

}  // namespace

ParamMonomial ParamMonomial::sqrt() const {
  QRational e = exp_ / QRational(2);
  int m = coeff_.cyclotomic_order();
  if (coeff_.is_rational()) {
    mpq_class r;
    if (rational_sqrt(coeff_.rational_part(), r)) return ParamMonomial(CycloCoeff(m, r), e);
    // sqrt(-s^2) = i*s, available once 4 | m.
    if (rational_sqrt(-coeff_.rational_part(), r) && m % 4 == 0) {
      return ParamMonomial(CycloCoeff::zeta(m, m / 4) * CycloCoeff(m, r), e);
    }
  } else {
    // A root of unity zeta^j has square root zeta^(j/2) when j is even.
    const auto& f = CycloField::get(m);
    for (long j = 0; j < m; ++j) {
      if (coeff_ == CycloCoeff(m, f.zeta_power(j)) && j % 2 == 0) {
        return ParamMonomial(CycloCoeff::zeta(m, j / 2), e);
      }
    }
  }
  throw GridError("square root of " + to_string() + " is not available in the coefficient field");
}

bool operator==(const ParamMonomial& a, const ParamMonomial& b) {
  return a.exp_ == b.exp_ && a.coeff_ == b.coeff_;
}

std::string ParamMonomial::to_string() const {
  std::string exp = format_qpow(exp_);
  if (exp.empty()) return coeff_.to_string();
  if (coeff_.is_one()) return exp;
  if (coeff_ == CycloCoeff(coeff_.cyclotomic_order(), mpq_class(-1))) return "-" + exp;
  return coeff_.to_string() + "*" + exp;
}

std::string format_qpow(const QRational& e) {
  if (e.is_zero()) return "";
  if (e == QRational(1)) return "q";
  if (e.is_integer()) return "q^" + e.to_string();
  return "q^(" + e.to_string() + ")";
}

GridTerm to_grid(const ParamMonomial& p, const Ring& ring) {
  if (p.coeff().is_rational()) {
    return GridTerm{to_ticks(p.exponent(), ring.grid_denominator),
                    CycloCoeff(ring.cyclotomic_order, p.coeff().rational_part())};
  }
  if (ring.cyclotomic_order % p.cyclotomic_order() != 0) {
    throw InvalidSpecializationError("coefficient " + p.coeff().to_string() +
                                     " needs cyclotomic order " + std::to_string(p.cyclotomic_order()) +
                                     ", not available in order " + std::to_string(ring.cyclotomic_order));
  }
  return GridTerm{to_ticks(p.exponent(), ring.grid_denominator), p.coeff().promoted(ring.cyclotomic_order)};
}

}  // namespace qseries
