#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qseries/cyclo.hpp"
#include "qseries/monomial.hpp"
#include "qseries/rational.hpp"

namespace qseries {

// Truncated Laurent series sum_t c_t q^(t/D) over Q(zeta_m), known exactly
// for every exponent below its order.
//
// Storage is dense from the valuation up to the order, phi(m) rationals per
// grid tick. Precision follows the usual rules: sums keep the smaller order,
// products keep min(v_a + o_b, v_b + o_a). An exactly known zero carries
// order kExact so that multiplying by it never loses precision.
class LaurentSeries {
 public:
  static constexpr std::int64_t kExact = INT64_MAX / 4;

  LaurentSeries() = default;

  static LaurentSeries zero(const Ring& ring, std::int64_t order_ticks = kExact);
  static LaurentSeries one(const Ring& ring, std::int64_t order_ticks);
  static LaurentSeries term(const GridTerm& t, const Ring& ring, std::int64_t order_ticks);
  // c * q^e truncated at the context order; off-grid exponents throw GridError.
  static LaurentSeries monomial(const ParamMonomial& p, const SeriesContext& ctx);
  static LaurentSeries constant(const mpq_class& c, const SeriesContext& ctx);
  // Sum of the given terms (repeated ticks accumulate), truncated at order.
  static LaurentSeries from_terms(const Ring& ring, const std::vector<GridTerm>& terms,
                                  std::int64_t order_ticks);

  const Ring& ring() const { return ring_; }
  bool is_zero() const { return data_.empty(); }
  // Least exponent tick with nonzero coefficient; kExact for the zero series.
  std::int64_t valuation_ticks() const { return is_zero() ? kExact : start_; }
  std::int64_t order_ticks() const { return order_; }
  // Valuation, or nothing for the zero series.
  std::optional<QRational> valuation() const;
  QRational order() const;
  bool exact() const { return order_ >= kExact; }

  CycloCoeff coeff_at(std::int64_t tick) const;
  CycloCoeff coeff(const QRational& exponent) const;
  // Nonzero terms in ascending order.
  std::vector<GridTerm> terms() const;

  friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator/(const LaurentSeries& a, const LaurentSeries& b);
  LaurentSeries operator-() const;
  LaurentSeries& operator+=(const LaurentSeries& o);
  LaurentSeries& operator*=(const LaurentSeries& o) { return *this = *this * o; }

  // Throws NotAUnitError for zero or precision-free input.
  LaurentSeries inverse() const;
  LaurentSeries pow(std::int64_t k) const;

  // In-place multiplication by exact factors. The two-term forms keep the
  // relative precision (order minus valuation) unchanged.
  void mul_monomial(const GridTerm& t);
  void mul_binomial(const GridTerm& t0, const GridTerm& t1);
  // Division by t0 + t1; NotAUnitError if it is identically zero.
  void div_binomial(const GridTerm& t0, const GridTerm& t1);
  void scale(const CycloCoeff& c);

  // Lowers the order (never raises it).
  LaurentSeries truncated(std::int64_t order_ticks) const;
  void truncate(std::int64_t order_ticks);

  // "1 + 2*q + 2*q^4 + O(q^5)"; the O-term is omitted when with_order is
  // false or the series is exact.
  std::string to_string(bool with_order = true) const;

 private:
  LaurentSeries(const Ring& ring, std::int64_t start, std::int64_t order);

  int phi() const { return CycloField::get(ring_.cyclotomic_order).degree(); }
  std::int64_t length() const { return is_zero() ? 0 : order_ - start_; }
  mpq_class* at(std::int64_t idx) { return data_.data() + idx * phi(); }
  const mpq_class* at(std::int64_t idx) const { return data_.data() + idx * phi(); }
  bool block_zero(std::int64_t idx) const;
  // Drops leading zero blocks; an all-zero series becomes the zero series.
  void normalize();
  void set_zero(std::int64_t order);

  Ring ring_{};
  std::int64_t start_ = 0;
  std::int64_t order_ = kExact;
  std::vector<mpq_class> data_;
};

// Result of comparing two series below an order.
struct Comparison {
  bool equal = true;
  QRational exponent{0};  // first differing exponent when !equal
  CycloCoeff lhs;
  CycloCoeff rhs;
};

// Throws InsufficientPrecisionError if order exceeds either operand's order.
Comparison equal_up_to(const LaurentSeries& a, const LaurentSeries& b, const QRational& order);

inline LaurentSeries add(const LaurentSeries& a, const LaurentSeries& b) { return a + b; }
inline LaurentSeries mul(const LaurentSeries& a, const LaurentSeries& b) { return a * b; }
inline LaurentSeries negate(const LaurentSeries& a) { return -a; }
inline LaurentSeries invert(const LaurentSeries& a) { return a.inverse(); }
inline LaurentSeries pow_int(const LaurentSeries& a, std::int64_t k) { return a.pow(k); }
inline LaurentSeries monomial(const ParamMonomial& p, const SeriesContext& ctx) {
  return LaurentSeries::monomial(p, ctx);
}

}  // namespace qseries
