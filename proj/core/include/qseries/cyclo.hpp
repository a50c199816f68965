#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace qseries {

// Q[x]/Phi_m(x) for the small orders the engine supports. Elements are dense
// vectors of length phi(m) in the power basis 1, zeta, ..., zeta^(phi-1).
class CycloField {
 public:
  // Throws InvalidSpecializationError for m outside {1,2,3,4,6,8,12}.
  static const CycloField& get(int m);
  static bool supported(int m);

  int order() const { return m_; }
  int degree() const { return phi_; }

  // out = a * b (all spans of length degree()); out must not alias a or b.
  void mul(const mpq_class* a, const mpq_class* b, mpq_class* out) const;
  // out += a * b.
  void mul_add(const mpq_class* a, const mpq_class* b, mpq_class* out) const;
  // out -= a * b.
  void mul_sub(const mpq_class* a, const mpq_class* b, mpq_class* out) const;

  // zeta^j reduced, for any integer j.
  const std::vector<mpq_class>& zeta_power(long j) const;

 private:
  explicit CycloField(int m);

  int m_;
  int phi_;
  // x^k mod Phi_m for k in [0, 2*phi-1).
  std::vector<std::vector<mpq_class>> reduce_;
  std::vector<std::vector<mpq_class>> zeta_;
};

// An element of Q(zeta_m).
class CycloCoeff {
 public:
  CycloCoeff() : CycloCoeff(1, mpq_class(0)) {}
  CycloCoeff(int m, const mpq_class& rational);
  CycloCoeff(int m, std::vector<mpq_class> coeffs);

  static CycloCoeff rational(const mpq_class& r, int m = 1) { return CycloCoeff(m, r); }
  // zeta_m^j.
  static CycloCoeff zeta(int m, long j = 1);

  int cyclotomic_order() const { return m_; }
  const std::vector<mpq_class>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  const mpq_class& rational_part() const { return c_[0]; }

  // Re-express in Q(zeta_m) for a multiple m of the current order.
  CycloCoeff promoted(int m) const;

  CycloCoeff operator-() const;
  friend CycloCoeff operator+(const CycloCoeff& a, const CycloCoeff& b);
  friend CycloCoeff operator-(const CycloCoeff& a, const CycloCoeff& b);
  friend CycloCoeff operator*(const CycloCoeff& a, const CycloCoeff& b);
  friend CycloCoeff operator/(const CycloCoeff& a, const CycloCoeff& b);
  CycloCoeff inverse() const;
  CycloCoeff pow(long k) const;

  // Equality after promotion to a common field.
  friend bool operator==(const CycloCoeff& a, const CycloCoeff& b);

  // "3/2", or "(1 - zeta + 1/2*zeta^2)" when irrational.
  std::string to_string() const;

 private:
  int m_;
  std::vector<mpq_class> c_;
};

// Inverse of a length-phi element; throws NotAUnitError when zero.
void cyclo_inverse(const CycloField& f, const mpq_class* a, mpq_class* out);

int common_cyclotomic_order(int m1, int m2);

}  // namespace qseries
