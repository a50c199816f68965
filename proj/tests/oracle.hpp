#pragma once

// Naive reference arithmetic for the tests: sparse Laurent polynomials in q
// with rational coefficients and half-integer exponents stored as ticks of
// 1/2. Nothing here touches the engine, so agreement is meaningful.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <vector>

#include "qseries/laurent.hpp"

namespace oracle {

struct Poly {
  std::map<std::int64_t, mpq_class> c;  // tick (exponent * 2) -> coefficient

  static Poly one() { return monomial(1, 0); }
  static Poly monomial(const mpq_class& a, std::int64_t tick) {
    Poly p;
    if (a != 0) p.c[tick] = a;
    return p;
  }
  // 1 - a q^(tick/2)
  static Poly one_minus(const mpq_class& a, std::int64_t tick) {
    Poly p = one();
    p.add(-a, tick);
    return p;
  }

  void add(const mpq_class& a, std::int64_t tick) {
    mpq_class& v = c[tick];
    v += a;
    if (v == 0) c.erase(tick);
  }
  Poly operator+(const Poly& o) const {
    Poly r = *this;
    for (const auto& [t, a] : o.c) r.add(a, t);
    return r;
  }
  Poly operator-(const Poly& o) const {
    Poly r = *this;
    for (const auto& [t, a] : o.c) r.add(-a, t);
    return r;
  }
  Poly mul(const Poly& o, std::int64_t below = INT64_MAX) const {
    Poly r;
    for (const auto& [t1, a1] : c)
      for (const auto& [t2, a2] : o.c)
        if (t1 + t2 < below) r.add(a1 * a2, t1 + t2);
    return r;
  }
  Poly truncated(std::int64_t below) const {
    Poly r;
    for (const auto& [t, a] : c)
      if (t < below) r.c[t] = a;
    return r;
  }
  bool operator==(const Poly& o) const { return c == o.c; }
};

// Power series inverse of p (p must start with a nonzero constant), ticks < below.
inline Poly inverse(const Poly& p, std::int64_t below) {
  mpq_class c0 = p.c.at(0);
  Poly r;
  std::vector<mpq_class> out;
  for (std::int64_t t = 0; t < below; ++t) {
    mpq_class s = t == 0 ? mpq_class(1) : mpq_class(0);
    for (const auto& [k, a] : p.c) {
      if (k == 0) continue;
      if (k > t) break;
      auto it = r.c.find(t - k);
      if (it != r.c.end()) s -= a * it->second;
    }
    s /= c0;
    if (s != 0) r.c[t] = s;
  }
  return r;
}

// The engine series (rational coefficients, grid dividing 2) as ticks of 1/2
// below `below`.
inline Poly from_series(const qseries::LaurentSeries& s, std::int64_t below) {
  Poly r;
  const int d = s.ring().grid_denominator;
  for (const auto& t : s.terms()) {
    std::int64_t tick = t.tick * (2 / d);
    if (tick < below) r.c[tick] = t.coeff.rational_part();
  }
  return r;
}

// Number of partitions of k with every part in `allowed`, k < n.
inline std::vector<mpz_class> restricted_partitions(int n, bool (*allowed)(int)) {
  std::vector<mpz_class> p(n, 0);
  p[0] = 1;
  for (int part = 1; part < n; ++part) {
    if (!allowed(part)) continue;
    for (int k = part; k < n; ++k) p[k] += p[k - part];
  }
  return p;
}

}  // namespace oracle
