#pragma once

// Seeded monomial specializations for the summation formulas. Coefficients
// are +-p^(+-1) for distinct primes p, so no ratio or product of parameters
// that appears in a denominator can collapse to a vanishing factor.

#include <algorithm>
#include <array>
#include <random>
#include <vector>

#include "qseries/monomial.hpp"

namespace fixtures {

using qseries::ParamMonomial;
using qseries::QRational;

inline std::vector<ParamMonomial> monomials(std::mt19937_64& rng, const std::vector<QRational>& exponents) {
  std::array<long, 12> primes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  std::shuffle(primes.begin(), primes.end(), rng);
  std::vector<ParamMonomial> out;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    mpq_class c = rng() % 2 ? mpq_class(primes[i]) : mpq_class(1, primes[i]);
    if (rng() % 2) c = -c;
    out.emplace_back(c, exponents[i]);
  }
  return out;
}

inline QRational half(long n) { return QRational(n, 2); }

// a, b, c, d, e, u, v with a^2/(q bcde) of positive valuation and the
// negative-index half convergent as well.
inline std::vector<ParamMonomial> chu(std::mt19937_64& rng) {
  return monomials(rng, {4, 1, 1, 1, 1, half(1), 1});
}
// a, c, d, e, u, v for the b = a/c corollary.
inline std::vector<ParamMonomial> chu_b_ac(std::mt19937_64& rng) {
  return monomials(rng, {4, 2, 1, 1, half(1), 1});
}
// a, b, c, d, e with q a^2/bcde of valuation 1.
inline std::vector<ParamMonomial> six_psi_six(std::mt19937_64& rng) { return monomials(rng, {2, 1, 1, 1, 1}); }
// a, b, c, d with aq/bcd of valuation 3/2.
inline std::vector<ParamMonomial> six_phi_five(std::mt19937_64& rng) { return monomials(rng, {1, 0, 0, half(1)}); }
// a, b.
inline std::vector<ParamMonomial> andrews(std::mt19937_64& rng) { return monomials(rng, {half(1), 1}); }
// a, c.
inline std::vector<ParamMonomial> heine(std::mt19937_64& rng) { return monomials(rng, {0, 1}); }
// a, y, z.
inline std::vector<ParamMonomial> saalschutz(std::mt19937_64& rng) { return monomials(rng, {1, half(1), 0}); }

}  // namespace fixtures
