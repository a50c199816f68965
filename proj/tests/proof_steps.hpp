#pragma once

// Polynomial identities in q^n and q^r used when building the catalog's alpha
// closed forms. Each one is checked for 0 <= n <= 8 and |r| <= 8 twice: by
// the engine's series arithmetic, and by expanding both sides naively.
// Shared by the unit tests and the acceptance run, so no gtest here.

#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "oracle.hpp"
#include "qseries/hypergeom.hpp"
#include "qseries/laurent.hpp"
#include "qseries/qproducts.hpp"

namespace proof_steps {

using qseries::LaurentSeries;
using qseries::SeriesContext;
using P = qseries::ParamMonomial;
using R = qseries::QRational;
using Failures = std::vector<std::string>;

// c q^e as signed terms
struct Term {
  long c;
  std::int64_t e;
};
using Terms = std::vector<Term>;

inline Terms mono(std::int64_t e, long c = 1) { return {{c, e}}; }
inline Terms one_minus(std::int64_t e) { return {{1, 0}, {-1, e}}; }
inline Terms mul(const Terms& a, const Terms& b) {
  Terms r;
  for (auto x : a)
    for (auto y : b) r.push_back({x.c * y.c, x.e + y.e});
  return r;
}
inline Terms sub(Terms a, const Terms& b) {
  for (auto y : b) a.push_back({-y.c, y.e});
  return a;
}

inline oracle::Poly naive(const Terms& t) {
  oracle::Poly p;
  for (auto x : t) p.add(x.c, 2 * x.e);
  return p;
}

inline const SeriesContext& ctx() {
  static const SeriesContext c(R(1200), 1);
  return c;
}
inline LaurentSeries ser(const Terms& t) {
  LaurentSeries s = LaurentSeries::zero(ctx().ring());
  for (auto x : t) s += LaurentSeries::monomial(P(mpq_class(x.c), R(x.e)), ctx());
  return s;
}

// exponents below are all even by construction; odd means a typo
inline std::int64_t half(std::int64_t twice) { return twice / 2; }

inline std::string at(const char* name, std::int64_t n, std::int64_t r) {
  std::ostringstream os;
  os << name << " n=" << n << " r=" << r;
  return os.str();
}

using Side = std::function<Terms(std::int64_t n, std::int64_t r)>;

inline void check(Failures& f, const char* name, const Side& lhs, const Side& rhs) {
  for (std::int64_t n = 0; n <= 8; ++n) {
    for (std::int64_t r = -8; r <= 8; ++r) {
      Terms l = lhs(n, r), h = rhs(n, r);
      if (!(naive(l) == naive(h))) f.push_back(at(name, n, r) + " (naive)");
      if (!equal_up_to(ser(l), ser(h), R(600)).equal) f.push_back(at(name, n, r) + " (series)");
    }
  }
}

using Factored = std::pair<Terms, Terms>;

// lhs a product of two factors, rhs a sum of such products; the engine
// multiplies the factors itself.
inline void check_factored(Failures& f, const char* name, const std::function<Factored(std::int64_t, std::int64_t)>& lhs,
                           const std::function<std::vector<Factored>(std::int64_t, std::int64_t)>& rhs) {
  for (std::int64_t n = 0; n <= 8; ++n) {
    for (std::int64_t r = -8; r <= 8; ++r) {
      auto [la, lb] = lhs(n, r);
      LaurentSeries l = ser(la) * ser(lb);
      LaurentSeries h = LaurentSeries::zero(ctx().ring());
      Terms flat;
      for (const auto& [a, b] : rhs(n, r)) {
        h += ser(a) * ser(b);
        for (auto t : mul(a, b)) flat.push_back(t);
      }
      if (!equal_up_to(l, h, R(600)).equal) f.push_back(at(name, n, r) + " (series)");
      if (!(naive(mul(la, lb)) == naive(flat))) f.push_back(at(name, n, r) + " (naive)");
    }
  }
}

// (q^-n;q)_j (q;q)_(n-j) (-q^n)^j = (q;q)_n q^(j(j-1)/2)
inline Failures negative_power_pochhammer() {
  Failures f;
  SeriesContext c(R(60), 1);
  auto poch = [](std::int64_t x, std::int64_t len) {
    oracle::Poly p = oracle::Poly::one();
    for (std::int64_t i = 0; i < len; ++i) p = p.mul(oracle::Poly::one_minus(1, 2 * (x + i)));
    return p;
  };
  for (std::int64_t n = 0; n <= 8; ++n) {
    for (std::int64_t j = 0; j <= n; ++j) {
      if (!qseries::qpoch_ratio_identity_check(n, j, c).equal) f.push_back(at("q-njeq", n, j) + " (series)");
      oracle::Poly lhs = poch(-n, j).mul(poch(1, n - j)).mul(oracle::Poly::monomial(j % 2 ? -1 : 1, 2 * n * j));
      oracle::Poly rhs = poch(1, n).mul(oracle::Poly::monomial(1, j * (j - 1)));
      if (!(lhs == rhs)) f.push_back(at("q-njeq", n, j) + " (naive)");
    }
  }
  return f;
}

// (y;q)_-r / (z;q)_-r = (q/z;q)_r z^r / ((q/y;q)_r y^r)
inline Failures negative_index_quotient() {
  Failures f;
  SeriesContext c(R(80), 2);
  const std::pair<P, P> cases[] = {{P(mpq_class(2), R(3)), P(mpq_class(-3, 5), R(1, 2))},
                                   {P(mpq_class(-7), R(0)), P(mpq_class(11), R(2))},
                                   {P(mpq_class(1, 3), R(1)), P(mpq_class(5), R(5, 2))}};
  const P q = P::q(R(1));
  auto op = [](const P& m) { return oracle::Poly::monomial(m.coeff().rational_part(), (m.exponent() * R(2)).num()); };
  for (const auto& [y, z] : cases) {
    for (std::int64_t r = 0; r <= 8; ++r) {
      const std::string where = "binneg y=" + y.to_string() + " z=" + z.to_string() + " r=" + std::to_string(r);
      auto sides = [&](const SeriesContext& k) {
        using qseries::qpoch;
        LaurentSeries lhs = qpoch(y, q, -r, k) / qpoch(z, q, -r, k);
        LaurentSeries rhs = qpoch(q / z, q, r, k) * LaurentSeries::monomial(z.pow(r), k) /
                            (qpoch(q / y, q, r, k) * LaurentSeries::monomial(y.pow(r), k));
        return qseries::SidePair{lhs, rhs};
      };
      if (!qseries::compare_sides(sides, c).equal) f.push_back(where + " (series)");

      // cross-multiplied, every factor a Laurent polynomial
      oracle::Poly a = oracle::Poly::one(), b = oracle::Poly::one();
      for (std::int64_t k = 1; k <= r; ++k) {
        a = a.mul(oracle::Poly::one() - op(z * q.pow(-k)));
        b = b.mul(oracle::Poly::one() - op(y * q.pow(-k)));
      }
      for (std::int64_t k = 0; k < r; ++k) {
        a = a.mul(oracle::Poly::one() - op(q.pow(k + 1) / y));
        b = b.mul(oracle::Poly::one() - op(q.pow(k + 1) / z));
      }
      if (!(a.mul(op(y.pow(r))) == b.mul(op(z.pow(r))))) f.push_back(where + " (naive)");
    }
  }
  return f;
}

inline Failures six_rt1() {
  Failures f;
  check_factored(
      f, "6rt1a", [](auto, auto r) { return Factored{one_minus(6 * r + 1), mono(half(9 * r * r - 11 * r))}; },
      [](auto n, auto r) {
        return std::vector{Factored{mono(half(9 * r * r - 11 * r)), one_minus(n + 3 * r + 1)},
                           Factored{mono(half(9 * r * r + r) + 1, -1), one_minus(n - 3 * r)}};
      });
  check_factored(
      f, "6rt1b", [](auto, auto r) { return Factored{one_minus(-6 * r + 1), mono(half(9 * r * r - 5 * r))}; },
      [](auto n, auto r) {
        return std::vector{Factored{mono(half(9 * r * r - 5 * r)), one_minus(n - 3 * r + 1)},
                           Factored{mono(half(9 * r * r - 17 * r) + 1, -1), one_minus(n + 3 * r)}};
      });
  return f;
}

inline Failures six_rt2() {
  Failures f;
  check(
      f, "6rt2a", [](auto, auto r) { return mul(one_minus(6 * r + 1), mono(half(9 * r * r - 11 * r))); },
      [](auto n, auto r) {
        return mul(mono(half(9 * r * r - 5 * r) - n), sub(one_minus(n + 3 * r + 1), one_minus(n - 3 * r)));
      });
  check(
      f, "6rt2b", [](auto, auto r) { return mul(one_minus(-6 * r + 1), mono(half(9 * r * r - 5 * r))); },
      [](auto n, auto r) {
        return mul(mono(half(9 * r * r - 11 * r) - n), sub(one_minus(n - 3 * r + 1), one_minus(n + 3 * r)));
      });
  return f;
}

inline Failures six_rt3() {
  Failures f;
  check_factored(
      f, "6rt3a", [](auto, auto r) { return Factored{one_minus(6 * r + 2), mono(half(9 * r * r - 7 * r))}; },
      [](auto n, auto r) {
        return std::vector{Factored{mono(half(9 * r * r - 7 * r)), one_minus(n + 3 * r + 2)},
                           Factored{mono(half(9 * r * r + 5 * r) + 2, -1), one_minus(n - 3 * r)}};
      });
  check_factored(
      f, "6rt3b", [](auto, auto r) { return Factored{one_minus(-6 * r + 2), mono(half(9 * r * r - 7 * r))}; },
      [](auto n, auto r) {
        return std::vector{Factored{mono(half(9 * r * r - 7 * r)), one_minus(n - 3 * r + 2)},
                           Factored{mono(half(9 * r * r - 19 * r) + 2, -1), one_minus(n + 3 * r)}};
      });
  return f;
}

inline Failures six_rt4() {
  Failures f;
  check(
      f, "6rt4a", [](auto, auto r) { return mul(one_minus(6 * r + 2), mono(half(9 * r * r - 7 * r))); },
      [](auto n, auto r) {
        return mul(mono(half(9 * r * r - r) - n), sub(one_minus(n + 3 * r + 2), one_minus(n - 3 * r)));
      });
  check(
      f, "6rt4b", [](auto, auto r) { return mul(one_minus(-6 * r + 2), mono(half(9 * r * r - 7 * r))); },
      [](auto n, auto r) {
        return mul(mono(half(9 * r * r - 13 * r) - n), sub(one_minus(n - 3 * r + 2), one_minus(n + 3 * r)));
      });
  return f;
}

inline Failures modulus_two() {
  Failures f;
  check_factored(
      f, "t10eqs a", [](auto, auto r) { return Factored{one_minus(4 * r + 1), mono(2 * r * r - 2 * r)}; },
      [](auto n, auto r) {
        return std::vector{Factored{mono(2 * r * r - 2 * r), one_minus(n + 2 * r + 1)},
                           Factored{mono(2 * r * r + 2 * r + 1, -1), one_minus(n - 2 * r)}};
      });
  check_factored(
      f, "t10eqs b", [](auto, auto r) { return Factored{one_minus(4 * r - 1), mono(2 * r * r - 4 * r + 1)}; },
      [](auto n, auto r) {
        return std::vector{Factored{mono(2 * r * r - 4 * r + 1), one_minus(n + 2 * r)},
                           Factored{mono(2 * r * r, -1), one_minus(n - 2 * r + 1)}};
      });
  return f;
}

inline Failures modulus_two_second_form() {
  Failures f;
  check(
      f, "t10eqs2 a", [](auto, auto r) { return mul(one_minus(4 * r + 1), mono(2 * r * r - 2 * r)); },
      [](auto n, auto r) { return mul(mono(2 * r * r - n), sub(one_minus(n + 2 * r + 1), one_minus(n - 2 * r))); });
  check(
      f, "t10eqs2 b", [](auto, auto r) { return mul(one_minus(4 * r - 1), mono(2 * r * r - 4 * r + 1)); },
      [](auto n, auto r) {
        return mul(mono(2 * r * r - 2 * r - n), sub(one_minus(n + 2 * r), one_minus(n - 2 * r + 1)));
      });
  return f;
}

struct Step {
  const char* name;
  Failures (*run)();
};

inline const std::vector<Step>& all() {
  static const std::vector<Step> steps{{"q-njeq", negative_power_pochhammer},
                                       {"binneg", negative_index_quotient},
                                       {"6rt1", six_rt1},
                                       {"6rt2", six_rt2},
                                       {"6rt3", six_rt3},
                                       {"6rt4", six_rt4},
                                       {"t10eqs", modulus_two},
                                       {"t10eqs2", modulus_two_second_form}};
  return steps;
}

}  // namespace proof_steps
