#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qseries/laurent.hpp"
#include "qseries/monomial.hpp"

namespace qseries {

enum class Sign { Plus, Minus };

inline int sign_value(Sign s) { return s == Sign::Plus ? 1 : -1; }

// Argument, base and length of one Pochhammer symbol (x; B)_n. A missing
// length means n = infinity. The base is a monomial c*q^k with k > 0 so that
// q -> -q and q -> i*q substitutions reuse the same machinery.
struct PochSpec {
  ParamMonomial argument;
  ParamMonomial base = ParamMonomial::q(QRational(1));
  std::optional<std::int64_t> length;
};

// A product of Pochhammer symbols, their reciprocals and one monomial,
// evaluated in a single pass. The exact valuation of the product is known
// before any multiplication, so the starting precision is chosen to land the
// result exactly on the context order.
class QProduct {
 public:
  QProduct() = default;
  explicit QProduct(ParamMonomial base) : base_(std::move(base)) {}

  QProduct& num(const ParamMonomial& x, std::int64_t n) { return add(x, base_, n, false); }
  QProduct& num(const ParamMonomial& x, const ParamMonomial& base, std::int64_t n) {
    return add(x, base, n, false);
  }
  QProduct& den(const ParamMonomial& x, std::int64_t n) { return add(x, base_, n, true); }
  QProduct& den(const ParamMonomial& x, const ParamMonomial& base, std::int64_t n) {
    return add(x, base, n, true);
  }
  QProduct& num_inf(const ParamMonomial& x) { return add(x, base_, std::nullopt, false); }
  QProduct& num_inf(const ParamMonomial& x, const ParamMonomial& base) {
    return add(x, base, std::nullopt, false);
  }
  QProduct& den_inf(const ParamMonomial& x) { return add(x, base_, std::nullopt, true); }
  QProduct& den_inf(const ParamMonomial& x, const ParamMonomial& base) {
    return add(x, base, std::nullopt, true);
  }
  QProduct& num(const PochSpec& p) { return add(p.argument, p.base, p.length, false); }
  QProduct& den(const PochSpec& p) { return add(p.argument, p.base, p.length, true); }
  // Multiplies by a monomial factor.
  QProduct& times(const ParamMonomial& m);
  // Multiplies by (t0 + t1), or divides when in_denominator.
  QProduct& binomial(const ParamMonomial& t0, const ParamMonomial& t1, bool in_denominator = false);

  // Throws NotAUnitError naming the factor if a denominator factor vanishes.
  LaurentSeries eval(const SeriesContext& ctx) const;

 private:
  struct Item {
    ParamMonomial x;
    ParamMonomial base;
    std::optional<std::int64_t> n;
    bool den;
  };
  struct Binomial {
    ParamMonomial t0;
    ParamMonomial t1;
    bool den;
  };
  QProduct& add(const ParamMonomial& x, const ParamMonomial& base, std::optional<std::int64_t> n,
                bool den);

  ParamMonomial base_ = ParamMonomial::q(QRational(1));
  std::vector<Item> items_;
  std::vector<Binomial> binomials_;
  ParamMonomial scalar_;
};

LaurentSeries qpoch(const PochSpec& spec, const SeriesContext& ctx);
LaurentSeries qpoch(const ParamMonomial& x, const ParamMonomial& base, std::int64_t n,
                    const SeriesContext& ctx);
LaurentSeries qpoch_inf(const ParamMonomial& x, const ParamMonomial& base, const SeriesContext& ctx);

// Checks (q^-n;q)_j = (q;q)_n q^(j(j-1)/2) / ((q;q)_(n-j) (-q^n)^j).
Comparison qpoch_ratio_identity_check(std::int64_t n, std::int64_t j, const SeriesContext& ctx);

// (sign q^s, sign q^(2r-s), q^(2r); q^(2r))_inf. A vanishing factor gives zero.
LaurentSeries theta_product(const QRational& s, const QRational& r, Sign sign, const SeriesContext& ctx);

// sum over all integers n of sign^n q^(r n^2 + s n). Throws DivergentError for r <= 0.
LaurentSeries theta_series(const QRational& r, const QRational& s, Sign sign, const SeriesContext& ctx);

// sum_{n>=0} sign^n q^(r n^2 + s n) - sum_{n>=1} sign^n q^(r n^2 - s n).
LaurentSeries false_theta_series(const QRational& r, const QRational& s, Sign sign,
                                 const SeriesContext& ctx);

// The same false theta series through sum_{n>=0} q^(rn^2+sn) (1 - q^((2n+1)(r-s)))
// for sign +; only meaningful for s < r. Kept as an independent check.
LaurentSeries false_theta_factored(const QRational& r, const QRational& s, const SeriesContext& ctx);

}  // namespace qseries
