#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qseries/laurent.hpp"
#include "qseries/monomial.hpp"
#include "qseries/qproducts.hpp"

namespace qseries {

struct SumPolicy {
  int consecutive_high_valuation = 4;
  std::int64_t hard_cap = 10000;
};

// n -> term_n. Terms are requested with the context of the surrounding sum
// and may be computed incrementally, so implementations are stateful.
class TermGenerator {
 public:
  virtual ~TermGenerator() = default;
  virtual LaurentSeries term(std::int64_t n, const SeriesContext& ctx) = 0;
  // Inclusive index range outside of which every term vanishes, if known.
  virtual std::optional<std::pair<std::int64_t, std::int64_t>> range() const { return std::nullopt; }
};

class FunctionTerms : public TermGenerator {
 public:
  using Fn = std::function<LaurentSeries(std::int64_t, const SeriesContext&)>;
  explicit FunctionTerms(Fn fn, std::optional<std::pair<std::int64_t, std::int64_t>> range = std::nullopt)
      : fn_(std::move(fn)), range_(range) {}
  LaurentSeries term(std::int64_t n, const SeriesContext& ctx) override { return fn_(n, ctx); }
  std::optional<std::pair<std::int64_t, std::int64_t>> range() const override { return range_; }

 private:
  Fn fn_;
  std::optional<std::pair<std::int64_t, std::int64_t>> range_;
};

// Hypergeometric-type terms assembled from Pochhammer symbols whose lengths
// are affine in n, powers z^n, quadratic q-powers and per-n extras. Moving
// from n to n +/- 1 costs a handful of exact two-term multiplications, so
// summing N terms is O(N * length) rather than O(N^2 * length).
class TermBuilder : public TermGenerator {
 public:
  explicit TermBuilder(ParamMonomial base = ParamMonomial::q(QRational(1)));

  const ParamMonomial& base() const { return base_; }

  // (x; B)_{slope*n + offset}; B defaults to the builder base.
  TermBuilder& num(const ParamMonomial& x, std::int64_t slope = 1, std::int64_t offset = 0);
  TermBuilder& num(const ParamMonomial& x, const ParamMonomial& base, std::int64_t slope, std::int64_t offset);
  TermBuilder& den(const ParamMonomial& x, std::int64_t slope = 1, std::int64_t offset = 0);
  TermBuilder& den(const ParamMonomial& x, const ParamMonomial& base, std::int64_t slope, std::int64_t offset);
  // z^n.
  TermBuilder& power(const ParamMonomial& z);
  // B^(A n^2 + C n) with B the builder base (or an explicit one).
  TermBuilder& quadratic(const QRational& a, const QRational& c);
  TermBuilder& quadratic(const QRational& a, const QRational& c, const ParamMonomial& base);
  // Constant factors.
  TermBuilder& times(const ParamMonomial& m);
  TermBuilder& times_binomial(const ParamMonomial& t0, const ParamMonomial& t1, bool in_denominator = false);
  // (1 - a B^(2n)) (a; B)_n / (1 - a), written so that a = 1 is allowed.
  TermBuilder& well_poised(const ParamMonomial& a);
  TermBuilder& well_poised(const ParamMonomial& a, const ParamMonomial& base);
  // Per-n two-term factor t0(n) + t1(n); nullopt means 1.
  using BinomialFn = std::function<std::optional<std::pair<ParamMonomial, ParamMonomial>>(std::int64_t)>;
  TermBuilder& per_n(BinomialFn f, bool in_denominator = false);
  // Per-n series factor, evaluated at the order it is asked for.
  using Hook = std::function<LaurentSeries(std::int64_t, const SeriesContext&)>;
  TermBuilder& hook(Hook h);
  // Declares that terms vanish outside [lo, hi].
  TermBuilder& restrict_to(std::int64_t lo, std::int64_t hi);

  LaurentSeries term(std::int64_t n, const SeriesContext& ctx) override;
  std::optional<std::pair<std::int64_t, std::int64_t>> range() const override { return range_; }

 private:
  struct Poch {
    ParamMonomial x;
    ParamMonomial base;
    std::int64_t slope;
    std::int64_t offset;
    bool den;
  };
  struct Quad {
    QRational a;
    QRational c;
    ParamMonomial base;
  };
  struct ConstBinomial {
    ParamMonomial t0, t1;
    bool den;
  };
  struct PerN {
    BinomialFn f;
    bool den;
  };

  void reset(const SeriesContext& ctx);
  void step(int dir);
  void apply_poch_factor(const Poch& p, std::int64_t i, bool divide);
  void apply_wp_step(int dir);
  LaurentSeries emit(std::int64_t n);

  ParamMonomial base_;
  std::vector<Poch> pochs_;
  std::vector<ParamMonomial> powers_;
  std::vector<Quad> quads_;
  std::vector<ParamMonomial> consts_;
  std::vector<ConstBinomial> const_binomials_;
  std::vector<std::pair<ParamMonomial, ParamMonomial>> wps_;  // (a, base)
  std::vector<PerN> per_n_;
  std::vector<Hook> hooks_;
  std::optional<std::pair<std::int64_t, std::int64_t>> range_;

  // Incremental state at index cur_.
  bool ready_ = false;
  Ring ring_{};
  std::int64_t order_ = 0;
  std::int64_t extra_ = 0;
  std::int64_t cur_ = 0;
  LaurentSeries state_;
};

LaurentSeries sum_unilateral(TermGenerator& g, const SeriesContext& ctx, const SumPolicy& policy = {});
// n = start, start+1, ... (or the declared range intersected with that).
LaurentSeries sum_from(TermGenerator& g, std::int64_t start, const SeriesContext& ctx,
                       const SumPolicy& policy = {});
// sum over n >= 0 plus sum over n <= -1.
LaurentSeries sum_bilateral(TermGenerator& g, const SeriesContext& ctx, const SumPolicy& policy = {});
// Exact finite sum over lo..hi inclusive.
LaurentSeries sum_range(TermGenerator& g, std::int64_t lo, std::int64_t hi, const SeriesContext& ctx);

struct SidePair {
  LaurentSeries lhs;
  LaurentSeries rhs;
};

using SidesFn = std::function<SidePair(const SeriesContext&)>;

// Evaluates both sides with a working order a little above the target and
// raises it while either side comes back short, then compares below the
// target. Throws InsufficientPrecisionError if the sides never reach it.
Comparison compare_sides(const SidesFn& make, const SeriesContext& target, int attempts = 5);

// K(a,b,c,d,e,u,v;Q) with Q = base: the rational prefactor of the
// ten-parameter bilateral summation. Throws SingularKError naming the
// vanishing denominator factor.
LaurentSeries chu_K(const ParamMonomial& a, const ParamMonomial& b, const ParamMonomial& c,
                    const ParamMonomial& d, const ParamMonomial& e, const ParamMonomial& u,
                    const ParamMonomial& v, const ParamMonomial& base, const SeriesContext& ctx);

// Both sides of the ten-parameter very-well-poised bilateral summation. The
// left side is the pair of one-sided sums over n >= 0 and n >= 1.
SidePair chu_10psi10_sides(const ParamMonomial& a, const ParamMonomial& b, const ParamMonomial& c,
                           const ParamMonomial& d, const ParamMonomial& e, const ParamMonomial& u,
                           const ParamMonomial& v, const SeriesContext& ctx, const SumPolicy& policy = {});
// The same bilateral sum as one generator over all integers, using
// negative-index Pochhammer symbols. Independent of the split form.
LaurentSeries chu_10psi10_bilateral(const ParamMonomial& a, const ParamMonomial& b, const ParamMonomial& c,
                                    const ParamMonomial& d, const ParamMonomial& e, const ParamMonomial& u,
                                    const ParamMonomial& v, const SeriesContext& ctx,
                                    const SumPolicy& policy = {});
// The b = a/c case with its factored prefactor.
SidePair chu_corollary_b_ac(const ParamMonomial& a, const ParamMonomial& c, const ParamMonomial& d,
                            const ParamMonomial& e, const ParamMonomial& u, const ParamMonomial& v,
                            const SeriesContext& ctx, const SumPolicy& policy = {});

SidePair bailey_6psi6_sides(const ParamMonomial& a, const ParamMonomial& b, const ParamMonomial& c,
                            const ParamMonomial& d, const ParamMonomial& e, const SeriesContext& ctx,
                            const SumPolicy& policy = {});
// Terms of the bilateral 6psi6 sum, for term-by-term comparisons.
std::unique_ptr<TermGenerator> bailey_6psi6_terms(const ParamMonomial& a, const ParamMonomial& b,
                                                  const ParamMonomial& c, const ParamMonomial& d,
                                                  const ParamMonomial& e);
SidePair jackson_6phi5_sides(const ParamMonomial& a, const ParamMonomial& b, const ParamMonomial& c,
                             const ParamMonomial& d, const SeriesContext& ctx, const SumPolicy& policy = {});
std::unique_ptr<TermGenerator> jackson_6phi5_terms(const ParamMonomial& a, const ParamMonomial& b,
                                                   const ParamMonomial& c, const ParamMonomial& d);
SidePair q_gauss_andrews_sides(const ParamMonomial& a, const ParamMonomial& b, const SeriesContext& ctx,
                               const SumPolicy& policy = {});
SidePair q_gauss_heine_sides(const ParamMonomial& a, const ParamMonomial& c, const SeriesContext& ctx,
                             const SumPolicy& policy = {});
SidePair q_pfaff_saalschutz_sides(const ParamMonomial& a, const ParamMonomial& y, const ParamMonomial& z,
                                  std::int64_t n, const SeriesContext& ctx);
Comparison q_pfaff_saalschutz_check(const ParamMonomial& a, const ParamMonomial& y, const ParamMonomial& z,
                                    std::int64_t n, const SeriesContext& ctx);

}  // namespace qseries
