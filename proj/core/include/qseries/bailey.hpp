#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qseries/hypergeom.hpp"
#include "qseries/laurent.hpp"
#include "qseries/monomial.hpp"

namespace qseries {

using Assignment = std::map<std::string, ParamMonomial>;

std::string format_assignment(const Assignment& a);

// The variable a formula is written in, as a monomial in the series variable:
// x = c*q^k together with the branch of sqrt(x) to use. The default is x = q.
// Substitutions such as q -> q^2 or q -> -q become a different Variable, so
// no series ever has to be re-expanded.
struct Variable {
  ParamMonomial x = ParamMonomial::q(QRational(1));
  ParamMonomial sqrt_x = ParamMonomial::q(QRational(1, 2));

  static Variable power(std::int64_t k);  // q^k with sqrt q^(k/2)
  // x^e for integral or half-integral e; other fractions need c = 1.
  ParamMonomial pow(const QRational& e) const;
};

// A Bailey pair relative to a in the variable x:
//   beta_n = sum_{j=0}^{n} alpha_j / ((x;x)_{n-j} (a x;x)_{n+j}).
// Instances hold incremental term state; use one instance per thread.
class BaileyPair {
 public:
  using SeriesFn = std::function<LaurentSeries(std::int64_t, const SeriesContext&)>;

  BaileyPair(std::string id, ParamMonomial relative, Variable var, Assignment params, SeriesFn alpha,
             SeriesFn beta, int modulus, std::vector<int> vanishing_residues);

  const std::string& id() const { return id_; }
  const ParamMonomial& relative() const { return relative_; }
  const Variable& variable() const { return var_; }
  const Assignment& params() const { return params_; }
  // alpha_n vanishes identically for n mod modulus() in vanishing_residues().
  int modulus() const { return modulus_; }
  const std::vector<int>& vanishing_residues() const { return vanishing_; }

  LaurentSeries alpha(std::int64_t n, const SeriesContext& ctx) const { return alpha_(n, ctx); }
  LaurentSeries beta(std::int64_t n, const SeriesContext& ctx) const { return beta_(n, ctx); }

 private:
  std::string id_;
  ParamMonomial relative_;
  Variable var_;
  Assignment params_;
  SeriesFn alpha_;
  SeriesFn beta_;
  int modulus_;
  std::vector<int> vanishing_;
};

// A catalog entry: how to build the pair from its free parameters.
struct PairDef {
  std::string id;
  std::string family;       // short description of where the pair sits
  std::string relative;     // "a" when free, otherwise the fixed value, e.g. "q^2"
  std::vector<std::string> params;
  std::string constraints;  // validity notes beyond "every denominator is a unit"
  std::function<std::unique_ptr<BaileyPair>(const Assignment&, const Variable&)> build;
  // A valid random specialization: positive q-exponents, small rational
  // coefficients chosen so that no denominator can vanish.
  std::function<Assignment(std::mt19937_64&)> sample;

  std::unique_ptr<BaileyPair> make(const Assignment& spec, const Variable& var = Variable{}) const;
};

const std::vector<PairDef>& pair_catalog();
// Throws UnknownIdError.
const PairDef& find_pair(const std::string& id);

struct PairCheckRow {
  std::int64_t n = 0;
  bool pass = false;
  Comparison cmp;
  std::string error;
};

struct PairCheckReport {
  std::string id;
  Assignment spec;
  QRational order{0};
  bool pass = false;
  std::string error;  // set when the pair could not be evaluated at all
  std::vector<PairCheckRow> rows;
};

// Compares beta_n with the defining sum for n = 0..n_max. A vanishing
// denominator is reported with the parameter values that caused it.
PairCheckReport check_pair(const BaileyPair& p, std::int64_t n_max, const SeriesContext& ctx);

// y, z of the transform; nullopt means the parameter is sent to infinity.
// With n set, the terminating form is used (both y and z required).
struct TransformSpec {
  std::optional<ParamMonomial> y;
  std::optional<ParamMonomial> z;
  std::optional<std::int64_t> n;
};

SidePair bailey_transform_sides(const BaileyPair& p, const TransformSpec& t, const SeriesContext& ctx,
                                const SumPolicy& policy = {});

// y = -sqrt(aq), z = sqrt(aq):
//   sum (aq;q^2)_n (-1)^n beta_n = sum (-1)^n alpha_n / ((aq^2;q^2)_inf (-1;q)_inf).
SidePair spec_aq(const BaileyPair& p, const SeriesContext& ctx, const SumPolicy& policy = {});
// y = q sqrt(a), z -> inf. sqrt(a) defaults to a.sqrt() and can be given
// explicitly to pick a branch.
SidePair spec_false_theta(const BaileyPair& p, const SeriesContext& ctx,
                          const std::optional<ParamMonomial>& sqrt_a = std::nullopt,
                          const SumPolicy& policy = {});
// y, z -> inf: sum a^n q^(n^2) beta_n = sum a^n q^(n^2) alpha_n / (aq;q)_inf.
SidePair spec_yz_inf(const BaileyPair& p, const SeriesContext& ctx, const SumPolicy& policy = {});
// z -> inf, y = -sqrt(aq), then a -> a^2, q -> q^2. The pair supplies the
// squared quantities; the square roots of its a and x are used as a and q.
SidePair spec_squared(const BaileyPair& p, const SeriesContext& ctx,
                      const std::optional<ParamMonomial>& sqrt_a = std::nullopt, const SumPolicy& policy = {});

// Random assignment helper shared with the identity registry: one monomial
// per name, exponents drawn from the given list, coefficients +-p^(+-1) with
// a distinct prime p per name so no product of them can equal 1.
Assignment random_assignment(const std::vector<std::string>& names, std::mt19937_64& rng,
                             const std::vector<QRational>& exponents);

}  // namespace qseries
