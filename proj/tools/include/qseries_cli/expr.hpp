#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "qseries/error.hpp"
#include "qseries/laurent.hpp"
#include "qseries/qproducts.hpp"

namespace qseries::cli {

// Grammar:
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | factor
//   factor := atom ['^' int]
//   atom   := rational | 'q' ['^' rational] | 'zeta(' int [',' int] ')'
//           | 'qp(' expr ';' expr ';' (int | 'inf') ')'
//           | ('theta' | 'ftheta') '(' rational ',' rational ',' ('+' | '-') ')'
//           | '(' expr ')'
// A rational literal is digits or digits/digits with no spaces around the
// slash; '-' directly before a literal is folded into it.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Number, QPow, Zeta, Poch, Theta, FalseTheta, Add, Sub, Mul, Div, Pow, Neg };

  Kind kind = Kind::Number;
  mpq_class number;               // Number
  QRational exponent;             // QPow; (r, s) of theta in r_s
  QRational s;                    // second theta parameter
  Sign sign = Sign::Plus;         // theta
  int zeta_m = 1;                 // Zeta: zeta_m^zeta_j
  long zeta_j = 1;
  std::optional<std::int64_t> length;  // Poch; nullopt is infinity
  std::int64_t power = 1;         // Pow
  std::vector<ExprPtr> args;      // operands; Poch: argument, base
};

bool operator==(const Expr& a, const Expr& b);

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position);
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

ExprPtr parse(std::string_view text);
std::string print(const Expr& e);

// The expression as a monomial c*q^e, if it is one.
std::optional<ParamMonomial> as_monomial(const Expr& e);
// Parses name=value with value a monomial expression, e.g. "z=-1*q^1".
std::pair<std::string, ParamMonomial> parse_assignment(std::string_view text);

// Smallest cyclotomic order covering every zeta in the expression.
int needed_cyclotomic_order(const Expr& e);

struct Expansion {
  LaurentSeries series;
  // True when the expression is a Laurent polynomial of degree below the
  // order, so the printed series is the whole value.
  bool exact = false;
};

// Evaluates with growing working precision until the result is known to the
// context order.
Expansion expand(const Expr& e, const SeriesContext& ctx);

}  // namespace qseries::cli
