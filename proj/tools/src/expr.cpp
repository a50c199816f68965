#include "qseries_cli/expr.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include "qseries/cyclo.hpp"

namespace qseries::cli {

namespace {

enum class Tok { Number, Ident, Sym, End };

struct Token {
  Tok kind;
  std::string text;
  mpq_class number;
  std::size_t pos;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto digits = [&](std::size_t j) {
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    return j;
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = digits(i);
      std::string text(s.substr(i, j - i));
      // digits/digits with nothing in between is one literal
      if (j + 1 < s.size() && s[j] == '/' && std::isdigit(static_cast<unsigned char>(s[j + 1]))) {
        std::size_t k = digits(j + 1);
        text = std::string(s.substr(i, k - i));
        j = k;
      }
      mpq_class v;
      if (v.set_str(text, 10) != 0 || (text.find('/') != std::string::npos && v.get_den() == 0))
        throw ParseError("bad number '" + text + "'", i);
      auto slash = text.find('/');
      if (slash != std::string::npos && mpz_class(text.substr(slash + 1)) == 0)
        throw ParseError("zero denominator in '" + text + "'", i);
      v.canonicalize();
      out.push_back({Tok::Number, text, v, i});
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), 0, i});
      i = j;
      continue;
    }
    if (std::string_view("+-*/^();,").find(c) != std::string_view::npos) {
      out.push_back({Tok::Sym, std::string(1, c), 0, i});
      ++i;
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", i);
  }
  out.push_back({Tok::End, "", 0, s.size()});
  return out;
}

ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

ExprPtr binary(Expr::Kind k, ExprPtr a, ExprPtr b) {
  Expr e;
  e.kind = k;
  e.args = {std::move(a), std::move(b)};
  return make(std::move(e));
}

std::int64_t to_i64(const mpz_class& z, std::size_t pos) {
  if (!z.fits_slong_p()) throw ParseError("integer out of range", pos);
  return z.get_si();
}

class Parser {
 public:
  explicit Parser(std::string_view s) : toks_(lex(s)) {}

  ExprPtr parse_all() {
    ExprPtr e = expr();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return e;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  const Token& next() { return toks_[i_++]; }
  bool is_sym(const char* s) const { return peek().kind == Tok::Sym && peek().text == s; }
  bool is_ident(const char* s) const { return peek().kind == Tok::Ident && peek().text == s; }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, peek().pos); }
  void expect(const char* s) {
    if (!is_sym(s)) fail(std::string("expected '") + s + "'" + (peek().kind == Tok::End ? " at end of input" : ""));
    ++i_;
  }

  ExprPtr expr() {
    ExprPtr e = term();
    while (is_sym("+") || is_sym("-")) {
      auto k = next().text == "+" ? Expr::Kind::Add : Expr::Kind::Sub;
      e = binary(k, e, term());
    }
    return e;
  }

  ExprPtr term() {
    ExprPtr e = unary();
    while (is_sym("*") || is_sym("/")) {
      auto k = next().text == "*" ? Expr::Kind::Mul : Expr::Kind::Div;
      e = binary(k, e, unary());
    }
    return e;
  }

  ExprPtr unary() {
    if (is_sym("-")) {
      ++i_;
      if (peek().kind == Tok::Number) return factor(true);
      Expr e;
      e.kind = Expr::Kind::Neg;
      e.args = {unary()};
      return make(std::move(e));
    }
    return factor(false);
  }

  ExprPtr factor(bool negate_literal) {
    ExprPtr base = atom(negate_literal);
    if (!is_sym("^")) return base;
    ++i_;
    Expr e;
    e.kind = Expr::Kind::Pow;
    e.power = signed_int();
    e.args = {base};
    return make(std::move(e));
  }

  std::int64_t signed_int() {
    bool paren = is_sym("(");
    if (paren) ++i_;
    bool neg = is_sym("-");
    if (neg) ++i_;
    if (peek().kind != Tok::Number || peek().number.get_den() != 1) fail("expected an integer");
    std::int64_t v = to_i64(peek().number.get_num(), peek().pos);
    ++i_;
    if (paren) expect(")");
    return neg ? -v : v;
  }

  QRational signed_rational() {
    bool paren = is_sym("(");
    if (paren) ++i_;
    bool neg = is_sym("-");
    if (neg) ++i_;
    if (peek().kind != Tok::Number) fail("expected a rational number");
    const Token& t = next();
    QRational v(to_i64(t.number.get_num(), t.pos), to_i64(t.number.get_den(), t.pos));
    if (paren) expect(")");
    return neg ? -v : v;
  }

  ExprPtr atom(bool negate_literal) {
    const Token& t = peek();
    if (t.kind == Tok::Number) {
      ++i_;
      Expr e;
      e.number = negate_literal ? mpq_class(-t.number) : t.number;
      return make(std::move(e));
    }
    if (is_sym("(")) {
      ++i_;
      ExprPtr e = expr();
      expect(")");
      return e;
    }
    if (t.kind != Tok::Ident) fail(t.kind == Tok::End ? "unexpected end of input" : "unexpected '" + t.text + "'");
    if (t.text == "q") {
      ++i_;
      Expr e;
      e.kind = Expr::Kind::QPow;
      e.exponent = QRational(1);
      if (is_sym("^")) {
        ++i_;
        e.exponent = signed_rational();
      }
      return make(std::move(e));
    }
    if (t.text == "zeta") {
      ++i_;
      expect("(");
      Expr e;
      e.kind = Expr::Kind::Zeta;
      std::size_t at = peek().pos;
      std::int64_t m = signed_int();
      if (m < 1 || !CycloField::supported(int(m))) throw ParseError("unsupported cyclotomic order", at);
      e.zeta_m = int(m);
      if (is_sym(",")) {
        ++i_;
        e.zeta_j = long(signed_int());
      }
      expect(")");
      return make(std::move(e));
    }
    if (t.text == "qp") {
      ++i_;
      expect("(");
      Expr e;
      e.kind = Expr::Kind::Poch;
      ExprPtr arg = expr();
      expect(";");
      ExprPtr base = expr();
      expect(";");
      if (is_ident("inf")) {
        ++i_;
      } else {
        e.length = signed_int();
      }
      expect(")");
      e.args = {arg, base};
      return make(std::move(e));
    }
    if (t.text == "theta" || t.text == "ftheta") {
      ++i_;
      expect("(");
      Expr e;
      e.kind = t.text == "theta" ? Expr::Kind::Theta : Expr::Kind::FalseTheta;
      e.exponent = signed_rational();
      expect(",");
      e.s = signed_rational();
      expect(",");
      if (is_sym("+")) {
        e.sign = Sign::Plus;
      } else if (is_sym("-")) {
        e.sign = Sign::Minus;
      } else {
        fail("expected '+' or '-'");
      }
      ++i_;
      expect(")");
      return make(std::move(e));
    }
    fail("unknown name '" + t.text + "'");
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

int prec(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
      return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div:
      return 2;
    case Expr::Kind::Neg:
      return 3;
    case Expr::Kind::Number:
      return e.number < 0 ? 3 : 5;
    case Expr::Kind::Pow:
      return 4;
    default:
      return 5;
  }
}

std::string exp_text(const QRational& r) {
  if (r.is_integer() && r.num() >= 0) return r.to_string();
  return "(" + r.to_string() + ")";
}

std::string print_at(const Expr& e, int need) {
  auto wrap = [&](const Expr& c, int p) {
    std::string s = print_at(c, p);
    return prec(c) < p ? "(" + s + ")" : s;
  };
  switch (e.kind) {
    case Expr::Kind::Number:
      return e.number.get_str();
    case Expr::Kind::QPow:
      return e.exponent == QRational(1) ? "q" : "q^" + exp_text(e.exponent);
    case Expr::Kind::Zeta:
      return "zeta(" + std::to_string(e.zeta_m) + (e.zeta_j == 1 ? "" : "," + std::to_string(e.zeta_j)) + ")";
    case Expr::Kind::Poch:
      return "qp(" + print_at(*e.args[0], 0) + ";" + print_at(*e.args[1], 0) + ";" +
             (e.length ? std::to_string(*e.length) : "inf") + ")";
    case Expr::Kind::Theta:
    case Expr::Kind::FalseTheta:
      return std::string(e.kind == Expr::Kind::Theta ? "theta(" : "ftheta(") + e.exponent.to_string() + "," +
             e.s.to_string() + "," + (e.sign == Sign::Plus ? "+" : "-") + ")";
    case Expr::Kind::Add:
      return wrap(*e.args[0], 1) + " + " + wrap(*e.args[1], 2);
    case Expr::Kind::Sub:
      return wrap(*e.args[0], 1) + " - " + wrap(*e.args[1], 2);
    case Expr::Kind::Mul:
      return wrap(*e.args[0], 2) + " * " + wrap(*e.args[1], 3);
    case Expr::Kind::Div:
      return wrap(*e.args[0], 2) + " / " + wrap(*e.args[1], 3);
    case Expr::Kind::Neg: {
      const Expr& c = *e.args[0];
      // a literal right after '-' would be read back as a negative literal
      if (c.kind == Expr::Kind::Number) return "-(" + print_at(c, 0) + ")";
      return "-" + wrap(c, 3);
    }
    case Expr::Kind::Pow: {
      const Expr& b = *e.args[0];
      std::string base = print_at(b, 5);
      if (prec(b) < 5 || b.kind == Expr::Kind::QPow || (b.kind == Expr::Kind::Number && b.number.get_den() != 1))
        base = "(" + base + ")";
      return base + "^" + (e.power < 0 ? "(" + std::to_string(e.power) + ")" : std::to_string(e.power));
    }
  }
  (void)need;
  return "";
}

// Upper bound on the exponents of a Laurent polynomial, or nothing if the
// expression is not one.
std::optional<QRational> degree_bound(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Number:
    case Expr::Kind::Zeta:
      return QRational(0);
    case Expr::Kind::QPow:
      return e.exponent;
    case Expr::Kind::Poch: {
      if (!e.length || *e.length < 0) return std::nullopt;
      auto x = as_monomial(*e.args[0]);
      auto b = as_monomial(*e.args[1]);
      if (!x || !b) return std::nullopt;
      QRational d(0);
      for (std::int64_t i = 0; i < *e.length; ++i) {
        QRational t = x->exponent() + QRational(i) * b->exponent();
        if (t > QRational(0)) d += t;
      }
      return d;
    }
    case Expr::Kind::Add:
    case Expr::Kind::Sub: {
      auto a = degree_bound(*e.args[0]), b = degree_bound(*e.args[1]);
      if (!a || !b) return std::nullopt;
      return std::max(*a, *b);
    }
    case Expr::Kind::Mul: {
      auto a = degree_bound(*e.args[0]), b = degree_bound(*e.args[1]);
      if (!a || !b) return std::nullopt;
      return *a + *b;
    }
    case Expr::Kind::Div: {
      auto a = degree_bound(*e.args[0]);
      auto m = as_monomial(*e.args[1]);
      if (!a || !m) return std::nullopt;
      return *a - m->exponent();
    }
    case Expr::Kind::Neg:
      return degree_bound(*e.args[0]);
    case Expr::Kind::Pow: {
      if (e.power >= 0) {
        auto a = degree_bound(*e.args[0]);
        if (!a) return std::nullopt;
        return *a * QRational(e.power);
      }
      auto m = as_monomial(*e.args[0]);
      if (!m) return std::nullopt;
      return m->exponent() * QRational(e.power);
    }
    default:
      return std::nullopt;
  }
}

LaurentSeries eval(const Expr& e, const SeriesContext& ctx) {
  if (auto m = as_monomial(e)) return LaurentSeries::monomial(*m, ctx);
  auto monomial_arg = [&](const Expr& a, const char* what) {
    auto m = as_monomial(a);
    if (!m) throw InvalidSpecializationError(std::string("qp ") + what + " must be a monomial c*q^e, got " + print(a));
    return *m;
  };
  switch (e.kind) {
    case Expr::Kind::Number:
      return LaurentSeries::zero(ctx.ring());  // the only non-monomial number
    case Expr::Kind::Poch: {
      ParamMonomial x = monomial_arg(*e.args[0], "argument");
      ParamMonomial b = monomial_arg(*e.args[1], "base");
      if (b.exponent() <= QRational(0)) throw InvalidSpecializationError("qp base must have a positive q-exponent");
      return e.length ? qpoch(x, b, *e.length, ctx) : qpoch_inf(x, b, ctx);
    }
    case Expr::Kind::Theta:
      return theta_series(e.exponent, e.s, e.sign, ctx);
    case Expr::Kind::FalseTheta:
      return false_theta_series(e.exponent, e.s, e.sign, ctx);
    case Expr::Kind::Add:
      return eval(*e.args[0], ctx) + eval(*e.args[1], ctx);
    case Expr::Kind::Sub:
      return eval(*e.args[0], ctx) - eval(*e.args[1], ctx);
    case Expr::Kind::Mul:
      return eval(*e.args[0], ctx) * eval(*e.args[1], ctx);
    case Expr::Kind::Div:
      return eval(*e.args[0], ctx) / eval(*e.args[1], ctx);
    case Expr::Kind::Neg:
      return -eval(*e.args[0], ctx);
    case Expr::Kind::Pow: {
      LaurentSeries b = eval(*e.args[0], ctx);
      return e.power >= 0 ? b.pow(e.power) : b.inverse().pow(-e.power);
    }
    default:
      break;
  }
  throw Error("unhandled expression node");
}

}  // namespace

ParseError::ParseError(const std::string& what, std::size_t position)
    : Error("parse error at position " + std::to_string(position) + ": " + what), pos_(position) {}

bool operator==(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.args.size() != b.args.size()) return false;
  switch (a.kind) {
    case Expr::Kind::Number:
      if (a.number != b.number) return false;
      break;
    case Expr::Kind::QPow:
      if (a.exponent != b.exponent) return false;
      break;
    case Expr::Kind::Zeta:
      if (a.zeta_m != b.zeta_m || a.zeta_j != b.zeta_j) return false;
      break;
    case Expr::Kind::Poch:
      if (a.length != b.length) return false;
      break;
    case Expr::Kind::Theta:
    case Expr::Kind::FalseTheta:
      if (a.exponent != b.exponent || a.s != b.s || a.sign != b.sign) return false;
      break;
    case Expr::Kind::Pow:
      if (a.power != b.power) return false;
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!(*a.args[i] == *b.args[i])) return false;
  }
  return true;
}

ExprPtr parse(std::string_view text) { return Parser(text).parse_all(); }

std::string print(const Expr& e) { return print_at(e, 0); }

std::optional<ParamMonomial> as_monomial(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Number:
      if (e.number == 0) return std::nullopt;
      return ParamMonomial::constant(e.number);
    case Expr::Kind::QPow:
      return ParamMonomial::q(e.exponent);
    case Expr::Kind::Zeta:
      return ParamMonomial(CycloCoeff::zeta(e.zeta_m, e.zeta_j), QRational(0));
    case Expr::Kind::Mul:
    case Expr::Kind::Div: {
      auto a = as_monomial(*e.args[0]), b = as_monomial(*e.args[1]);
      if (!a || !b) return std::nullopt;
      return e.kind == Expr::Kind::Mul ? *a * *b : *a / *b;
    }
    case Expr::Kind::Neg: {
      auto a = as_monomial(*e.args[0]);
      if (!a) return std::nullopt;
      return -*a;
    }
    case Expr::Kind::Pow: {
      auto a = as_monomial(*e.args[0]);
      if (!a) return std::nullopt;
      return a->pow(e.power);
    }
    default:
      return std::nullopt;
  }
}

std::pair<std::string, ParamMonomial> parse_assignment(std::string_view text) {
  auto eq = text.find('=');
  if (eq == std::string_view::npos || eq == 0)
    throw InvalidSpecializationError("expected name=value, got '" + std::string(text) + "'");
  std::string name(text.substr(0, eq));
  bool ok = std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_';
  for (char c : name) ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
  if (!ok) throw InvalidSpecializationError("bad parameter name '" + name + "'");
  ExprPtr v = parse(text.substr(eq + 1));
  auto m = as_monomial(*v);
  if (!m) throw InvalidSpecializationError("value of " + name + " must be a nonzero monomial c*q^e");
  return {name, *m};
}

int needed_cyclotomic_order(const Expr& e) {
  int m = e.kind == Expr::Kind::Zeta ? e.zeta_m : 1;
  for (const auto& a : e.args) m = common_cyclotomic_order(m, needed_cyclotomic_order(*a));
  return m;
}

Expansion expand(const Expr& e, const SeriesContext& ctx) {
  const std::int64_t need = ctx.order_ticks();
  const int d = ctx.grid_denominator;
  std::int64_t slack = 0, got = 0;
  for (int attempt = 0; attempt < 6; ++attempt) {
    LaurentSeries s = eval(e, ctx.with_order(QRational(need + slack, d)));
    got = s.order_ticks();
    if (got >= need) {
      s.truncate(need);
      auto bound = degree_bound(e);
      return {s, bound && *bound < ctx.truncation_order};
    }
    slack += (need - got) + 2 * d;
  }
  throw InsufficientPrecisionError("expression only known below " + QRational(got, d).to_string() +
                                   " after raising the working order");
}

}  // namespace qseries::cli
