#include "qseries/laurent.hpp"

#include <algorithm>
#include <sstream>

#include "qseries/error.hpp"

namespace qseries {

namespace {

constexpr std::int64_t kMaxLength = 50'000'000;

std::int64_t sat_add(std::int64_t a, std::int64_t b) {
  if (a >= LaurentSeries::kExact || b >= LaurentSeries::kExact) return LaurentSeries::kExact;
  return std::min(a + b, LaurentSeries::kExact);
}

void check_rings(const Ring& a, const Ring& b) {
  if (!(a == b)) {
    throw RingMismatchError("series live on different rings (D=" + std::to_string(a.grid_denominator) +
                            ", m=" + std::to_string(a.cyclotomic_order) + " vs D=" +
                            std::to_string(b.grid_denominator) + ", m=" +
                            std::to_string(b.cyclotomic_order) + ")");
  }
}

std::int64_t ceil_ticks(const QRational& order, int d) {
  QRational t = order * QRational(d);
  std::int64_t f = t.floor();
  return t.is_integer() ? f : f + 1;
}

}  // namespace

LaurentSeries::LaurentSeries(const Ring& ring, std::int64_t start, std::int64_t order)
    : ring_(ring), start_(start), order_(order) {
  std::int64_t len = order - start;
  if (len > kMaxLength) throw Error("series too long to store (" + std::to_string(len) + " terms)");
  data_.assign(static_cast<std::size_t>(len * phi()), mpq_class(0));
}

LaurentSeries LaurentSeries::zero(const Ring& ring, std::int64_t order_ticks) {
  LaurentSeries s;
  s.ring_ = ring;
  s.order_ = std::min(order_ticks, kExact);
  return s;
}

LaurentSeries LaurentSeries::one(const Ring& ring, std::int64_t order_ticks) {
  return term(GridTerm{0, CycloCoeff(ring.cyclotomic_order, mpq_class(1))}, ring, order_ticks);
}

LaurentSeries LaurentSeries::term(const GridTerm& t, const Ring& ring, std::int64_t order_ticks) {
  if (t.tick >= order_ticks || t.coeff.is_zero()) return zero(ring, order_ticks);
  if (order_ticks >= kExact) throw Error("a nonzero series needs a finite order");
  LaurentSeries s(ring, t.tick, order_ticks);
  CycloCoeff c = t.coeff.promoted(ring.cyclotomic_order);
  std::copy(c.coeffs().begin(), c.coeffs().end(), s.data_.begin());
  return s;
}

LaurentSeries LaurentSeries::monomial(const ParamMonomial& p, const SeriesContext& ctx) {
  return term(to_grid(p, ctx.ring()), ctx.ring(), ctx.order_ticks());
}

LaurentSeries LaurentSeries::constant(const mpq_class& c, const SeriesContext& ctx) {
  return term(GridTerm{0, CycloCoeff(ctx.cyclotomic_order, c)}, ctx.ring(), ctx.order_ticks());
}

LaurentSeries LaurentSeries::from_terms(const Ring& ring, const std::vector<GridTerm>& terms,
                                        std::int64_t order_ticks) {
  std::int64_t lo = order_ticks;
  for (const auto& t : terms) {
    if (!t.coeff.is_zero()) lo = std::min(lo, t.tick);
  }
  if (lo >= order_ticks) return zero(ring, order_ticks);
  LaurentSeries s(ring, lo, order_ticks);
  const int phi = s.phi();
  for (const auto& t : terms) {
    if (t.tick >= order_ticks || t.coeff.is_zero()) continue;
    CycloCoeff c = t.coeff.promoted(ring.cyclotomic_order);
    mpq_class* dst = s.at(t.tick - lo);
    for (int i = 0; i < phi; ++i) dst[i] += c.coeffs()[i];
  }
  s.normalize();
  return s;
}

std::optional<QRational> LaurentSeries::valuation() const {
  if (is_zero()) return std::nullopt;
  return QRational(start_, ring_.grid_denominator);
}

QRational LaurentSeries::order() const {
  if (exact()) throw Error("exact series has no finite order");
  return QRational(order_, ring_.grid_denominator);
}

bool LaurentSeries::block_zero(std::int64_t idx) const {
  const mpq_class* b = at(idx);
  for (int i = 0; i < phi(); ++i) {
    if (sgn(b[i]) != 0) return false;
  }
  return true;
}

void LaurentSeries::set_zero(std::int64_t order) {
  data_.clear();
  data_.shrink_to_fit();
  order_ = std::min(order, kExact);
}

void LaurentSeries::normalize() {
  std::int64_t len = length();
  std::int64_t k = 0;
  while (k < len && block_zero(k)) ++k;
  if (k == len) {
    set_zero(order_);
    return;
  }
  if (k > 0) {
    data_.erase(data_.begin(), data_.begin() + k * phi());
    start_ += k;
  }
}

CycloCoeff LaurentSeries::coeff_at(std::int64_t tick) const {
  if (is_zero() || tick < start_ || tick >= order_) return CycloCoeff(ring_.cyclotomic_order, mpq_class(0));
  const mpq_class* b = at(tick - start_);
  return CycloCoeff(ring_.cyclotomic_order, std::vector<mpq_class>(b, b + phi()));
}

CycloCoeff LaurentSeries::coeff(const QRational& exponent) const {
  return coeff_at(to_ticks(exponent, ring_.grid_denominator));
}

std::vector<GridTerm> LaurentSeries::terms() const {
  std::vector<GridTerm> out;
  for (std::int64_t i = 0; i < length(); ++i) {
    if (!block_zero(i)) out.push_back(GridTerm{start_ + i, coeff_at(start_ + i)});
  }
  return out;
}

LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
  check_rings(a.ring_, b.ring_);
  std::int64_t order = std::min(a.order_, b.order_);
  if (a.is_zero() && b.is_zero()) return LaurentSeries::zero(a.ring_, order);
  std::int64_t start = std::min(a.valuation_ticks(), b.valuation_ticks());
  if (start >= order) return LaurentSeries::zero(a.ring_, order);
  LaurentSeries r(a.ring_, start, order);
  const int phi = r.phi();
  for (const LaurentSeries* s : {&a, &b}) {
    if (s->is_zero()) continue;
    std::int64_t stop = std::min(s->order_, order);
    for (std::int64_t t = s->start_; t < stop; ++t) {
      const mpq_class* src = s->at(t - s->start_);
      mpq_class* dst = r.at(t - start);
      for (int i = 0; i < phi; ++i) {
        if (sgn(src[i]) != 0) dst[i] += src[i];
      }
    }
  }
  r.normalize();
  return r;
}

LaurentSeries& LaurentSeries::operator+=(const LaurentSeries& o) { return *this = *this + o; }

LaurentSeries LaurentSeries::operator-() const {
  LaurentSeries r = *this;
  for (auto& x : r.data_) x = -x;
  return r;
}

LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return a + (-b); }

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
  check_rings(a.ring_, b.ring_);
  std::int64_t eva = a.is_zero() ? a.order_ : a.start_;
  std::int64_t evb = b.is_zero() ? b.order_ : b.start_;
  std::int64_t order = std::min(sat_add(eva, b.order_), sat_add(evb, a.order_));
  if (a.is_zero() || b.is_zero()) return LaurentSeries::zero(a.ring_, order);
  std::int64_t start = a.start_ + b.start_;
  if (start >= order) return LaurentSeries::zero(a.ring_, order);
  LaurentSeries r(a.ring_, start, order);
  const std::int64_t len = order - start;
  const auto& f = CycloField::get(a.ring_.cyclotomic_order);
  std::vector<std::int64_t> nz_b;
  for (std::int64_t j = 0; j < std::min(b.length(), len); ++j) {
    if (!b.block_zero(j)) nz_b.push_back(j);
  }
  if (f.degree() == 1) {
    mpq_class tmp;
    for (std::int64_t i = 0; i < std::min(a.length(), len); ++i) {
      const mpq_class& ai = a.data_[i];
      if (sgn(ai) == 0) continue;
      for (std::int64_t j : nz_b) {
        if (i + j >= len) break;
        mpq_mul(tmp.get_mpq_t(), ai.get_mpq_t(), b.data_[j].get_mpq_t());
        mpq_add(r.data_[i + j].get_mpq_t(), r.data_[i + j].get_mpq_t(), tmp.get_mpq_t());
      }
    }
  } else {
    for (std::int64_t i = 0; i < std::min(a.length(), len); ++i) {
      if (a.block_zero(i)) continue;
      for (std::int64_t j : nz_b) {
        if (i + j >= len) break;
        f.mul_add(a.at(i), b.at(j), r.at(i + j));
      }
    }
  }
  r.normalize();
  return r;
}

namespace {

// Long division of the relative coefficient blocks: q = num / den where both
// start at index 0, producing len blocks.
void divide_blocks(const CycloField& f, const std::vector<mpq_class>& num, std::int64_t num_len,
                   const std::vector<mpq_class>& den, std::int64_t den_len, std::int64_t len,
                   std::vector<mpq_class>& out) {
  const int phi = f.degree();
  std::vector<mpq_class> rem(static_cast<std::size_t>(len * phi));
  for (std::int64_t i = 0; i < std::min(num_len, len) * phi; ++i) rem[i] = num[i];
  std::vector<std::int64_t> nz;
  for (std::int64_t j = 1; j < std::min(den_len, len); ++j) {
    bool z = true;
    for (int k = 0; k < phi; ++k) z = z && sgn(den[j * phi + k]) == 0;
    if (!z) nz.push_back(j);
  }
  out.assign(static_cast<std::size_t>(len * phi), mpq_class(0));
  std::vector<mpq_class> inv0(phi);
  cyclo_inverse(f, den.data(), inv0.data());
  if (phi == 1) {
    mpq_class tmp;
    const bool unit = inv0[0] == 1;
    for (std::int64_t i = 0; i < len; ++i) {
      if (sgn(rem[i]) == 0) continue;
      if (unit) {
        out[i] = rem[i];
      } else {
        mpq_mul(out[i].get_mpq_t(), rem[i].get_mpq_t(), inv0[0].get_mpq_t());
      }
      for (std::int64_t j : nz) {
        if (i + j >= len) break;
        mpq_mul(tmp.get_mpq_t(), out[i].get_mpq_t(), den[j].get_mpq_t());
        mpq_sub(rem[i + j].get_mpq_t(), rem[i + j].get_mpq_t(), tmp.get_mpq_t());
      }
    }
    return;
  }
  for (std::int64_t i = 0; i < len; ++i) {
    bool z = true;
    for (int k = 0; k < phi; ++k) z = z && sgn(rem[i * phi + k]) == 0;
    if (z) continue;
    f.mul(rem.data() + i * phi, inv0.data(), out.data() + i * phi);
    for (std::int64_t j : nz) {
      if (i + j >= len) break;
      f.mul_sub(out.data() + i * phi, den.data() + j * phi, rem.data() + (i + j) * phi);
    }
  }
}

}  // namespace

LaurentSeries operator/(const LaurentSeries& a, const LaurentSeries& b) {
  check_rings(a.ring_, b.ring_);
  if (b.is_zero()) {
    throw NotAUnitError("division by a series with no known nonzero coefficient (zero below order " +
                        (b.exact() ? std::string("infinity") : b.order().to_string()) + ")");
  }
  if (a.is_zero()) return LaurentSeries::zero(a.ring_, sat_add(a.order_, -b.start_));
  std::int64_t start = a.start_ - b.start_;
  std::int64_t rel = std::min(a.order_ - a.start_, b.order_ - b.start_);
  LaurentSeries r(a.ring_, start, start + rel);
  divide_blocks(CycloField::get(a.ring_.cyclotomic_order), a.data_, a.length(), b.data_, b.length(), rel,
                r.data_);
  r.normalize();
  return r;
}

LaurentSeries LaurentSeries::inverse() const {
  if (is_zero()) {
    throw NotAUnitError("cannot invert a series with no known nonzero coefficient");
  }
  return one(ring_, order_ - start_) / *this;
}

LaurentSeries LaurentSeries::pow(std::int64_t k) const {
  if (k < 0) return inverse().pow(-k);
  if (k == 0) {
    std::int64_t rel = is_zero() ? std::max<std::int64_t>(order_, 1) : std::max(order_, order_ - start_);
    return one(ring_, std::min(rel, kExact - 1));
  }
  LaurentSeries result = *this;
  LaurentSeries base = *this;
  --k;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

void LaurentSeries::scale(const CycloCoeff& c) {
  if (c.is_zero()) {
    set_zero(kExact);
    return;
  }
  if (c.is_one() || is_zero()) return;
  CycloCoeff cc = c.promoted(ring_.cyclotomic_order);
  const auto& f = CycloField::get(ring_.cyclotomic_order);
  const int p = f.degree();
  if (p == 1) {
    for (auto& x : data_) {
      if (sgn(x) != 0) x *= cc.coeffs()[0];
    }
    return;
  }
  std::vector<mpq_class> tmp(p);
  for (std::int64_t i = 0; i < length(); ++i) {
    if (block_zero(i)) continue;
    f.mul(at(i), cc.coeffs().data(), tmp.data());
    std::copy(tmp.begin(), tmp.end(), at(i));
  }
}

void LaurentSeries::mul_monomial(const GridTerm& t) {
  if (t.coeff.is_zero()) {
    set_zero(kExact);
    return;
  }
  if (is_zero()) {
    order_ = sat_add(order_, t.tick);
    return;
  }
  start_ += t.tick;
  order_ += t.tick;
  scale(t.coeff);
}

void LaurentSeries::mul_binomial(const GridTerm& t0, const GridTerm& t1) {
  const GridTerm& lo = t0.tick <= t1.tick ? t0 : t1;
  const GridTerm& hi = t0.tick <= t1.tick ? t1 : t0;
  if (lo.tick == hi.tick) {
    mul_monomial(GridTerm{lo.tick, lo.coeff + hi.coeff});
    return;
  }
  if (lo.coeff.is_zero()) return mul_monomial(hi);
  if (hi.coeff.is_zero()) return mul_monomial(lo);
  if (is_zero()) {
    order_ = sat_add(order_, lo.tick);
    return;
  }
  const std::int64_t k = hi.tick - lo.tick;
  const std::int64_t len = length();
  const auto& f = CycloField::get(ring_.cyclotomic_order);
  CycloCoeff c0 = lo.coeff.promoted(ring_.cyclotomic_order);
  CycloCoeff c1 = hi.coeff.promoted(ring_.cyclotomic_order);
  if (f.degree() == 1) {
    const mpq_class& a = c0.coeffs()[0];
    const mpq_class& b = c1.coeffs()[0];
    const bool unit = a == 1;
    mpq_class tmp;
    for (std::int64_t i = len - 1; i >= 0; --i) {
      if (!unit && sgn(data_[i]) != 0) data_[i] *= a;
      if (i >= k && sgn(data_[i - k]) != 0) {
        mpq_mul(tmp.get_mpq_t(), b.get_mpq_t(), data_[i - k].get_mpq_t());
        mpq_add(data_[i].get_mpq_t(), data_[i].get_mpq_t(), tmp.get_mpq_t());
      }
    }
  } else {
    const int p = f.degree();
    std::vector<mpq_class> tmp(p);
    for (std::int64_t i = len - 1; i >= 0; --i) {
      f.mul(c0.coeffs().data(), at(i), tmp.data());
      if (i >= k) f.mul_add(c1.coeffs().data(), at(i - k), tmp.data());
      std::copy(tmp.begin(), tmp.end(), at(i));
    }
  }
  start_ += lo.tick;
  order_ += lo.tick;
}

void LaurentSeries::div_binomial(const GridTerm& t0, const GridTerm& t1) {
  const GridTerm& lo = t0.tick <= t1.tick ? t0 : t1;
  const GridTerm& hi = t0.tick <= t1.tick ? t1 : t0;
  if (lo.tick == hi.tick || lo.coeff.is_zero() || hi.coeff.is_zero()) {
    CycloCoeff c = lo.tick == hi.tick ? lo.coeff + hi.coeff : (lo.coeff.is_zero() ? hi.coeff : lo.coeff);
    std::int64_t tick = lo.coeff.is_zero() ? hi.tick : lo.tick;
    if (c.is_zero()) throw NotAUnitError("division by an identically vanishing factor");
    mul_monomial(GridTerm{-tick, c.inverse()});
    return;
  }
  if (is_zero()) {
    order_ = sat_add(order_, -lo.tick);
    return;
  }
  const std::int64_t k = hi.tick - lo.tick;
  const std::int64_t len = length();
  const auto& f = CycloField::get(ring_.cyclotomic_order);
  CycloCoeff inv0 = lo.coeff.promoted(ring_.cyclotomic_order).inverse();
  CycloCoeff c1 = hi.coeff.promoted(ring_.cyclotomic_order) * inv0;
  // Divide by lo * (1 + c1 q^k): first the recurrence, then the constant.
  if (f.degree() == 1) {
    const mpq_class& b = c1.coeffs()[0];
    mpq_class tmp;
    for (std::int64_t i = k; i < len; ++i) {
      if (sgn(data_[i - k]) == 0) continue;
      mpq_mul(tmp.get_mpq_t(), b.get_mpq_t(), data_[i - k].get_mpq_t());
      mpq_sub(data_[i].get_mpq_t(), data_[i].get_mpq_t(), tmp.get_mpq_t());
    }
  } else {
    for (std::int64_t i = k; i < len; ++i) {
      if (block_zero(i - k)) continue;
      f.mul_sub(c1.coeffs().data(), at(i - k), at(i));
    }
  }
  scale(inv0);
  start_ -= lo.tick;
  order_ -= lo.tick;
}

LaurentSeries LaurentSeries::truncated(std::int64_t order_ticks) const {
  LaurentSeries r = *this;
  r.truncate(order_ticks);
  return r;
}

void LaurentSeries::truncate(std::int64_t order_ticks) {
  if (order_ticks >= order_) return;
  if (is_zero()) {
    order_ = order_ticks;
    return;
  }
  if (start_ >= order_ticks) {
    set_zero(order_ticks);
    return;
  }
  data_.resize(static_cast<std::size_t>((order_ticks - start_) * phi()));
  order_ = order_ticks;
}

std::string LaurentSeries::to_string(bool with_order) const {
  std::ostringstream os;
  bool first = true;
  const int d = ring_.grid_denominator;
  for (const auto& t : terms()) {
    std::string qp = format_qpow(QRational(t.tick, d));
    bool neg = t.coeff.is_rational() && sgn(t.coeff.rational_part()) < 0;
    CycloCoeff mag = neg ? -t.coeff : t.coeff;
    if (first) {
      if (neg) os << '-';
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    if (qp.empty()) {
      os << mag.to_string();
    } else if (mag.is_one()) {
      os << qp;
    } else {
      os << mag.to_string() << '*' << qp;
    }
  }
  if (first) os << '0';
  if (with_order && !exact()) {
    std::string qp = format_qpow(order());
    os << " + O(" << (qp.empty() ? "1" : qp) << ')';
  }
  return os.str();
}

Comparison equal_up_to(const LaurentSeries& a, const LaurentSeries& b, const QRational& order) {
  check_rings(a.ring(), b.ring());
  const int d = a.ring().grid_denominator;
  std::int64_t ot = ceil_ticks(order, d);
  for (const LaurentSeries* s : {&a, &b}) {
    if (ot > s->order_ticks()) {
      throw InsufficientPrecisionError("comparison to order " + order.to_string() +
                                       " requested but a series is only known below " +
                                       s->order().to_string());
    }
  }
  std::int64_t lo = std::min(a.valuation_ticks(), b.valuation_ticks());
  for (std::int64_t t = lo; t < ot; ++t) {
    CycloCoeff ca = a.coeff_at(t);
    CycloCoeff cb = b.coeff_at(t);
    if (!(ca == cb)) return Comparison{false, QRational(t, d), ca, cb};
  }
  return Comparison{true, QRational(0), CycloCoeff(), CycloCoeff()};
}

}  // namespace qseries
