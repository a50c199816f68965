#include "qseries/rational.hpp"

#include <charconv>
#include <numeric>

#include "qseries/error.hpp"

namespace qseries {

namespace {

std::int64_t narrow(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) {
    throw Error("exponent arithmetic overflowed 64 bits");
  }
  return static_cast<std::int64_t>(v);
}

QRational make(__int128 n, __int128 d) {
  if (d == 0) throw Error("rational exponent with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  __int128 a = n < 0 ? -n : n;
  __int128 b = d;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    n /= a;
    d /= a;
  }
  return QRational(narrow(n), narrow(d));
}

}  // namespace

QRational::QRational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw Error("rational exponent with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  std::int64_t g = std::gcd(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  num_ = n;
  den_ = d;
}

std::int64_t QRational::floor() const {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

QRational operator+(const QRational& a, const QRational& b) {
  return make(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
              static_cast<__int128>(a.den_) * b.den_);
}

QRational operator-(const QRational& a, const QRational& b) { return a + (-b); }

QRational operator*(const QRational& a, const QRational& b) {
  return make(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
}

QRational operator/(const QRational& a, const QRational& b) {
  return make(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const QRational& a, const QRational& b) {
  __int128 l = static_cast<__int128>(a.num_) * b.den_;
  __int128 r = static_cast<__int128>(b.num_) * a.den_;
  if (l < r) return std::strong_ordering::less;
  if (l > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string QRational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

QRational QRational::parse(std::string_view text) {
  auto fail = [&]() -> QRational {
    throw InvalidSpecializationError("malformed rational '" + std::string(text) + "'");
  };
  if (text.empty()) return fail();
  if (text.front() == '+') text.remove_prefix(1);
  auto slash = text.find('/');
  auto parse_int = [&](std::string_view s) -> std::int64_t {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) fail();
    return v;
  };
  if (slash == std::string_view::npos) return QRational(parse_int(text));
  std::int64_t d = parse_int(text.substr(slash + 1));
  if (d == 0) return fail();
  return QRational(parse_int(text.substr(0, slash)), d);
}

std::int64_t lcm64(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

}  // namespace qseries
