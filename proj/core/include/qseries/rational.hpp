#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace qseries {

// Small exact rational with 64-bit parts. Used for q-exponents and grid
// bookkeeping, where values stay tiny; coefficients use GMP instead.
// Always normalized: den > 0, gcd(num, den) == 1.
class QRational {
 public:
  constexpr QRational() = default;
  constexpr QRational(std::int64_t n) : num_(n) {}  // NOLINT(implicit)
  QRational(std::int64_t n, std::int64_t d);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }

  // Floor of the value.
  std::int64_t floor() const;

  QRational operator-() const { return QRational(-num_, den_); }
  friend QRational operator+(const QRational& a, const QRational& b);
  friend QRational operator-(const QRational& a, const QRational& b);
  friend QRational operator*(const QRational& a, const QRational& b);
  friend QRational operator/(const QRational& a, const QRational& b);
  QRational& operator+=(const QRational& o) { return *this = *this + o; }
  QRational& operator-=(const QRational& o) { return *this = *this - o; }
  QRational& operator*=(const QRational& o) { return *this = *this * o; }

  friend bool operator==(const QRational& a, const QRational& b) = default;
  friend std::strong_ordering operator<=>(const QRational& a, const QRational& b);

  // "3", "-1/2".
  std::string to_string() const;
  // Accepts "3", "-1/2", "+4". Throws InvalidSpecializationError on garbage.
  static QRational parse(std::string_view text);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::int64_t lcm64(std::int64_t a, std::int64_t b);

}  // namespace qseries
