#include "qseries/cyclo.hpp"

#include <array>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

#include "qseries/error.hpp"

namespace qseries {

namespace {

// Phi_m coefficients, lowest degree first.
std::vector<int> cyclotomic_poly(int m) {
  switch (m) {
    case 1: return {-1, 1};
    case 2: return {1, 1};
    case 3: return {1, 1, 1};
    case 4: return {1, 0, 1};
    case 6: return {1, -1, 1};
    case 8: return {1, 0, 0, 0, 1};
    case 12: return {1, 0, -1, 0, 1};
    default: break;
  }
  throw InvalidSpecializationError("unsupported cyclotomic order " + std::to_string(m));
}

constexpr std::array<int, 7> kOrders = {1, 2, 3, 4, 6, 8, 12};

int slot(int m) {
  for (std::size_t i = 0; i < kOrders.size(); ++i) {
    if (kOrders[i] == m) return static_cast<int>(i);
  }
  throw InvalidSpecializationError("unsupported cyclotomic order " + std::to_string(m) +
                                   " (allowed: 1,2,3,4,6,8,12)");
}

std::vector<mpq_class>& scratch(std::size_t n) {
  thread_local std::vector<mpq_class> buf;
  if (buf.size() < n) buf.resize(n);
  return buf;
}

}  // namespace

bool CycloField::supported(int m) {
  for (int k : kOrders) {
    if (k == m) return true;
  }
  return false;
}

const CycloField& CycloField::get(int m) {
  static std::array<std::unique_ptr<CycloField>, kOrders.size()> fields;
  static std::once_flag once;
  std::call_once(once, [] {
    for (std::size_t i = 0; i < kOrders.size(); ++i) {
      fields[i].reset(new CycloField(kOrders[i]));
    }
  });
  return *fields[slot(m)];
}

CycloField::CycloField(int m) : m_(m) {
  auto phi = cyclotomic_poly(m);
  phi_ = static_cast<int>(phi.size()) - 1;
  int top = std::max(2 * phi_ - 1, m_);
  std::vector<std::vector<mpq_class>> pw(top + 1, std::vector<mpq_class>(phi_));
  for (int k = 0; k <= top; ++k) {
    if (k < phi_) {
      pw[k][k] = 1;
      continue;
    }
    // x^k = x * x^(k-1); fold the x^phi overflow back via x^phi = -sum phi_i x^i.
    const auto& prev = pw[k - 1];
    mpq_class carry = prev[phi_ - 1];
    for (int i = phi_ - 1; i > 0; --i) pw[k][i] = prev[i - 1];
    pw[k][0] = 0;
    if (carry != 0) {
      for (int i = 0; i < phi_; ++i) pw[k][i] -= carry * phi[i];
    }
  }
  reduce_.assign(pw.begin(), pw.begin() + (2 * phi_ - 1));
  zeta_.assign(pw.begin(), pw.begin() + m_);
}

void CycloField::mul(const mpq_class* a, const mpq_class* b, mpq_class* out) const {
  if (phi_ == 1) {
    out[0] = a[0] * b[0];
    return;
  }
  for (int i = 0; i < phi_; ++i) out[i] = 0;
  mul_add(a, b, out);
}

void CycloField::mul_add(const mpq_class* a, const mpq_class* b, mpq_class* out) const {
  if (phi_ == 1) {
    out[0] += a[0] * b[0];
    return;
  }
  auto& raw = scratch(2 * phi_ - 1);
  for (int k = 0; k < 2 * phi_ - 1; ++k) raw[k] = 0;
  for (int i = 0; i < phi_; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (int j = 0; j < phi_; ++j) {
      if (sgn(b[j]) == 0) continue;
      raw[i + j] += a[i] * b[j];
    }
  }
  for (int k = 0; k < phi_; ++k) out[k] += raw[k];
  for (int k = phi_; k < 2 * phi_ - 1; ++k) {
    if (sgn(raw[k]) == 0) continue;
    for (int i = 0; i < phi_; ++i) {
      if (sgn(reduce_[k][i]) != 0) out[i] += raw[k] * reduce_[k][i];
    }
  }
}

void CycloField::mul_sub(const mpq_class* a, const mpq_class* b, mpq_class* out) const {
  if (phi_ == 1) {
    out[0] -= a[0] * b[0];
    return;
  }
  auto& raw = scratch(2 * phi_ - 1);
  for (int k = 0; k < 2 * phi_ - 1; ++k) raw[k] = 0;
  for (int i = 0; i < phi_; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (int j = 0; j < phi_; ++j) {
      if (sgn(b[j]) == 0) continue;
      raw[i + j] += a[i] * b[j];
    }
  }
  for (int k = 0; k < phi_; ++k) out[k] -= raw[k];
  for (int k = phi_; k < 2 * phi_ - 1; ++k) {
    if (sgn(raw[k]) == 0) continue;
    for (int i = 0; i < phi_; ++i) {
      if (sgn(reduce_[k][i]) != 0) out[i] -= raw[k] * reduce_[k][i];
    }
  }
}

const std::vector<mpq_class>& CycloField::zeta_power(long j) const {
  long r = j % m_;
  if (r < 0) r += m_;
  return zeta_[r];
}

void cyclo_inverse(const CycloField& f, const mpq_class* a, mpq_class* out) {
  const int n = f.degree();
  bool zero = true;
  for (int i = 0; i < n; ++i) zero = zero && sgn(a[i]) == 0;
  if (zero) throw NotAUnitError("division by zero coefficient");
  if (n == 1) {
    out[0] = 1 / a[0];
    return;
  }
  // Column j of the multiplication-by-a matrix is a * x^j; solve M x = e_0.
  std::vector<std::vector<mpq_class>> mat(n, std::vector<mpq_class>(n + 1));
  std::vector<mpq_class> basis(n), col(n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) basis[i] = (i == j) ? 1 : 0;
    f.mul(a, basis.data(), col.data());
    for (int i = 0; i < n; ++i) mat[i][j] = col[i];
  }
  mat[0][n] = 1;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    while (piv < n && sgn(mat[piv][c]) == 0) ++piv;
    if (piv == n) throw NotAUnitError("singular cyclotomic element");
    std::swap(mat[piv], mat[c]);
    mpq_class inv = 1 / mat[c][c];
    for (int k = c; k <= n; ++k) mat[c][k] *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == c || sgn(mat[r][c]) == 0) continue;
      mpq_class factor = mat[r][c];
      for (int k = c; k <= n; ++k) mat[r][k] -= factor * mat[c][k];
    }
  }
  for (int i = 0; i < n; ++i) out[i] = mat[i][n];
}

int common_cyclotomic_order(int m1, int m2) {
  int m = std::lcm(m1, m2);
  if (!CycloField::supported(m)) {
    throw InvalidSpecializationError("no supported cyclotomic field contains orders " +
                                     std::to_string(m1) + " and " + std::to_string(m2));
  }
  return m;
}

CycloCoeff::CycloCoeff(int m, const mpq_class& rational) : m_(m) {
  c_.assign(CycloField::get(m).degree(), mpq_class(0));
  c_[0] = rational;
}

CycloCoeff::CycloCoeff(int m, std::vector<mpq_class> coeffs) : m_(m), c_(std::move(coeffs)) {
  if (static_cast<int>(c_.size()) != CycloField::get(m).degree()) {
    throw Error("cyclotomic coefficient vector has wrong length");
  }
}

CycloCoeff CycloCoeff::zeta(int m, long j) {
  return CycloCoeff(m, CycloField::get(m).zeta_power(j));
}

bool CycloCoeff::is_zero() const {
  for (const auto& x : c_) {
    if (sgn(x) != 0) return false;
  }
  return true;
}

bool CycloCoeff::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i) {
    if (sgn(c_[i]) != 0) return false;
  }
  return true;
}

bool CycloCoeff::is_one() const { return is_rational() && c_[0] == 1; }

CycloCoeff CycloCoeff::promoted(int m) const {
  if (m == m_) return *this;
  if (m % m_ != 0) {
    throw InvalidSpecializationError("cannot embed Q(zeta_" + std::to_string(m_) + ") in Q(zeta_" +
                                     std::to_string(m) + ")");
  }
  const auto& f = CycloField::get(m);
  std::vector<mpq_class> out(f.degree());
  long step = m / m_;
  for (std::size_t j = 0; j < c_.size(); ++j) {
    if (sgn(c_[j]) == 0) continue;
    const auto& z = f.zeta_power(static_cast<long>(j) * step);
    for (int i = 0; i < f.degree(); ++i) out[i] += c_[j] * z[i];
  }
  return CycloCoeff(m, std::move(out));
}

CycloCoeff CycloCoeff::operator-() const {
  CycloCoeff r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

CycloCoeff operator+(const CycloCoeff& a, const CycloCoeff& b) {
  int m = common_cyclotomic_order(a.m_, b.m_);
  CycloCoeff r = a.promoted(m);
  CycloCoeff s = b.promoted(m);
  for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += s.c_[i];
  return r;
}

CycloCoeff operator-(const CycloCoeff& a, const CycloCoeff& b) { return a + (-b); }

CycloCoeff operator*(const CycloCoeff& a, const CycloCoeff& b) {
  int m = common_cyclotomic_order(a.m_, b.m_);
  CycloCoeff x = a.promoted(m);
  CycloCoeff y = b.promoted(m);
  const auto& f = CycloField::get(m);
  std::vector<mpq_class> out(f.degree());
  f.mul(x.c_.data(), y.c_.data(), out.data());
  return CycloCoeff(m, std::move(out));
}

CycloCoeff CycloCoeff::inverse() const {
  const auto& f = CycloField::get(m_);
  std::vector<mpq_class> out(f.degree());
  cyclo_inverse(f, c_.data(), out.data());
  return CycloCoeff(m_, std::move(out));
}

CycloCoeff operator/(const CycloCoeff& a, const CycloCoeff& b) { return a * b.inverse(); }

CycloCoeff CycloCoeff::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  CycloCoeff result(m_, mpq_class(1));
  CycloCoeff base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

bool operator==(const CycloCoeff& a, const CycloCoeff& b) {
  int m = std::lcm(a.m_, b.m_);
  if (!CycloField::supported(m)) return false;
  CycloCoeff x = a.promoted(m);
  CycloCoeff y = b.promoted(m);
  return x.c_ == y.c_;
}

std::string CycloCoeff::to_string() const {
  if (is_rational()) return c_[0].get_str();
  std::ostringstream os;
  os << '(';
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (sgn(c_[i]) == 0) continue;
    mpq_class mag = abs(c_[i]);
    if (!first) {
      os << (sgn(c_[i]) < 0 ? " - " : " + ");
    } else if (sgn(c_[i]) < 0) {
      os << '-';
    }
    first = false;
    if (i == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << '*';
    os << "zeta";
    if (i > 1) os << '^' << i;
  }
  os << ')';
  return os.str();
}

}  // namespace qseries
