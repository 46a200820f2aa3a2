#include "pifin/cyclotomic.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "pifin/error.hpp"

namespace pifin {

namespace {
std::atomic<std::uint64_t> g_bound{kDefaultConductorBound};
}

std::uint64_t conductor_bound() { return g_bound.load(); }
void set_conductor_bound(std::uint64_t bound) { g_bound.store(bound == 0 ? 1 : bound); }

Rational parse_rational(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) throw ValidationError("not a rational number: '" + s + "'");
  if (q.get_den() == 0) throw DivisionByZero();
  q.canonicalize();
  return q;
}

std::string rational_string(const Rational& q) { return q.get_str(10); }

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t r = n;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    r -= r / p;
  }
  if (n > 1) r -= r / n;
  return r;
}

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) { return a / std::gcd(a, b) * b; }

namespace {

long checked_mul_sub(long acc, long a, long b) {
  long p;
  if (__builtin_mul_overflow(a, b, &p) || __builtin_sub_overflow(acc, p, &acc))
    throw ConductorOverflow("integer overflow while building cyclotomic tables");
  return acc;
}

std::vector<long> compute_cyclotomic(std::uint64_t n,
                                          std::unordered_map<std::uint64_t, std::vector<long>>& memo) {
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  // x^n - 1, then divide out Phi_d for proper divisors d
  std::vector<long> p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (std::uint64_t d = 1; d < n; ++d) {
    if (n % d) continue;
    auto q = compute_cyclotomic(d, memo);
    std::size_t dq = q.size() - 1;
    std::size_t dp = p.size() - 1;
    std::vector<long> quo(dp - dq + 1, 0);
    for (std::size_t k = dp + 1; k-- > dq;) {
      long lead = p[k];
      quo[k - dq] = lead;
      if (lead == 0) continue;
      for (std::size_t j = 0; j <= dq; ++j) p[k - dq + j] = checked_mul_sub(p[k - dq + j], lead, q[j]);
    }
    p = std::move(quo);
  }
  memo.emplace(n, p);
  return p;
}

}  // namespace

std::vector<long> cyclotomic_polynomial(std::uint64_t n) {
  thread_local std::unordered_map<std::uint64_t, std::vector<long>> memo;
  if (n == 0) throw ValidationError("conductor must be positive");
  return compute_cyclotomic(n, memo);
}

namespace detail {

// Reduction data for Q(zeta_N): row k of `table` holds x^k mod Phi_N.
struct FieldData {
  std::uint64_t n = 1;
  std::size_t phi = 1;
  std::vector<long> table;
  const long* row(std::uint64_t k) const { return table.data() + (k % n) * phi; }
};

}  // namespace detail

namespace {

using detail::FieldData;

std::shared_ptr<const FieldData> field(std::uint64_t n) {
  if (n == 1) return nullptr;
  if (n > conductor_bound())
    throw ConductorOverflow("conductor " + std::to_string(n) + " exceeds bound " + std::to_string(conductor_bound()));
  thread_local std::unordered_map<std::uint64_t, std::shared_ptr<const FieldData>> cache;
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  auto f = std::make_shared<FieldData>();
  f->n = n;
  f->phi = euler_phi(n);
  if (static_cast<double>(n) * static_cast<double>(f->phi) > double(1 << 26))
    throw ConductorOverflow("conductor " + std::to_string(n) + " too large for reduction tables");
  auto poly = cyclotomic_polynomial(n);
  const std::size_t phi = f->phi;
  f->table.assign(n * phi, 0);
  f->table[0] = 1;
  for (std::uint64_t k = 1; k < n; ++k) {
    const long* prev = f->table.data() + (k - 1) * phi;
    long* cur = f->table.data() + k * phi;
    long top = prev[phi - 1];
    for (std::size_t j = phi - 1; j > 0; --j) cur[j] = prev[j - 1];
    cur[0] = 0;
    if (top != 0)
      for (std::size_t j = 0; j < phi; ++j) cur[j] = checked_mul_sub(cur[j], top, poly[j]);
  }
  cache.emplace(n, f);
  return f;
}

std::vector<Rational> solve_rational(std::vector<std::vector<Rational>> m, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && sgn(m[piv][col]) == 0) ++piv;
    if (piv == n) throw DivisionByZero();
    std::swap(m[piv], m[col]);
    std::swap(b[piv], b[col]);
    Rational inv = 1 / m[col][col];
    for (std::size_t j = col; j < n; ++j) m[col][j] *= inv;
    b[col] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || sgn(m[r][col]) == 0) continue;
      Rational f = m[r][col];
      for (std::size_t j = col; j < n; ++j) m[r][j] -= f * m[col][j];
      b[r] -= f * b[col];
    }
  }
  return b;
}

}  // namespace

Cyclotomic lift_to(const Cyclotomic& a, std::uint64_t m) {
  if (a.n_ == m) return a;
  if (m % a.n_ != 0) throw ValidationError("cannot lift conductor " + std::to_string(a.n_) + " to " + std::to_string(m));
  auto f = field(m);
  std::vector<Rational> out(f ? f->phi : 1);
  const std::uint64_t step = m / a.n_;
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (sgn(a.c_[i]) == 0) continue;
    const long* row = f->row(i * step);
    for (std::size_t j = 0; j < out.size(); ++j)
      if (row[j] != 0) out[j] += a.c_[i] * row[j];
  }
  return Cyclotomic(m, std::move(out), std::move(f));
}

Cyclotomic::Cyclotomic() : c_(1) {}
Cyclotomic::Cyclotomic(long v) : c_{Rational(v)} {}
Cyclotomic::Cyclotomic(const Rational& q) : c_{q} { c_[0].canonicalize(); }

Cyclotomic Cyclotomic::rational(long num, long den) {
  if (den == 0) throw DivisionByZero();
  Rational q(num, den);
  q.canonicalize();
  return Cyclotomic(q);
}

Cyclotomic Cyclotomic::zeta(std::uint64_t n, std::int64_t k) {
  if (n == 0) throw ValidationError("root of unity order must be positive");
  auto f = field(n);
  if (!f) return Cyclotomic(1L);
  std::int64_t r = k % static_cast<std::int64_t>(n);
  if (r < 0) r += static_cast<std::int64_t>(n);
  const long* row = f->row(static_cast<std::uint64_t>(r));
  std::vector<Rational> c(f->phi);
  for (std::size_t j = 0; j < f->phi; ++j) c[j] = row[j];
  return Cyclotomic(n, std::move(c), std::move(f));
}

Cyclotomic Cyclotomic::from_coeffs(std::uint64_t n, std::vector<Rational> c) {
  if (n == 0) throw ValidationError("conductor must be positive");
  for (auto& q : c) q.canonicalize();
  auto f = field(n);
  const std::size_t phi = f ? f->phi : 1;
  if (n == 1) {
    Rational s;
    for (auto& q : c) s += q;
    return Cyclotomic(s);
  }
  if (c.size() <= phi) {
    c.resize(phi);
    return Cyclotomic(n, std::move(c), std::move(f));
  }
  std::vector<Rational> out(phi);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (sgn(c[i]) == 0) continue;
    const long* row = f->row(i);
    for (std::size_t j = 0; j < phi; ++j)
      if (row[j] != 0) out[j] += c[i] * row[j];
  }
  return Cyclotomic(n, std::move(out), std::move(f));
}

bool Cyclotomic::is_zero() const {
  for (auto& q : c_)
    if (sgn(q) != 0) return false;
  return true;
}

bool Cyclotomic::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (sgn(c_[i]) != 0) return false;
  return true;
}

bool Cyclotomic::is_one() const { return is_rational() && c_[0] == 1; }

Rational Cyclotomic::rational_value() const {
  if (!is_rational()) throw ValidationError("value " + str() + " is not rational");
  return c_[0];
}

Cyclotomic Cyclotomic::lifted(std::uint64_t m) const { return lift_to(*this, m); }

Cyclotomic Cyclotomic::simplified() const {
  if (n_ != 1 && is_rational()) return Cyclotomic(c_[0]);
  return *this;
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (auto& q : r.c_) q = -q;
  return r;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  if (n_ == o.n_) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  std::uint64_t m = lcm_u64(n_, o.n_);
  *this = lift_to(*this, m);
  Cyclotomic b = lift_to(o, m);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += b.c_[i];
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) { return *this += -o; }

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
  if (o.n_ == 1) {
    for (auto& q : c_) q *= o.c_[0];
    return *this;
  }
  if (n_ == 1) {
    Rational s = c_[0];
    *this = o;
    for (auto& q : c_) q *= s;
    return *this;
  }
  std::uint64_t m = lcm_u64(n_, o.n_);
  Cyclotomic a = lift_to(*this, m);
  Cyclotomic b = lift_to(o, m);
  const std::size_t phi = a.c_.size();
  std::vector<Rational> conv(2 * phi - 1);
  for (std::size_t i = 0; i < phi; ++i) {
    if (sgn(a.c_[i]) == 0) continue;
    for (std::size_t j = 0; j < phi; ++j)
      if (sgn(b.c_[j]) != 0) conv[i + j] += a.c_[i] * b.c_[j];
  }
  std::vector<Rational> out(conv.begin(), conv.begin() + phi);
  for (std::size_t k = phi; k < conv.size(); ++k) {
    if (sgn(conv[k]) == 0) continue;
    const long* row = a.f_->row(k);
    for (std::size_t j = 0; j < phi; ++j)
      if (row[j] != 0) out[j] += conv[k] * row[j];
  }
  n_ = m;
  c_ = std::move(out);
  f_ = a.f_;
  return *this;
}

Cyclotomic Cyclotomic::inv() const {
  if (is_zero()) throw DivisionByZero();
  if (n_ == 1) return Cyclotomic(Rational(1) / c_[0]);
  // Solve (a * x) = 1 column by column in the power basis.
  const std::size_t phi = c_.size();
  std::vector<std::vector<Rational>> m(phi, std::vector<Rational>(phi));
  for (std::size_t j = 0; j < phi; ++j) {
    Cyclotomic col = *this * zeta(n_, static_cast<std::int64_t>(j));
    for (std::size_t i = 0; i < phi; ++i) m[i][j] = col.c_[i];
  }
  std::vector<Rational> e(phi);
  e[0] = 1;
  return Cyclotomic(n_, solve_rational(std::move(m), std::move(e)), f_);
}

Cyclotomic& Cyclotomic::operator/=(const Cyclotomic& o) { return *this *= o.inv(); }

Cyclotomic Cyclotomic::conj() const {
  if (n_ == 1) return *this;
  std::vector<Rational> out(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (sgn(c_[i]) == 0) continue;
    const long* row = f_->row((n_ - i) % n_);
    for (std::size_t j = 0; j < out.size(); ++j)
      if (row[j] != 0) out[j] += c_[i] * row[j];
  }
  return Cyclotomic(n_, std::move(out), f_);
}

Cyclotomic Cyclotomic::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  Cyclotomic base = *this, r(1L);
  while (e > 0) {
    if (e & 1) r *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return r;
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.n_ == b.n_) return a.c_ == b.c_;
  if (a.is_rational() && b.is_rational()) return a.c_[0] == b.c_[0];
  std::uint64_t m = lcm_u64(a.n_, b.n_);
  return lift_to(a, m).c_ == lift_to(b, m).c_;
}

std::complex<double> Cyclotomic::approx() const {
  std::complex<double> s = 0;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (sgn(c_[i]) == 0) continue;
    double ang = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n_);
    s += c_[i].get_d() * std::polar(1.0, ang);
  }
  return s;
}

std::string Cyclotomic::str() const {
  if (is_rational()) return rational_string(c_[0]);
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (sgn(c_[i]) == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0) {
      os << rational_string(c_[i]);
      continue;
    }
    if (c_[i] != 1) os << "(" << rational_string(c_[i]) << ")*";
    os << "z" << n_;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

}  // namespace pifin
