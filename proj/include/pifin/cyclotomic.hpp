#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace pifin {

using Rational = mpq_class;

Rational parse_rational(const std::string& s);
std::string rational_string(const Rational& q);

// Largest conductor any value may be lifted to.
inline constexpr std::uint64_t kDefaultConductorBound = 1000000;
std::uint64_t conductor_bound();
void set_conductor_bound(std::uint64_t bound);

namespace detail {
struct FieldData;
}

// Element of Q(zeta_N), N = conductor, in the power basis mod Phi_N.
class Cyclotomic {
 public:
  Cyclotomic();
  Cyclotomic(long v);  // NOLINT
  Cyclotomic(const Rational& q);  // NOLINT
  static Cyclotomic rational(long num, long den);
  // zeta_n^k
  static Cyclotomic zeta(std::uint64_t n, std::int64_t k = 1);
  // Coefficients are reduced mod Phi_N if longer than phi(N).
  static Cyclotomic from_coeffs(std::uint64_t n, std::vector<Rational> c);

  std::uint64_t conductor() const { return n_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  Rational rational_value() const;

  Cyclotomic lifted(std::uint64_t m) const;
  // Same value at conductor 1 when rational, unchanged otherwise.
  Cyclotomic simplified() const;
  Cyclotomic inv() const;
  Cyclotomic conj() const;
  Cyclotomic pow(long e) const;

  std::complex<double> approx() const;
  std::string str() const;

  Cyclotomic operator-() const;
  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Cyclotomic& o);
  Cyclotomic& operator/=(const Cyclotomic& o);
  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

 private:
  std::uint64_t n_ = 1;
  std::vector<Rational> c_;
  std::shared_ptr<const detail::FieldData> f_;  // null at conductor 1

  Cyclotomic(std::uint64_t n, std::vector<Rational> c, std::shared_ptr<const detail::FieldData> f)
      : n_(n), c_(std::move(c)), f_(std::move(f)) {}
  friend Cyclotomic lift_to(const Cyclotomic&, std::uint64_t);
};

std::uint64_t euler_phi(std::uint64_t n);
std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);
// Coefficients of Phi_n, constant term first.
std::vector<long> cyclotomic_polynomial(std::uint64_t n);

}  // namespace pifin
