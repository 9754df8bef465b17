#pragma once

// Exact arithmetic in cyclotomic fields.
//
// A value is stored at its minimal conductor n (never n = 2 mod 4) as a
// sparse combination of the Zumbroich basis of Q(zeta_n). Because that
// basis representation is unique, equality is structural comparison.

#include <gmpxx.h>

#include <map>
#include <string>

namespace shimura {

using Rational = mpq_class;

class Cyclotomic {
 public:
  Cyclotomic() = default;
  Cyclotomic(long value);  // NOLINT(google-explicit-constructor)
  Cyclotomic(const Rational& value);  // NOLINT(google-explicit-constructor)

  // zeta_n^k for any integer k.
  static Cyclotomic zeta(int n, long k = 1);

  int conductor() const { return conductor_; }
  // exponent k -> coefficient of zeta_conductor^k, basis exponents only.
  const std::map<int, Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const { return coeffs_.empty(); }
  bool is_rational() const { return conductor_ == 1; }

  // Throw NotRational / NotIntegral when the value is not of that kind.
  Rational as_rational() const;
  long long as_integer() const;

  Cyclotomic conjugate() const;
  Cyclotomic real_part() const;
  // Field automorphism zeta_n -> zeta_n^k; k must be coprime to the conductor.
  Cyclotomic galois(long k) const;
  // Throws DivisionByZero for zero.
  Cyclotomic inverse() const;

  // "c0 + c1*z(n)^k + ..." with exact rationals; "0" for zero.
  std::string str() const;

  Cyclotomic& operator+=(const Cyclotomic& other);
  Cyclotomic& operator-=(const Cyclotomic& other);
  Cyclotomic& operator*=(const Cyclotomic& other);
  Cyclotomic& operator/=(const Cyclotomic& other);

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }
  Cyclotomic operator-() const;

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    return a.conductor_ == b.conductor_ && a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

 private:
  Cyclotomic(int conductor, std::map<int, Rational> coeffs);

  // Rewrites arbitrary exponents into the basis and minimizes the conductor.
  static Cyclotomic normalize(int conductor, const std::map<int, Rational>& raw);
  std::map<int, Rational> lifted_to(int conductor) const;

  friend Cyclotomic scale(const Cyclotomic& a, const Rational& q);

  int conductor_ = 1;
  std::map<int, Rational> coeffs_;
};

Cyclotomic scale(const Cyclotomic& a, const Rational& q);

std::string rational_str(const Rational& q);

}  // namespace shimura
