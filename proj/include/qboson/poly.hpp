#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace qb {

using Rational = mpq_class;

// Dense univariate polynomial over the rationals. Coefficient vector never has
// trailing zeros, so the representation is canonical and equality is memberwise.
class Poly {
public:
  Poly() = default;
  explicit Poly(const Rational& c);
  explicit Poly(long c);
  explicit Poly(std::vector<Rational> coeffs);

  static Poly monomial(int deg, const Rational& c = Rational(1));

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for the zero polynomial
  bool is_zero() const { return c_.empty(); }
  bool is_one() const;
  Rational coeff(int d) const;
  const Rational& leading() const;
  const std::vector<Rational>& coeffs() const { return c_; }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly scaled(const Rational& c) const;

  // Exact division with remainder: a = q*b + r, deg r < deg b.
  static void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);
  // Monic greatest common divisor.
  static Poly gcd(const Poly& a, const Poly& b);
  Poly monic() const;

  bool operator==(const Poly& o) const { return c_ == o.c_; }

  std::string str(char sym) const;

  // n-th cyclotomic polynomial, computed by exact division and memoized.
  static const Poly& cyclotomic(unsigned n);

private:
  void trim();
  std::vector<Rational> c_;
};

}  // namespace qb
