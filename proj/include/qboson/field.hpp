#pragma once

#include <string>
#include <string_view>

#include "qboson/poly.hpp"

namespace qb {

enum class FieldMode { Transcendental, Cyclotomic };

struct FieldSpec {
  FieldMode mode = FieldMode::Transcendental;
  unsigned order = 0;  // root-of-unity order, 0 in transcendental mode
  bool operator==(const FieldSpec&) const = default;
};

// Exact scalar in Q(q) or Q(zeta_N).
//
// Transcendental mode keeps a canonical fraction num/den of polynomials in q:
// den monic, gcd(num, den) = 1, zero is 0/1. Cyclotomic mode keeps the residue
// num mod Phi_N (den stays 1). Zero elements combine with any spec so that
// default-constructed zeros in containers are harmless.
class FieldElement {
public:
  FieldElement() : num_(), den_(1) {}

  static FieldElement zero(const FieldSpec& s);
  static FieldElement one(const FieldSpec& s);
  static FieldElement from_rational(const FieldSpec& s, const Rational& c);
  static FieldElement from_int(const FieldSpec& s, long c);
  // The distinguished parameter: q^e (transcendental) or zeta_N^e (cyclotomic).
  static FieldElement q_power(const FieldSpec& s, long e);
  // [t]_x = 1 + x + ... + x^(t-1).
  static FieldElement gauss_integer(unsigned t, const FieldElement& x);

  const FieldSpec& spec() const { return spec_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement inverse() const;
  FieldElement pow(long e) const;
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

  bool operator==(const FieldElement& o) const;
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  // Canonical string; parse() accepts at least everything str() can produce
  // plus ordinary arithmetic expressions in q (resp. z).
  std::string str() const;
  static FieldElement parse(const FieldSpec& s, std::string_view text);

private:
  FieldElement(FieldSpec s, Poly num, Poly den, bool reduce = true);
  void normalize();
  static FieldSpec join(const FieldElement& a, const FieldElement& b);

  FieldSpec spec_;
  Poly num_;
  Poly den_;
};

}  // namespace qb
