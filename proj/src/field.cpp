#include "qboson/field.hpp"

#include <cctype>

#include "qboson/errors.hpp"

namespace qb {

namespace {

unsigned euler_phi(unsigned n) {
  unsigned result = n;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

Poly mod_cyclotomic(const Poly& p, unsigned order) {
  if (p.degree() < static_cast<int>(euler_phi(order))) return p;
  Poly q, r;
  Poly::divmod(p, Poly::cyclotomic(order), q, r);
  return r;
}

// Extended Euclid in Q[x]: returns (g, u) with u*a == g mod m, g = gcd(a, m).
void half_ext_gcd(const Poly& a, const Poly& m, Poly& g, Poly& u) {
  Poly r0 = a, r1 = m;
  Poly u0(1L), u1;
  while (!r1.is_zero()) {
    Poly q, r;
    Poly::divmod(r0, r1, q, r);
    Poly u2 = u0 - q * u1;
    r0 = r1;
    r1 = r;
    u0 = u1;
    u1 = u2;
  }
  g = r0;
  u = u0;
}

}  // namespace

FieldElement::FieldElement(FieldSpec s, Poly num, Poly den, bool reduce)
    : spec_(s), num_(std::move(num)), den_(std::move(den)) {
  if (reduce) {
    normalize();
    return;
  }
  // caller guarantees gcd(num, den) = 1 already; only fix zero and scale monic
  if (num_.is_zero()) {
    den_ = Poly(1L);
    return;
  }
  Rational lead = den_.leading();
  if (lead != 1) {
    Rational inv = Rational(1) / lead;
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

FieldElement FieldElement::zero(const FieldSpec& s) { return FieldElement(s, Poly(), Poly(1L)); }

FieldElement FieldElement::one(const FieldSpec& s) { return FieldElement(s, Poly(1L), Poly(1L)); }

FieldElement FieldElement::from_rational(const FieldSpec& s, const Rational& c) {
  return FieldElement(s, Poly(c), Poly(1L));
}

FieldElement FieldElement::from_int(const FieldSpec& s, long c) {
  return FieldElement(s, Poly(c), Poly(1L));
}

FieldElement FieldElement::q_power(const FieldSpec& s, long e) {
  if (s.mode == FieldMode::Cyclotomic) {
    long r = e % static_cast<long>(s.order);
    if (r < 0) r += s.order;
    return FieldElement(s, Poly::monomial(static_cast<int>(r)), Poly(1L));
  }
  if (e >= 0) return FieldElement(s, Poly::monomial(static_cast<int>(e)), Poly(1L));
  return FieldElement(s, Poly(1L), Poly::monomial(static_cast<int>(-e)));
}

FieldElement FieldElement::gauss_integer(unsigned t, const FieldElement& x) {
  FieldElement acc = zero(x.spec());
  FieldElement p = one(x.spec());
  for (unsigned i = 0; i < t; ++i) {
    acc += p;
    p *= x;
  }
  return acc;
}

void FieldElement::normalize() {
  if (spec_.mode == FieldMode::Cyclotomic) {
    if (!den_.is_one()) throw internal_error("cyclotomic element with nontrivial denominator");
    num_ = mod_cyclotomic(num_, spec_.order);
    return;
  }
  if (num_.is_zero()) {
    den_ = Poly(1L);
    return;
  }
  Poly g = Poly::gcd(num_, den_);
  if (g.degree() > 0) {
    Poly q, r;
    Poly::divmod(num_, g, q, r);
    num_ = q;
    Poly::divmod(den_, g, q, r);
    den_ = q;
  }
  Rational lead = den_.leading();
  if (lead != 1) {
    Rational inv = Rational(1) / lead;
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

FieldSpec FieldElement::join(const FieldElement& a, const FieldElement& b) {
  if (a.is_zero()) return b.spec_;
  if (b.is_zero()) return a.spec_;
  if (!(a.spec_ == b.spec_)) throw internal_error("mixed field specs in scalar arithmetic");
  return a.spec_;
}

bool FieldElement::is_one() const { return num_.is_one() && den_.is_one(); }

FieldElement FieldElement::operator+(const FieldElement& o) const {
  FieldSpec s = join(*this, o);
  if (s.mode == FieldMode::Cyclotomic) return FieldElement(s, num_ + o.num_, Poly(1L));
  if (den_ == o.den_) return FieldElement(s, num_ + o.num_, den_);
  // sum over the lcm of the denominators rather than their product
  Poly g = Poly::gcd(den_, o.den_);
  if (g.degree() > 0) {
    Poly q, r;
    Poly::divmod(o.den_, g, q, r);
    Poly cob = q;  // o.den_ / g
    Poly::divmod(den_, g, q, r);
    return FieldElement(s, num_ * cob + o.num_ * q, den_ * cob);
  }
  return FieldElement(s, num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

FieldElement FieldElement::operator-(const FieldElement& o) const { return *this + (-o); }

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  r.num_ = -r.num_;
  return r;
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  FieldSpec s = join(*this, o);
  if (is_zero() || o.is_zero()) return zero(s);
  if (s.mode == FieldMode::Cyclotomic) return FieldElement(s, num_ * o.num_, Poly(1L));
  // cross-reduce before multiplying; both inputs are canonical, so the result
  // is already in lowest terms and needs no further gcd
  Poly n1 = num_, d2 = o.den_;
  Poly g = Poly::gcd(n1, d2);
  if (g.degree() > 0) {
    Poly q, r;
    Poly::divmod(n1, g, q, r);
    n1 = q;
    Poly::divmod(d2, g, q, r);
    d2 = q;
  }
  Poly n2 = o.num_, d1 = den_;
  g = Poly::gcd(n2, d1);
  if (g.degree() > 0) {
    Poly q, r;
    Poly::divmod(n2, g, q, r);
    n2 = q;
    Poly::divmod(d1, g, q, r);
    d1 = q;
  }
  return FieldElement(s, n1 * n2, d1 * d2, false);
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw internal_error("inverse of zero scalar");
  if (spec_.mode == FieldMode::Cyclotomic) {
    Poly g, u;
    half_ext_gcd(num_, Poly::cyclotomic(spec_.order), g, u);
    if (g.degree() != 0) throw internal_error("non-invertible cyclotomic residue");
    return FieldElement(spec_, u.scaled(Rational(1) / g.coeff(0)), Poly(1L));
  }
  return FieldElement(spec_, den_, num_);
}

FieldElement FieldElement::operator/(const FieldElement& o) const { return *this * o.inverse(); }

FieldElement FieldElement::pow(long e) const {
  FieldSpec s = spec_;
  if (e == 0) return one(s);
  FieldElement base = e < 0 ? inverse() : *this;
  unsigned long n = e < 0 ? -static_cast<unsigned long>(e) : static_cast<unsigned long>(e);
  FieldElement acc = one(base.spec());
  while (n > 0) {
    if (n & 1) acc *= base;
    base *= base;
    n >>= 1;
  }
  return acc;
}

bool FieldElement::operator==(const FieldElement& o) const {
  if (is_zero() && o.is_zero()) return true;
  if (is_zero() != o.is_zero()) return false;
  if (!(spec_ == o.spec_)) return false;
  return num_ == o.num_ && den_ == o.den_;
}

std::string FieldElement::str() const {
  char sym = spec_.mode == FieldMode::Cyclotomic ? 'z' : 'q';
  if (den_.is_one()) return num_.str(sym);
  return "(" + num_.str(sym) + ")/(" + den_.str(sym) + ")";
}

namespace {

// Recursive-descent parser over +, -, *, /, ^, parentheses, integers, and the
// field symbol. * and / share precedence (left-assoc); ^ takes an integer
// exponent which may be negative.
class ScalarParser {
public:
  ScalarParser(FieldSpec spec, std::string_view text) : spec_(spec), text_(text) {}

  FieldElement run() {
    FieldElement v = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return v;
  }

private:
  FieldElement expr() {
    FieldElement v = term();
    for (;;) {
      skip_ws();
      if (accept('+')) {
        v += term();
      } else if (accept('-')) {
        v -= term();
      } else {
        return v;
      }
    }
  }

  FieldElement term() {
    FieldElement v = factor();
    for (;;) {
      skip_ws();
      if (accept('*')) {
        v *= factor();
      } else if (accept('/')) {
        FieldElement d = factor();
        if (d.is_zero()) fail("division by zero");
        v = v / d;
      } else {
        return v;
      }
    }
  }

  FieldElement factor() {
    skip_ws();
    if (accept('-')) return -factor();
    if (accept('+')) return factor();
    FieldElement v = primary();
    skip_ws();
    if (accept('^')) {
      long e = parse_exponent();
      v = v.pow(e);
    }
    return v;
  }

  FieldElement primary() {
    skip_ws();
    if (accept('(')) {
      FieldElement v = expr();
      skip_ws();
      if (!accept(')')) fail("expected ')'");
      return v;
    }
    char sym = spec_.mode == FieldMode::Cyclotomic ? 'z' : 'q';
    if (pos_ < text_.size() && text_[pos_] == sym) {
      ++pos_;
      return FieldElement::q_power(spec_, 1);
    }
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      Rational c(std::string(text_.substr(start, pos_ - start)));
      return FieldElement::from_rational(spec_, c);
    }
    fail("expected scalar token");
    return FieldElement();
  }

  long parse_exponent() {
    skip_ws();
    bool neg = false;
    if (accept('-')) neg = true;
    skip_ws();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("expected integer exponent");
    long e = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      e = e * 10 + (text_[pos_] - '0');
      if (e > 1000000) fail("exponent too large");
      ++pos_;
    }
    return neg ? -e : e;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) {
    throw parse_error("scalar parse error at offset " + std::to_string(pos_) + ": " + what +
                      " in \"" + std::string(text_) + "\"");
  }

  FieldSpec spec_;
  std::string_view text_;
  size_t pos_ = 0;
};

}  // namespace

FieldElement FieldElement::parse(const FieldSpec& s, std::string_view text) {
  return ScalarParser(s, text).run();
}

}  // namespace qb
