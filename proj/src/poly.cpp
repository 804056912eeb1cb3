#include "qboson/poly.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "qboson/errors.hpp"

namespace qb {

Poly::Poly(const Rational& c) {
  if (c != 0) c_.push_back(c);
}

Poly::Poly(long c) {
  if (c != 0) c_.push_back(Rational(c));
}

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::monomial(int deg, const Rational& c) {
  Poly p;
  if (c == 0) return p;
  p.c_.assign(deg + 1, Rational(0));
  p.c_[deg] = c;
  return p;
}

bool Poly::is_one() const { return c_.size() == 1 && c_[0] == 1; }

Rational Poly::coeff(int d) const {
  if (d < 0 || d >= static_cast<int>(c_.size())) return Rational(0);
  return c_[d];
}

const Rational& Poly::leading() const {
  if (c_.empty()) throw internal_error("leading coefficient of zero polynomial");
  return c_.back();
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::operator+(const Poly& o) const {
  Poly r;
  r.c_.resize(std::max(c_.size(), o.c_.size()), Rational(0));
  for (size_t i = 0; i < r.c_.size(); ++i) {
    if (i < c_.size()) r.c_[i] += c_[i];
    if (i < o.c_.size()) r.c_[i] += o.c_[i];
  }
  r.trim();
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r;
  if (is_zero() || o.is_zero()) return r;
  r.c_.assign(c_.size() + o.c_.size() - 1, Rational(0));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) {
      if (o.c_[j] == 0) continue;
      r.c_[i + j] += c_[i] * o.c_[j];
    }
  }
  r.trim();
  return r;
}

Poly Poly::scaled(const Rational& c) const {
  Poly r;
  if (c == 0) return r;
  r.c_ = c_;
  for (auto& x : r.c_) x *= c;
  return r;
}

void Poly::divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  if (b.is_zero()) throw internal_error("polynomial division by zero");
  q = Poly();
  r = a;
  int db = b.degree();
  const Rational& lb = b.leading();
  while (!r.is_zero() && r.degree() >= db) {
    int d = r.degree() - db;
    Rational f = r.leading() / lb;
    if (q.c_.size() < static_cast<size_t>(d + 1)) q.c_.resize(d + 1, Rational(0));
    q.c_[d] += f;
    for (int i = 0; i <= db; ++i) {
      if (b.c_[i] == 0) continue;
      r.c_[i + d] -= f * b.c_[i];
    }
    r.trim();
  }
  q.trim();
}

namespace {

// Integer polynomial scratch for the primitive remainder sequence. Euclid over
// Q suffers catastrophic coefficient growth; working with primitive integer
// polynomials keeps the numbers small.
using ZPoly = std::vector<mpz_class>;

void ztrim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

mpz_class zcontent(const ZPoly& a) {
  mpz_class g = 0;
  for (const auto& c : a) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

void zprimitive(ZPoly& a) {
  if (a.empty()) return;
  mpz_class g = zcontent(a);
  if (g == 1) return;
  for (auto& c : a) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

ZPoly zfrom(const Poly& p) {
  mpz_class lcm = 1;
  for (const auto& c : p.coeffs())
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
  ZPoly v(p.coeffs().size());
  for (size_t i = 0; i < v.size(); ++i) {
    const Rational& c = p.coeffs()[i];
    mpz_class scale;
    mpz_divexact(scale.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
    v[i] = mpz_class(c.get_num()) * scale;
  }
  zprimitive(v);
  return v;
}

}  // namespace

Poly Poly::gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  ZPoly x = zfrom(a), y = zfrom(b);
  if (x.size() < y.size()) x.swap(y);
  while (!y.empty()) {
    // pseudo-remainder of x by y, taken primitive before the next round
    ZPoly r = x;
    const int dy = static_cast<int>(y.size()) - 1;
    while (static_cast<int>(r.size()) - 1 >= dy) {
      const int shift = static_cast<int>(r.size()) - 1 - dy;
      mpz_class lr = r.back();
      if (y.back() != 1)
        for (auto& c : r) c *= y.back();
      for (int i = 0; i <= dy; ++i) r[i + shift] -= lr * y[i];
      ztrim(r);
    }
    zprimitive(r);
    x.swap(y);
    y.swap(r);
  }
  std::vector<Rational> coeffs(x.size());
  for (size_t i = 0; i < x.size(); ++i) coeffs[i] = Rational(x[i]);
  return Poly(std::move(coeffs)).monic();
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scaled(Rational(1) / leading());
}

std::string Poly::str(char sym) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int d = degree(); d >= 0; --d) {
    const Rational& c = c_[d];
    if (c == 0) continue;
    bool neg = c < 0;
    Rational a = neg ? Rational(-c) : c;
    if (first) {
      if (neg) out << "-";
      first = false;
    } else {
      out << (neg ? " - " : " + ");
    }
    if (d == 0) {
      out << a.get_str();
    } else {
      if (a != 1) out << a.get_str() << "*";
      out << sym;
      if (d > 1) out << "^" << d;
    }
  }
  return out.str();
}

namespace {

// x^n - 1 divided by the product of all proper cyclotomic divisors.
const Poly& cyclotomic_rec(unsigned n, std::map<unsigned, Poly>& memo) {
  auto it = memo.find(n);
  if (it != memo.end()) return it->second;
  std::vector<Rational> xn(n + 1, Rational(0));
  xn[0] = -1;
  xn[n] = 1;
  Poly num{std::vector<Rational>(xn)};
  for (unsigned d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    const Poly& phi = cyclotomic_rec(d, memo);
    Poly q, r;
    Poly::divmod(num, phi, q, r);
    if (!r.is_zero()) throw internal_error("cyclotomic division not exact");
    num = q;
  }
  return memo.emplace(n, num).first->second;
}

}  // namespace

const Poly& Poly::cyclotomic(unsigned n) {
  static std::map<unsigned, Poly> memo;
  static std::mutex mu;
  if (n == 0) throw internal_error("cyclotomic(0)");
  std::lock_guard<std::mutex> lk(mu);
  return cyclotomic_rec(n, memo);
}

}  // namespace qb
