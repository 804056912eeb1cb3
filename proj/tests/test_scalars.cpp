#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qboson/errors.hpp"
#include "qboson/field.hpp"

using namespace qb;

static const FieldSpec kQ{FieldMode::Transcendental, 0};
static const FieldSpec kZ5{FieldMode::Cyclotomic, 5};

static FieldElement Q(const char* text) { return FieldElement::parse(kQ, text); }

TEST_CASE("rational function arithmetic is canonical") {
  CHECK(Q("(q^4-1)/(q^2-1)") == Q("q^2+1"));
  CHECK(Q("(q^2-1)/(q-1)") == Q("q+1"));
  CHECK(Q("1/2+1/3") == Q("5/6"));
  CHECK(Q("q/(q+1) + 1/(q+1)") == FieldElement::one(kQ));
  CHECK(Q("(q+1)*(q-1)") == Q("q^2-1"));
  CHECK((Q("q") - Q("q")).is_zero());
  CHECK(Q("q^3").pow(-2) == Q("1/q^6"));
  CHECK(Q("2*q/(q^2-1)").inverse() == Q("(q^2-1)/(2*q)"));
}

TEST_CASE("string form round trips and stays reduced") {
  for (const char* text : {"0", "1", "-1", "q", "(q^2+1)/q^2", "q^2/(q^2-1)",
                           "(q^6+q^4+q^2+1)/q^6", "-1/2*q+3"}) {
    FieldElement x = Q(text);
    CHECK(FieldElement::parse(kQ, x.str()) == x);
  }
  CHECK(Q("(q^6+q^4+q^2+1)/(q^6)").str() == "(q^6 + q^4 + q^2 + 1)/(q^6)");
  CHECK(Q("(2*q^2-2)/(2*q-2)").str() == "q + 1");
}

TEST_CASE("q powers and gauss integers") {
  CHECK(FieldElement::q_power(kQ, 3) == Q("q^3"));
  CHECK(FieldElement::q_power(kQ, -2) == Q("1/q^2"));
  CHECK(FieldElement::q_power(kQ, -2) == FieldElement::q_power(kQ, 2).inverse());
  FieldElement v = FieldElement::q_power(kQ, 2);
  CHECK(FieldElement::gauss_integer(4, v) == Q("1+q^2+q^4+q^6"));
  CHECK(FieldElement::gauss_integer(1, v) == FieldElement::one(kQ));
  CHECK(FieldElement::gauss_integer(0, v).is_zero());
}

TEST_CASE("default-constructed zero joins any spec") {
  FieldElement z;
  CHECK(z.is_zero());
  CHECK(z + FieldElement::one(kZ5) == FieldElement::one(kZ5));
  CHECK((z * FieldElement::q_power(kQ, 5)).is_zero());
}

TEST_CASE("division by zero and malformed input throw") {
  CHECK_THROWS_AS(Q("1/(q-q)"), Error);
  CHECK_THROWS_AS(Q("q+"), Error);
  CHECK_THROWS_AS(Q("(q"), Error);
  CHECK_THROWS_AS(Q("z"), Error);  // z is the cyclotomic letter
  try {
    Q("q+*2");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Parse);
  }
}

TEST_CASE("cyclotomic residues mod Phi_5") {
  FieldElement zeta = FieldElement::q_power(kZ5, 1);
  CHECK(zeta.pow(5) == FieldElement::one(kZ5));
  FieldElement sum = FieldElement::zero(kZ5);
  for (int j = 0; j < 5; ++j) sum += zeta.pow(j);
  CHECK(sum.is_zero());
  // [5] at zeta^-2 vanishes, [t] for t < 5 does not
  FieldElement v = FieldElement::q_power(kZ5, -2);
  CHECK(FieldElement::gauss_integer(5, v).is_zero());
  for (unsigned t = 1; t < 5; ++t) CHECK(!FieldElement::gauss_integer(t, v).is_zero());
  FieldElement w = FieldElement::one(kZ5) - zeta;
  CHECK(w * w.inverse() == FieldElement::one(kZ5));
  CHECK(FieldElement::parse(kZ5, "z^4") == zeta.pow(-1));
}

TEST_CASE("fraction reduction survives gaussian factorial growth") {
  // Product of [k] factors and its stepwise quotient exercise the gcd path
  // with large structured numerators.
  FieldElement v = FieldElement::q_power(kQ, -2);
  FieldElement fact = FieldElement::one(kQ);
  for (unsigned k = 1; k <= 12; ++k) fact *= FieldElement::gauss_integer(k, v);
  FieldElement back = fact;
  for (unsigned k = 12; k >= 1; --k) back = back / FieldElement::gauss_integer(k, v);
  CHECK(back == FieldElement::one(kQ));
  CHECK(fact * fact.inverse() == FieldElement::one(kQ));
}
