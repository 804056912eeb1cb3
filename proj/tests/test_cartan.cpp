#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "test_util.hpp"

using namespace qb;
using qbtest::datum;

TEST_CASE("datum fields load") {
  auto d = datum(qbtest::kBorcherds);
  CHECK(d.rank() == 2);
  CHECK(d.labels() == std::vector<std::string>{"1", "2"});
  CHECK(d.a(0, 1) == -1);
  CHECK(d.a(1, 1) == 0);
  CHECK(d.sym(1) == 1);
  CHECK(d.mult(1) == 2);
  CHECK(d.field().mode == FieldMode::Transcendental);
  CHECK(d.index_of_label("2") == 1);
  CHECK_THROWS_AS(d.index_of_label("3"), Error);
}

TEST_CASE("generator roster orders node then copy") {
  auto d = datum(qbtest::kBorcherds);
  auto roster = d.generators();
  REQUIRE(roster.size() == 3);
  CHECK(roster[0] == GeneratorIndex{0, 1});
  CHECK(roster[1] == GeneratorIndex{1, 1});
  CHECK(roster[2] == GeneratorIndex{1, 2});
}

static void expect_rejected(nlohmann::json j) {
  try {
    CartanDatum::load(j);
    CHECK_MESSAGE(false, "datum should have been rejected: " << j.dump());
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Validation);
  }
}

TEST_CASE("invalid data are rejected") {
  auto base = nlohmann::json::parse(qbtest::kA2);

  auto j = base;
  j["cartan"][0][1] = 1;  // positive off-diagonal
  expect_rejected(j);

  j = base;
  j["cartan"][0][0] = 1;  // diagonal must be 2 or <= 0
  expect_rejected(j);

  j = base;
  j["symmetrizers"] = {1, 2};  // no longer symmetrizes
  expect_rejected(j);

  j = base;
  j["symmetrizers"] = {0, 0};
  expect_rejected(j);

  j = base;
  j["multiplicities"] = {1, 0};
  expect_rejected(j);

  j = base;
  j["labels"] = {"1", "1"};
  expect_rejected(j);

  j = base;
  j["field"] = {{"mode", "cyclotomic"}, {"order", 4}};  // even order
  expect_rejected(j);

  // G2 component with 3 | N
  j = base;
  j["cartan"] = {{2, -3}, {-1, 2}};
  j["symmetrizers"] = {1, 3};
  j["field"] = {{"mode", "cyclotomic"}, {"order", 9}};
  expect_rejected(j);
}

TEST_CASE("restriction produces the sub-datum") {
  auto d3 = datum(qbtest::kBorcherds3);
  auto sub = d3.restrict({0, 1});
  auto d2 = datum(qbtest::kBorcherds);
  CHECK(sub.to_json() == d2.to_json());
  CHECK(sub.digest() == d2.digest());
  auto single = d3.restrict({2});
  CHECK(single.rank() == 1);
  CHECK(single.a(0, 0) == -2);
  CHECK(single.labels()[0] == "3");
}

TEST_CASE("digest is stable and injective on the corpus") {
  auto a = datum(qbtest::kA2);
  CHECK(a.digest() == datum(qbtest::kA2).digest());
  CHECK(a.digest() == CartanDatum::load(a.to_json()).digest());
  CHECK(a.digest() != datum(qbtest::kSl2).digest());
  CHECK(datum(qbtest::kFlk5).digest() != datum(qbtest::kFlk3).digest());
}

TEST_CASE("braiding scalars follow q_ij = q^(-s_i a_ij)") {
  auto sl2 = datum(qbtest::kSl2);
  BraidingMatrix bs(sl2);
  CHECK(bs.q(0, 0) == FieldElement::q_power(sl2.field(), -2));

  auto a2 = datum(qbtest::kA2);
  BraidingMatrix ba(a2);
  CHECK(ba.q(0, 1) == FieldElement::q_power(a2.field(), 1));
  CHECK(ba.q_inv(0, 1) == ba.q(0, 1).inverse());

  auto bor = datum(qbtest::kBorcherds);
  BraidingMatrix bb(bor);
  CHECK(bb.q(1, 1) == FieldElement::one(bor.field()));

  auto f5 = datum(qbtest::kFlk5);
  BraidingMatrix b5(f5);
  CHECK(b5.q(0, 0) == FieldElement::q_power(f5.field(), 3));  // zeta^-2 = zeta^3
}
