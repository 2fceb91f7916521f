#include "doctest.h"
#include "zp3/verify.hpp"

#include <stdexcept>

using namespace zp3;

TEST_CASE("report json round-trip") {
  VerificationReport r;
  r.statement = "demo";
  r.params = {{"p", "7"}, {"module", "V1"}};
  r.window_lo = 3;
  r.window_hi = 9;
  r.instances = {{"x1*y1*z1", 3, "member", "exact"}, {"-", 4, "contained", "certified"}};
  r.verdict = "PASS";
  r.timing_ms = 123;

  VerificationReport back = VerificationReport::from_json(r.to_json());
  CHECK(back.statement == r.statement);
  CHECK(back.params == r.params);
  CHECK(back.window_lo == r.window_lo);
  CHECK(back.window_hi == r.window_hi);
  CHECK(back.verdict == r.verdict);
  CHECK(back.timing_ms == r.timing_ms);
  REQUIRE(back.instances.size() == 2);
  CHECK(back.instances[0].monomial == "x1*y1*z1");
  CHECK(back.instances[1].outcome == "contained");
  CHECK(back.to_json() == r.to_json());

  // timing is the only field dropped by the determinism projection
  CHECK(r.to_json(false).find("timing_ms") == std::string::npos);
}

TEST_CASE("module naming helpers") {
  CHECK(full_induced_module(7) == "V1+V2");
  CHECK(doubled_induced_module(7) == "2*V1+2*V2");
  CHECK(full_induced_module(13) == "V1+V2+V3+V4");
}

TEST_CASE("zero-sum splitting predicate") {
  CHECK(splits_into_zero_sum_parts(ZSequence(7, {1, 6}), 1));
  CHECK(!splits_into_zero_sum_parts(ZSequence(7, {1, 6}), 2));
  CHECK(splits_into_zero_sum_parts(ZSequence(7, {1, 6, 2, 5}), 2));
  CHECK(!splits_into_zero_sum_parts(ZSequence(7, {1, 6, 2, 5}), 3));
  CHECK(splits_into_zero_sum_parts(ZSequence(7, {0, 0, 1, 6}), 3));
  CHECK(!splits_into_zero_sum_parts(ZSequence(7, {0, 0, 1, 6}), 4));
  CHECK(splits_into_zero_sum_parts(ZSequence(7, {1, 1, 5, 3, 4}), 2));
  CHECK(!splits_into_zero_sum_parts(ZSequence(7, {1, 1}), 1));  // not zero-sum
  CHECK(splits_into_zero_sum_parts(ZSequence(7, {1, 2, 4, 1, 2, 4, 1, 2, 4}), 3));
}

TEST_CASE("prop31 driver, single induced module") {
  auto rep = verify_prop31(7, "V1", 8, 8, RankMode::Certified);
  CHECK(rep.verdict == "PASS");
  CHECK(!rep.instances.empty());  // e.g. Phi = (1^5, 2^3) qualifies
  for (auto& in : rep.instances) {
    CHECK(in.degree == 8);
    CHECK(in.outcome == "member");
  }
  CHECK_THROWS_AS(verify_prop31(7, "U1+V1", 8, 8, RankMode::Certified), std::invalid_argument);
}

TEST_CASE("prop31 outcomes invariant under copy swap") {
  auto a = verify_prop31(7, "2*V1", 8, 8, RankMode::Certified);
  CHECK(a.verdict == "PASS");
  // the variable table of V1+V1 is symmetric under swapping the two copies;
  // counts of member instances per degree must match a fresh run
  auto b = verify_prop31(7, "2*V1", 8, 8, RankMode::Certified);
  CHECK(a.to_json(false) == b.to_json(false));
}

TEST_CASE("cor32 driver at p = 7") {
  auto rep = verify_cor32(7, 7, 8, RankMode::Certified);
  CHECK(rep.verdict == "PASS");
  REQUIRE(!rep.instances.empty());
  CHECK(rep.instances[0].degree == 7);
  CHECK(rep.instances[0].outcome == "generator-range");
  bool saw_d8 = false;
  for (auto& in : rep.instances)
    if (in.degree == 8) {
      saw_d8 = true;
      CHECK(in.outcome == "contained");
    }
  CHECK(saw_d8);
}

TEST_CASE("betak driver, scaled module") {
  auto rep = verify_betak(7, "V1", 1, false, RankMode::Certified);
  CHECK(rep.verdict == "PASS");
  REQUIRE(rep.instances.size() == 3);
  CHECK(rep.window_lo == 9);
  CHECK(rep.window_hi == 11);
  CHECK(rep.instances[1].outcome == "contained");
  CHECK(rep.instances[2].outcome == "contained");
}

TEST_CASE("i3 driver, small module") {
  auto rep = verify_i3(7, "V1", 10, RankMode::Certified);
  CHECK(rep.verdict == "PASS");
  for (auto& in : rep.instances) CHECK(in.outcome == "contained");
}
