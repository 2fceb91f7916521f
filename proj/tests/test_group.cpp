#include "doctest.h"
#include "zp3/group.hpp"

#include <set>

using namespace zp3;

TEST_CASE("find_r") {
  CHECK(find_r(7) == 2);
  CHECK(find_r(13) == 3);
  CHECK(find_r(31) == 5);
  CHECK_THROWS_AS(find_r(5), std::invalid_argument);   // 3 does not divide 4
  CHECK_THROWS_AS(find_r(9), std::invalid_argument);   // not prime
}

TEST_CASE("orbits of multiplication by r") {
  auto o7 = orbits(7, 2);
  REQUIRE(o7.size() == 2);
  CHECK(o7[0] == std::array<long, 3>{1, 2, 4});
  CHECK(o7[1] == std::array<long, 3>{3, 6, 5});

  auto o13 = orbits(13, 3);
  REQUIRE(o13.size() == 4);
  CHECK(o13[0] == std::array<long, 3>{1, 3, 9});
  CHECK(o13[1] == std::array<long, 3>{2, 6, 5});
  CHECK(o13[2] == std::array<long, 3>{4, 12, 10});
  CHECK(o13[3] == std::array<long, 3>{7, 8, 11});

  CHECK(orbits(31, 5).size() == 10);
}

TEST_CASE("orbit sets partition Z_p minus 0 and are closed under r") {
  for (long p : {7L, 13L, 31L}) {
    long r = find_r(p);
    std::set<long> all;
    for (auto& orb : orbits(p, r)) {
      for (long a : orb) {
        CHECK(a >= 1);
        CHECK(a < p);
        all.insert(a);
      }
      for (long a : orb) {
        bool closed = false;
        for (long b : orb) closed |= (b == a * r % p);
        CHECK(closed);
      }
    }
    CHECK((long)all.size() == p - 1);
  }
}

TEST_CASE("module spec grammar") {
  ModuleSpec m = ModuleSpec::parse("U1 + 2*V1 + 2* V2");
  CHECK(m.str() == "U1+2*V1+2*V2");
  CHECK(m.dimension() == 13);
  CHECK(ModuleSpec::parse("V1").dimension() == 3);
  CHECK_THROWS_AS(ModuleSpec::parse("U3"), std::invalid_argument);
  CHECK_THROWS_AS(ModuleSpec::parse("W1"), std::invalid_argument);
  CHECK_THROWS_AS(ModuleSpec::parse("2V1"), std::invalid_argument);
  CHECK_THROWS_AS(ModuleSpec::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(ModuleSpec::parse("V1+"), std::invalid_argument);
}

TEST_CASE("variable table: weights and ordering") {
  GroupSpec g(7, 2);

  VariableTable vt1(g, ModuleSpec::parse("V1"));
  REQUIRE(vt1.size() == 3);
  CHECK(vt1.var(0).weight == 1);
  CHECK(vt1.var(1).weight == 2);
  CHECK(vt1.var(2).weight == 4);

  VariableTable vtu(g, ModuleSpec::parse("U1"));
  REQUIRE(vtu.size() == 1);
  CHECK(vtu.var(0).weight == 0);
  CHECK(vtu.var(0).b_scalar_exp == 1);

  VariableTable vt4(g, ModuleSpec::parse("2*V1+2*V2"));
  REQUIRE(vt4.size() == 12);
  CHECK(vt4.instance_count() == 4);
  // second V2 copy carries orbit weights (3, 6, 5)
  CHECK(vt4.var(9).weight == 3);
  CHECK(vt4.var(10).weight == 6);
  CHECK(vt4.var(11).weight == 5);
  CHECK_THROWS_AS(VariableTable(g, ModuleSpec::parse("V3")), std::invalid_argument);
}

TEST_CASE("d-action on variables") {
  GroupSpec g(7, 2);
  VariableTable vt(g, ModuleSpec::parse("U1+V1"));
  // x (weight 1) -> y (weight 2) with scalar 1
  VarImage i = vt.act_variable({0, 1}, 1);
  CHECK(i.var == 2);
  CHECK(i.omega_exp == 0);
  CHECK(vt.var(i.var).weight == 2);
  // 1-dim variable picks up omega
  VarImage j = vt.act_variable({0, 1}, 0);
  CHECK(j.var == 0);
  CHECK(j.omega_exp == 1);
  // c-action scales by zeta_p^weight
  VarImage k = vt.act_variable({1, 0}, 1);
  CHECK(k.var == 1);
  CHECK(k.zeta_p_exp == 1);
}

TEST_CASE("presentation: composing actions matches the group law") {
  for (long p : {7L, 13L}) {
    GroupSpec g(p, find_r(p));
    VariableTable vt(g, ModuleSpec::parse("U1+V1+2*V2"));
    auto compose = [&](GroupElement a, GroupElement b, int var) {
      // x^(ab) computed as (x^a)^b
      VarImage first = vt.act_variable(a, var);
      VarImage second = vt.act_variable(b, first.var);
      return std::tuple<int, long, int>{
          second.var, (first.zeta_p_exp + second.zeta_p_exp) % p,
          (first.omega_exp + second.omega_exp) % 3};
    };
    std::vector<GroupElement> sample{{0, 1}, {1, 0}, {3, 2}, {p - 1, 1}, {2, 2}};
    for (auto a : sample)
      for (auto b : sample)
        for (int v = 0; v < vt.size(); ++v) {
          VarImage direct = vt.act_variable(vt.mul(a, b), v);
          auto [var2, z2, w2] = compose(a, b, v);
          CHECK(direct.var == var2);
          CHECK(direct.zeta_p_exp == z2);
          CHECK(direct.omega_exp == w2);
        }
    // d c d^{-1} = c^r on the variable table
    GroupElement d{0, 1}, c{1, 0};
    GroupElement lhs = vt.mul(vt.mul(d, c), vt.inv(d));
    CHECK(lhs == GroupElement{g.r, 0});
  }
}

TEST_CASE("action matrices generate a group of order exactly 3p") {
  GroupSpec g(7, 2);
  VariableTable vt(g, ModuleSpec::parse("U1+V1"));
  // closure under multiplication starting from the generators
  std::set<std::pair<long, int>> seen{{0, 0}};
  std::vector<GroupElement> frontier{{0, 0}};
  while (!frontier.empty()) {
    GroupElement e = frontier.back();
    frontier.pop_back();
    for (GroupElement gen : {GroupElement{1, 0}, GroupElement{0, 1}}) {
      GroupElement f = vt.mul(e, gen);
      if (seen.insert({f.a_exp, f.b_exp}).second) frontier.push_back(f);
    }
  }
  CHECK(seen.size() == 21);
  CHECK(vt.all_elements().size() == 21);
}
