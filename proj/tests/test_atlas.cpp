#include <doctest.h>

#include "tameblocks/atlas.hpp"
#include "tameblocks/error.hpp"
#include "tameblocks/permgrp.hpp"

using namespace tameblocks;
using namespace atlas;
using perm::Perm;

TEST_CASE("roster orders match the closed formulas") {
  struct Row {
    const char* recipe;
    uint64_t order;
    uint32_t n;
  };
  for (auto& row : std::initializer_list<Row>{
           {"sd:n=4", 16, 4},
           {"sl2pm:p=3,f=1", 48, 4},
           {"su2pm:p=5,f=1", 240, 4},
           {"pgl2star:p=3,f=1", 720, 4},
           {"psl3:p=3,f=1", 5616, 4},
           {"m11", 7920, 4},
           {"gl2_3", 48, 4},
           {"sd:n=5", 32, 5},
           {"sl2pm:p=7,f=1", 672, 5},
       }) {
    auto g = build(row.recipe, 11);
    CHECK(g.group.order() == row.order);
    CHECK(g.n == row.n);
    CHECK(g.group.order() == g.recipe.expected_order());
  }
}

TEST_CASE("recipe parse and format round trip") {
  for (const char* text : {"sd:n=4", "sl2pm:p=3,f=3,d=3", "pgl2star:p=3,f=1", "psl3:p=3,f=1",
                           "psu3:p=5,f=1", "m11", "gl2_3", "c:m=6", "q:n=3", "d:n=3"}) {
    auto r = GroupRecipe::parse(text);
    CHECK(GroupRecipe::parse(r.format()).format() == r.format());
  }
}

TEST_CASE("invalid recipes are rejected") {
  // 4(5+1)_2 = 8 < 16: no semidihedral Sylow for sl2pm at q=5
  CHECK_THROWS_AS(GroupRecipe::parse("sl2pm:p=5,f=1"), Error);
  CHECK_THROWS_AS(GroupRecipe::parse("su2pm:p=3,f=1"), Error);
  CHECK_THROWS_AS(GroupRecipe::parse("sl2pm:p=4,f=1"), Error);
  CHECK_THROWS_AS(GroupRecipe::parse("sl2pm:p=3,f=2,d=2"), Error);
  CHECK_THROWS_AS(GroupRecipe::parse("sd:n=3"), Error);
  CHECK_THROWS_AS(GroupRecipe::parse("nosuch:p=3"), Error);
  try {
    GroupRecipe::parse("sl2pm:p=5,f=1");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RecipeInvalid);
  }
  // arithmetically fine but beyond the desk budget
  CHECK_THROWS_AS(build("psu3:p=3,f=2", 1), Error);
  try {
    build("psu3:p=3,f=2", 1);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BudgetExceeded);
  }
}

TEST_CASE("psu3(5) builds with the right order and degree") {
  auto g = build("psu3:p=5,f=1", 11);
  CHECK(g.group.order() == 126000);
  CHECK(g.group.degree() == 126);
  CHECK(g.n == 4);
}

TEST_CASE("su2pm(5) and the field-twist extension") {
  auto g = build("su2pm:p=5,f=1", 11);
  CHECK(g.group.order() == 240);
  auto tw = build("sl2pm:p=3,f=3,d=3", 11);
  CHECK(tw.group.order() == 3 * 39312 / 3 * 3);  // 2*27*(729-1) * 3
  CHECK(tw.group.order() == 117936);
}

TEST_CASE("pgl2star(9) is the third subgroup") {
  auto star = build("pgl2star:p=3,f=1", 11).group;
  CHECK(star.order() == 720);
  auto psl29 = build_psl2(3, 2, 11);
  CHECK(psl29.order() == 360);
  auto pgl29 = build_pgl2(3, 2, 11);
  auto psig = build_psigmal2(3, 2, 11);
  CHECK(pgl29.order() == 720);
  CHECK(psig.order() == 720);
  // contains PSL2(9) with index 2
  for (auto& g : psl29.generators()) CHECK(star.contains(g));
  // differs from both other intermediate subgroups
  CHECK(!permgrp::fingerprint_match(star, pgl29));
  CHECK(!permgrp::fingerprint_match(star, psig));
  CHECK(!permgrp::fingerprint_match(pgl29, psig));
}

TEST_CASE("m11 data corruption is caught") {
  Perm a = Perm::from_cycles(11, {{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10}});
  Perm bad = Perm::from_cycles(11, {{2, 6, 10, 7}});  // half the real generator
  CHECK_THROWS_AS(build_m11_from({a, bad}, 1), Error);
  try {
    build_m11_from({a, bad}, 1);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DataCorrupt);
  }
}

TEST_CASE("canonical representatives") {
  auto r1 = canonical_rep(ClassTag::BA1, 4);
  CHECK(r1.format() == "sl2pm:p=3,f=1");
  auto r2 = canonical_rep(ClassTag::AA2, 4);
  CHECK(r2.format() == "psu3:p=5,f=1");
  auto r3 = canonical_rep(ClassTag::BB, 5);
  CHECK(r3.format() == "sd:n=5");
  CHECK(canonical_rep(ClassTag::BA1, 5).format() == "sl2pm:p=7,f=1");
  CHECK(canonical_rep(ClassTag::BA2, 4).format() == "su2pm:p=5,f=1");
  CHECK(canonical_rep(ClassTag::BA2, 5).format() == "su2pm:p=3,f=2");
  CHECK(canonical_rep(ClassTag::AB, 4).format() == "pgl2star:p=3,f=1");
  CHECK(canonical_rep(ClassTag::AB, 5).format() == "pgl2star:p=7,f=1");
  CHECK(canonical_rep(ClassTag::AA1, 4).format() == "psl3:p=3,f=1");
}

TEST_CASE("sylow subgroups of the roster have the declared two-part") {
  for (const char* recipe : {"sl2pm:p=3,f=1", "pgl2star:p=3,f=1", "psl3:p=3,f=1", "m11"}) {
    auto g = build(recipe, 11);
    auto p = permgrp::sylow2(g.group, 1);
    CHECK(p.group.order() == (uint64_t(1) << g.n));
  }
}
