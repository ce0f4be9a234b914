#include <doctest.h>

#include "tameblocks/atlas.hpp"
#include "tameblocks/classifier.hpp"
#include "tameblocks/error.hpp"

using namespace tameblocks;
using namespace classifier;
using perm::Perm;

TEST_CASE("odd core reduction") {
  auto m11 = atlas::build("m11", 1).group;
  auto [gbar, core] = reduce_odd_core(m11);
  CHECK(core == 1);
  CHECK(gbar.order() == 7920);

  auto gl23 = atlas::build("gl2_3", 1).group;
  auto c3 = atlas::build("c:m=3", 1).group;
  auto prod = permgrp::direct_product(gl23, c3, 5);
  auto [qbar, core2] = reduce_odd_core(prod);
  CHECK(core2 == 3);
  CHECK(qbar.order() == 48);
  CHECK(permgrp::fingerprint_match(qbar, gl23));

  // idempotent
  auto [qbar2, core3] = reduce_odd_core(qbar);
  CHECK(core3 == 1);
  CHECK(qbar2.order() == 48);

  auto sd32 = atlas::build("sd:n=5", 1).group;
  auto [sbar, core4] = reduce_odd_core(sd32);
  CHECK(core4 == 1);
  CHECK(sbar.order() == 32);
}

TEST_CASE("recognition of the structural cases") {
  struct Row {
    const char* recipe;
    Thm31Case expected;
  };
  for (auto& row : std::initializer_list<Row>{
           {"sd:n=4", Thm31Case::bb},
           {"sd:n=5", Thm31Case::bb},
           {"sl2pm:p=3,f=1", Thm31Case::ba1},
           {"su2pm:p=5,f=1", Thm31Case::ba2},
           {"pgl2star:p=3,f=1", Thm31Case::ab},
           {"psl3:p=3,f=1", Thm31Case::aa1},
           {"psu3:p=5,f=1", Thm31Case::aa2},
           {"m11", Thm31Case::aa3},
       }) {
    auto g = atlas::build(row.recipe, 3).group;
    auto P = permgrp::sylow2(g, 3);
    auto fr = twolocal::semidihedral_frame(P.group);
    auto rec = recognize(g, fr, 3);
    CHECK(rec.thm31 == row.expected);
  }
}

TEST_CASE("recognize the twisted member with its parameters") {
  permgrp::Budgets big;
  big.class_order = 2'000'000;
  auto g = atlas::build("sl2pm:p=3,f=3,d=3", 3).group;
  auto P = permgrp::sylow2(g, 3);
  auto fr = twolocal::semidihedral_frame(P.group);
  auto rec = recognize(g, fr, 3, big);
  CHECK(rec.thm31 == Thm31Case::ba1);
  CHECK(rec.p == 3);
  CHECK(rec.f == 3);
  CHECK(rec.ext_order == 3);
}

TEST_CASE("classification round trips") {
  auto m11 = atlas::build("m11", 9).group;
  auto rep = classify(m11, 9);
  CHECK(rep.cls.tag == atlas::ClassTag::AA1);
  CHECK(rep.n == 4);
  CHECK(rep.canonical.format() == "psl3:p=3,f=1");
  CHECK(rep.thm31 == Thm31Case::aa3);
  CHECK(rep.pattern == "aa");
  CHECK(rep.verified);
  CHECK(rep.invariants.ell == 3);

  auto sd32 = atlas::build("sd:n=5", 9).group;
  auto rep2 = classify(sd32, 9);
  CHECK(rep2.cls.tag == atlas::ClassTag::BB);
  CHECK(rep2.n == 5);
  CHECK(rep2.canonical.format() == "sd:n=5");
  CHECK(rep2.invariants.ell == 1);
  CHECK(rep2.invariants.k_count == 11);  // class count of the order-32 group

  auto su = atlas::build("su2pm:p=5,f=1", 9).group;
  auto rep3 = classify(su, 9);
  CHECK(rep3.cls.tag == atlas::ClassTag::BA2);
  CHECK(rep3.canonical.format() == "su2pm:p=5,f=1");
  CHECK(rep3.invariants.has_cartan);
  CHECK(rep3.invariants.cartan.entries == std::vector<int64_t>{8, 4, 4, 3});
}

TEST_CASE("classification sees through an odd direct factor") {
  auto gl23 = atlas::build("gl2_3", 9).group;
  auto c3 = atlas::build("c:m=3", 9).group;
  auto prod = permgrp::direct_product(gl23, c3, 9);
  auto rep = classify(prod, 9);
  CHECK(rep.o2prime_order == 3);
  CHECK(rep.cls.tag == atlas::ClassTag::BA1);
  CHECK(rep.canonical.format() == "sl2pm:p=3,f=1");
  CHECK(rep.verified);
}

TEST_CASE("dihedral input fails loudly") {
  auto d16 = atlas::build("d:n=4", 9).group;
  CHECK_THROWS_AS(classify(d16, 9), Error);
  try {
    classify(d16, 9);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotSemidihedral);
  }
}

TEST_CASE("report json carries the asserted flag and ledger") {
  auto gl23 = atlas::build("gl2_3", 9).group;
  auto rep = classify(gl23, 9);
  auto j = rep.to_json();
  CHECK(j["scott_statement_flag"] == "paper-asserted");
  CHECK(j["class"] == "BA1");
  CHECK(j["verified"] == true);
  CHECK(j["ledger"].is_array());
  CHECK(j["ledger"].size() >= 5);
  for (auto& e : j["ledger"]) CHECK(e["status"] == "pass");
  CHECK(j["invariants"]["k"] == 8);  // single block: k(B0) is the class count
}

TEST_CASE("verdicts are seed independent") {
  auto m11 = atlas::build("m11", 1).group;
  auto v1 = classify(m11, 101).verdict().dump();
  auto v2 = classify(m11, 202).verdict().dump();
  auto v3 = classify(m11, 303).verdict().dump();
  CHECK(v1 == v2);
  CHECK(v2 == v3);
}
