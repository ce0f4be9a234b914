#include <doctest.h>

#include "tameblocks/atlas.hpp"
#include "tameblocks/error.hpp"
#include "tameblocks/twolocal.hpp"

using namespace tameblocks;
using namespace twolocal;
using perm::Perm;

TEST_CASE("frame on the regular semidihedral group") {
  auto sd16 = atlas::build("sd:n=4", 1).group;
  auto fr = semidihedral_frame(sd16);
  CHECK(fr.n == 4);
  CHECK(fr.s.order() == 8);
  CHECK(fr.t.order() == 2);
  CHECK(fr.z == fr.s.pow(4));
  CHECK(fr.t * fr.s * fr.t == fr.s.pow(3));
  CHECK(fr.Q.group.order() == 8);
  CHECK(fr.K.group.order() == 4);
  CHECK(fr.u.order() == 4);
  CHECK(fr.v.order() == 4);

  auto sd32 = atlas::build("sd:n=5", 1).group;
  auto fr5 = semidihedral_frame(sd32);
  CHECK(fr5.n == 5);
  CHECK(fr5.s.order() == 16);
}

TEST_CASE("dihedral and quaternion groups are rejected") {
  auto d16 = atlas::build("d:n=4", 1).group;
  CHECK_THROWS_AS(semidihedral_frame(d16), Error);
  try {
    semidihedral_frame(d16);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotSemidihedral);
  }
  auto q16 = atlas::build("q:n=4", 1).group;
  CHECK_THROWS_AS(semidihedral_frame(q16), Error);
}

TEST_CASE("frame on the Sylow subgroup of M11") {
  auto m11 = atlas::build("m11", 1).group;
  auto P = permgrp::sylow2(m11, 1);
  auto fr = semidihedral_frame(P.group);
  CHECK(fr.n == 4);
}

TEST_CASE("fusion patterns of the core roster") {
  struct Row {
    const char* recipe;
    const char* pattern;
  };
  for (auto& row : std::initializer_list<Row>{
           {"sd:n=4", "bb"},
           {"sl2pm:p=3,f=1", "ba"},
           {"su2pm:p=5,f=1", "ba"},
           {"pgl2star:p=3,f=1", "ab"},
           {"psl3:p=3,f=1", "aa"},
           {"m11", "aa"},
       }) {
    auto g = atlas::build(row.recipe, 1).group;
    auto P = permgrp::sylow2(g, 1);
    auto fr = semidihedral_frame(P.group);
    CHECK(fusion_pattern(g, fr).str() == row.pattern);
  }
}

TEST_CASE("fusion pattern requires a Sylow frame") {
  auto m11 = atlas::build("m11", 1).group;
  auto sd16 = atlas::build("sd:n=4", 1).group;  // wrong degree entirely
  auto fr = semidihedral_frame(sd16);
  CHECK_THROWS_AS(fusion_pattern(m11, fr), Error);
}

TEST_CASE("involution class counts") {
  auto m10 = atlas::build("pgl2star:p=3,f=1", 1).group;
  CHECK(involution_class_count(m10) == 1);
  auto psl33 = atlas::build("psl3:p=3,f=1", 1).group;
  CHECK(involution_class_count(psl33) == 1);
  auto sd16 = atlas::build("sd:n=4", 1).group;
  CHECK(involution_class_count(sd16) == 2);
}

TEST_CASE("centralizer bar structures") {
  // M11: C(z) of order 48, trivial odd core, GL2(3) fingerprint
  auto m11 = atlas::build("m11", 1).group;
  auto P1 = permgrp::sylow2(m11, 1);
  auto fr1 = semidihedral_frame(P1.group);
  auto cb1 = centralizer_bar(m11, fr1.z);
  CHECK(cb1.C.group.order() == 48);
  CHECK(cb1.odd_core_order == 1);
  auto gl23 = atlas::build("gl2_3", 1).group;
  CHECK(permgrp::fingerprint_match(cb1.Cbar, gl23));

  // PGL2*(9): C-bar has the fingerprint of the Sylow subgroup itself
  auto m10 = atlas::build("pgl2star:p=3,f=1", 1).group;
  auto P2 = permgrp::sylow2(m10, 1);
  auto fr2 = semidihedral_frame(P2.group);
  auto cb2 = centralizer_bar(m10, fr2.z);
  auto sd16 = atlas::build("sd:n=4", 1).group;
  CHECK(permgrp::fingerprint_match(cb2.Cbar, sd16));

  // PSU3(5): C-bar has the fingerprint of SU2pm(5)
  auto psu35 = atlas::build("psu3:p=5,f=1", 1).group;
  auto P3 = permgrp::sylow2(psu35, 1);
  auto fr3 = semidihedral_frame(P3.group);
  auto cb3 = centralizer_bar(psu35, fr3.z);
  auto su2pm5 = atlas::build("su2pm:p=5,f=1", 1).group;
  CHECK(permgrp::fingerprint_match(cb3.Cbar, su2pm5));
}

TEST_CASE("automorphism groups of semidihedral groups are 2-groups") {
  // no valid negative control exists among the 2-groups this operation
  // accepts, so only the positive claims are tested
  for (uint32_t n : {4u, 5u, 6u}) {
    auto sd = atlas::build("sd:n=" + std::to_string(n), 1).group;
    auto fr = semidihedral_frame(sd);
    auto [is2, count] = aut_is_2group(fr);
    CHECK(is2);
    CHECK(count == (uint64_t(1) << (2 * n - 4)));
  }
}

TEST_CASE("u and v never fuse inside P itself") {
  for (uint32_t n : {4u, 5u}) {
    auto sd = atlas::build("sd:n=" + std::to_string(n), 1).group;
    auto fr = semidihedral_frame(sd);
    CHECK(!permgrp::conjugating_witness(sd, fr.u, fr.v).has_value());
    // the pattern of P in itself is bb
    CHECK(fusion_pattern(sd, fr).str() == "bb");
  }
}

TEST_CASE("two-local report fragment") {
  auto m10 = atlas::build("pgl2star:p=3,f=1", 1).group;
  auto P = permgrp::sylow2(m10, 1);
  auto fr = semidihedral_frame(P.group);
  auto j = two_local_fragment(m10, fr);
  CHECK(j["n"] == 4);
  CHECK(j["pattern"] == "ab");
  CHECK(j["involution_classes"] == 1);
  CHECK(j["centralizer_bar_fingerprint"]["order"] == 16);
}
