#include <doctest.h>

#include <map>
#include <set>

#include "tameblocks/atlas.hpp"
#include "tameblocks/error.hpp"
#include "tameblocks/modrep2.hpp"
#include "tameblocks/twolocal.hpp"

using namespace tameblocks;
using namespace modrep2;
using perm::Perm;

TEST_CASE("permutation modules") {
  auto psl33 = atlas::build("psl3:p=3,f=1", 1).group;
  auto M = permgrp::point_stabilizer(psl33, 0);  // the index-13 maximal subgroup
  CHECK(M.group.order() == 432);
  GF2Module km = perm_module(&psl33, M.group);
  CHECK(km.dim() == 13);
  CHECK(fixed_dim(km) == 1);
  CHECK(cofixed_dim(km) == 1);

  GF2Module self = perm_module(&psl33, psl33);
  CHECK(self.dim() == 1);

  auto gl23 = atlas::build("gl2_3", 1).group;
  auto P = permgrp::sylow2(gl23, 1);
  GF2Module k3 = perm_module(&gl23, P.group);
  CHECK(k3.dim() == 3);
}

TEST_CASE("chop finds the composition factors") {
  auto psl33 = atlas::build("psl3:p=3,f=1", 1).group;
  auto M = permgrp::point_stabilizer(psl33, 0);
  GF2Module km = perm_module(&psl33, M.group);
  auto factors = chop(km, 21);
  REQUIRE(factors.size() == 2);
  CHECK(factors[0].module.dim() == 1);
  CHECK(factors[0].multiplicity == 1);
  CHECK(factors[1].module.dim() == 12);
  CHECK(factors[1].multiplicity == 1);

  auto gl23 = atlas::build("gl2_3", 1).group;
  auto P = permgrp::sylow2(gl23, 1);
  GF2Module k3 = perm_module(&gl23, P.group);
  auto f3 = chop(k3, 22);
  REQUIRE(f3.size() == 2);
  CHECK(f3[0].module.dim() == 1);
  CHECK(f3[1].module.dim() == 2);

  GF2Module triv = trivial_module(&gl23);
  auto ft = chop(triv, 23);
  REQUIRE(ft.size() == 1);
  CHECK(ft[0].module.dim() == 1);
}

TEST_CASE("split_summands on the paper modules") {
  auto psl33 = atlas::build("psl3:p=3,f=1", 1).group;
  auto M = permgrp::point_stabilizer(psl33, 0);
  GF2Module km = perm_module(&psl33, M.group);
  auto dec = split_summands(km, 31);
  REQUIRE(dec.summands.size() == 2);
  std::vector<uint32_t> dims{dec.summands[0].module.dim(), dec.summands[1].module.dim()};
  std::sort(dims.begin(), dims.end());
  CHECK(dims == std::vector<uint32_t>{1, 12});

  auto gl23 = atlas::build("gl2_3", 1).group;
  auto P = permgrp::sylow2(gl23, 1);
  GF2Module k3 = perm_module(&gl23, P.group);
  auto dec3 = split_summands(k3, 32);
  REQUIRE(dec3.summands.size() == 2);
  std::vector<uint32_t> dims3{dec3.summands[0].module.dim(), dec3.summands[1].module.dim()};
  std::sort(dims3.begin(), dims3.end());
  CHECK(dims3 == std::vector<uint32_t>{1, 2});
}

TEST_CASE("M + M splits into two copies of M") {
  auto gl23 = atlas::build("gl2_3", 1).group;
  auto P = permgrp::sylow2(gl23, 1);
  GF2Module k3 = perm_module(&gl23, P.group);
  auto dec3 = split_summands(k3, 33);
  const GF2Module* two = nullptr;
  for (auto& s : dec3.summands)
    if (s.module.dim() == 2) two = &s.module;
  REQUIRE(two != nullptr);

  GF2Module mm = direct_sum(*two, *two);
  auto dec = split_summands(mm, 34);
  REQUIRE(dec.summands.size() == 2);
  for (auto& s : dec.summands) {
    CHECK(s.module.dim() == 2);
    CHECK(module_iso(s.module, *two, 35).has_value());
  }
}

TEST_CASE("chop refines split_summands") {
  auto psl33 = atlas::build("psl3:p=3,f=1", 1).group;
  auto M = permgrp::point_stabilizer(psl33, 0);
  GF2Module km = perm_module(&psl33, M.group);
  auto whole = chop(km, 41);
  auto dec = split_summands(km, 42);
  std::multiset<uint32_t> from_whole, from_parts;
  for (auto& c : whole)
    for (uint32_t i = 0; i < c.multiplicity; ++i) from_whole.insert(c.module.dim());
  for (auto& s : dec.summands)
    for (auto& c : chop(s.module, 43))
      for (uint32_t i = 0; i < c.multiplicity; ++i) from_parts.insert(c.module.dim());
  CHECK(from_whole == from_parts);
}

TEST_CASE("scott modules") {
  auto gl23 = atlas::build("gl2_3", 1).group;
  GF2Module sc_self = scott_module(&gl23, gl23, 51);
  CHECK(sc_self.dim() == 1);

  auto P = permgrp::sylow2(gl23, 1);
  GF2Module sc_p = scott_module(&gl23, P.group, 52);
  CHECK(sc_p.dim() == 1);  // odd index: the trivial module splits off

  auto psl33 = atlas::build("psl3:p=3,f=1", 1).group;
  auto M = permgrp::point_stabilizer(psl33, 0);
  GF2Module sc_m = scott_module(&psl33, M.group, 53);
  CHECK(sc_m.dim() == 1);
  CHECK(fixed_dim(sc_m) == 1);
  CHECK(cofixed_dim(sc_m) == 1);
}

TEST_CASE("vertex brackets via Higman's criterion") {
  // the 12-dimensional simple module of the degree-13 group: vertex K
  auto psl33 = atlas::build("psl3:p=3,f=1", 1).group;
  auto Mx = permgrp::point_stabilizer(psl33, 0);
  GF2Module km = perm_module(&psl33, Mx.group);
  auto dec = split_summands(km, 61);
  const GF2Module* twelve = nullptr;
  for (auto& s : dec.summands)
    if (s.module.dim() == 12) twelve = &s.module;
  REQUIRE(twelve != nullptr);

  auto P = permgrp::sylow2(psl33, 1);
  auto fr = twolocal::semidihedral_frame(P.group);
  auto Z = permgrp::subgroup(psl33, {fr.z}, 1);
  auto U = permgrp::subgroup(psl33, {fr.u}, 1);
  auto V = permgrp::subgroup(psl33, {fr.v}, 1);
  auto S = permgrp::subgroup(psl33, {fr.s}, 1);
  auto D = permgrp::subgroup(psl33, {fr.s * fr.s, fr.t}, 1);
  CHECK(D.group.order() == 8);

  CHECK(is_relatively_projective(*twelve, fr.K.group));
  CHECK(is_relatively_projective(*twelve, D.group));
  CHECK(is_relatively_projective(*twelve, P.group));
  CHECK(!is_relatively_projective(*twelve, Z.group));
  CHECK(!is_relatively_projective(*twelve, U.group));
  CHECK(!is_relatively_projective(*twelve, V.group));
  CHECK(!is_relatively_projective(*twelve, fr.Q.group));
  CHECK(!is_relatively_projective(*twelve, S.group));

  // the 2-dimensional simple module of GL2(3): vertex Q8
  auto gl23 = atlas::build("gl2_3", 1).group;
  auto P2 = permgrp::sylow2(gl23, 1);
  GF2Module k3 = perm_module(&gl23, P2.group);
  auto dec3 = split_summands(k3, 62);
  const GF2Module* two = nullptr;
  for (auto& s : dec3.summands)
    if (s.module.dim() == 2) two = &s.module;
  REQUIRE(two != nullptr);
  auto fr2 = twolocal::semidihedral_frame(P2.group);
  auto U2 = permgrp::subgroup(gl23, {fr2.u}, 1);
  auto V2 = permgrp::subgroup(gl23, {fr2.v}, 1);
  CHECK(is_relatively_projective(*two, fr2.Q.group));
  CHECK(is_relatively_projective(*two, P2.group));
  CHECK(!is_relatively_projective(*two, U2.group));
  CHECK(!is_relatively_projective(*two, V2.group));
  CHECK(!is_relatively_projective(*two, fr2.K.group));

  // any module is projective relative to the whole group
  CHECK(is_relatively_projective(k3, gl23));
}

TEST_CASE("induction") {
  auto gl23 = atlas::build("gl2_3", 1).group;
  auto P = permgrp::sylow2(gl23, 1);
  // inducing the trivial module gives the permutation module
  GF2Module trivP = trivial_module(&P.group);
  GF2Module ind = induce(trivP, &gl23);
  GF2Module km = perm_module(&gl23, P.group);
  CHECK(ind.dim() == 3);
  CHECK(module_iso(ind, km, 71).has_value());

  // Mackey-flavoured check: restriction of the induced module keeps the
  // original as a direct summand
  auto sd16 = atlas::build("sd:n=4", 1).group;
  auto fr = twolocal::semidihedral_frame(sd16);
  auto Z = permgrp::subgroup(sd16, {fr.z}, 1);
  GF2Module m = perm_module(&fr.Q.group, Z.group);  // dim 4 over Q
  GF2Module up = induce(m, &sd16);
  CHECK(up.dim() == 8);
  GF2Module down = restrict_to(up, &fr.Q.group);
  auto m_parts = split_summands(m, 72);
  auto down_parts = split_summands(down, 73);
  for (auto& mp : m_parts.summands) {
    bool found = false;
    for (auto& dp : down_parts.summands)
      if (dp.module.dim() == mp.module.dim() && module_iso(dp.module, mp.module, 74)) {
        found = true;
        break;
      }
    CHECK(found);
  }
}

TEST_CASE("pim counts") {
  permgrp::PermGroup s3({Perm::from_cycles(3, {{0, 1}}), Perm::from_cycles(3, {{0, 1, 2}})}, 1);
  CHECK(pim_count(s3) == 2);
  permgrp::PermGroup triv({Perm::identity(1)}, 1);
  CHECK(pim_count(triv) == 1);
  auto gl23 = atlas::build("gl2_3", 1).group;
  CHECK(pim_count(gl23) == 2);
}

TEST_CASE("module json round trip") {
  auto gl23 = atlas::build("gl2_3", 1).group;
  auto P = permgrp::sylow2(gl23, 1);
  GF2Module km = perm_module(&gl23, P.group);
  auto j = km.to_json();
  GF2Module back = GF2Module::from_json(j, &gl23);
  CHECK(back.dim() == km.dim());
  CHECK(back.action() == km.action());
}

TEST_CASE("hom spaces and isomorphism") {
  auto gl23 = atlas::build("gl2_3", 1).group;
  GF2Module t1 = trivial_module(&gl23);
  auto ends = hom_space(t1, t1);
  CHECK(ends.size() == 1);

  auto P = permgrp::sylow2(gl23, 1);
  GF2Module km = perm_module(&gl23, P.group);
  auto dec = split_summands(km, 81);
  const GF2Module *one = nullptr, *two = nullptr;
  for (auto& s : dec.summands) (s.module.dim() == 1 ? one : two) = &s.module;
  REQUIRE((one && two));
  CHECK(hom_space(*one, *two).empty());
  CHECK(!module_iso(*one, *two, 82).has_value());
  CHECK(module_iso(*one, t1, 83).has_value());
}
