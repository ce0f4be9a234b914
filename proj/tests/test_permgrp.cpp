#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "tameblocks/atlas.hpp"
#include "tameblocks/error.hpp"
#include "tameblocks/permgrp.hpp"

using namespace tameblocks;
using perm::Perm;
using perm::Point;
using namespace permgrp;

namespace {

// Independent oracle for small groups given by an explicit multiplication
// table: here the semidihedral group of order 16 from its presentation,
// elements s^a t^b encoded as 2a + b.
struct Sd16Table {
  static constexpr int N = 16;
  int mul(int x, int y) const {
    int a = x / 2, b = x % 2, c = y / 2, d = y % 2;
    int aa = (a + (b ? 3 * c : c)) % 8;
    return 2 * aa + (b + d) % 2;
  }
  int inv(int x) const {
    for (int y = 0; y < N; ++y)
      if (mul(x, y) == 0) return y;
    return -1;
  }
  int class_count() const {
    std::set<int> seen;
    int classes = 0;
    for (int x = 0; x < N; ++x) {
      if (seen.count(x)) continue;
      ++classes;
      for (int g = 0; g < N; ++g) seen.insert(mul(mul(inv(g), x), g));
    }
    return classes;
  }
  bool conjugate(int x, int y) const {
    for (int g = 0; g < N; ++g)
      if (mul(mul(inv(g), x), g) == y) return true;
    return false;
  }
};

PermGroup symmetric3() {
  return PermGroup({Perm::from_cycles(3, {{0, 1}}), Perm::from_cycles(3, {{0, 1, 2}})}, 1);
}

PermGroup symmetric4() {
  return PermGroup({Perm::from_cycles(4, {{0, 1}}), Perm::from_cycles(4, {{0, 1, 2, 3}})}, 1);
}

}  // namespace

TEST_CASE("chain orders for the standard examples") {
  auto sd16 = atlas::build("sd:n=4", 7);
  CHECK(sd16.group.order() == 16);
  CHECK(sd16.group.degree() == 16);

  auto m11 = atlas::build("m11", 7);
  CHECK(m11.group.order() == 7920);
  // cross-check by orbit-stabilizer: transitive on 11 points, stabilizer 720
  CHECK(m11.group.orbit_of(0).size() == 11);
  auto stab = point_stabilizer(m11.group, 0);
  CHECK(stab.group.order() == 720);

  auto psl33 = atlas::build("psl3:p=3,f=1", 7);
  CHECK(psl33.group.order() == 5616);
  CHECK(psl33.group.degree() == 13);
}

TEST_CASE("membership and word factorization") {
  auto m11 = atlas::build("m11", 3).group;
  Rng rng(42);
  for (int i = 0; i < 20; ++i) {
    Perm g = m11.random_element(rng);
    CHECK(m11.contains(g));
    auto word = m11.factor_word(g);
    CHECK(m11.evaluate_word(word) == g);
  }
  // a transposition is not in M11 (it is not even)
  CHECK(!m11.contains(Perm::from_cycles(11, {{0, 1}})));
}

TEST_CASE("centralizer and orbit-stabilizer identity") {
  auto m11 = atlas::build("m11", 3).group;
  // centralizer of the identity is the whole group
  auto c_id = centralizer(m11, Perm::identity(11));
  CHECK(c_id.group.order() == m11.order());

  // an involution has centralizer of order 48
  Rng rng(5);
  Perm invol;
  do {
    invol = m11.random_element(rng).two_part_power();
  } while (invol.order() != 2);
  auto c = centralizer(m11, invol);
  CHECK(c.group.order() == 48);

  for (int i = 0; i < 25; ++i) {
    Perm x = m11.random_element(rng);
    auto cx = centralizer(m11, x);
    // |G| = |C(x)| * |class(x)| is checked inside; verify commutation too
    for (auto& gen : cx.group.generators()) CHECK(gen * x == x * gen);
  }
  CHECK_THROWS_AS(centralizer(m11, Perm::from_cycles(11, {{0, 1}})), Error);
}

TEST_CASE("conjugacy witness and classes against the table oracle") {
  auto sd16 = atlas::build("sd:n=4", 7).group;
  Sd16Table oracle;
  CHECK(oracle.class_count() == 7);
  CHECK(sd16.conjugacy_classes(1000).size() == 7);

  // s^a t^b in the regular action corresponds to the table element 2a+b:
  // generator s moves the identity point 0 to point idx(s) = 2.
  Perm s = sd16.generators()[0];
  Perm t = sd16.generators()[1];
  Perm z = s.pow(4);
  CHECK(!conjugating_witness(sd16, t, z).has_value());
  CHECK(!oracle.conjugate(1 /*t*/, 2 * 4 /*s^4*/));

  auto w = conjugating_witness(sd16, s, s.pow(3));
  REQUIRE(w.has_value());
  CHECK(s.conjugated_by(*w) == s.pow(3));
  CHECK(oracle.conjugate(2 * 1, 2 * 3));

  // identity witness for x == y
  auto wid = conjugating_witness(sd16, t, t);
  REQUIRE(wid.has_value());

  auto gl23 = atlas::build("gl2_3", 7).group;
  CHECK(gl23.conjugacy_classes(1000).size() == 8);
  auto c2 = atlas::build("c:m=2", 7).group;
  CHECK(c2.conjugacy_classes(1000).size() == 2);
}

TEST_CASE("class sizes sum to the order and satisfy orbit-stabilizer") {
  for (const char* recipe : {"sd:n=4", "gl2_3", "m11"}) {
    auto g = atlas::build(recipe, 11).group;
    uint64_t total = 0;
    for (auto& c : g.conjugacy_classes(10'000)) {
      total += c.size;
      auto cent = centralizer(g, c.rep);
      CHECK(cent.group.order() * c.size == g.order());
    }
    CHECK(total == g.order());
  }
}

TEST_CASE("sylow 2-subgroups") {
  auto sd16 = atlas::build("sd:n=4", 7).group;
  auto p1 = sylow2(sd16, 1);
  CHECK(p1.group.order() == 16);

  auto m11 = atlas::build("m11", 7).group;
  auto p2 = sylow2(m11, 1);
  CHECK(p2.group.order() == 16);

  auto s3 = symmetric3();
  CHECK(sylow2(s3, 1).group.order() == 2);
  auto c3 = atlas::build("c:m=3", 7).group;
  CHECK(sylow2(c3, 1).group.order() == 1);
}

TEST_CASE("normalizer quotients in M11") {
  auto m11 = atlas::build("m11", 7).group;
  CHECK(normalizer(m11, m11).group.order() == m11.order());

  auto P = sylow2(m11, 1);
  auto N = normalizer(m11, P.group);
  CHECK(N.group.order() == P.group.order());  // N(P)/P = 1
}

TEST_CASE("odd core") {
  auto sd16 = atlas::build("sd:n=4", 7).group;
  CHECK(o2prime(sd16).group.order() == 1);

  auto m11 = atlas::build("m11", 7).group;
  CHECK(o2prime(m11).group.order() == 1);

  auto gl23 = atlas::build("gl2_3", 7).group;
  auto c3 = atlas::build("c:m=3", 7).group;
  auto prod = direct_product(gl23, c3, 9);
  auto core = o2prime(prod);
  CHECK(core.group.order() == 3);
  CHECK(is_normal(prod, core.group));
}

TEST_CASE("normal closure of a Sylow 2-subgroup") {
  auto sd32 = atlas::build("sd:n=5", 7).group;
  CHECK(o_upper_2prime(sd32, 1).group.order() == 32);

  auto m10 = atlas::build("pgl2star:p=3,f=1", 7).group;
  CHECK(o_upper_2prime(m10, 1).group.order() == 720);
}

TEST_CASE("quotients") {
  auto m11 = atlas::build("m11", 7).group;
  auto triv = subgroup(m11, {Perm::identity(11)}, 1);
  auto copy = quotient_by(m11, triv.group, 2);
  CHECK(copy.order() == m11.order());

  // GL2(3) / center has the fingerprint of S4
  auto gl23 = atlas::build("gl2_3", 7).group;
  Perm minus_one;
  for (auto& c : gl23.conjugacy_classes(100))
    if (c.rep_order == 2 && c.size == 1) minus_one = c.rep;
  auto Z = subgroup(gl23, {minus_one}, 1);
  auto pgl = quotient_by(gl23, Z.group, 2);
  CHECK(pgl.order() == 24);
  CHECK(fingerprint_match(pgl, symmetric4()));

  // SD16 / <z> is dihedral of order 8
  auto sd16 = atlas::build("sd:n=4", 7).group;
  Perm z = sd16.generators()[0].pow(4);
  auto q = quotient_by(sd16, subgroup(sd16, {z}, 1).group, 2);
  auto d8 = atlas::build("d:n=3", 7).group;
  CHECK(fingerprint_match(q, d8));

  // non-normal subgroup is rejected
  auto s4 = symmetric4();
  auto sub = subgroup(s4, {Perm::from_cycles(4, {{0, 1}})}, 1);
  CHECK_THROWS_AS(quotient_by(s4, sub.group, 2), Error);
}

TEST_CASE("fingerprints separate and match as they should") {
  auto sd16a = atlas::build("sd:n=4", 7).group;
  // regenerate with shuffled generators: same group, same fingerprint
  std::vector<Perm> shuffled = {sd16a.generators()[1],
                                sd16a.generators()[0] * sd16a.generators()[1]};
  PermGroup sd16b(shuffled, 99);
  CHECK(sd16b.order() == 16);
  CHECK(fingerprint_match(sd16a, sd16b));

  auto d8 = atlas::build("d:n=3", 7).group;
  auto q8 = atlas::build("q:n=3", 7).group;
  CHECK(!fingerprint_match(d8, q8));

  auto fp = fingerprint(sd16a);
  CHECK(fp.order == 16);
  CHECK(fp.class_count == 7);
  CHECK(fp.center_order == 2);
  CHECK(fp.derived_order == 4);
  CHECK(fp.abelian_invariants == std::vector<uint64_t>{2, 2});
}

TEST_CASE("fingerprint of M11 centralizer matches GL2(3)") {
  auto m11 = atlas::build("m11", 7).group;
  Rng rng(5);
  Perm invol;
  do {
    invol = m11.random_element(rng).two_part_power();
  } while (invol.order() != 2);
  auto c = centralizer(m11, invol);
  auto gl23 = atlas::build("gl2_3", 7).group;
  CHECK(fingerprint_match(c.group, gl23));
}

TEST_CASE("determinism: identical inputs give identical chains") {
  auto a = atlas::build("psl3:p=3,f=1", 7).group;
  auto b = atlas::build("psl3:p=3,f=1", 7).group;
  CHECK(a.chain_digest() == b.chain_digest());
  CHECK(a.canonical_json() == b.canonical_json());

  Rng r1(123), r2(123);
  for (int i = 0; i < 10; ++i) CHECK(a.random_element(r1) == b.random_element(r2));
}

TEST_CASE("group json round trip is bit-exact") {
  auto g = atlas::build("sd:n=4", 5).group;
  std::string s1 = g.canonical_json();
  PermGroup back = PermGroup::from_json(nlohmann::json::parse(s1));
  CHECK(back.canonical_json() == s1);
  CHECK(back.order() == g.order());

  nlohmann::json bad = {{"degree", 3}, {"generators", {{0, 0, 1}}}};
  CHECK_THROWS_AS(PermGroup::from_json(bad), Error);
}

TEST_CASE("element enumeration is complete and deterministic") {
  auto gl23 = atlas::build("gl2_3", 7).group;
  auto elems = gl23.elements(100);
  CHECK(elems.size() == 48);
  std::set<std::vector<Point>> uniq;
  for (auto& e : elems) {
    CHECK(gl23.contains(e));
    uniq.insert(e.images());
  }
  CHECK(uniq.size() == 48);
  CHECK_THROWS_AS(atlas::build("m11", 7).group.elements(100), Error);
}

TEST_CASE("coset table basics") {
  auto s4 = symmetric4();
  auto stab = point_stabilizer(s4, 0);
  CHECK(stab.group.order() == 6);
  auto t = coset_table(s4, stab.group);
  CHECK(t.count == 4);
  // the coset action of S4 on 4 cosets is again S4
  PermGroup img(t.action, 1);
  CHECK(img.order() == 24);
}

TEST_CASE("stabilizer chain cache round trip") {
  // the cache must reproduce the uncached chain exactly
  auto fresh = atlas::build("psl3:p=3,f=1", 77).group;
  std::string dir = "/tmp/tameblocks_cache_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  setenv("TAMEBLOCKS_CACHE", dir.c_str(), 1);
  auto first = atlas::build("psl3:p=3,f=1", 77).group;   // writes the cache
  auto second = atlas::build("psl3:p=3,f=1", 77).group;  // loads it
  unsetenv("TAMEBLOCKS_CACHE");
  CHECK(first.chain_digest() == fresh.chain_digest());
  CHECK(second.chain_digest() == fresh.chain_digest());
  CHECK(second.order() == 5616);
  bool has_file = false;
  for (auto& e : std::filesystem::directory_iterator(dir)) has_file = has_file || e.is_regular_file();
  CHECK(has_file);

  // corrupt cache entries are ignored, not trusted
  for (auto& e : std::filesystem::directory_iterator(dir)) {
    std::ofstream out(e.path());
    out << "{\"garbage\": true}";
  }
  setenv("TAMEBLOCKS_CACHE", dir.c_str(), 1);
  auto third = atlas::build("psl3:p=3,f=1", 77).group;
  unsetenv("TAMEBLOCKS_CACHE");
  CHECK(third.chain_digest() == fresh.chain_digest());
  std::filesystem::remove_all(dir);
}
