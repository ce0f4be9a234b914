#pragma once

#include <string>

#include "tameblocks/permgrp.hpp"

namespace tameblocks::atlas {

enum class Family { SD, D, Q, C, SL2pm, SU2pm, PGL2star, PSL3, PSU3, GL2_3, M11 };
const char* to_string(Family f);

/// Symbolic descriptor of a constructible group. The CLI syntax is
/// family:key=value,...  e.g. "sd:n=4", "sl2pm:p=3,f=3,d=3", "psl3:p=3,f=1",
/// "m11". Field-twist extensions use d (odd divisor of f); the diagonal-outer
/// part of the .H cases uses e.
struct GroupRecipe {
  Family family = Family::SD;
  uint32_t p = 0;  // odd prime
  uint32_t f = 1;  // field exponent
  uint32_t d = 1;  // adjoined field-automorphism order
  uint32_t e = 1;  // diagonal-outer order (psl3/psu3 only)
  uint32_t n = 0;  // 2-exponent for SD/D/Q
  uint32_t m = 0;  // order for family C

  static GroupRecipe parse(const std::string& text);  // RecipeInvalid
  std::string format() const;

  /// Checks the family arithmetic constraints; returns the Sylow-2 exponent.
  uint32_t validate() const;  // RecipeInvalid
  uint64_t expected_order() const;
};

struct BuildOptions {
  uint64_t max_order = 2'000'000;
  uint32_t max_degree = 20'000;
};

struct AtlasGroup {
  GroupRecipe recipe;
  permgrp::PermGroup group;
  std::string provenance;
  uint32_t n = 0;
};

AtlasGroup build(const GroupRecipe& r, uint64_t seed, const BuildOptions& opt = {});
AtlasGroup build(const std::string& recipe, uint64_t seed, const BuildOptions& opt = {});

/// Class labels of the classification's canonical list.
enum class ClassTag { BB, BA1, BA2, AB, AA1, AA2 };
const char* to_string(ClassTag t);

/// The family member with the smallest prime power satisfying the class's
/// 2-part condition at exponent n.
GroupRecipe canonical_rep(ClassTag cls, uint32_t n);

/// The three index-2 overgroups of PSL2(q) in PGammaL2(q), q = p^{2f}:
/// needed to check that the starred group is the third one.
permgrp::PermGroup build_psl2(uint32_t p, uint32_t twof, uint64_t seed);
permgrp::PermGroup build_pgl2(uint32_t p, uint32_t twof, uint64_t seed);
permgrp::PermGroup build_psigmal2(uint32_t p, uint32_t twof, uint64_t seed);

/// M11 from explicit generators, with the verification gates (order, class
/// count, simplicity). Exposed so tests can fault-inject corrupted data.
permgrp::PermGroup build_m11_from(const std::vector<perm::Perm>& gens, uint64_t seed);

}  // namespace tameblocks::atlas
