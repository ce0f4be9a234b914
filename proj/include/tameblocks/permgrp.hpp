#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tameblocks/perm.hpp"
#include "tameblocks/rng.hpp"

namespace tameblocks::permgrp {

using perm::Perm;
using perm::Point;

/// Resource ceilings for the enumeration-flavoured operations. These are the
/// documented defaults; callers may relax them explicitly where an operation
/// is known to stay desk-scale.
struct Budgets {
  uint64_t class_order = 1'000'000;    // full conjugacy-class enumeration
  uint64_t coset_count = 100'000;      // normalizer / quotient transversals
  uint64_t subgroup_enum = 100'000;    // |H| when H must be listed element-wise
  uint64_t abelian_quotient = 100'000; // G/[G,G] enumeration for invariants
};

struct WordLetter {
  uint32_t gen;
  bool inverse;
};

/// One factor in a strong generator's defining expression: either an original
/// generator (from_pool = false) or an earlier strong generator (pool index).
struct SgenRef {
  bool from_pool;
  uint32_t idx;
  bool inverse;
};

class StabChain;

struct ConjClass {
  Perm rep;
  uint64_t size;
  uint64_t rep_order;
};

/// Finite permutation group with an eagerly built stabilizer chain.
/// Immutable after construction; queries are const and thread-safe.
/// Identical (generators, seed) inputs produce identical chains.
class PermGroup {
public:
  PermGroup(std::vector<Perm> generators, uint64_t seed);

  uint32_t degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return gens_; }
  uint64_t seed() const { return seed_; }
  uint64_t order() const;
  bool is_trivial() const { return order() == 1; }

  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  bool contains(const Perm& g) const;
  Perm random_element(Rng& rng) const;

  std::vector<Point> base() const;
  uint32_t strong_generator_count() const;
  const Perm& strong_generator(uint32_t i) const;
  /// Word for strong generator i in terms of the original generators.
  const std::vector<WordLetter>& strong_generator_word(uint32_t i) const;
  /// Short expression for strong generator i over original generators and
  /// strictly earlier strong generators.
  const std::vector<SgenRef>& strong_generator_recipe(uint32_t i) const;
  /// Member factorization as a product of strong generators (no inverses).
  std::vector<uint32_t> factor_strong(const Perm& g) const;  // NotMember
  /// Member factorization in the original generators.
  std::vector<WordLetter> factor_word(const Perm& g) const;
  Perm evaluate_word(const std::vector<WordLetter>& w) const;

  /// Deterministic enumeration; return false from the visitor to stop early.
  void for_each_element(const std::function<bool(const Perm&)>& fn) const;
  std::vector<Perm> elements(uint64_t budget) const;  // TooLarge beyond budget

  std::vector<Point> orbit_of(Point p) const;

  /// Conjugacy classes by exhaustive enumeration, cached after first success.
  const std::vector<ConjClass>& conjugacy_classes(uint64_t order_budget) const;

  nlohmann::json to_json() const;
  std::string canonical_json() const;
  static PermGroup from_json(const nlohmann::json& j);

  /// Digest of the chain structure (base, orbits, strong generators); equal
  /// digests witness byte-identical chains.
  std::string chain_digest() const;

private:
  friend PermGroup group_from_chain(std::vector<Perm>, uint64_t, std::shared_ptr<const StabChain>);
  PermGroup() = default;

  uint32_t degree_ = 0;
  uint64_t seed_ = 0;
  std::vector<Perm> gens_;
  std::string name_;
  std::shared_ptr<const StabChain> chain_;

  struct ClassCache;
  std::shared_ptr<ClassCache> classes_;
};

/// Subgroup handle: generators live in the parent's symmetric group and are
/// verified members of the parent. The parent pointer is non-owning; keep the
/// parent alive for the handle's lifetime.
struct Subgroup {
  const PermGroup* parent = nullptr;
  PermGroup group;
};

Subgroup subgroup(const PermGroup& parent, std::vector<Perm> gens, uint64_t seed);

/// C_G(x) by orbit-stabilizer on the conjugation action; |G| = |C| * |x^G|.
Subgroup centralizer(const PermGroup& G, const Perm& x);

/// Conjugating witness g with g^{-1} x g = y, if the two are G-conjugate.
std::optional<Perm> conjugating_witness(const PermGroup& G, const Perm& x, const Perm& y);

Subgroup point_stabilizer(const PermGroup& G, Point p);

/// Sylow 2-subgroup by normalizer ascent, deterministic given the seed.
Subgroup sylow2(const PermGroup& G, uint64_t seed, const Budgets& budgets = {});

Subgroup normalizer(const PermGroup& G, const PermGroup& H, const Budgets& budgets = {});

Subgroup normal_closure(const PermGroup& G, const std::vector<Perm>& seeds, uint64_t seed);
Subgroup derived_subgroup(const PermGroup& G, uint64_t seed);

/// Largest normal subgroup of odd order, via odd normal closures of class
/// representatives.
Subgroup o2prime(const PermGroup& G, const Budgets& budgets = {});

/// O^{2'}(G): normal closure of a Sylow 2-subgroup; the quotient has odd order.
Subgroup o_upper_2prime(const PermGroup& G, uint64_t seed, const Budgets& budgets = {});

struct CosetTable {
  uint32_t count = 0;
  std::vector<Perm> reps;    // reps[0] is the identity; coset i = H * reps[i]
  std::vector<Perm> action;  // one permutation of cosets per G-generator
};

/// Right cosets of H in G with the right-multiplication action.
CosetTable coset_table(const PermGroup& G, const PermGroup& H, const Budgets& budgets = {});

bool is_normal(const PermGroup& G, const PermGroup& N);

/// G/N as a faithful permutation group on the cosets of N (or an isomorphic
/// copy of G when N is trivial).
PermGroup quotient_by(const PermGroup& G, const PermGroup& N, uint64_t seed,
                      const Budgets& budgets = {});

struct Fingerprint {
  uint64_t order = 0;
  uint32_t class_count = 0;
  std::vector<std::pair<uint64_t, uint64_t>> class_profile;  // sorted (element order, size)
  uint64_t center_order = 0;
  uint64_t derived_order = 0;
  std::vector<uint64_t> abelian_invariants;  // invariant factors, each dividing the next

  bool operator==(const Fingerprint&) const = default;
  nlohmann::json to_json() const;
};

/// Isomorphism-invariant profile. Equal fingerprints are reported as
/// "fingerprint-isomorphic", never as a proof of isomorphism.
Fingerprint fingerprint(const PermGroup& G, const Budgets& budgets = {});
bool fingerprint_match(const PermGroup& A, const PermGroup& B, const Budgets& budgets = {});

PermGroup direct_product(const PermGroup& A, const PermGroup& B, uint64_t seed);

/// Bit-exact group JSON helpers (canonical serialization).
PermGroup load_group_file(const std::string& path);
void save_group_file(const PermGroup& G, const std::string& path);

}  // namespace tameblocks::permgrp
