#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tameblocks/gf2.hpp"
#include "tameblocks/permgrp.hpp"

namespace tameblocks::modrep2 {

using gf2::Mat;
using perm::Perm;
using permgrp::PermGroup;

/// GF(2) representation of a permutation group: one action matrix per
/// generator, acting on row vectors. Matrices of arbitrary members come from
/// the stabilizer-chain factorization; strong-generator matrices are cached.
/// The group pointer is non-owning — keep the group alive.
class GF2Module {
public:
  GF2Module(const PermGroup* group, std::vector<Mat> action, std::string label,
            bool check_relations = true);

  const PermGroup& group() const { return *group_; }
  const PermGroup* group_ptr() const { return group_; }
  uint32_t dim() const { return dim_; }
  const std::vector<Mat>& action() const { return action_; }
  const Mat& action_of(uint32_t gen) const { return action_[gen]; }
  const Mat& action_inv_of(uint32_t gen) const { return action_inv_[gen]; }
  const std::string& label() const { return label_; }
  void set_label(std::string l) { label_ = std::move(l); }

  /// Matrix of an arbitrary group member. NotMember if g is outside.
  Mat matrix_of(const Perm& g) const;

  nlohmann::json to_json() const;
  static GF2Module from_json(const nlohmann::json& j, const PermGroup* group);

private:
  const PermGroup* group_;
  uint32_t dim_;
  std::vector<Mat> action_, action_inv_;
  std::string label_;
  struct SgenCache;
  std::shared_ptr<SgenCache> cache_;
};

GF2Module trivial_module(const PermGroup* G);

/// k[G/H], dimension |G:H| <= 2000; matrices are coset permutation matrices.
GF2Module perm_module(const PermGroup* G, const PermGroup& H,
                      const permgrp::Budgets& budgets = {});

GF2Module direct_sum(const GF2Module& A, const GF2Module& B);

/// Restriction to a subgroup H <= module's group (H's generators are factored
/// through the chain).
GF2Module restrict_to(const GF2Module& M, const PermGroup* H);

/// Induction from the module's group H up to G >= H; dim * |G:H| <= 2000.
GF2Module induce(const GF2Module& M, const PermGroup* G,
                 const permgrp::Budgets& budgets = {});

uint32_t fixed_dim(const GF2Module& M);
uint32_t cofixed_dim(const GF2Module& M);

struct Constituent {
  GF2Module module;
  uint32_t multiplicity;
};

/// Composition factors over GF(2) by the random-algebra-element kernel method,
/// grouped by isomorphism. Factors are irreducible over GF(2); absolute
/// irreducibility is not certified.
std::vector<Constituent> chop(const GF2Module& M, uint64_t seed);

struct Summand {
  GF2Module module;
  Mat inclusion;   // dim(summand) x dim(parent)
  Mat projection;  // dim(parent) x dim(summand)
  Mat idempotent;  // projection * inclusion
};

struct SummandDecomposition {
  uint32_t parent_dim = 0;
  std::vector<Summand> summands;
};

/// Indecomposable direct-sum decomposition via Fitting idempotents of random
/// endomorphisms; every leaf is certified by a 50-sample local-ring check.
/// dim <= 300.
SummandDecomposition split_summands(const GF2Module& M, uint64_t seed);

/// The unique indecomposable summand of k[G/H] with a trivial quotient
/// (equivalently a trivial submodule); NonUnique flags an internal error.
GF2Module scott_module(const PermGroup* G, const PermGroup& H, uint64_t seed,
                       const permgrp::Budgets& budgets = {});

/// Higman's criterion: a kH-endomorphism with relative trace the identity.
/// dim <= 64, |G:H| within the coset budget.
bool is_relatively_projective(const GF2Module& M, const PermGroup& H,
                              const permgrp::Budgets& budgets = {});

/// Basis of Hom_kG(A, B), by spinning relations.
std::vector<Mat> hom_space(const GF2Module& A, const GF2Module& B);

/// Invertible intertwiner A -> B if one exists (seeded search through Hom).
std::optional<Mat> module_iso(const GF2Module& A, const GF2Module& B, uint64_t seed);

/// Number of 2-regular (odd-order) conjugacy classes.
uint32_t pim_count(const PermGroup& G, const permgrp::Budgets& budgets = {});

}  // namespace tameblocks::modrep2
