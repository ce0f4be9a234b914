#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "tameblocks/atlas.hpp"
#include "tameblocks/blockinv.hpp"
#include "tameblocks/permgrp.hpp"
#include "tameblocks/twolocal.hpp"

namespace tameblocks::classifier {

using atlas::ClassTag;
using permgrp::PermGroup;

/// The seven structural cases for a group with semidihedral Sylow 2-subgroup
/// and trivial odd core.
enum class Thm31Case { bb, ba1, ba2, ab, aa1, aa2, aa3 };
const char* to_string(Thm31Case c);

struct ClassCase {
  ClassTag tag = ClassTag::BB;
  uint32_t n = 0;
  uint32_t p = 0, f = 0;       // recognized member's parameters, when applicable
  uint64_t ext_order = 1;      // odd extension degree folded away
};

struct LedgerEntry {
  std::string name;
  bool pass = false;
  std::string witness;
  int criterion = 0;
};

nlohmann::json ledger_to_json(const std::vector<LedgerEntry>& ledger);

struct Recognition {
  Thm31Case thm31 = Thm31Case::bb;
  uint32_t n = 0;
  uint32_t p = 0, f = 0;
  uint64_t ext_order = 1;
  std::string pattern;
  std::vector<LedgerEntry> checks;
};

struct ClassificationReport {
  std::string input;
  uint64_t input_order = 0;
  uint64_t o2prime_order = 1;
  uint32_t n = 0;
  nlohmann::json frame_summary;
  std::string pattern;
  Thm31Case thm31 = Thm31Case::bb;
  ClassCase cls;
  atlas::GroupRecipe canonical;
  blockinv::BlockInvariants invariants;
  std::string scott_statement;
  std::vector<LedgerEntry> ledger;
  bool verified = false;

  nlohmann::json to_json() const;
  /// The seed-independent conclusion (class, n, canonical, pattern, case).
  nlohmann::json verdict() const;
};

/// G / O_{2'}(G), with the order of the removed odd core. The result has a
/// trivial odd core (re-verified).
std::pair<PermGroup, uint64_t> reduce_odd_core(const PermGroup& G,
                                               const permgrp::Budgets& budgets = {});

/// Decision tree on a group with trivial odd core and semidihedral Sylow
/// 2-subgroup. Throws Unrecognized when no branch matches.
Recognition recognize(const PermGroup& Gbar, const twolocal::SemidihedralFrame& frame,
                      uint64_t seed, const permgrp::Budgets& budgets = {});

ClassificationReport classify(const PermGroup& G, uint64_t seed,
                              const permgrp::Budgets& budgets = {});

/// Shared implementation of the module-lab operations (split, scott,
/// vertex) on k[G/H]; used by the CLI and the python bindings.
nlohmann::json module_lab(const PermGroup& G, const PermGroup& H, const std::string& op,
                          uint64_t seed);

enum class Tier { Core, Extended };

/// The full acceptance battery; failures become ledger entries, not throws.
std::vector<LedgerEntry> paper_suite(Tier tier, uint64_t seed);

}  // namespace tameblocks::classifier
