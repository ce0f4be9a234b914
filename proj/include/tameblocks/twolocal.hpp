#pragma once

#include <string>

#include <json.hpp>

#include "tameblocks/permgrp.hpp"

namespace tameblocks::twolocal {

using perm::Perm;
using permgrp::PermGroup;
using permgrp::Subgroup;

/// A semidihedral 2-group with distinguished data: generators s, t with
/// s^(2^{n-1}) = t^2 = 1 and t s t = s^(2^{n-2}-1); the central involution
/// z = s^(2^{n-2}); the quaternion subgroup Q = <s^2, st> of order 2^{n-1};
/// the Klein-four subgroup K = <z, t>; and the order-4 elements
/// u = s^(2^{n-3}) (cyclic part) and v = st (quaternion part), which are
/// never conjugate inside the group itself.
struct SemidihedralFrame {
  const PermGroup* P = nullptr;  // the frame's group (caller keeps it alive)
  uint32_t n = 0;
  Perm s, t, z, u, v;
  Subgroup Q, K;

  nlohmann::json summary() const;
};

/// Finds distinguished generators by exhaustive search over (s, t) pairs.
/// Throws NotSemidihedral when the presentation has no solution (dihedral or
/// quaternion input, say).
SemidihedralFrame semidihedral_frame(const PermGroup& P);

struct FusionPattern {
  char invol = 'b';  // 'a' iff t fuses to z in G
  char ord4 = 'b';   // 'a' iff u fuses to v or v^{-1} in G
  std::string str() const { return std::string{invol, ord4}; }
  bool operator==(const FusionPattern&) const = default;
};

/// The two-letter fusion invariant of G on its semidihedral Sylow subgroup.
/// frame.P must be Sylow in G.
FusionPattern fusion_pattern(const PermGroup& G, const SemidihedralFrame& frame);

uint32_t involution_class_count(const PermGroup& G, const permgrp::Budgets& budgets = {});

struct CentralizerBar {
  Subgroup C;          // C_G(z)
  PermGroup Cbar;      // C / O_{2'}(C)
  uint64_t odd_core_order = 1;
};

CentralizerBar centralizer_bar(const PermGroup& G, const Perm& z,
                               const permgrp::Budgets& budgets = {});

/// Brute-force automorphism count for the frame's group: pairs (s', t')
/// satisfying the presentation and generating. n <= 6.
std::pair<bool, uint64_t> aut_is_2group(const SemidihedralFrame& frame);

/// Report fragment: { "n":, "pattern":, "involution_classes":,
///                    "centralizer_bar_fingerprint": {...} }
nlohmann::json two_local_fragment(const PermGroup& G, const SemidihedralFrame& frame,
                                  const permgrp::Budgets& budgets = {});

}  // namespace tameblocks::twolocal
