#include "tameblocks/twolocal.hpp"

#include <algorithm>

#include "tameblocks/blockinv.hpp"
#include "tameblocks/error.hpp"

namespace tameblocks::twolocal {

namespace {

bool is_power_of_two(uint64_t v) { return v && (v & (v - 1)) == 0; }

uint32_t exact_log2(uint64_t v) {
  uint32_t n = 0;
  while (v > 1) {
    v >>= 1;
    ++n;
  }
  return n;
}

}  // namespace

SemidihedralFrame semidihedral_frame(const PermGroup& P) {
  uint64_t size = P.order();
  check(is_power_of_two(size) && size >= 16, ErrorKind::NotSemidihedral,
        "group order is not 2^n with n >= 4");
  uint32_t n = exact_log2(size);
  uint64_t half = size / 2;

  std::vector<Perm> elems = P.elements(1u << 12);
  std::vector<Perm> s_cands, invols;
  for (auto& g : elems) {
    uint64_t o = g.order();
    if (o == half) s_cands.push_back(g);
    if (o == 2) invols.push_back(g);
  }
  uint64_t rel = (uint64_t(1) << (n - 2)) - 1;
  for (auto& s : s_cands) {
    // t must lie outside <s>; with |<s>| = |P|/2 that already forces <s,t> = P
    std::vector<Perm> s_powers;
    Perm acc = Perm::identity(P.degree());
    for (uint64_t k = 0; k < half; ++k) {
      s_powers.push_back(acc);
      acc = acc * s;
    }
    for (auto& t : invols) {
      if (std::find(s_powers.begin(), s_powers.end(), t) != s_powers.end()) continue;
      if (t * s * t != s.pow(rel)) continue;

      Perm z = s.pow(uint64_t(1) << (n - 2));
      Perm u = s.pow(uint64_t(1) << (n - 3));
      Perm v = s * t;
      // invariants of the frame, checked rather than trusted
      check(z.order() == 2, ErrorKind::NotSemidihedral, "z must be an involution");
      check(u.order() == 4 && v.order() == 4, ErrorKind::NotSemidihedral,
            "u and v must have order 4");
      for (auto& g : P.generators())
        check(z.conjugated_by(g) == z, ErrorKind::NotSemidihedral, "z must be central");
      Subgroup Q = permgrp::subgroup(P, {s * s, v}, P.seed());
      check(Q.group.order() == half, ErrorKind::NotSemidihedral, "Q must have order 2^{n-1}");
      uint32_t q_invols = 0;
      bool q_abelian = (v.conjugated_by(s * s) == v);
      Q.group.for_each_element([&](const Perm& g) {
        if (!g.is_identity() && g.order() == 2) ++q_invols;
        return true;
      });
      check(q_invols == 1 && !q_abelian, ErrorKind::NotSemidihedral,
            "Q must be generalized quaternion");
      Subgroup K = permgrp::subgroup(P, {z, t}, P.seed());
      check(K.group.order() == 4, ErrorKind::NotSemidihedral, "K must have order 4");
      check((z * t).order() == 2, ErrorKind::NotSemidihedral, "K must be elementary abelian");
      check(!permgrp::conjugating_witness(P, u, v).has_value(),
            ErrorKind::NotSemidihedral, "u and v fuse already inside P");
      return SemidihedralFrame{&P, n, s, t, z, u, v, std::move(Q), std::move(K)};
    }
  }
  fail(ErrorKind::NotSemidihedral, "no generator pair satisfies the presentation");
}

FusionPattern fusion_pattern(const PermGroup& G, const SemidihedralFrame& frame) {
  check(frame.P != nullptr, ErrorKind::InvalidInput, "frame has no group");
  uint64_t p_order = frame.P->order();
  check(p_order == blockinv::two_part(G.order()), ErrorKind::NotSylow,
        "frame group is not Sylow in G");
  for (auto& g : frame.P->generators())
    check(G.contains(g), ErrorKind::NotSylow, "frame group is not a subgroup of G");

  FusionPattern pat;
  if (permgrp::conjugating_witness(G, frame.t, frame.z)) pat.invol = 'a';
  if (permgrp::conjugating_witness(G, frame.u, frame.v) ||
      permgrp::conjugating_witness(G, frame.u, frame.v.inverse()))
    pat.ord4 = 'a';
  return pat;
}

uint32_t involution_class_count(const PermGroup& G, const permgrp::Budgets& budgets) {
  uint32_t count = 0;
  for (auto& c : G.conjugacy_classes(budgets.class_order))
    if (c.rep_order == 2) ++count;
  return count;
}

CentralizerBar centralizer_bar(const PermGroup& G, const Perm& z,
                               const permgrp::Budgets& budgets) {
  check(z.order() == 2, ErrorKind::InvalidInput, "z must be an involution");
  Subgroup C = permgrp::centralizer(G, z);
  Subgroup odd = permgrp::o2prime(C.group, budgets);
  PermGroup Cbar = permgrp::quotient_by(C.group, odd.group, C.group.seed(), budgets);
  return CentralizerBar{std::move(C), std::move(Cbar), odd.group.order()};
}

std::pair<bool, uint64_t> aut_is_2group(const SemidihedralFrame& frame) {
  check(frame.n <= 6, ErrorKind::BudgetExceeded, "automorphism search budget is n <= 6");
  const PermGroup& P = *frame.P;
  uint64_t half = P.order() / 2;
  uint64_t rel = (uint64_t(1) << (frame.n - 2)) - 1;
  std::vector<Perm> elems = P.elements(1u << 12);
  std::vector<Perm> s_cands, invols;
  for (auto& g : elems) {
    if (g.order() == half) s_cands.push_back(g);
    if (g.order() == 2) invols.push_back(g);
  }
  uint64_t count = 0;
  for (auto& s : s_cands) {
    std::vector<Perm> s_powers;
    Perm acc = Perm::identity(P.degree());
    for (uint64_t k = 0; k < half; ++k) {
      s_powers.push_back(acc);
      acc = acc * s;
    }
    for (auto& t : invols) {
      if (std::find(s_powers.begin(), s_powers.end(), t) != s_powers.end()) continue;
      if (t * s * t == s.pow(rel)) ++count;  // every valid image pair is one automorphism
    }
  }
  check(count > 0, ErrorKind::Inconclusive, "no automorphisms found");
  return {is_power_of_two(count), count};
}

nlohmann::json SemidihedralFrame::summary() const {
  nlohmann::json j;
  j["n"] = n;
  j["s"] = s.images();
  j["t"] = t.images();
  j["z"] = z.images();
  j["q_order"] = Q.group.order();
  j["k_order"] = K.group.order();
  return j;
}

nlohmann::json two_local_fragment(const PermGroup& G, const SemidihedralFrame& frame,
                                  const permgrp::Budgets& budgets) {
  nlohmann::json j;
  j["n"] = frame.n;
  j["pattern"] = fusion_pattern(G, frame).str();
  j["involution_classes"] = involution_class_count(G, budgets);
  CentralizerBar cb = centralizer_bar(G, frame.z, budgets);
  j["centralizer_bar_fingerprint"] = permgrp::fingerprint(cb.Cbar, budgets).to_json();
  return j;
}

}  // namespace tameblocks::twolocal
