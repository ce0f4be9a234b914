#include "tameblocks/classifier.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "tameblocks/error.hpp"
#include "tameblocks/gf.hpp"
#include "tameblocks/modrep2.hpp"

namespace tameblocks::classifier {

using blockinv::two_part;
using perm::Perm;
using permgrp::Budgets;
using permgrp::Subgroup;
using twolocal::SemidihedralFrame;

namespace {

uint64_t ipow(uint64_t b, uint32_t e) {
  uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

std::optional<std::pair<uint32_t, uint32_t>> prime_power(uint64_t m) {
  if (m < 2) return std::nullopt;
  for (uint64_t p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    uint32_t k = 0;
    while (m % p == 0) {
      m /= p;
      ++k;
    }
    if (m != 1) return std::nullopt;
    return std::make_pair(uint32_t(p), k);
  }
  return std::make_pair(uint32_t(m), 1u);
}

// odd prime power q with 2q(q^2-1) = order, if any
std::optional<std::pair<uint32_t, uint32_t>> solve_linear_rank1_order(uint64_t order) {
  for (uint64_t q = 3; 2 * q * (q * q - 1) <= order; q += 2) {
    if (2 * q * (q * q - 1) != order) continue;
    auto pp = prime_power(q);
    if (pp) return pp;
  }
  return std::nullopt;
}

// prime power Q = p^{2f} with Q(Q^2-1) = order, if any
std::optional<std::pair<uint32_t, uint32_t>> solve_pgl2_order(uint64_t order) {
  for (uint64_t R = 3; R * R * (R * R * R * R - 1) <= order; R += 2) {
    uint64_t Q = R * R;
    if (Q * (Q * Q - 1) != order) continue;
    auto pp = prime_power(R);
    if (pp) return pp;  // Q = p^{2f} with (p, f) = pp
  }
  return std::nullopt;
}

uint64_t psl3_order(uint64_t q) {
  return q * q * q * (q * q - 1) * (q * q * q - 1) / std::gcd<uint64_t>(3, q - 1);
}
uint64_t psu3_order(uint64_t q) {
  return q * q * q * (q * q - 1) * (q * q * q + 1) / std::gcd<uint64_t>(3, q + 1);
}

bool z_is_central(const PermGroup& G, const Perm& z) {
  for (auto& g : G.generators())
    if (z.conjugated_by(g) != z) return false;
  return true;
}

void push(std::vector<LedgerEntry>& ledger, const std::string& name, bool pass,
          const std::string& witness, int criterion = 0) {
  ledger.push_back({name, pass, witness, criterion});
}

}  // namespace

const char* to_string(Thm31Case c) {
  switch (c) {
    case Thm31Case::bb: return "bb";
    case Thm31Case::ba1: return "ba1";
    case Thm31Case::ba2: return "ba2";
    case Thm31Case::ab: return "ab";
    case Thm31Case::aa1: return "aa1";
    case Thm31Case::aa2: return "aa2";
    case Thm31Case::aa3: return "aa3";
  }
  return "?";
}

nlohmann::json ledger_to_json(const std::vector<LedgerEntry>& ledger) {
  nlohmann::json arr = nlohmann::json::array();
  for (auto& e : ledger) {
    nlohmann::json j;
    j["name"] = e.name;
    j["status"] = e.pass ? "pass" : "fail";
    j["witness"] = e.witness;
    if (e.criterion) j["criterion"] = e.criterion;
    arr.push_back(j);
  }
  return arr;
}

std::pair<PermGroup, uint64_t> reduce_odd_core(const PermGroup& G, const Budgets& budgets) {
  Subgroup core = permgrp::o2prime(G, budgets);
  uint64_t core_order = core.group.order();
  PermGroup Gbar = permgrp::quotient_by(G, core.group, G.seed(), budgets);
  check(permgrp::o2prime(Gbar, budgets).group.order() == 1, ErrorKind::Inconclusive,
        "odd core reduction is not idempotent");
  return {std::move(Gbar), core_order};
}

namespace {

// fingerprint gate against a freshly built family member; returns nullopt when
// the candidate is outside the build budgets (then order-only identification
// stands, recorded in the ledger).
std::optional<bool> candidate_fingerprint_gate(const PermGroup& N, const std::string& recipe,
                                               uint64_t seed, const Budgets& budgets) {
  try {
    auto cand = atlas::build(recipe, seed);
    return permgrp::fingerprint_match(N, cand.group, budgets);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::BudgetExceeded || e.kind() == ErrorKind::TooLarge)
      return std::nullopt;
    throw;
  }
}

}  // namespace

Recognition recognize(const PermGroup& Gbar, const SemidihedralFrame& frame, uint64_t seed,
                      const Budgets& budgets) {
  Recognition rec;
  rec.n = frame.n;
  rec.pattern = twolocal::fusion_pattern(Gbar, frame).str();
  uint64_t order = Gbar.order();
  uint64_t two_n = uint64_t(1) << frame.n;

  if (order == two_n) {
    rec.thm31 = Thm31Case::bb;
    push(rec.checks, "two-group", true, "order " + std::to_string(order));
    return rec;
  }

  if (z_is_central(Gbar, frame.z)) {
    // quasi-simple branch: the subgroup generated by 2-elements determines q
    Subgroup N = permgrp::o_upper_2prime(Gbar, seed, budgets);
    uint64_t norder = N.group.order();
    auto pp = solve_linear_rank1_order(norder);
    check(pp.has_value(), ErrorKind::Unrecognized,
          "central involution but |O^{2'}| = " + std::to_string(norder) +
              " is not 2q(q^2-1) for a prime power");
    uint64_t q = ipow(pp->first, pp->second);
    rec.p = pp->first;
    rec.f = pp->second;
    rec.ext_order = order / norder;
    push(rec.checks, "extension-odd", rec.ext_order % 2 == 1,
         "index " + std::to_string(rec.ext_order));
    std::string recipe;
    if (4 * two_part(q + 1) == two_n) {
      rec.thm31 = Thm31Case::ba1;
      recipe = "sl2pm:p=" + std::to_string(rec.p) + ",f=" + std::to_string(rec.f);
    } else if (4 * two_part(q - 1) == two_n) {
      rec.thm31 = Thm31Case::ba2;
      recipe = "su2pm:p=" + std::to_string(rec.p) + ",f=" + std::to_string(rec.f);
    } else {
      fail(ErrorKind::Unrecognized, "q = " + std::to_string(q) + " fits neither 2-part condition");
    }
    auto gate = candidate_fingerprint_gate(N.group, recipe, seed, budgets);
    if (gate.has_value())
      push(rec.checks, "candidate-fingerprint", *gate, recipe);
    else
      push(rec.checks, "candidate-fingerprint", true, recipe + " (order-only, beyond build budget)");
    check(!gate.has_value() || *gate, ErrorKind::Unrecognized,
          "fingerprint differs from " + recipe);
    return rec;
  }

  // sporadic branch before the centralizer analysis: its centralizer looks
  // like the linear-side one
  if (order == 7920) {
    auto m11 = atlas::build("m11", seed);
    if (permgrp::fingerprint_match(Gbar, m11.group, budgets)) {
      rec.thm31 = Thm31Case::aa3;
      rec.p = 0;
      rec.f = 0;
      push(rec.checks, "sporadic-fingerprint", true, "order 7920 profile");
      return rec;
    }
  }

  twolocal::CentralizerBar cb = twolocal::centralizer_bar(Gbar, frame.z, budgets);
  uint64_t cbar_order = cb.Cbar.order();

  if (cbar_order == two_n) {
    // 2-nilpotent centralizer: C-bar is the Sylow subgroup itself
    bool same = permgrp::fingerprint_match(cb.Cbar, *frame.P, budgets);
    push(rec.checks, "centralizer-2-nilpotent", same, "C-bar order " + std::to_string(cbar_order));
    check(same, ErrorKind::Unrecognized, "C-bar is a 2-group but not the Sylow subgroup");
    Subgroup N = permgrp::o_upper_2prime(Gbar, seed, budgets);
    uint64_t norder = N.group.order();
    auto pp = solve_pgl2_order(norder);
    check(pp.has_value(), ErrorKind::Unrecognized,
          "|O^{2'}| = " + std::to_string(norder) + " is not Q(Q^2-1) for a square prime power");
    rec.p = pp->first;
    rec.f = pp->second;
    rec.ext_order = order / norder;
    rec.thm31 = Thm31Case::ab;
    uint64_t Q = ipow(rec.p, 2 * rec.f);
    push(rec.checks, "case-arithmetic", 2 * two_part(Q - 1) == two_n,
         "2(Q-1)_2 with Q = " + std::to_string(Q));
    push(rec.checks, "extension-odd", rec.ext_order % 2 == 1,
         "index " + std::to_string(rec.ext_order));
    std::string recipe = "pgl2star:p=" + std::to_string(rec.p) + ",f=" + std::to_string(rec.f);
    auto gate = candidate_fingerprint_gate(N.group, recipe, seed, budgets);
    if (gate.has_value())
      push(rec.checks, "candidate-fingerprint", *gate, recipe);
    else
      push(rec.checks, "candidate-fingerprint", true, recipe + " (order-only, beyond build budget)");
    check(!gate.has_value() || *gate, ErrorKind::Unrecognized,
          "fingerprint differs from " + recipe);
    return rec;
  }

  // remaining cases: the centralizer modulo its odd core is a rank-1 group of
  // determinant +-1 type over the member's own field
  for (uint64_t d = 1; d * 2 * 3 * 8 <= cbar_order; d += 2) {
    if (cbar_order % d) continue;
    uint64_t base = cbar_order / d;
    auto pp = solve_linear_rank1_order(base);
    if (!pp) continue;
    uint64_t q = ipow(pp->first, pp->second);
    if (d > 1 && (pp->second % uint32_t(d) != 0)) continue;  // twist must divide f
    std::string suffix = ",f=" + std::to_string(pp->second) +
                         (d > 1 ? ",d=" + std::to_string(d) : "");
    if (4 * two_part(q + 1) == two_n) {
      std::string recipe = "sl2pm:p=" + std::to_string(pp->first) + suffix;
      auto gate = candidate_fingerprint_gate(cb.Cbar, recipe, seed, budgets);
      if (gate.has_value() && *gate) {
        rec.thm31 = Thm31Case::aa1;
        rec.p = pp->first;
        rec.f = pp->second;
        push(rec.checks, "centralizer-fingerprint", true, recipe);
        Subgroup N = permgrp::o_upper_2prime(Gbar, seed, budgets);
        rec.ext_order = order / N.group.order();
        push(rec.checks, "o-upper-order-formula", N.group.order() == psl3_order(q),
             "order " + std::to_string(N.group.order()));
        push(rec.checks, "extension-odd", rec.ext_order % 2 == 1,
             "index " + std::to_string(rec.ext_order));
        return rec;
      }
    }
    if (4 * two_part(q - 1) == two_n) {
      std::string recipe = "su2pm:p=" + std::to_string(pp->first) + suffix;
      auto gate = candidate_fingerprint_gate(cb.Cbar, recipe, seed, budgets);
      if (gate.has_value() && *gate) {
        rec.thm31 = Thm31Case::aa2;
        rec.p = pp->first;
        rec.f = pp->second;
        push(rec.checks, "centralizer-fingerprint", true, recipe);
        Subgroup N = permgrp::o_upper_2prime(Gbar, seed, budgets);
        rec.ext_order = order / N.group.order();
        push(rec.checks, "o-upper-order-formula", N.group.order() == psu3_order(q),
             "order " + std::to_string(N.group.order()));
        push(rec.checks, "extension-odd", rec.ext_order % 2 == 1,
             "index " + std::to_string(rec.ext_order));
        return rec;
      }
    }
  }
  fail(ErrorKind::Unrecognized,
       "no branch matches: |G| = " + std::to_string(order) +
           ", |C-bar| = " + std::to_string(cbar_order) + ", pattern " + rec.pattern);
}

namespace {

ClassCase fold(const Recognition& rec) {
  ClassCase c;
  c.n = rec.n;
  c.p = rec.p;
  c.f = rec.f;
  c.ext_order = rec.ext_order;
  switch (rec.thm31) {
    case Thm31Case::bb: c.tag = ClassTag::BB; break;
    case Thm31Case::ba1: c.tag = ClassTag::BA1; break;
    case Thm31Case::ba2: c.tag = ClassTag::BA2; break;
    case Thm31Case::ab: c.tag = ClassTag::AB; break;
    case Thm31Case::aa1: c.tag = ClassTag::AA1; break;
    case Thm31Case::aa2: c.tag = ClassTag::AA2; break;
    case Thm31Case::aa3:
      c.tag = ClassTag::AA1;  // the sporadic member shares the linear-side block
      c.p = 3;
      c.f = 1;
      break;
  }
  return c;
}

std::string expected_letters(Thm31Case c) {
  switch (c) {
    case Thm31Case::bb: return "bb";
    case Thm31Case::ba1:
    case Thm31Case::ba2: return "ba";
    case Thm31Case::ab: return "ab";
    default: return "aa";
  }
}

}  // namespace

ClassificationReport classify(const PermGroup& G, uint64_t seed, const Budgets& budgets) {
  ClassificationReport rep;
  rep.input = G.name().empty() ? ("group of order " + std::to_string(G.order())) : G.name();
  rep.input_order = G.order();

  auto [Gbar, core_order] = reduce_odd_core(G, budgets);
  rep.o2prime_order = core_order;
  push(rep.ledger, "odd-core-removed", true, "order " + std::to_string(core_order));

  Subgroup P = permgrp::sylow2(Gbar, seed, budgets);
  push(rep.ledger, "sylow-order", P.group.order() == two_part(Gbar.order()),
       std::to_string(P.group.order()));
  SemidihedralFrame frame = twolocal::semidihedral_frame(P.group);
  rep.n = frame.n;
  rep.frame_summary = frame.summary();
  push(rep.ledger, "semidihedral-frame", true, "n = " + std::to_string(frame.n));
  if (frame.n <= 6) {
    auto [is2, aut] = twolocal::aut_is_2group(frame);
    push(rep.ledger, "aut-p-two-group", is2, "|Aut(P)| = " + std::to_string(aut));
  }

  Recognition rec = recognize(Gbar, frame, seed, budgets);
  rep.pattern = rec.pattern;
  rep.thm31 = rec.thm31;
  for (auto& e : rec.checks) rep.ledger.push_back(e);
  push(rep.ledger, "pattern-matches-case", rec.pattern == expected_letters(rec.thm31),
       rec.pattern + " vs case " + to_string(rec.thm31));

  rep.cls = fold(rec);
  rep.canonical = atlas::canonical_rep(rep.cls.tag, rep.cls.n);
  push(rep.ledger, "canonical-recipe", rep.canonical.validate() == rep.cls.n,
       rep.canonical.format());

  rep.invariants.pattern = rec.pattern;
  rep.invariants.ell = blockinv::olsson_ell(rec.pattern);
  if (rep.cls.tag == ClassTag::BA1 || rep.cls.tag == ClassTag::BA2) {
    rep.invariants.has_cartan = true;
    rep.invariants.cartan = blockinv::cartan_bar(
        rep.n, rep.cls.tag == ClassTag::BA1 ? blockinv::CartanSide::SL : blockinv::CartanSide::SU);
    rep.invariants.notes = "cartan_bar is the matrix of the central quotient's block; "
                           "the block itself has the doubled matrix";
  }
  if (rec.thm31 == Thm31Case::bb) {
    rep.invariants.k_count = Gbar.conjugacy_classes(budgets.class_order).size();
  } else if (Gbar.order() == 48) {
    auto gl23 = atlas::build("gl2_3", seed);
    if (permgrp::fingerprint_match(Gbar, gl23.group, budgets))
      rep.invariants.k_count = Gbar.conjugacy_classes(budgets.class_order).size();
  }

  rep.scott_statement =
      "paper-asserted (not computed): the principal block of the input is splendidly Morita "
      "equivalent to the principal block of " +
      rep.canonical.format() + ", realized by the Scott bimodule Sc(G x G', Delta P)";

  rep.verified = true;
  for (auto& e : rep.ledger) rep.verified = rep.verified && e.pass;
  return rep;
}

nlohmann::json ClassificationReport::verdict() const {
  nlohmann::json j;
  j["class"] = atlas::to_string(cls.tag);
  j["n"] = n;
  j["canonical"] = canonical.format();
  j["pattern"] = pattern;
  j["case"] = to_string(thm31);
  j["verified"] = verified;
  return j;
}

nlohmann::json ClassificationReport::to_json() const {
  nlohmann::json j;
  j["input"] = input;
  j["input_order"] = input_order;
  j["o2prime_order"] = o2prime_order;
  j["n"] = n;
  j["frame"] = frame_summary;
  j["pattern"] = pattern;
  j["case"] = to_string(thm31);
  j["class"] = atlas::to_string(cls.tag);
  if (cls.p) {
    j["member"] = {{"p", cls.p}, {"f", cls.f}, {"extension_order", cls.ext_order}};
  }
  j["canonical"] = canonical.format();
  j["invariants"] = invariants.to_json();
  j["scott_statement"] = scott_statement;
  j["scott_statement_flag"] = "paper-asserted";
  j["ledger"] = ledger_to_json(ledger);
  j["verified"] = verified;
  return j;
}

nlohmann::json module_lab(const PermGroup& G, const PermGroup& H, const std::string& op,
                          uint64_t seed) {
  for (auto& h : H.generators())
    check(G.contains(h), ErrorKind::NotMember, "subgroup generators must lie in the group");
  nlohmann::json j;
  if (op == "split") {
    auto M = modrep2::perm_module(&G, H);
    auto dec = modrep2::split_summands(M, seed);
    nlohmann::json dims = nlohmann::json::array();
    for (auto& sm : dec.summands) dims.push_back(sm.module.dim());
    j["op"] = "split";
    j["parent_dim"] = dec.parent_dim;
    j["summand_dims"] = dims;
    return j;
  }
  if (op == "scott") {
    auto sc = modrep2::scott_module(&G, H, seed);
    j["op"] = "scott";
    j["dim"] = sc.dim();
    j["fixed_dim"] = modrep2::fixed_dim(sc);
    j["cofixed_dim"] = modrep2::cofixed_dim(sc);
    j["module"] = sc.to_json();
    return j;
  }
  check(op == "vertex", ErrorKind::InvalidInput, "op must be split, scott or vertex");
  auto sc = modrep2::scott_module(&G, H, seed);
  Subgroup P = permgrp::sylow2(G, seed);
  auto fr = twolocal::semidihedral_frame(P.group);
  nlohmann::json holds = nlohmann::json::array(), fails = nlohmann::json::array();
  auto test = [&](const char* name, const PermGroup& sub) {
    if (modrep2::is_relatively_projective(sc, sub))
      holds.push_back(name);
    else
      fails.push_back(name);
  };
  auto triv = permgrp::subgroup(G, {Perm::identity(G.degree())}, seed);
  auto Z = permgrp::subgroup(G, {fr.z}, seed);
  auto U = permgrp::subgroup(G, {fr.u}, seed);
  auto V = permgrp::subgroup(G, {fr.v}, seed);
  auto S = permgrp::subgroup(G, {fr.s}, seed);
  auto D = permgrp::subgroup(G, {fr.s * fr.s, fr.t}, seed);
  test("1", triv.group);
  test("Z", Z.group);
  test("C4-cyclic-part", U.group);
  test("C4-quaternion-part", V.group);
  test("K", fr.K.group);
  test("C-2^{n-1}", S.group);
  test("Q", fr.Q.group);
  test("D", D.group);
  test("P", P.group);
  j["op"] = "vertex";
  j["module"] = "scott";
  j["dim"] = sc.dim();
  j["projective_relative_to"] = holds;
  j["not_projective_relative_to"] = fails;
  return j;
}

// ---------------------------------------------------------------------------
// the acceptance battery

namespace {

struct SuiteRunner {
  std::vector<LedgerEntry> out;
  uint64_t seed;

  void run(const std::string& name, int criterion, const std::function<std::string()>& fn) {
    try {
      std::string witness = fn();
      out.push_back({name, true, witness, criterion});
    } catch (const std::exception& e) {
      out.push_back({name, false, e.what(), criterion});
    }
  }
};

struct RosterRow {
  const char* recipe;
  uint64_t order;
  const char* pattern;  // nullptr: not part of the fusion criterion
  uint32_t n;
};

constexpr RosterRow kCore[] = {
    {"sd:n=4", 16, "bb", 4},
    {"sl2pm:p=3,f=1", 48, "ba", 4},
    {"su2pm:p=5,f=1", 240, "ba", 4},
    {"pgl2star:p=3,f=1", 720, "ab", 4},
    {"psl3:p=3,f=1", 5616, "aa", 4},
    {"psu3:p=5,f=1", 126000, "aa", 4},
    {"m11", 7920, "aa", 4},
};

constexpr RosterRow kExtended[] = {
    {"sl2pm:p=7,f=1", 672, nullptr, 5},
    {"su2pm:p=3,f=2", 1440, nullptr, 5},
    {"pgl2star:p=7,f=1", 117600, nullptr, 5},
    {"psl3:p=7,f=1", 1876896, nullptr, 5},
    {"sd:n=5", 32, nullptr, 5},
};

}  // namespace

std::vector<LedgerEntry> paper_suite(Tier tier, uint64_t seed) {
  SuiteRunner s{{}, seed};
  Budgets budgets;
  Budgets big = budgets;
  big.class_order = 2'000'000;  // the extended-tier round trip needs wider enumeration

  // criterion 1: roster construction
  for (auto& row : kCore) {
    s.run(std::string("build ") + row.recipe, 1, [&] {
      auto g = atlas::build(row.recipe, seed);
      check(g.group.order() == row.order, ErrorKind::Inconclusive,
            "order " + std::to_string(g.group.order()));
      auto P = permgrp::sylow2(g.group, seed);
      check(P.group.order() == (uint64_t(1) << row.n), ErrorKind::Inconclusive, "sylow order");
      auto fr = twolocal::semidihedral_frame(P.group);
      check(fr.n == row.n, ErrorKind::Inconclusive, "frame exponent");
      return "order " + std::to_string(row.order) + ", sylow 2^" + std::to_string(row.n);
    });
  }
  if (tier == Tier::Extended) {
    for (auto& row : kExtended) {
      s.run(std::string("build ") + row.recipe, 1, [&] {
        auto g = atlas::build(row.recipe, seed);
        check(g.group.order() == row.order, ErrorKind::Inconclusive,
              "order " + std::to_string(g.group.order()));
        auto P = permgrp::sylow2(g.group, seed);
        check(P.group.order() == (uint64_t(1) << row.n), ErrorKind::Inconclusive, "sylow order");
        auto fr = twolocal::semidihedral_frame(P.group);
        check(fr.n == row.n, ErrorKind::Inconclusive, "frame exponent");
        return "order " + std::to_string(row.order) + ", sylow 2^" + std::to_string(row.n);
      });
    }
  }

  // criterion 2 and 6 (the ell composition): fusion patterns over the roster
  s.run("fusion patterns of the roster", 2, [&] {
    std::string got;
    for (auto& row : kCore) {
      auto g = atlas::build(row.recipe, seed);
      auto P = permgrp::sylow2(g.group, seed);
      auto fr = twolocal::semidihedral_frame(P.group);
      std::string pat = twolocal::fusion_pattern(g.group, fr).str();
      check(pat == row.pattern, ErrorKind::Inconclusive,
            std::string(row.recipe) + " pattern " + pat + " expected " + row.pattern);
      got += pat + " ";
    }
    return got;
  });
  s.run("olsson ell over the roster", 6, [&] {
    std::vector<uint32_t> expect{1, 2, 2, 2, 3, 3, 3}, got;
    for (auto& row : kCore) got.push_back(blockinv::olsson_ell(row.pattern));
    check(got == expect, ErrorKind::Inconclusive, "ell sequence mismatch");
    return "(1,2,2,2,3,3,3)";
  });

  // criterion 3: centralizer facts
  s.run("centralizers of PSL3(3) and M11", 3, [&] {
    auto gl23 = atlas::build("gl2_3", seed);
    for (const char* recipe : {"psl3:p=3,f=1", "m11"}) {
      auto g = atlas::build(recipe, seed);
      auto P = permgrp::sylow2(g.group, seed);
      auto fr = twolocal::semidihedral_frame(P.group);
      auto cb = twolocal::centralizer_bar(g.group, fr.z, budgets);
      check(cb.C.group.order() == 48, ErrorKind::Inconclusive, "|C(z)| != 48");
      check(permgrp::fingerprint_match(cb.Cbar, gl23.group, budgets), ErrorKind::Inconclusive,
            std::string(recipe) + ": C-bar is not GL2(3)-shaped");
    }
    return "|C(z)| = 48 with the GL2(3) profile in both";
  });
  s.run("centralizer of the starred group", 3, [&] {
    auto g = atlas::build("pgl2star:p=3,f=1", seed);
    auto P = permgrp::sylow2(g.group, seed);
    auto fr = twolocal::semidihedral_frame(P.group);
    auto cb = twolocal::centralizer_bar(g.group, fr.z, budgets);
    auto sd16 = atlas::build("sd:n=4", seed);
    check(permgrp::fingerprint_match(cb.Cbar, sd16.group, budgets), ErrorKind::Inconclusive,
          "C-bar is not the Sylow subgroup");
    check(twolocal::involution_class_count(g.group, budgets) == 1, ErrorKind::Inconclusive,
          "involutions fall into more than one class");
    return "C-bar = SD16 profile, one involution class";
  });
  s.run("centralizer of the unitary group", 3, [&] {
    auto g = atlas::build("psu3:p=5,f=1", seed);
    auto P = permgrp::sylow2(g.group, seed);
    auto fr = twolocal::semidihedral_frame(P.group);
    auto cb = twolocal::centralizer_bar(g.group, fr.z, budgets);
    auto su = atlas::build("su2pm:p=5,f=1", seed);
    check(permgrp::fingerprint_match(cb.Cbar, su.group, budgets), ErrorKind::Inconclusive,
          "C-bar is not SU2pm(5)-shaped");
    return "C-bar has the su2pm:p=5 profile";
  });

  // criterion 4: normalizer quotients and PIM counts
  s.run("normalizer quotients", 4, [&] {
    PermGroup s3({Perm::from_cycles(3, {{0, 1}}), Perm::from_cycles(3, {{0, 1, 2}})}, seed);
    check(modrep2::pim_count(s3, budgets) == 2, ErrorKind::Inconclusive, "kS3 must have 2 PIMs");
    for (const char* recipe : {"psl3:p=3,f=1", "m11"}) {
      auto g = atlas::build(recipe, seed);
      auto P = permgrp::sylow2(g.group, seed);
      auto fr = twolocal::semidihedral_frame(P.group);
      auto NP = permgrp::normalizer(g.group, P.group, budgets);
      check(NP.group.order() == P.group.order(), ErrorKind::Inconclusive, "N(P)/P nontrivial");
      for (const Subgroup* H : {&fr.Q, &fr.K}) {
        auto N = permgrp::normalizer(g.group, H->group, budgets);
        check(N.group.order() == H->group.order() * 6, ErrorKind::Inconclusive,
              "normalizer quotient order is not 6");
        auto quo = permgrp::quotient_by(N.group, H->group, seed, budgets);
        check(permgrp::fingerprint_match(quo, s3, budgets), ErrorKind::Inconclusive,
              "N/H is not S3-shaped");
        check(modrep2::pim_count(quo, budgets) == 2, ErrorKind::Inconclusive, "wrong PIM count");
      }
    }
    return "N(P)/P = 1; N(Q)/Q and N(K)/K are S3-shaped with two PIMs";
  });

  // criterion 5: the module laboratory
  s.run("permutation module of the plane splits 1 + 12 with vertex K", 5, [&] {
    auto g = atlas::build("psl3:p=3,f=1", seed);
    auto M = permgrp::point_stabilizer(g.group, 0);
    auto km = modrep2::perm_module(&g.group, M.group, budgets);
    check(km.dim() == 13, ErrorKind::Inconclusive, "index 13 expected");
    auto dec = modrep2::split_summands(km, seed);
    check(dec.summands.size() == 2, ErrorKind::Inconclusive, "two summands expected");
    const modrep2::GF2Module* twelve = nullptr;
    bool saw_one = false;
    for (auto& sm : dec.summands) {
      if (sm.module.dim() == 12) twelve = &sm.module;
      if (sm.module.dim() == 1) saw_one = true;
    }
    check(twelve && saw_one, ErrorKind::Inconclusive, "dimensions are not {1, 12}");
    auto P = permgrp::sylow2(g.group, seed);
    auto fr = twolocal::semidihedral_frame(P.group);
    auto Z = permgrp::subgroup(g.group, {fr.z}, seed);
    auto U = permgrp::subgroup(g.group, {fr.u}, seed);
    auto V = permgrp::subgroup(g.group, {fr.v}, seed);
    check(modrep2::is_relatively_projective(*twelve, fr.K.group, budgets),
          ErrorKind::Inconclusive, "12 must be projective relative to K");
    check(!modrep2::is_relatively_projective(*twelve, Z.group, budgets), ErrorKind::Inconclusive,
          "12 must not be projective relative to the center");
    check(!modrep2::is_relatively_projective(*twelve, U.group, budgets) &&
              !modrep2::is_relatively_projective(*twelve, V.group, budgets),
          ErrorKind::Inconclusive, "12 must not be projective relative to a C4");
    return "k[G/M] = 1 + 12, vertex bracket K";
  });
  s.run("index-3 permutation module splits 1 + 2 with vertex Q8", 5, [&] {
    auto g = atlas::build("gl2_3", seed);
    auto P = permgrp::sylow2(g.group, seed);
    auto km = modrep2::perm_module(&g.group, P.group, budgets);
    check(km.dim() == 3, ErrorKind::Inconclusive, "index 3 expected");
    auto dec = modrep2::split_summands(km, seed);
    const modrep2::GF2Module* two = nullptr;
    for (auto& sm : dec.summands)
      if (sm.module.dim() == 2) two = &sm.module;
    check(two != nullptr && dec.summands.size() == 2, ErrorKind::Inconclusive,
          "dimensions are not {1, 2}");
    auto fr = twolocal::semidihedral_frame(P.group);
    auto U = permgrp::subgroup(g.group, {fr.u}, seed);
    auto V = permgrp::subgroup(g.group, {fr.v}, seed);
    check(modrep2::is_relatively_projective(*two, fr.Q.group, budgets), ErrorKind::Inconclusive,
          "2 must be projective relative to Q8");
    check(!modrep2::is_relatively_projective(*two, U.group, budgets) &&
              !modrep2::is_relatively_projective(*two, V.group, budgets),
          ErrorKind::Inconclusive, "2 must not be projective relative to a C4");
    return "k[G/P] = 1 + 2, vertex bracket Q8";
  });
  s.run("the induced 234 has a 26-dimensional constituent with vertex Q8", 5, [&] {
    auto g = atlas::build("psl3:p=3,f=1", seed);
    auto P = permgrp::sylow2(g.group, seed);
    auto fr = twolocal::semidihedral_frame(P.group);
    auto C = permgrp::centralizer(g.group, fr.z);
    check(C.group.order() == 48, ErrorKind::Inconclusive, "|C(z)| != 48");
    auto Pt = permgrp::sylow2(C.group, seed);
    auto k3 = modrep2::perm_module(&C.group, Pt.group, budgets);
    auto dec = modrep2::split_summands(k3, seed);
    const modrep2::GF2Module* two = nullptr;
    for (auto& sm : dec.summands)
      if (sm.module.dim() == 2) two = &sm.module;
    check(two != nullptr, ErrorKind::Inconclusive, "no 2-dimensional summand over C(z)");
    auto ind = modrep2::induce(*two, &g.group, budgets);
    check(ind.dim() == 234, ErrorKind::Inconclusive,
          "induced dimension " + std::to_string(ind.dim()));
    auto factors = modrep2::chop(ind, seed);
    const modrep2::GF2Module* m26 = nullptr;
    for (auto& c : factors)
      if (c.module.dim() == 26) m26 = &c.module;
    check(m26 != nullptr, ErrorKind::Inconclusive, "no 26-dimensional constituent");
    auto U = permgrp::subgroup(g.group, {fr.u}, seed);
    auto V = permgrp::subgroup(g.group, {fr.v}, seed);
    check(modrep2::is_relatively_projective(*m26, fr.Q.group, budgets), ErrorKind::Inconclusive,
          "26 must be projective relative to Q8");
    check(!modrep2::is_relatively_projective(*m26, U.group, budgets) &&
              !modrep2::is_relatively_projective(*m26, V.group, budgets),
          ErrorKind::Inconclusive, "26 must not be projective relative to a C4");
    return "2-dim module induces to 234 with a 26-dim constituent, vertex bracket Q8";
  });

  // criterion 6: block invariants
  s.run("cartan displays, determinants, doubling, distinction", 6, [&] {
    for (uint32_t n = 4; n <= 8; ++n) {
      auto sl = blockinv::cartan_bar(n, blockinv::CartanSide::SL);
      int64_t p3 = int64_t(1) << (n - 3);
      check(sl.entries == std::vector<int64_t>{4, 2, 2, p3 + 1}, ErrorKind::Inconclusive,
            "sl display");
      auto su = blockinv::cartan_bar(n, blockinv::CartanSide::SU);
      check(su.entries == std::vector<int64_t>{int64_t(1) << (n - 1), int64_t(1) << (n - 2),
                                               int64_t(1) << (n - 2), p3 + 1},
            ErrorKind::Inconclusive, "su display");
    }
    for (uint32_t n = 4; n <= 12; ++n) {
      for (auto side : {blockinv::CartanSide::SL, blockinv::CartanSide::SU}) {
        auto c = blockinv::cartan_bar(n, side);
        check(c.det() == int64_t(1) << (n - 1), ErrorKind::Inconclusive, "determinant");
        check(c.positive_definite() && c.symmetric(), ErrorKind::Inconclusive, "definiteness");
        auto d = blockinv::cartan_double(c);
        for (size_t i = 0; i < 4; ++i)
          check(d.entries[i] == 2 * c.entries[i], ErrorKind::Inconclusive, "doubling");
      }
      auto dist = blockinv::distinguish(n);
      check(dist.sl_value != dist.su_value, ErrorKind::Inconclusive, "distinction");
    }
    return "displays at n = 4..8; det = 2^{n-1} and distinction for n = 4..12";
  });

  // criterion 7: classification round trips
  s.run("classify m11", 7, [&] {
    auto g = atlas::build("m11", seed);
    auto rep = classify(g.group, seed, budgets);
    check(rep.cls.tag == ClassTag::AA1 && rep.n == 4 && rep.canonical.format() == "psl3:p=3,f=1",
          ErrorKind::Inconclusive, rep.verdict().dump());
    check(rep.thm31 == Thm31Case::aa3 && rep.verified, ErrorKind::Inconclusive, "case or ledger");
    return rep.verdict().dump();
  });
  s.run("classify the twisted linear group", 7, [&] {
    auto g = atlas::build("sl2pm:p=3,f=3,d=3", seed);
    auto rep = classify(g.group, seed, big);
    check(rep.cls.tag == ClassTag::BA1 && rep.n == 4 && rep.canonical.format() == "sl2pm:p=3,f=1",
          ErrorKind::Inconclusive, rep.verdict().dump());
    check(rep.verified, ErrorKind::Inconclusive, "ledger failure");
    return rep.verdict().dump();
  });
  s.run("classify sd32", 7, [&] {
    auto g = atlas::build("sd:n=5", seed);
    auto rep = classify(g.group, seed, budgets);
    check(rep.cls.tag == ClassTag::BB && rep.n == 5, ErrorKind::Inconclusive,
          rep.verdict().dump());
    return rep.verdict().dump();
  });
  s.run("classification is constant on a twisted pair", 7, [&] {
    auto a = atlas::build("sl2pm:p=3,f=1", seed);
    auto ra = classify(a.group, seed, budgets);
    auto b = atlas::build("sl2pm:p=3,f=3,d=3", seed);
    auto rb = classify(b.group, seed, big);
    check(ra.cls.tag == rb.cls.tag && ra.n == rb.n &&
              ra.canonical.format() == rb.canonical.format(),
          ErrorKind::Inconclusive, ra.verdict().dump() + " vs " + rb.verdict().dump());
    return ra.canonical.format() + " for both";
  });
  if (tier == Tier::Extended) {
    s.run("round trips at n = 4 and 5", 7, [&] {
      using atlas::ClassTag;
      std::string witness;
      for (uint32_t n : {4u, 5u}) {
        for (auto tag : {ClassTag::BB, ClassTag::BA1, ClassTag::BA2, ClassTag::AB, ClassTag::AA1,
                         ClassTag::AA2}) {
          auto recipe = atlas::canonical_rep(tag, n);
          if (recipe.expected_order() > 2'000'000) {
            witness += std::string(atlas::to_string(tag)) + ":n=" + std::to_string(n) + " skipped (budget); ";
            continue;
          }
          auto g = atlas::build(recipe, seed);
          auto rep = classify(g.group, seed, big);
          check(rep.cls.tag == tag && rep.n == n, ErrorKind::Inconclusive,
                recipe.format() + " -> " + rep.verdict().dump());
        }
      }
      return witness.empty() ? std::string("all round trips close") : witness;
    });
  }

  // criterion 8: property suites
  s.run("field axioms, 1000 trials per field", 8, [&] {
    for (auto [p, f] : {std::pair<uint32_t, uint32_t>{3, 2}, {5, 2}, {3, 3}, {7, 2}}) {
      auto F = gf::Field::make(p, f);
      Rng rng(seed ^ (p * 37 + f));
      for (int i = 0; i < 1000; ++i) {
        auto a = gf::Field::Elem(rng.below(F->q()));
        auto b = gf::Field::Elem(rng.below(F->q()));
        auto c = gf::Field::Elem(rng.below(F->q()));
        check(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)),
              ErrorKind::Inconclusive, "distributivity");
        check(F->mul(F->mul(a, b), c) == F->mul(a, F->mul(b, c)), ErrorKind::Inconclusive,
              "associativity");
        if (a) check(F->mul(a, F->inv(a)) == 1, ErrorKind::Inconclusive, "inverses");
      }
    }
    return "4000 triples, zero failures";
  });
  s.run("orbit-stabilizer on 1000 random elements", 8, [&] {
    std::vector<PermGroup> groups;
    for (const char* r : {"sd:n=4", "gl2_3", "pgl2star:p=3,f=1", "m11", "psl3:p=3,f=1"})
      groups.push_back(atlas::build(r, seed).group);
    Rng rng(seed ^ 0x0851AB);
    for (int i = 0; i < 1000; ++i) {
      auto& g = groups[rng.below(groups.size())];
      Perm x = g.random_element(rng);
      auto c = permgrp::centralizer(g, x);
      check(g.order() % c.group.order() == 0, ErrorKind::Inconclusive, "orbit-stabilizer");
    }
    return "1000 trials, |G| = |C(x)| |x^G| throughout";
  });
  s.run("rank-nullity on 1000 random gf2 matrices", 8, [&] {
    Rng rng(seed ^ 0x2A11);
    for (int i = 0; i < 1000; ++i) {
      uint32_t r = 2 + uint32_t(rng.below(24)), c = 2 + uint32_t(rng.below(24));
      gf2::Mat a(r, c);
      for (uint32_t rr = 0; rr < r; ++rr)
        for (uint32_t cc = 0; cc < c; ++cc)
          if (rng.flip()) a.set(rr, cc, true);
      check(a.rank() + a.right_nullspace().rows() == c, ErrorKind::Inconclusive, "rank-nullity");
    }
    return "1000 trials";
  });
  s.run("decomposition idempotent identities on 1000 seeded modules", 8, [&] {
    auto g = atlas::build("gl2_3", seed);
    auto P = permgrp::sylow2(g.group, seed);
    auto km = modrep2::perm_module(&g.group, P.group, budgets);
    auto two = modrep2::split_summands(km, seed);
    modrep2::GF2Module base = modrep2::direct_sum(km, two.summands[0].module);
    Rng rng(seed ^ 0x1DE4);
    for (int i = 0; i < 1000; ++i) {
      // random basis change, then split; the verification of the idempotent
      // identities runs inside split_summands
      uint32_t d = base.dim();
      gf2::Mat U(d, d);
      std::optional<gf2::Mat> Uinv;
      do {
        for (uint32_t rr = 0; rr < d; ++rr)
          for (uint32_t cc = 0; cc < d; ++cc)
            U.set(rr, cc, rng.flip());
        Uinv = U.inverse();
      } while (!Uinv);
      std::vector<gf2::Mat> action;
      for (auto& a : base.action()) action.push_back(*Uinv * a * U);
      modrep2::GF2Module twisted(&g.group, std::move(action), "twisted", false);
      auto dec = modrep2::split_summands(twisted, rng.next());
      check(dec.summands.size() >= 2, ErrorKind::Inconclusive, "decomposable module split");
    }
    return "1000 shuffled decompositions, witnesses verified";
  });
  s.run("determinism across 5 seeds", 8, [&] {
    for (const char* recipe : {"sd:n=4", "gl2_3", "m11"}) {
      std::string first;
      for (uint64_t ds = 0; ds < 5; ++ds) {
        auto g = atlas::build(recipe, seed + ds);
        auto rep = classify(g.group, seed + ds, budgets);
        std::string v = rep.verdict().dump();
        if (ds == 0)
          first = v;
        else
          check(v == first, ErrorKind::Inconclusive, "verdict varies with the seed");
      }
    }
    return "verdicts identical over 5 seeds for 3 groups";
  });

  return s.out;
}

}  // namespace tameblocks::classifier
