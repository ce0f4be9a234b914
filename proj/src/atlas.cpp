#include "tameblocks/atlas.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "tameblocks/blockinv.hpp"
#include "tameblocks/error.hpp"
#include "tameblocks/gf.hpp"

namespace tameblocks::atlas {

using gf::Field;
using gf::FieldPtr;
using gf::MatGF;
using perm::Perm;
using perm::Point;
using permgrp::PermGroup;

namespace {

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// (p, k) with m = p^k, if m is a prime power
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
  return std::make_pair(uint32_t(m), 1u);  // m prime
}

uint64_t ipow(uint64_t b, uint32_t e) {
  uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

uint32_t log2_exact(uint64_t v) {
  uint32_t n = 0;
  while (v > 1) {
    v >>= 1;
    ++n;
  }
  return n;
}

// ---------------------------------------------------------------------------
// matrix / semilinear maps to permutations

// nonzero row vectors of F^2, point = encode(v) - 1 with encode = v1*q + v2
Perm vector_perm(const FieldPtr& F, const MatGF& A, uint32_t frob = 0) {
  uint32_t q = F->q();
  std::vector<Point> img(uint64_t(q) * q - 1);
  for (uint64_t idx = 1; idx < uint64_t(q) * q; ++idx) {
    std::vector<Field::Elem> v{Field::Elem(idx / q), Field::Elem(idx % q)};
    if (frob)
      for (auto& x : v) x = F->frobenius(x, frob);
    auto w = A.apply_row(v);
    uint64_t widx = uint64_t(w[0]) * q + w[1];
    img[idx - 1] = Point(widx - 1);
  }
  return Perm(std::move(img));
}

Perm vector_frob_perm(const FieldPtr& F, uint32_t frob) {
  return vector_perm(F, MatGF::identity(F, 2), frob);
}

// projective line P^1(F): point k < q is (1, elem k); point q is (0, 1)
Point proj1_index(const FieldPtr& F, const std::vector<Field::Elem>& v) {
  if (v[0] != 0) return Point(F->div(v[1], v[0]));
  return Point(F->q());
}

Perm proj1_perm(const FieldPtr& F, const MatGF& A, uint32_t frob = 0) {
  uint32_t q = F->q();
  std::vector<Point> img(q + 1);
  for (Point pt = 0; pt <= q; ++pt) {
    std::vector<Field::Elem> v =
        pt < q ? std::vector<Field::Elem>{1, pt} : std::vector<Field::Elem>{0, 1};
    if (frob)
      for (auto& x : v) x = F->frobenius(x, frob);
    img[pt] = proj1_index(F, A.apply_row(v));
  }
  return Perm(std::move(img));
}

// projective plane P^2(F): (1,x,y) -> x*q+y ; (0,1,y) -> q^2+y ; (0,0,1) -> q^2+q
Point proj2_index(const FieldPtr& F, const std::vector<Field::Elem>& v) {
  uint64_t q = F->q();
  if (v[0] != 0) {
    auto inv = F->inv(v[0]);
    return Point(uint64_t(F->mul(v[1], inv)) * q + F->mul(v[2], inv));
  }
  if (v[1] != 0) return Point(q * q + F->div(v[2], v[1]));
  return Point(q * q + q);
}

std::vector<Field::Elem> proj2_vector(const FieldPtr& F, Point pt) {
  uint64_t q = F->q();
  if (pt < q * q) return {1, Field::Elem(pt / q), Field::Elem(pt % q)};
  if (pt < q * q + q) return {0, 1, Field::Elem(pt - q * q)};
  return {0, 0, 1};
}

Perm proj2_perm(const FieldPtr& F, const MatGF& A, uint32_t frob = 0) {
  uint64_t q = F->q();
  std::vector<Point> img(q * q + q + 1);
  for (Point pt = 0; pt < img.size(); ++pt) {
    auto v = proj2_vector(F, pt);
    if (frob)
      for (auto& x : v) x = F->frobenius(x, frob);
    img[pt] = proj2_index(F, A.apply_row(v));
  }
  return Perm(std::move(img));
}

// permutation of an explicit projective point list (isotropic points)
Perm listed_perm(const FieldPtr& F, const std::vector<Point>& plist,
                 const std::vector<int32_t>& where, const MatGF& A, uint32_t frob = 0) {
  std::vector<Point> img(plist.size());
  for (uint32_t i = 0; i < plist.size(); ++i) {
    auto v = proj2_vector(F, plist[i]);
    if (frob)
      for (auto& x : v) x = F->frobenius(x, frob);
    Point target = proj2_index(F, A.apply_row(v));
    check(where[target] >= 0, ErrorKind::Inconclusive, "isotropic set not preserved");
    img[i] = Point(where[target]);
  }
  return Perm(std::move(img));
}

PermGroup verified_group(std::vector<Perm> gens, uint64_t seed, uint64_t expected,
                         const std::string& what) {
  PermGroup g(std::move(gens), seed);
  check(g.order() == expected, ErrorKind::Inconclusive,
        what + ": constructed order " + std::to_string(g.order()) + ", expected " +
            std::to_string(expected));
  return g;
}

// ---------------------------------------------------------------------------
// 2-groups by right-regular action: elements s^a t^b

enum class TwoGroupKind { SD, D, Q };

PermGroup regular_two_group(TwoGroupKind kind, uint32_t n, uint64_t seed) {
  uint32_t half = 1u << (n - 1);
  auto index = [&](uint32_t a, uint32_t b) { return a * 2 + b; };
  auto mul = [&](uint32_t a, uint32_t b, uint32_t c, uint32_t d) {
    uint64_t r;  // t s = s^r t
    switch (kind) {
      case TwoGroupKind::SD: r = (1u << (n - 2)) - 1; break;
      default: r = half - 1; break;  // D and Q: t s t^{-1} = s^{-1}
    }
    uint64_t aa = a + (b ? c * r : c);
    uint32_t bb = (b + d) % 2;
    if (kind == TwoGroupKind::Q && b && d) aa += 1u << (n - 2);  // t^2 = s^{2^{n-2}}
    return index(uint32_t(aa % half), bb);
  };
  std::vector<Point> s_img(2 * half), t_img(2 * half);
  for (uint32_t a = 0; a < half; ++a)
    for (uint32_t b = 0; b < 2; ++b) {
      s_img[index(a, b)] = mul(a, b, 1, 0);
      t_img[index(a, b)] = mul(a, b, 0, 1);
    }
  return verified_group({Perm(std::move(s_img)), Perm(std::move(t_img))}, seed, 1ull << n,
                        "regular 2-group");
}

PermGroup cyclic_group(uint32_t m, uint64_t seed) {
  std::vector<Point> img(m);
  for (Point i = 0; i < m; ++i) img[i] = (i + 1) % m;
  return verified_group({Perm(std::move(img))}, seed, m, "cyclic group");
}

// ---------------------------------------------------------------------------
// matrix group generators

std::vector<MatGF> sl2_generators(const FieldPtr& F) {
  auto w = F->generator();
  MatGF T = MatGF::identity(F, 2), L = MatGF::identity(F, 2);
  T.set(0, 1, 1);
  L.set(1, 0, 1);
  MatGF Tw = MatGF::identity(F, 2), Lw = MatGF::identity(F, 2);
  Tw.set(0, 1, w);
  Lw.set(1, 0, w);
  MatGF D(F, 2, 2);
  D.set(0, 0, w);
  D.set(1, 1, F->inv(w));
  return {T, L, Tw, Lw, D};
}

MatGF diag2(const FieldPtr& F, Field::Elem a, Field::Elem b) {
  MatGF m(F, 2, 2);
  m.set(0, 0, a);
  m.set(1, 1, b);
  return m;
}

Field::Elem least_nonsquare(const FieldPtr& E) {
  for (Field::Elem x = 1; x < E->q(); ++x)
    if (!E->is_square(x)) return x;
  fail(ErrorKind::Inconclusive, "no nonsquare found");
}

std::vector<Perm> psl2_gen_perms(const FieldPtr& E) {
  std::vector<Perm> gens;
  for (auto& A : sl2_generators(E)) gens.push_back(proj1_perm(E, A));
  return gens;
}

PermGroup build_sl2pm(uint32_t p, uint32_t f, uint32_t d, uint64_t seed) {
  auto F = Field::make(p, f);
  std::vector<Perm> gens;
  for (auto& A : sl2_generators(F)) gens.push_back(vector_perm(F, A));
  gens.push_back(vector_perm(F, diag2(F, 1, F->neg(1))));  // det -1
  uint64_t q = F->q();
  PermGroup base = verified_group(gens, seed, 2 * q * (q * q - 1), "SL2pm");
  if (d == 1) return base;
  gens.push_back(vector_frob_perm(F, f / d));
  return verified_group(gens, seed, 2 * q * (q * q - 1) * d, "SL2pm:Cd");
}

// SU2pm preserves x1 y1^q + x2 y2^q on GF(q^2)^2.
PermGroup build_su2pm(uint32_t p, uint32_t f, uint32_t d, uint64_t seed) {
  auto E = Field::make(p, 2 * f);
  uint64_t q = ipow(p, f);
  auto sigma = [&](Field::Elem x) { return E->frobenius(x, f); };
  auto norm = [&](Field::Elem x) { return E->mul(x, sigma(x)); };

  // norm fibers for sampling
  std::map<Field::Elem, std::vector<Field::Elem>> fiber;
  for (Field::Elem x = 0; x < E->q(); ++x) fiber[norm(x)].push_back(x);

  Rng rng(seed ^ 0x50205);
  auto random_su2 = [&]() -> MatGF {
    while (true) {
      Field::Elem a = Field::Elem(rng.below(E->q()));
      Field::Elem need = E->sub(1, norm(a));
      Field::Elem b;
      if (need == 0) {
        b = 0;
      } else {
        auto it = fiber.find(need);
        if (it == fiber.end()) continue;
        b = it->second[rng.below(it->second.size())];
      }
      // second row lambda * (sigma(b), -sigma(a)) with N(lambda) = 1
      Field::Elem lam = fiber.at(1)[rng.below(fiber.at(1).size())];
      MatGF A(E, 2, 2);
      A.set(0, 0, a);
      A.set(0, 1, b);
      A.set(1, 0, E->mul(lam, sigma(b)));
      A.set(1, 1, E->neg(E->mul(lam, sigma(a))));
      // scale the second row to determinant 1 (a norm-1 scalar keeps it unitary)
      Field::Elem det = A.det();
      if (det == 0) continue;
      Field::Elem fix = E->inv(det);
      if (norm(fix) != 1) continue;
      A.set(1, 0, E->mul(A.get(1, 0), fix));
      A.set(1, 1, E->mul(A.get(1, 1), fix));
      bool unitary = E->add(norm(A.get(0, 0)), norm(A.get(0, 1))) == 1 &&
                     E->add(norm(A.get(1, 0)), norm(A.get(1, 1))) == 1 &&
                     E->add(E->mul(A.get(0, 0), sigma(A.get(1, 0))),
                            E->mul(A.get(0, 1), sigma(A.get(1, 1)))) == 0;
      if (A.det() != 1 || !unitary) continue;
      return A;
    }
  };

  uint64_t su2_order = q * (q * q - 1);
  std::vector<Perm> gens;
  for (int tries = 0;; ++tries) {
    check(tries < 64, ErrorKind::Stalled, "SU2 generator sampling did not converge");
    gens.push_back(vector_perm(E, random_su2()));
    if (gens.size() < 2) continue;
    PermGroup probe(gens, seed);
    if (probe.order() == su2_order) break;
    check(probe.order() < su2_order, ErrorKind::Inconclusive, "SU2 sampling overshot");
  }
  gens.push_back(vector_perm(E, diag2(E, E->neg(1), 1)));  // unitary, det -1
  PermGroup base = verified_group(gens, seed, 2 * su2_order, "SU2pm");
  if (d == 1) return base;
  gens.push_back(vector_frob_perm(E, 2 * f / d));
  return verified_group(gens, seed, 2 * su2_order * d, "SU2pm:Cd");
}

PermGroup build_pgl2star(uint32_t p, uint32_t f, uint32_t d, uint64_t seed) {
  auto E = Field::make(p, 2 * f);
  uint64_t Q = E->q();
  std::vector<Perm> gens = psl2_gen_perms(E);
  // delta * phi: diagonal-outer times the order-2 field automorphism
  MatGF D = diag2(E, least_nonsquare(E), 1);
  gens.push_back(proj1_perm(E, D, f));
  PermGroup base = verified_group(gens, seed, Q * (Q * Q - 1), "PGL2star");
  if (d == 1) return base;
  gens.push_back(proj1_perm(E, MatGF::identity(E, 2), 2 * f / d));
  return verified_group(gens, seed, Q * (Q * Q - 1) * d, "PGL2star:Cd");
}

std::vector<MatGF> sl3_generators(const FieldPtr& F) {
  auto w = F->generator();
  std::vector<MatGF> out;
  for (auto [i, j] : {std::pair<int, int>{0, 1}, {1, 0}, {1, 2}, {2, 1}}) {
    for (Field::Elem val : {Field::Elem(1), w}) {
      MatGF m = MatGF::identity(F, 3);
      m.set(i, j, val);
      out.push_back(m);
    }
  }
  MatGF D = MatGF::identity(F, 3);
  D.set(0, 0, w);
  D.set(2, 2, F->inv(w));
  out.push_back(D);
  return out;
}

PermGroup build_psl3(uint32_t p, uint32_t f, uint32_t d, uint32_t e, uint64_t seed) {
  auto F = Field::make(p, f);
  uint64_t q = F->q();
  std::vector<Perm> gens;
  for (auto& A : sl3_generators(F)) gens.push_back(proj2_perm(F, A));
  uint64_t order = q * q * q * (q * q - 1) * (q * q * q - 1) / std::gcd<uint64_t>(3, q - 1);
  PermGroup base = verified_group(gens, seed, order, "PSL3");
  if (e == 3) {
    MatGF Dout = MatGF::identity(F, 3);
    Dout.set(0, 0, F->generator());
    gens.push_back(proj2_perm(F, Dout));
    order *= 3;
    base = verified_group(gens, seed, order, "PSL3.e");
  }
  if (d > 1) {
    gens.push_back(proj2_perm(F, MatGF::identity(F, 3), f / d));
    order *= d;
    base = verified_group(gens, seed, order, "PSL3.d");
  }
  return base;
}

// SU3 preserves the hermitian form with antidiagonal Gram matrix over GF(q^2).
PermGroup build_psu3(uint32_t p, uint32_t f, uint32_t d, uint32_t e, uint64_t seed) {
  auto E = Field::make(p, 2 * f);
  uint64_t q = ipow(p, f);
  auto sigma = [&](Field::Elem x) { return E->frobenius(x, f); };
  auto norm = [&](Field::Elem x) { return E->mul(x, sigma(x)); };
  auto tr = [&](Field::Elem x) { return E->add(x, sigma(x)); };

  // isotropic projective points: v1*sigma(v3) + sigma(v1)*v3 + N(v2) = 0
  auto iso_value = [&](const std::vector<Field::Elem>& v) {
    return E->add(E->add(E->mul(v[0], sigma(v[2])), E->mul(sigma(v[0]), v[2])), norm(v[1]));
  };
  uint64_t nproj = uint64_t(E->q()) * E->q() + E->q() + 1;
  std::vector<Point> plist;
  std::vector<int32_t> where(nproj, -1);
  for (Point pt = 0; pt < nproj; ++pt) {
    if (iso_value(proj2_vector(E, pt)) == 0) {
      where[pt] = int32_t(plist.size());
      plist.push_back(pt);
    }
  }
  check(plist.size() == q * q * q + 1, ErrorKind::Inconclusive, "isotropic point count");

  std::map<Field::Elem, Field::Elem> tr_pre;  // trace value -> one preimage
  for (Field::Elem x = E->q(); x-- > 0;) tr_pre[tr(x)] = x;

  auto unipotent = [&](Field::Elem a) {
    Field::Elem target = E->neg(norm(a));
    auto it = tr_pre.find(target);
    check(it != tr_pre.end(), ErrorKind::Inconclusive, "trace not surjective");
    MatGF u = MatGF::identity(E, 3);
    u.set(0, 1, a);
    u.set(0, 2, it->second);
    u.set(1, 2, E->neg(sigma(a)));
    return u;
  };

  std::vector<MatGF> mats;
  mats.push_back(unipotent(0));
  mats.push_back(unipotent(1));
  mats.push_back(unipotent(E->generator()));
  {
    MatGF w(E, 3, 3);
    w.set(0, 2, 1);
    w.set(1, 1, E->neg(1));
    w.set(2, 0, 1);
    mats.push_back(w);
  }
  {
    Field::Elem alpha = E->generator();
    MatGF t(E, 3, 3);
    t.set(0, 0, alpha);
    t.set(1, 1, E->pow(alpha, q - 1));
    t.set(2, 2, E->inv(E->pow(alpha, q)));
    mats.push_back(t);
  }
  // gate: every generator is unitary of determinant 1
  MatGF J(E, 3, 3);
  J.set(0, 2, 1);
  J.set(1, 1, 1);
  J.set(2, 0, 1);
  for (auto& A : mats) {
    check(A.det() == 1, ErrorKind::Inconclusive, "SU3 generator determinant");
    check(A * J * A.frobenius(f).transpose() == J, ErrorKind::Inconclusive,
          "SU3 generator not unitary");
  }
  std::vector<Perm> gens;
  for (auto& A : mats) gens.push_back(listed_perm(E, plist, where, A));
  uint64_t order = q * q * q * (q * q - 1) * (q * q * q + 1) / std::gcd<uint64_t>(3, q + 1);
  PermGroup base = verified_group(gens, seed, order, "PSU3");
  if (e == 3) {
    Field::Elem alpha = E->generator();
    MatGF Dout(E, 3, 3);
    Dout.set(0, 0, alpha);
    Dout.set(1, 1, 1);
    Dout.set(2, 2, E->inv(E->pow(alpha, q)));
    gens.push_back(listed_perm(E, plist, where, Dout));
    order *= 3;
    base = verified_group(gens, seed, order, "PSU3.e");
  }
  if (d > 1) {
    gens.push_back(listed_perm(E, plist, where, MatGF::identity(E, 3), 2 * f / d));
    order *= d;
    base = verified_group(gens, seed, order, "PSU3.d");
  }
  return base;
}

}  // namespace

// ---------------------------------------------------------------------------
// recipes

const char* to_string(Family f) {
  switch (f) {
    case Family::SD: return "sd";
    case Family::D: return "d";
    case Family::Q: return "q";
    case Family::C: return "c";
    case Family::SL2pm: return "sl2pm";
    case Family::SU2pm: return "su2pm";
    case Family::PGL2star: return "pgl2star";
    case Family::PSL3: return "psl3";
    case Family::PSU3: return "psu3";
    case Family::GL2_3: return "gl2_3";
    case Family::M11: return "m11";
  }
  return "?";
}

const char* to_string(ClassTag t) {
  switch (t) {
    case ClassTag::BB: return "BB";
    case ClassTag::BA1: return "BA1";
    case ClassTag::BA2: return "BA2";
    case ClassTag::AB: return "AB";
    case ClassTag::AA1: return "AA1";
    case ClassTag::AA2: return "AA2";
  }
  return "?";
}

GroupRecipe GroupRecipe::parse(const std::string& text) {
  std::string fam = text;
  std::string params;
  if (auto pos = text.find(':'); pos != std::string::npos) {
    fam = text.substr(0, pos);
    params = text.substr(pos + 1);
  }
  static const std::map<std::string, Family> names = {
      {"sd", Family::SD},        {"d", Family::D},
      {"q", Family::Q},          {"c", Family::C},
      {"sl2pm", Family::SL2pm},  {"su2pm", Family::SU2pm},
      {"pgl2star", Family::PGL2star}, {"psl3", Family::PSL3},
      {"psu3", Family::PSU3},    {"gl2_3", Family::GL2_3},
      {"m11", Family::M11}};
  auto it = names.find(fam);
  check(it != names.end(), ErrorKind::RecipeInvalid, "unknown family '" + fam + "'");
  GroupRecipe r;
  r.family = it->second;
  std::stringstream ss(params);
  std::string kv;
  while (std::getline(ss, kv, ',')) {
    if (kv.empty()) continue;
    auto eq = kv.find('=');
    check(eq != std::string::npos, ErrorKind::RecipeInvalid, "bad parameter '" + kv + "'");
    std::string key = kv.substr(0, eq);
    uint32_t val = 0;
    try {
      val = uint32_t(std::stoul(kv.substr(eq + 1)));
    } catch (...) {
      fail(ErrorKind::RecipeInvalid, "bad value in '" + kv + "'");
    }
    if (key == "p") r.p = val;
    else if (key == "f") r.f = val;
    else if (key == "d") r.d = val;
    else if (key == "e") r.e = val;
    else if (key == "n") r.n = val;
    else if (key == "m") r.m = val;
    else fail(ErrorKind::RecipeInvalid, "unknown parameter '" + key + "'");
  }
  r.validate();
  return r;
}

std::string GroupRecipe::format() const {
  std::ostringstream os;
  os << to_string(family);
  switch (family) {
    case Family::SD:
    case Family::D:
    case Family::Q: os << ":n=" << n; break;
    case Family::C: os << ":m=" << m; break;
    case Family::GL2_3:
    case Family::M11: break;
    default: {
      os << ":p=" << p << ",f=" << f;
      if (d > 1) os << ",d=" << d;
      if (e > 1) os << ",e=" << e;
    }
  }
  return os.str();
}

uint32_t GroupRecipe::validate() const {
  using blockinv::two_part;
  auto need = [&](bool cond, const std::string& msg) {
    check(cond, ErrorKind::RecipeInvalid, format() + ": " + msg);
  };
  auto q_checks = [&]() -> uint64_t {
    need(p >= 3 && is_prime(p), "p must be an odd prime");
    need(f >= 1 && f <= 10, "f out of range");
    need(d >= 1 && d % 2 == 1 && f % d == 0, "d must be an odd divisor of f");
    return ipow(p, f);
  };
  switch (family) {
    case Family::SD: need(n >= 4 && n <= 20, "semidihedral needs n >= 4"); return n;
    case Family::D: need(n >= 2 && n <= 20, "dihedral needs n >= 2"); return n;
    case Family::Q: need(n >= 3 && n <= 20, "quaternion needs n >= 3"); return n;
    case Family::C: need(m >= 1, "cyclic needs m >= 1"); return log2_exact(two_part(m));
    case Family::GL2_3: return 4;
    case Family::M11: return 4;
    case Family::SL2pm: {
      uint64_t q = q_checks();
      uint64_t tp = two_part(q + 1);
      need(tp >= 4, "needs (q+1)_2 >= 4, i.e. q = 3 mod 4");
      return log2_exact(4 * tp);
    }
    case Family::SU2pm: {
      uint64_t q = q_checks();
      uint64_t tp = two_part(q - 1);
      need(tp >= 4, "needs (q-1)_2 >= 4, i.e. q = 1 mod 4");
      return log2_exact(4 * tp);
    }
    case Family::PGL2star: {
      uint64_t q = q_checks();
      uint64_t Q = q * q;
      return log2_exact(2 * two_part(Q - 1));
    }
    case Family::PSL3: {
      uint64_t q = q_checks();
      need(e == 1 || (e == 3 && (q - 1) % 3 == 0), "e must divide gcd(3, q-1)");
      uint64_t tp = two_part(q + 1);
      need(tp >= 4, "needs (q+1)_2 >= 4, i.e. q = 3 mod 4");
      return log2_exact(4 * tp);
    }
    case Family::PSU3: {
      uint64_t q = q_checks();
      need(e == 1 || (e == 3 && (q + 1) % 3 == 0), "e must divide gcd(3, q+1)");
      uint64_t tp = two_part(q - 1);
      need(tp >= 4, "needs (q-1)_2 >= 4, i.e. q = 1 mod 4");
      return log2_exact(4 * tp);
    }
  }
  fail(ErrorKind::RecipeInvalid, "unhandled family");
}

uint64_t GroupRecipe::expected_order() const {
  uint64_t q = p ? ipow(p, f) : 0;
  switch (family) {
    case Family::SD:
    case Family::D:
    case Family::Q: return 1ull << n;
    case Family::C: return m;
    case Family::GL2_3: return 48;
    case Family::M11: return 7920;
    case Family::SL2pm:
    case Family::SU2pm: return 2 * q * (q * q - 1) * d;
    case Family::PGL2star: {
      uint64_t Q = q * q;
      return Q * (Q * Q - 1) * d;
    }
    case Family::PSL3:
      return q * q * q * (q * q - 1) * (q * q * q - 1) / std::gcd<uint64_t>(3, q - 1) * e * d;
    case Family::PSU3:
      return q * q * q * (q * q - 1) * (q * q * q + 1) / std::gcd<uint64_t>(3, q + 1) * e * d;
  }
  return 0;
}

// ---------------------------------------------------------------------------

PermGroup build_psl2(uint32_t p, uint32_t twof, uint64_t seed) {
  auto E = Field::make(p, twof);
  uint64_t Q = E->q();
  return verified_group(psl2_gen_perms(E), seed, Q * (Q * Q - 1) / 2, "PSL2");
}

PermGroup build_pgl2(uint32_t p, uint32_t twof, uint64_t seed) {
  auto E = Field::make(p, twof);
  uint64_t Q = E->q();
  auto gens = psl2_gen_perms(E);
  gens.push_back(proj1_perm(E, diag2(E, least_nonsquare(E), 1)));
  return verified_group(gens, seed, Q * (Q * Q - 1), "PGL2");
}

PermGroup build_psigmal2(uint32_t p, uint32_t twof, uint64_t seed) {
  check(twof % 2 == 0, ErrorKind::RecipeInvalid, "even exponent required");
  auto E = Field::make(p, twof);
  uint64_t Q = E->q();
  auto gens = psl2_gen_perms(E);
  gens.push_back(proj1_perm(E, MatGF::identity(E, 2), twof / 2));
  return verified_group(gens, seed, Q * (Q * Q - 1), "PSigmaL2");
}

PermGroup build_m11_from(const std::vector<Perm>& gens, uint64_t seed) {
  PermGroup g(gens, seed);
  check(g.order() == 7920, ErrorKind::DataCorrupt, "M11 data: wrong order");
  const auto& classes = g.conjugacy_classes(10'000);
  check(classes.size() == 10, ErrorKind::DataCorrupt, "M11 data: wrong class count");
  for (auto& c : classes) {
    if (c.rep_order == 1) continue;
    auto closure = permgrp::normal_closure(g, {c.rep}, seed);
    check(closure.group.order() == 7920, ErrorKind::DataCorrupt, "M11 data: not simple");
  }
  return g;
}

AtlasGroup build(const GroupRecipe& r, uint64_t seed, const BuildOptions& opt) {
  uint32_t n = r.validate();
  uint64_t expected = r.expected_order();
  check(expected <= opt.max_order, ErrorKind::BudgetExceeded,
        r.format() + ": order " + std::to_string(expected) + " beyond budget");
  std::ostringstream prov;
  PermGroup g = [&]() -> PermGroup {
    switch (r.family) {
      case Family::SD:
        prov << "regular action from the presentation";
        return regular_two_group(TwoGroupKind::SD, r.n, seed);
      case Family::D:
        prov << "regular action from the presentation";
        return regular_two_group(TwoGroupKind::D, r.n, seed);
      case Family::Q:
        prov << "regular action from the presentation";
        return regular_two_group(TwoGroupKind::Q, r.n, seed);
      case Family::C:
        prov << "regular action";
        return cyclic_group(r.m, seed);
      case Family::GL2_3:
        prov << "determinant-(+-1) matrices on the 8 nonzero vectors of GF(3)^2";
        return build_sl2pm(3, 1, 1, seed);
      case Family::M11: {
        prov << "embedded standard degree-11 generators";
        Perm a = Perm::from_cycles(11, {{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10}});
        Perm b = Perm::from_cycles(11, {{2, 6, 10, 7}, {3, 9, 4, 5}});
        return build_m11_from({a, b}, seed);
      }
      case Family::SL2pm:
        prov << "determinant-(+-1) matrices on nonzero vectors of GF(" << ipow(r.p, r.f) << ")^2";
        return build_sl2pm(r.p, r.f, r.d, seed);
      case Family::SU2pm:
        prov << "determinant-(+-1) unitary matrices on nonzero vectors of GF("
             << ipow(r.p, 2 * r.f) << ")^2";
        return build_su2pm(r.p, r.f, r.d, seed);
      case Family::PGL2star:
        prov << "third index-2 subgroup over PSL2(" << ipow(r.p, 2 * r.f) << ") on the projective line";
        return build_pgl2star(r.p, r.f, r.d, seed);
      case Family::PSL3:
        prov << "projective action on the plane over GF(" << ipow(r.p, r.f) << ")";
        return build_psl3(r.p, r.f, r.d, r.e, seed);
      case Family::PSU3:
        prov << "projective action on the " << (ipow(r.p, 3 * r.f) + 1) << " isotropic points";
        return build_psu3(r.p, r.f, r.d, r.e, seed);
    }
    fail(ErrorKind::RecipeInvalid, "unhandled family");
  }();
  check(g.degree() <= opt.max_degree, ErrorKind::BudgetExceeded,
        r.format() + ": degree beyond budget");
  g.set_name(r.format());
  return AtlasGroup{r, std::move(g), prov.str(), n};
}

AtlasGroup build(const std::string& recipe, uint64_t seed, const BuildOptions& opt) {
  return build(GroupRecipe::parse(recipe), seed, opt);
}

GroupRecipe canonical_rep(ClassTag cls, uint32_t n) {
  check(n >= 4, ErrorKind::InvalidInput, "class needs n >= 4");
  GroupRecipe r;
  auto smallest_q = [&](bool plus_side) {
    for (uint64_t q = 3;; q += 2) {
      check(q < (1ull << (n + 6)), ErrorKind::Inconclusive, "no admissible q found");
      auto pp = prime_power(q);
      if (!pp) continue;
      uint64_t tp = blockinv::two_part(plus_side ? q + 1 : q - 1);
      if (4 * tp == (1ull << n)) {
        r.p = pp->first;
        r.f = pp->second;
        return;
      }
    }
  };
  switch (cls) {
    case ClassTag::BB:
      r.family = Family::SD;
      r.n = n;
      return r;
    case ClassTag::BA1:
      r.family = Family::SL2pm;
      smallest_q(true);
      return r;
    case ClassTag::BA2:
      r.family = Family::SU2pm;
      smallest_q(false);
      return r;
    case ClassTag::AA1:
      r.family = Family::PSL3;
      smallest_q(true);
      return r;
    case ClassTag::AA2:
      r.family = Family::PSU3;
      smallest_q(false);
      return r;
    case ClassTag::AB: {
      r.family = Family::PGL2star;
      for (uint64_t R = 3;; R += 2) {
        check(R < (1ull << (n + 6)), ErrorKind::Inconclusive, "no admissible q found");
        auto pp = prime_power(R);
        if (!pp) continue;
        uint64_t Q = R * R;
        if (2 * blockinv::two_part(Q - 1) == (1ull << n)) {
          r.p = pp->first;
          r.f = pp->second;
          return r;
        }
      }
    }
  }
  fail(ErrorKind::InvalidInput, "unhandled class");
}

}  // namespace tameblocks::atlas
