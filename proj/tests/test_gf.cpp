#include <doctest.h>

#include "tameblocks/error.hpp"
#include "tameblocks/gf.hpp"
#include "tameblocks/gf2.hpp"
#include "tameblocks/rng.hpp"

using namespace tameblocks;
using gf::Field;
using gf::MatGF;

namespace {

// Independent modulus oracle: scan monic quadratics over GF(p) in integer
// encoding order and return the first with no root.
std::vector<uint32_t> least_irreducible_quadratic(uint32_t p) {
  for (uint32_t b = 0;; ++b) {
    for (uint32_t c0 = 0; c0 < p; ++c0) {
      uint32_t c1 = b;  // encode ascending: value = c1*p + c0, scanned c1-major
      if (c1 >= p) return {};
      bool has_root = false;
      for (uint32_t x = 0; x < p && !has_root; ++x)
        if ((x * x + c1 * x + c0) % p == 0) has_root = true;
      if (!has_root) return {c0, c1, 1};
    }
  }
}

// Cofactor-expansion determinant, the independent route for mat_det.
Field::Elem det_cofactor(const MatGF& m) {
  const Field& F = *m.field();
  uint32_t n = m.rows();
  if (n == 1) return m.get(0, 0);
  Field::Elem acc = 0;
  for (uint32_t j = 0; j < n; ++j) {
    MatGF minor(m.field(), n - 1, n - 1);
    for (uint32_t r = 1; r < n; ++r) {
      uint32_t cc = 0;
      for (uint32_t c = 0; c < n; ++c) {
        if (c == j) continue;
        minor.set(r - 1, cc++, m.get(r, c));
      }
    }
    Field::Elem term = F.mul(m.get(0, j), det_cofactor(minor));
    acc = (j % 2 == 0) ? F.add(acc, term) : F.sub(acc, term);
  }
  return acc;
}

MatGF random_matrix(const gf::FieldPtr& F, uint32_t n, Rng& rng) {
  MatGF m(F, n, n);
  for (uint32_t r = 0; r < n; ++r)
    for (uint32_t c = 0; c < n; ++c) m.set(r, c, Field::Elem(rng.below(F->q())));
  return m;
}

}  // namespace

TEST_CASE("field construction") {
  auto F3 = Field::make(3, 1);
  CHECK(F3->q() == 3);
  CHECK(F3->modulus() == std::vector<uint32_t>{0, 1});  // modulus x

  auto F9 = Field::make(3, 2);
  CHECK(F9->q() == 9);
  CHECK(F9->modulus() == least_irreducible_quadratic(3));

  auto F25 = Field::make(5, 2);
  CHECK(F25->modulus() == least_irreducible_quadratic(5));

  CHECK_THROWS_AS(Field::make(4, 1), Error);
  try {
    Field::make(4, 1);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotPrime);
  }
}

TEST_CASE("field axioms on seeded random triples") {
  for (auto [p, f] : {std::pair<uint32_t, uint32_t>{3, 1}, {3, 2}, {3, 3}, {5, 2}, {7, 2}, {3, 4}}) {
    auto F = Field::make(p, f);
    Rng rng(0x90F1 + p * 100 + f);
    for (int trial = 0; trial < 1000; ++trial) {
      auto a = Field::Elem(rng.below(F->q()));
      auto b = Field::Elem(rng.below(F->q()));
      auto c = Field::Elem(rng.below(F->q()));
      REQUIRE(F->add(F->add(a, b), c) == F->add(a, F->add(b, c)));
      REQUIRE(F->mul(F->mul(a, b), c) == F->mul(a, F->mul(b, c)));
      REQUIRE(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
      REQUIRE(F->add(a, b) == F->add(b, a));
      REQUIRE(F->mul(a, b) == F->mul(b, a));
      REQUIRE(F->add(a, F->neg(a)) == 0);
      if (a != 0) REQUIRE(F->mul(a, F->inv(a)) == 1);
      REQUIRE(F->mul(a, 1) == a);
      REQUIRE(F->add(a, 0) == a);
    }
  }
}

TEST_CASE("frobenius is a field automorphism") {
  auto F = Field::make(3, 3);
  Rng rng(0xF120B);
  for (int trial = 0; trial < 1000; ++trial) {
    auto a = Field::Elem(rng.below(F->q()));
    auto b = Field::Elem(rng.below(F->q()));
    CHECK(F->frobenius(F->add(a, b)) == F->add(F->frobenius(a), F->frobenius(b)));
    CHECK(F->frobenius(F->mul(a, b)) == F->mul(F->frobenius(a), F->frobenius(b)));
  }
  // x -> x^(p^f) is the identity
  for (Field::Elem a = 0; a < F->q(); ++a) CHECK(F->frobenius(a, 3) == a);
}

TEST_CASE("determinants") {
  auto F3 = Field::make(3, 1);
  CHECK(MatGF::identity(F3, 2).det() == 1);

  MatGF d(F3, 2, 2);
  d.set(0, 0, 1);
  d.set(1, 1, F3->neg(1));
  CHECK(d.det() == 2);

  auto F9 = Field::make(3, 2);
  Rng rng(0xDE7);
  for (int trial = 0; trial < 50; ++trial) {
    MatGF m = random_matrix(F9, 3, rng);
    CHECK(m.det() == det_cofactor(m));
  }
  // multiplicativity
  for (int trial = 0; trial < 50; ++trial) {
    MatGF a = random_matrix(F9, 3, rng);
    MatGF b = random_matrix(F9, 3, rng);
    CHECK((a * b).det() == F9->mul(a.det(), b.det()));
  }
  MatGF rect(F3, 2, 3);
  CHECK_THROWS_AS(rect.det(), Error);
}

TEST_CASE("gf2 rank, nullspace, solve") {
  gf2::Mat zero(4, 4);
  CHECK(zero.rank() == 0);
  CHECK(gf2::Mat::identity(8).rank() == 8);

  Rng rng(0x6F2);
  for (int trial = 0; trial < 100; ++trial) {
    gf2::Mat a(20, 30);
    for (uint32_t r = 0; r < 20; ++r)
      for (uint32_t c = 0; c < 30; ++c)
        if (rng.flip()) a.set(r, c, true);
    gf2::Mat ns = a.right_nullspace();
    CHECK(a.rank() + ns.rows() == 30);
    // A v = 0 for every basis vector
    for (uint32_t i = 0; i < ns.rows(); ++i) {
      gf2::Mat v = ns.submatrix_rows({i});
      CHECK((v * a.transpose()).is_zero());
    }
    gf2::Mat lns = a.left_nullspace();
    CHECK(lns.rows() + a.rank() == 20);
    for (uint32_t i = 0; i < lns.rows(); ++i)
      CHECK((lns.submatrix_rows({i}) * a).is_zero());
  }

  // solve: construct a consistent system
  for (int trial = 0; trial < 50; ++trial) {
    gf2::Mat a(10, 14);
    for (uint32_t r = 0; r < 10; ++r)
      for (uint32_t c = 0; c < 14; ++c)
        if (rng.flip()) a.set(r, c, true);
    gf2::Mat x(1, 10);
    for (uint32_t c = 0; c < 10; ++c)
      if (rng.flip()) x.set(0, c, true);
    gf2::Mat b = x * a;
    auto sol = a.solve_left(b);
    REQUIRE(sol.has_value());
    CHECK((*sol * a) == b);
  }
}

TEST_CASE("gf2 inverse and transpose") {
  Rng rng(0x1231);
  int invertible = 0;
  for (int trial = 0; trial < 60; ++trial) {
    gf2::Mat a(12, 12);
    for (uint32_t r = 0; r < 12; ++r)
      for (uint32_t c = 0; c < 12; ++c)
        if (rng.flip()) a.set(r, c, true);
    auto inv = a.inverse();
    if (inv) {
      ++invertible;
      CHECK((a * *inv).is_identity());
    } else {
      CHECK(a.rank() < 12);
    }
    CHECK(a.transpose().transpose() == a);
  }
  CHECK(invertible > 5);
}

TEST_CASE("gf2 polynomial factorization") {
  using gf2::Poly;
  // (x^2+x+1)(x^3+x+1) * (x+1)^2
  Poly p1, p2, p3;
  p1.set_coeff(0, true); p1.set_coeff(1, true); p1.set_coeff(2, true);
  p2.set_coeff(0, true); p2.set_coeff(1, true); p2.set_coeff(3, true);
  p3.set_coeff(0, true); p3.set_coeff(1, true);
  Poly f = p1 * p2 * p3 * p3;
  Rng rng(0xFAC);
  auto factors = gf2::factor(f, rng);
  REQUIRE(factors.size() == 3);
  Poly prod = Poly::one();
  for (auto& [q, m] : factors)
    for (uint32_t i = 0; i < m; ++i) prod = prod * q;
  CHECK(prod == f);
  // the factorization contains p3 with multiplicity 2
  bool found = false;
  for (auto& [q, m] : factors)
    if (q == p3 && m == 2) found = true;
  CHECK(found);
}

TEST_CASE("gf2 minimal polynomial") {
  // companion matrix of x^4 + x + 1 has that minimal polynomial
  gf2::Mat c(4, 4);
  c.set(0, 1, true);
  c.set(1, 2, true);
  c.set(2, 3, true);
  c.set(3, 0, true);
  c.set(3, 1, true);
  gf2::Poly expect;
  expect.set_coeff(0, true);
  expect.set_coeff(1, true);
  expect.set_coeff(4, true);
  CHECK(gf2::min_poly(c) == expect);
  CHECK(gf2::eval_poly(expect, c).is_zero());

  CHECK(gf2::min_poly(gf2::Mat::identity(5)) == (gf2::Poly::x() + gf2::Poly::one()));
}

TEST_CASE("gf2 hex row round trip") {
  Rng rng(0x4E8);
  gf2::Mat a(3, 13);
  for (uint32_t r = 0; r < 3; ++r)
    for (uint32_t c = 0; c < 13; ++c)
      if (rng.flip()) a.set(r, c, true);
  std::vector<std::string> rows;
  for (uint32_t r = 0; r < 3; ++r) rows.push_back(a.row_hex(r));
  CHECK(gf2::Mat::from_row_hex(rows, 13) == a);
}
