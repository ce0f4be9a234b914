#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace tameblocks::gf {

/// A finite field GF(p^f) as GF(p)[x]/(modulus). Elements are canonical
/// indices in [0, q): the index encodes the coefficient sequence
/// (c_0, ..., c_{f-1}), least degree first, as sum c_i * p^i.
/// The modulus is the least monic irreducible of degree f under that same
/// integer encoding, so construction is deterministic.
class Field {
public:
  using Elem = uint32_t;

  /// Deterministic construction; throws NotPrime for composite p.
  static std::shared_ptr<const Field> make(uint32_t p, uint32_t f);

  uint32_t p() const { return p_; }
  uint32_t f() const { return f_; }
  uint32_t q() const { return q_; }
  /// Monic modulus coefficients, length f+1, least degree first.
  const std::vector<uint32_t>& modulus() const { return modulus_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  /// The class of x (equals p for f > 1, a generator only by accident).
  Elem x() const { return f_ > 1 ? p_ : 0; }
  /// A fixed generator of the multiplicative group.
  Elem generator() const { return gen_; }

  Elem from_int(uint64_t n) const;  // embeds GF(p): n mod p
  std::vector<uint32_t> coeffs(Elem a) const;
  Elem from_coeffs(const std::vector<uint32_t>& c) const;

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const { return (a && b) ? exp_[(log_[a] + log_[b]) % (q_ - 1)] : 0; }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, uint64_t e) const;
  Elem frobenius(Elem a, uint32_t times = 1) const;  // a^(p^times)
  bool is_square(Elem a) const;

  std::string to_string(Elem a) const;

private:
  Field() = default;
  uint32_t p_ = 0, f_ = 0, q_ = 0;
  std::vector<uint32_t> modulus_;
  Elem gen_ = 0;
  std::vector<uint32_t> log_;   // log_[a] for a != 0
  std::vector<Elem> exp_;       // exp_[k] = gen^k, k in [0, q-1)
};

using FieldPtr = std::shared_ptr<const Field>;

/// Dense matrix over a Field; row-major, entries are Field::Elem.
class MatGF {
public:
  MatGF(FieldPtr field, uint32_t rows, uint32_t cols);
  static MatGF identity(FieldPtr field, uint32_t n);

  const FieldPtr& field() const { return field_; }
  uint32_t rows() const { return rows_; }
  uint32_t cols() const { return cols_; }

  Field::Elem get(uint32_t r, uint32_t c) const { return e_[size_t(r) * cols_ + c]; }
  void set(uint32_t r, uint32_t c, Field::Elem v) { e_[size_t(r) * cols_ + c] = v; }

  MatGF operator*(const MatGF& o) const;
  bool operator==(const MatGF& o) const;

  MatGF inverse() const;  // throws NotSquare / InvalidInput (singular)
  Field::Elem det() const;

  /// v * A for a row vector v (length rows()).
  std::vector<Field::Elem> apply_row(const std::vector<Field::Elem>& v) const;

  /// Entrywise Frobenius a -> a^(p^times).
  MatGF frobenius(uint32_t times) const;
  MatGF transpose() const;

private:
  FieldPtr field_;
  uint32_t rows_, cols_;
  std::vector<Field::Elem> e_;
};

}  // namespace tameblocks::gf
