#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tameblocks/rng.hpp"

namespace tameblocks::gf2 {

/// Dense matrix over GF(2), rows packed 64 entries per word. Trailing padding
/// bits of each row are kept zero. Vectors are rows: the natural action is
/// v |-> v*A.
class Mat {
public:
  Mat() = default;
  Mat(uint32_t rows, uint32_t cols);

  static Mat identity(uint32_t n);

  uint32_t rows() const { return rows_; }
  uint32_t cols() const { return cols_; }
  uint32_t words_per_row() const { return wpr_; }

  bool get(uint32_t r, uint32_t c) const {
    return (w_[size_t(r) * wpr_ + (c >> 6)] >> (c & 63)) & 1u;
  }
  void set(uint32_t r, uint32_t c, bool bit) {
    uint64_t mask = uint64_t(1) << (c & 63);
    uint64_t& word = w_[size_t(r) * wpr_ + (c >> 6)];
    if (bit)
      word |= mask;
    else
      word &= ~mask;
  }

  uint64_t* row(uint32_t r) { return w_.data() + size_t(r) * wpr_; }
  const uint64_t* row(uint32_t r) const { return w_.data() + size_t(r) * wpr_; }

  void xor_row_from(uint32_t dst, const Mat& src, uint32_t src_row);
  bool row_is_zero(uint32_t r) const;

  Mat operator+(const Mat& o) const;  // entrywise xor
  Mat operator*(const Mat& o) const;
  bool operator==(const Mat& o) const;
  bool operator!=(const Mat& o) const { return !(*this == o); }

  Mat transpose() const;
  bool is_zero() const;
  bool is_identity() const;

  uint32_t rank() const;

  /// Reduced row echelon form of the row space, zero rows dropped.
  /// Pivot columns (ascending) are reported through `pivots` when non-null.
  Mat row_basis(std::vector<uint32_t>* pivots = nullptr) const;

  /// Basis (as rows) of { v : v * A = 0 }.
  Mat left_nullspace() const;
  /// Basis (as rows) of { x : A * x^T = 0 }, i.e. solutions of A x = 0.
  Mat right_nullspace() const { return transpose().left_nullspace(); }

  /// One solution x (as row) of x * A = b, if any.
  std::optional<Mat> solve_left(const Mat& b) const;
  /// One solution x of A x = b (b and x as rows of length rows()/cols()).
  std::optional<Mat> solve_right(const Mat& b) const;

  std::optional<Mat> inverse() const;

  Mat submatrix_rows(const std::vector<uint32_t>& rows) const;

  std::string row_hex(uint32_t r) const;
  static Mat from_row_hex(const std::vector<std::string>& rows, uint32_t cols);

private:
  uint32_t rows_ = 0, cols_ = 0, wpr_ = 0;
  std::vector<uint64_t> w_;
};

/// Polynomial over GF(2); bit i is the coefficient of x^i.
class Poly {
public:
  Poly() = default;  // zero
  static Poly zero() { return Poly(); }
  static Poly one();
  static Poly x();
  static Poly monomial(uint32_t deg);

  int64_t degree() const { return deg_; }
  bool is_zero() const { return deg_ < 0; }
  bool is_one() const { return deg_ == 0; }
  bool coeff(uint32_t i) const;
  void set_coeff(uint32_t i, bool bit);

  Poly operator+(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }
  bool operator<(const Poly& o) const;  // by degree, then bits; for canonical ordering

  static void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);
  Poly operator%(const Poly& o) const;
  Poly operator/(const Poly& o) const;
  static Poly gcd(Poly a, Poly b);

  Poly derivative() const;
  /// Inverse square root of the Frobenius: for f with only even-degree terms,
  /// returns g with g^2 = f.
  Poly even_part_sqrt() const;

  std::string to_string() const;

private:
  void trim();
  std::vector<uint64_t> w_;
  int64_t deg_ = -1;
};

/// Full factorization into (irreducible, multiplicity) pairs, deterministic
/// given the rng stream. Factors are returned in canonical (Poly::operator<)
/// order.
std::vector<std::pair<Poly, uint32_t>> factor(const Poly& f, Rng& rng);

/// ax + by = gcd(a, b)
Poly ext_gcd(const Poly& a, const Poly& b, Poly& x, Poly& y);

/// Minimal polynomial of a square matrix; verified by evaluation before return.
Poly min_poly(const Mat& a);

/// Horner evaluation p(A).
Mat eval_poly(const Poly& p, const Mat& a);

}  // namespace tameblocks::gf2
