#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tameblocks::perm {

using Point = uint32_t;

/// Permutation of {0, ..., d-1}. Composition is left-to-right:
/// (a * b) maps p to b[a[p]] — apply a first, then b. This matches the
/// row-vector convention v * A used on the linear-algebra side.
class Perm {
public:
  Perm() = default;
  explicit Perm(std::vector<Point> images);  // validates bijection
  /// No validation: for internal use where the input is a known bijection.
  static Perm unchecked(std::vector<Point> images);
  static Perm identity(uint32_t degree);
  static Perm from_cycles(uint32_t degree, const std::vector<std::vector<Point>>& cycles);

  uint32_t degree() const { return uint32_t(img_.size()); }
  Point operator[](Point p) const { return img_[p]; }
  const std::vector<Point>& images() const { return img_; }

  bool is_identity() const;
  Perm inverse() const;
  Perm pow(uint64_t e) const;
  /// g.inverse() * (*this) * g
  Perm conjugated_by(const Perm& g) const;

  /// (length, count) pairs, lengths ascending.
  std::vector<std::pair<uint64_t, uint32_t>> cycle_type() const;
  uint64_t order() const;  // TooLarge if the lcm overflows
  /// this ^ (odd part of order): the 2-part of the element.
  Perm two_part_power() const;
  /// this ^ (2-part of order): the odd part of the element.
  Perm odd_part_power() const;

  bool operator==(const Perm& o) const { return img_ == o.img_; }
  bool operator!=(const Perm& o) const { return img_ != o.img_; }
  bool operator<(const Perm& o) const { return img_ < o.img_; }

  std::string to_cycle_string() const;

private:
  std::vector<Point> img_;
};

Perm operator*(const Perm& a, const Perm& b);

}  // namespace tameblocks::perm
