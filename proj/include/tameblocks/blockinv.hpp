#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace tameblocks::blockinv {

/// Largest power of two dividing m (m >= 1).
uint64_t two_part(uint64_t m);

/// Number of simple modules in the principal block, by fusion pattern:
/// bb -> 1, ba -> 2, ab -> 2, aa -> 3. Pattern strings as emitted by the
/// two-local layer ("bb", "ba", "ab", "aa").
uint32_t olsson_ell(const std::string& pattern);

enum class CartanSide { SL, SU };
const char* to_string(CartanSide s);

/// Cartan matrix of the centralizer-level block for defect exponent n.
struct CartanMatrix {
  std::vector<int64_t> entries;  // row-major, size x size
  uint32_t size = 0;
  uint32_t n = 0;
  CartanSide side = CartanSide::SL;

  int64_t at(uint32_t r, uint32_t c) const { return entries[size_t(r) * size + c]; }
  int64_t det() const;  // 2x2 only in this artifact
  bool symmetric() const;
  bool positive_definite() const;
  bool operator==(const CartanMatrix& o) const {
    return entries == o.entries && size == o.size;
  }
  nlohmann::json to_json() const;
};

/// sl-side: [[4, 2], [2, 2^{n-3}+1]];  su-side: [[2^{n-1}, 2^{n-2}], [2^{n-2}, 2^{n-3}+1]].
CartanMatrix cartan_bar(uint32_t n, CartanSide side);

/// Entrywise doubling, the passage from the central quotient back up a
/// central subgroup of order 2. Tags are preserved.
CartanMatrix cartan_double(const CartanMatrix& c);

struct Distinction {
  uint32_t n = 0;
  uint32_t row = 0, col = 0;
  int64_t sl_value = 0, su_value = 0;
  nlohmann::json to_json() const;
};

/// Witness that the two sides have different Cartan matrices at exponent n.
Distinction distinguish(uint32_t n);

struct BlockInvariants {
  std::string pattern;
  uint32_t ell = 0;
  uint64_t k_count = 0;  // k(B0), 0 when not computed
  bool has_cartan = false;
  CartanMatrix cartan;
  std::string notes;
  nlohmann::json to_json() const;
};

}  // namespace tameblocks::blockinv
