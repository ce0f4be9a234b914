#include "tameblocks/blockinv.hpp"

#include "tameblocks/error.hpp"

namespace tameblocks::blockinv {

uint64_t two_part(uint64_t m) {
  check(m >= 1, ErrorKind::InvalidInput, "two_part needs a positive integer");
  return m & (~m + 1);  // lowest set bit
}

uint32_t olsson_ell(const std::string& pattern) {
  if (pattern == "bb") return 1;
  if (pattern == "ba" || pattern == "ab") return 2;
  if (pattern == "aa") return 3;
  fail(ErrorKind::InvalidInput, "unknown fusion pattern '" + pattern + "'");
}

const char* to_string(CartanSide s) { return s == CartanSide::SL ? "sl-side" : "su-side"; }

int64_t CartanMatrix::det() const {
  check(size == 2, ErrorKind::InvalidInput, "determinant implemented for 2x2");
  return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
}

bool CartanMatrix::symmetric() const {
  for (uint32_t r = 0; r < size; ++r)
    for (uint32_t c = r + 1; c < size; ++c)
      if (at(r, c) != at(c, r)) return false;
  return true;
}

bool CartanMatrix::positive_definite() const {
  // leading principal minors, 2x2 case
  check(size == 2, ErrorKind::InvalidInput, "positive_definite implemented for 2x2");
  return at(0, 0) > 0 && det() > 0;
}

nlohmann::json CartanMatrix::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (uint32_t r = 0; r < size; ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (uint32_t c = 0; c < size; ++c) row.push_back(at(r, c));
    rows.push_back(row);
  }
  nlohmann::json j;
  j["entries"] = rows;
  j["n"] = n;
  j["side"] = to_string(side);
  return j;
}

CartanMatrix cartan_bar(uint32_t n, CartanSide side) {
  check(n >= 4, ErrorKind::InvalidInput, "defect exponent must be at least 4");
  check(n <= 62, ErrorKind::TooLarge, "defect exponent too large for 64-bit entries");
  int64_t p3 = int64_t(1) << (n - 3);
  CartanMatrix c;
  c.size = 2;
  c.n = n;
  c.side = side;
  if (side == CartanSide::SL)
    c.entries = {4, 2, 2, p3 + 1};
  else
    c.entries = {int64_t(1) << (n - 1), int64_t(1) << (n - 2), int64_t(1) << (n - 2), p3 + 1};
  return c;
}

CartanMatrix cartan_double(const CartanMatrix& c) {
  CartanMatrix d = c;
  for (auto& e : d.entries) e *= 2;
  return d;
}

Distinction distinguish(uint32_t n) {
  CartanMatrix sl = cartan_bar(n, CartanSide::SL);
  CartanMatrix su = cartan_bar(n, CartanSide::SU);
  for (uint32_t r = 0; r < 2; ++r)
    for (uint32_t c = 0; c < 2; ++c)
      if (sl.at(r, c) != su.at(r, c))
        return Distinction{n, r, c, sl.at(r, c), su.at(r, c)};
  fail(ErrorKind::Inconclusive, "cartan matrices coincide");
}

nlohmann::json Distinction::to_json() const {
  nlohmann::json j;
  j["n"] = n;
  j["entry"] = nlohmann::json::array({row, col});
  j["sl_value"] = sl_value;
  j["su_value"] = su_value;
  return j;
}

nlohmann::json BlockInvariants::to_json() const {
  nlohmann::json j;
  j["pattern"] = pattern;
  j["ell"] = ell;
  if (k_count) j["k"] = k_count;
  if (has_cartan) j["cartan_bar"] = cartan.to_json();
  if (!notes.empty()) j["notes"] = notes;
  return j;
}

}  // namespace tameblocks::blockinv
