#include "tameblocks/perm.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "tameblocks/error.hpp"

namespace tameblocks::perm {

Perm::Perm(std::vector<Point> images) : img_(std::move(images)) {
  std::vector<bool> seen(img_.size(), false);
  for (Point p : img_) {
    check(p < img_.size() && !seen[p], ErrorKind::InvalidInput, "images are not a bijection");
    seen[p] = true;
  }
}

Perm Perm::unchecked(std::vector<Point> images) {
  Perm p;
  p.img_ = std::move(images);
  return p;
}

Perm Perm::identity(uint32_t degree) {
  std::vector<Point> v(degree);
  std::iota(v.begin(), v.end(), 0);
  return unchecked(std::move(v));
}

Perm Perm::from_cycles(uint32_t degree, const std::vector<std::vector<Point>>& cycles) {
  Perm p = identity(degree);
  for (auto& cyc : cycles) {
    for (size_t i = 0; i < cyc.size(); ++i) {
      Point a = cyc[i], b = cyc[(i + 1) % cyc.size()];
      check(a < degree && b < degree, ErrorKind::InvalidInput, "cycle point out of range");
      check(p.img_[a] == a, ErrorKind::InvalidInput, "cycles overlap");
      p.img_[a] = b;
    }
  }
  return Perm(std::move(p.img_));  // re-validate
}

bool Perm::is_identity() const {
  for (Point p = 0; p < img_.size(); ++p)
    if (img_[p] != p) return false;
  return true;
}

Perm operator*(const Perm& a, const Perm& b) {
  check(a.degree() == b.degree(), ErrorKind::DegreeMismatch, "composition degree mismatch");
  std::vector<Point> v(a.degree());
  for (Point p = 0; p < a.degree(); ++p) v[p] = b[a[p]];
  return Perm::unchecked(std::move(v));
}

Perm Perm::inverse() const {
  std::vector<Point> v(img_.size());
  for (Point p = 0; p < img_.size(); ++p) v[img_[p]] = p;
  return Perm::unchecked(std::move(v));
}

Perm Perm::pow(uint64_t e) const {
  Perm acc = identity(degree());
  Perm base = *this;
  while (e) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

Perm Perm::conjugated_by(const Perm& g) const { return g.inverse() * (*this) * g; }

std::vector<std::pair<uint64_t, uint32_t>> Perm::cycle_type() const {
  std::vector<bool> seen(img_.size(), false);
  std::vector<uint64_t> lens;
  for (Point p = 0; p < img_.size(); ++p) {
    if (seen[p]) continue;
    uint64_t len = 0;
    Point q = p;
    do {
      seen[q] = true;
      q = img_[q];
      ++len;
    } while (q != p);
    lens.push_back(len);
  }
  std::sort(lens.begin(), lens.end());
  std::vector<std::pair<uint64_t, uint32_t>> out;
  for (uint64_t l : lens) {
    if (!out.empty() && out.back().first == l)
      ++out.back().second;
    else
      out.emplace_back(l, 1);
  }
  return out;
}

uint64_t Perm::order() const {
  uint64_t ord = 1;
  for (auto& [len, cnt] : cycle_type()) {
    uint64_t g = std::gcd(ord, len);
    uint64_t factor = len / g;
    check(ord <= UINT64_MAX / factor, ErrorKind::TooLarge, "element order overflows");
    ord *= factor;
  }
  return ord;
}

Perm Perm::two_part_power() const {
  uint64_t odd = order();
  while (odd % 2 == 0) odd /= 2;
  return pow(odd);
}

Perm Perm::odd_part_power() const {
  uint64_t ord = order();
  uint64_t two = 1;
  while (ord % 2 == 0) {
    ord /= 2;
    two *= 2;
  }
  return pow(two);
}

std::string Perm::to_cycle_string() const {
  std::vector<bool> seen(img_.size(), false);
  std::ostringstream os;
  bool any = false;
  for (Point p = 0; p < img_.size(); ++p) {
    if (seen[p] || img_[p] == p) {
      seen[p] = true;
      continue;
    }
    os << "(";
    Point q = p;
    bool first = true;
    do {
      seen[q] = true;
      os << (first ? "" : " ") << q;
      first = false;
      q = img_[q];
    } while (q != p);
    os << ")";
    any = true;
  }
  if (!any) return "()";
  return os.str();
}

}  // namespace tameblocks::perm
