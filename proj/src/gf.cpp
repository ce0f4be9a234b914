#include "tameblocks/gf.hpp"

#include <algorithm>
#include <sstream>

#include "tameblocks/error.hpp"

namespace tameblocks::gf {

namespace {

bool is_prime(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; uint64_t(d) * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

using Coeffs = std::vector<uint32_t>;  // least degree first, no trailing zeros

int deg(const Coeffs& a) { return int(a.size()) - 1; }

void trim(Coeffs& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Coeffs poly_mul(const Coeffs& a, const Coeffs& b, uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Coeffs r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  trim(r);
  return r;
}

// a mod b, b monic
Coeffs poly_mod(Coeffs a, const Coeffs& b, uint32_t p) {
  trim(a);
  while (deg(a) >= deg(b)) {
    uint32_t lead = a.back();
    size_t shift = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) {
      uint32_t sub = (lead * b[i]) % p;
      a[shift + i] = (a[shift + i] + p - sub) % p;
    }
    trim(a);
  }
  return a;
}

uint64_t encode(const Coeffs& a, uint32_t p) {
  uint64_t v = 0;
  for (size_t i = a.size(); i-- > 0;) v = v * p + a[i];
  return v;
}

Coeffs decode(uint64_t v, uint32_t p) {
  Coeffs c;
  while (v) {
    c.push_back(uint32_t(v % p));
    v /= p;
  }
  return c;
}

// Trial division by every monic polynomial of degree 1..deg/2.
bool poly_irreducible(const Coeffs& f, uint32_t p) {
  int d = deg(f);
  if (d <= 0) return false;
  if (d == 1) return true;
  for (int e = 1; e <= d / 2; ++e) {
    uint64_t count = 1;
    for (int i = 0; i < e; ++i) count *= p;
    for (uint64_t m = 0; m < count; ++m) {
      Coeffs g = decode(m, p);
      g.resize(e + 1, 0);
      g[e] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

std::shared_ptr<const Field> Field::make(uint32_t p, uint32_t f) {
  check(is_prime(p), ErrorKind::NotPrime, "p = " + std::to_string(p) + " is not prime");
  check(f >= 1 && f <= 12, ErrorKind::InvalidInput, "exponent out of range");
  auto fld = std::shared_ptr<Field>(new Field());
  fld->p_ = p;
  fld->f_ = f;
  uint64_t q = 1;
  for (uint32_t i = 0; i < f; ++i) q *= p;
  check(q <= (uint64_t(1) << 24), ErrorKind::BudgetExceeded, "field too large");
  fld->q_ = uint32_t(q);

  // Least monic irreducible of degree f in the integer encoding.
  Coeffs mod;
  for (uint64_t m = 0; m < q; ++m) {
    Coeffs cand = decode(m, p);
    cand.resize(f + 1, 0);
    cand[f] = 1;
    if (poly_irreducible(cand, p)) {
      mod = cand;
      break;
    }
  }
  check(!mod.empty(), ErrorKind::Inconclusive, "no irreducible modulus found");
  fld->modulus_.assign(mod.begin(), mod.end());

  // Multiplication table support: discrete log/exp for a fixed generator.
  auto mul_raw = [&](Elem a, Elem b) -> Elem {
    Coeffs pa = decode(a, p), pb = decode(b, p);
    return Elem(encode(poly_mod(poly_mul(pa, pb, p), mod, p), p));
  };
  fld->log_.assign(fld->q_, 0);
  fld->exp_.assign(fld->q_ - 1, 0);
  Elem gen = 0;
  for (Elem cand = 1; cand < fld->q_; ++cand) {
    Elem acc = 1;
    uint32_t ord = 0;
    do {
      acc = mul_raw(acc, cand);
      ++ord;
    } while (acc != 1);
    if (ord == fld->q_ - 1) {
      gen = cand;
      break;
    }
  }
  check(gen != 0, ErrorKind::Inconclusive, "no multiplicative generator found");
  fld->gen_ = gen;
  Elem acc = 1;
  for (uint32_t k = 0; k < fld->q_ - 1; ++k) {
    fld->exp_[k] = acc;
    fld->log_[acc] = k;
    acc = mul_raw(acc, gen);
  }
  return fld;
}

Field::Elem Field::from_int(uint64_t n) const { return Elem(n % p_); }

std::vector<uint32_t> Field::coeffs(Elem a) const {
  std::vector<uint32_t> c(f_, 0);
  for (uint32_t i = 0; i < f_; ++i) {
    c[i] = a % p_;
    a /= p_;
  }
  return c;
}

Field::Elem Field::from_coeffs(const std::vector<uint32_t>& c) const {
  check(c.size() <= f_, ErrorKind::InvalidInput, "coefficient sequence too long");
  uint64_t v = 0;
  for (size_t i = c.size(); i-- > 0;) {
    check(c[i] < p_, ErrorKind::InvalidInput, "coefficient out of range");
    v = v * p_ + c[i];
  }
  return Elem(v);
}

Field::Elem Field::add(Elem a, Elem b) const {
  Elem r = 0, mul = 1;
  for (uint32_t i = 0; i < f_; ++i) {
    r += ((a % p_ + b % p_) % p_) * mul;
    a /= p_;
    b /= p_;
    mul *= p_;
  }
  return r;
}

Field::Elem Field::neg(Elem a) const {
  Elem r = 0, mul = 1;
  for (uint32_t i = 0; i < f_; ++i) {
    r += ((p_ - a % p_) % p_) * mul;
    a /= p_;
    mul *= p_;
  }
  return r;
}

Field::Elem Field::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Field::Elem Field::inv(Elem a) const {
  check(a != 0, ErrorKind::InvalidInput, "inverse of zero");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

Field::Elem Field::pow(Elem a, uint64_t e) const {
  if (a == 0) return e == 0 ? 1 : 0;
  return exp_[uint64_t(log_[a]) * (e % (q_ - 1)) % (q_ - 1)];
}

Field::Elem Field::frobenius(Elem a, uint32_t times) const {
  if (a == 0) return 0;
  uint64_t e = 1;
  for (uint32_t i = 0; i < times; ++i) e = e * p_ % (q_ - 1);
  return exp_[uint64_t(log_[a]) * e % (q_ - 1)];
}

bool Field::is_square(Elem a) const {
  if (a == 0) return true;
  return log_[a] % 2 == 0;  // q odd here; for p = 2 every element is a square anyway
}

std::string Field::to_string(Elem a) const {
  std::ostringstream os;
  auto c = coeffs(a);
  os << "[";
  for (uint32_t i = 0; i < f_; ++i) os << (i ? "," : "") << c[i];
  os << "]";
  return os.str();
}

MatGF::MatGF(FieldPtr field, uint32_t rows, uint32_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), e_(size_t(rows) * cols, 0) {}

MatGF MatGF::identity(FieldPtr field, uint32_t n) {
  MatGF m(std::move(field), n, n);
  for (uint32_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

MatGF MatGF::operator*(const MatGF& o) const {
  check(cols_ == o.rows_, ErrorKind::ShapeMismatch, "matrix multiply");
  const Field& F = *field_;
  MatGF r(field_, rows_, o.cols_);
  for (uint32_t i = 0; i < rows_; ++i)
    for (uint32_t k = 0; k < cols_; ++k) {
      Field::Elem a = get(i, k);
      if (!a) continue;
      for (uint32_t j = 0; j < o.cols_; ++j)
        r.set(i, j, F.add(r.get(i, j), F.mul(a, o.get(k, j))));
    }
  return r;
}

bool MatGF::operator==(const MatGF& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
}

Field::Elem MatGF::det() const {
  check(rows_ == cols_, ErrorKind::NotSquare, "determinant of non-square matrix");
  const Field& F = *field_;
  MatGF m = *this;
  Field::Elem d = 1;
  for (uint32_t c = 0; c < cols_; ++c) {
    uint32_t pr = c;
    while (pr < rows_ && m.get(pr, c) == 0) ++pr;
    if (pr == rows_) return 0;
    if (pr != c) {
      for (uint32_t j = 0; j < cols_; ++j) {
        auto t = m.get(c, j);
        m.set(c, j, m.get(pr, j));
        m.set(pr, j, t);
      }
      d = F.neg(d);
    }
    Field::Elem piv = m.get(c, c);
    d = F.mul(d, piv);
    Field::Elem pinv = F.inv(piv);
    for (uint32_t i = c + 1; i < rows_; ++i) {
      Field::Elem factor = F.mul(m.get(i, c), pinv);
      if (!factor) continue;
      for (uint32_t j = c; j < cols_; ++j)
        m.set(i, j, F.sub(m.get(i, j), F.mul(factor, m.get(c, j))));
    }
  }
  return d;
}

MatGF MatGF::inverse() const {
  check(rows_ == cols_, ErrorKind::NotSquare, "inverse of non-square matrix");
  const Field& F = *field_;
  MatGF m = *this;
  MatGF inv = identity(field_, rows_);
  for (uint32_t c = 0; c < cols_; ++c) {
    uint32_t pr = c;
    while (pr < rows_ && m.get(pr, c) == 0) ++pr;
    check(pr < rows_, ErrorKind::InvalidInput, "singular matrix");
    if (pr != c)
      for (uint32_t j = 0; j < cols_; ++j) {
        std::swap(m.e_[size_t(c) * cols_ + j], m.e_[size_t(pr) * cols_ + j]);
        std::swap(inv.e_[size_t(c) * cols_ + j], inv.e_[size_t(pr) * cols_ + j]);
      }
    Field::Elem pinv = F.inv(m.get(c, c));
    for (uint32_t j = 0; j < cols_; ++j) {
      m.set(c, j, F.mul(m.get(c, j), pinv));
      inv.set(c, j, F.mul(inv.get(c, j), pinv));
    }
    for (uint32_t i = 0; i < rows_; ++i) {
      if (i == c) continue;
      Field::Elem factor = m.get(i, c);
      if (!factor) continue;
      for (uint32_t j = 0; j < cols_; ++j) {
        m.set(i, j, F.sub(m.get(i, j), F.mul(factor, m.get(c, j))));
        inv.set(i, j, F.sub(inv.get(i, j), F.mul(factor, inv.get(c, j))));
      }
    }
  }
  return inv;
}

std::vector<Field::Elem> MatGF::apply_row(const std::vector<Field::Elem>& v) const {
  check(v.size() == rows_, ErrorKind::ShapeMismatch, "row vector length");
  const Field& F = *field_;
  std::vector<Field::Elem> r(cols_, 0);
  for (uint32_t i = 0; i < rows_; ++i) {
    if (!v[i]) continue;
    for (uint32_t j = 0; j < cols_; ++j) r[j] = F.add(r[j], F.mul(v[i], get(i, j)));
  }
  return r;
}

MatGF MatGF::frobenius(uint32_t times) const {
  MatGF r(field_, rows_, cols_);
  for (size_t k = 0; k < e_.size(); ++k) r.e_[k] = field_->frobenius(e_[k], times);
  return r;
}

MatGF MatGF::transpose() const {
  MatGF r(field_, cols_, rows_);
  for (uint32_t i = 0; i < rows_; ++i)
    for (uint32_t j = 0; j < cols_; ++j) r.set(j, i, get(i, j));
  return r;
}

}  // namespace tameblocks::gf
