#include "tameblocks/gf2.hpp"

#include <algorithm>
#include <sstream>

#include "tameblocks/error.hpp"

namespace tameblocks::gf2 {

Mat::Mat(uint32_t rows, uint32_t cols)
    : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), w_(size_t(rows) * ((cols + 63) / 64), 0) {}

Mat Mat::identity(uint32_t n) {
  Mat m(n, n);
  for (uint32_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

void Mat::xor_row_from(uint32_t dst, const Mat& src, uint32_t src_row) {
  uint64_t* d = row(dst);
  const uint64_t* s = src.row(src_row);
  for (uint32_t k = 0; k < wpr_; ++k) d[k] ^= s[k];
}

bool Mat::row_is_zero(uint32_t r) const {
  const uint64_t* p = row(r);
  for (uint32_t k = 0; k < wpr_; ++k)
    if (p[k]) return false;
  return true;
}

Mat Mat::operator+(const Mat& o) const {
  check(rows_ == o.rows_ && cols_ == o.cols_, ErrorKind::ShapeMismatch, "matrix add");
  Mat r = *this;
  for (size_t k = 0; k < w_.size(); ++k) r.w_[k] ^= o.w_[k];
  return r;
}

Mat Mat::operator*(const Mat& o) const {
  check(cols_ == o.rows_, ErrorKind::ShapeMismatch, "matrix multiply");
  Mat r(rows_, o.cols_);
  for (uint32_t i = 0; i < rows_; ++i) {
    const uint64_t* a = row(i);
    uint64_t* out = r.row(i);
    for (uint32_t kw = 0; kw < wpr_; ++kw) {
      uint64_t word = a[kw];
      while (word) {
        uint32_t b = uint32_t(__builtin_ctzll(word));
        word &= word - 1;
        const uint64_t* src = o.row(kw * 64 + b);
        for (uint32_t j = 0; j < r.wpr_; ++j) out[j] ^= src[j];
      }
    }
  }
  return r;
}

bool Mat::operator==(const Mat& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && w_ == o.w_;
}

Mat Mat::transpose() const {
  Mat t(cols_, rows_);
  for (uint32_t i = 0; i < rows_; ++i) {
    const uint64_t* a = row(i);
    for (uint32_t kw = 0; kw < wpr_; ++kw) {
      uint64_t word = a[kw];
      while (word) {
        uint32_t b = uint32_t(__builtin_ctzll(word));
        word &= word - 1;
        t.set(kw * 64 + b, i, true);
      }
    }
  }
  return t;
}

bool Mat::is_zero() const {
  for (uint64_t word : w_)
    if (word) return false;
  return true;
}

bool Mat::is_identity() const {
  if (rows_ != cols_) return false;
  return *this == identity(rows_);
}

namespace {

// In-place elimination on a copy; returns pivot (row, col) pairs.
std::vector<std::pair<uint32_t, uint32_t>> eliminate(Mat& m) {
  std::vector<std::pair<uint32_t, uint32_t>> pivots;
  uint32_t r = 0;
  for (uint32_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    uint32_t pr = r;
    while (pr < m.rows() && !m.get(pr, c)) ++pr;
    if (pr == m.rows()) continue;
    if (pr != r)
      for (uint32_t k = 0; k < m.words_per_row(); ++k) std::swap(m.row(r)[k], m.row(pr)[k]);
    for (uint32_t i = 0; i < m.rows(); ++i)
      if (i != r && m.get(i, c)) m.xor_row_from(i, m, r);
    pivots.emplace_back(r, c);
    ++r;
  }
  return pivots;
}

}  // namespace

uint32_t Mat::rank() const {
  Mat m = *this;
  return uint32_t(eliminate(m).size());
}

Mat Mat::row_basis(std::vector<uint32_t>* pivots) const {
  Mat m = *this;
  auto piv = eliminate(m);
  Mat out(uint32_t(piv.size()), cols_);
  for (uint32_t i = 0; i < piv.size(); ++i)
    for (uint32_t k = 0; k < wpr_; ++k) out.row(i)[k] = m.row(piv[i].first)[k];
  if (pivots) {
    pivots->clear();
    for (auto& p : piv) pivots->push_back(p.second);
  }
  return out;
}

Mat Mat::left_nullspace() const {
  // Eliminate [A | I]; rows whose A-block vanishes record combinations v with v*A = 0.
  Mat aug(rows_, cols_ + rows_);
  for (uint32_t i = 0; i < rows_; ++i) {
    for (uint32_t c = 0; c < cols_; ++c)
      if (get(i, c)) aug.set(i, c, true);
    aug.set(i, cols_ + i, true);
  }
  uint32_t r = 0;
  for (uint32_t c = 0; c < cols_ && r < rows_; ++c) {
    uint32_t pr = r;
    while (pr < rows_ && !aug.get(pr, c)) ++pr;
    if (pr == rows_) continue;
    if (pr != r)
      for (uint32_t k = 0; k < aug.words_per_row(); ++k) std::swap(aug.row(r)[k], aug.row(pr)[k]);
    for (uint32_t i = r + 1; i < rows_; ++i)
      if (aug.get(i, c)) aug.xor_row_from(i, aug, r);
    ++r;
  }
  // After forward elimination every row below the last pivot has a zero A-block.
  Mat res(rows_ - r, rows_);
  for (uint32_t i = r; i < rows_; ++i)
    for (uint32_t c = 0; c < rows_; ++c)
      if (aug.get(i, cols_ + c)) res.set(i - r, c, true);
  return res;
}

std::optional<Mat> Mat::solve_left(const Mat& b) const {
  check(b.cols_ == cols_ && b.rows_ == 1, ErrorKind::ShapeMismatch, "solve_left rhs");
  // Eliminate [A | I] by rows; express b in terms of pivot rows.
  Mat work = *this;
  Mat track = Mat::identity(rows_);
  std::vector<std::pair<uint32_t, uint32_t>> piv;
  uint32_t r = 0;
  for (uint32_t c = 0; c < cols_ && r < rows_; ++c) {
    uint32_t pr = r;
    while (pr < rows_ && !work.get(pr, c)) ++pr;
    if (pr == rows_) continue;
    if (pr != r) {
      for (uint32_t k = 0; k < work.wpr_; ++k) std::swap(work.row(r)[k], work.row(pr)[k]);
      for (uint32_t k = 0; k < track.wpr_; ++k) std::swap(track.row(r)[k], track.row(pr)[k]);
    }
    for (uint32_t i = 0; i < rows_; ++i)
      if (i != r && work.get(i, c)) {
        work.xor_row_from(i, work, r);
        track.xor_row_from(i, track, r);
      }
    piv.emplace_back(r, c);
    ++r;
  }
  Mat acc = b;
  Mat x(1, rows_);
  for (auto& [pr, pc] : piv) {
    if (acc.get(0, pc)) {
      acc.xor_row_from(0, work, pr);
      x.xor_row_from(0, track, pr);
    }
  }
  if (!acc.is_zero()) return std::nullopt;
  return x;
}

std::optional<Mat> Mat::solve_right(const Mat& b) const {
  return transpose().solve_left(b);
}

std::optional<Mat> Mat::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  Mat work = *this;
  Mat inv = Mat::identity(rows_);
  uint32_t r = 0;
  for (uint32_t c = 0; c < cols_; ++c) {
    uint32_t pr = r;
    while (pr < rows_ && !work.get(pr, c)) ++pr;
    if (pr == rows_) return std::nullopt;
    if (pr != r) {
      for (uint32_t k = 0; k < work.wpr_; ++k) std::swap(work.row(r)[k], work.row(pr)[k]);
      for (uint32_t k = 0; k < inv.wpr_; ++k) std::swap(inv.row(r)[k], inv.row(pr)[k]);
    }
    for (uint32_t i = 0; i < rows_; ++i)
      if (i != r && work.get(i, c)) {
        work.xor_row_from(i, work, r);
        inv.xor_row_from(i, inv, r);
      }
    ++r;
  }
  return inv;
}

Mat Mat::submatrix_rows(const std::vector<uint32_t>& rows) const {
  Mat out(uint32_t(rows.size()), cols_);
  for (uint32_t i = 0; i < rows.size(); ++i)
    for (uint32_t k = 0; k < wpr_; ++k) out.row(i)[k] = row(rows[i])[k];
  return out;
}

std::string Mat::row_hex(uint32_t r) const {
  static const char* digits = "0123456789abcdef";
  uint32_t nibbles = (cols_ + 3) / 4;
  std::string s(nibbles, '0');
  for (uint32_t n = 0; n < nibbles; ++n) {
    uint32_t v = 0;
    for (uint32_t b = 0; b < 4; ++b) {
      uint32_t c = n * 4 + b;
      if (c < cols_ && get(r, c)) v |= 1u << b;
    }
    s[n] = digits[v];
  }
  return s;
}

Mat Mat::from_row_hex(const std::vector<std::string>& rows, uint32_t cols) {
  Mat m(uint32_t(rows.size()), cols);
  uint32_t nibbles = (cols + 3) / 4;
  for (uint32_t r = 0; r < rows.size(); ++r) {
    check(rows[r].size() == nibbles, ErrorKind::InvalidInput, "bad hex row length");
    for (uint32_t n = 0; n < nibbles; ++n) {
      char ch = rows[r][n];
      uint32_t v = ch >= 'a' ? 10 + (ch - 'a') : ch - '0';
      check(v < 16, ErrorKind::InvalidInput, "bad hex digit");
      for (uint32_t b = 0; b < 4; ++b) {
        uint32_t c = n * 4 + b;
        if (v & (1u << b)) {
          check(c < cols, ErrorKind::InvalidInput, "padding bits must be zero");
          m.set(r, c, true);
        }
      }
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Poly

void Poly::trim() {
  deg_ = -1;
  for (int64_t k = int64_t(w_.size()) - 1; k >= 0; --k) {
    if (w_[k]) {
      deg_ = k * 64 + (63 - __builtin_clzll(w_[k]));
      break;
    }
  }
  w_.resize(deg_ < 0 ? 0 : size_t(deg_ / 64 + 1));
}

Poly Poly::one() { return monomial(0); }
Poly Poly::x() { return monomial(1); }

Poly Poly::monomial(uint32_t deg) {
  Poly p;
  p.w_.assign(deg / 64 + 1, 0);
  p.w_[deg / 64] = uint64_t(1) << (deg & 63);
  p.deg_ = deg;
  return p;
}

bool Poly::coeff(uint32_t i) const {
  if (int64_t(i) > deg_) return false;
  return (w_[i / 64] >> (i & 63)) & 1u;
}

void Poly::set_coeff(uint32_t i, bool bit) {
  if (i / 64 >= w_.size()) w_.resize(i / 64 + 1, 0);
  uint64_t mask = uint64_t(1) << (i & 63);
  if (bit)
    w_[i / 64] |= mask;
  else
    w_[i / 64] &= ~mask;
  trim();
}

Poly Poly::operator+(const Poly& o) const {
  Poly r;
  r.w_.assign(std::max(w_.size(), o.w_.size()), 0);
  for (size_t k = 0; k < w_.size(); ++k) r.w_[k] ^= w_[k];
  for (size_t k = 0; k < o.w_.size(); ++k) r.w_[k] ^= o.w_[k];
  r.trim();
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly();
  Poly r;
  r.w_.assign(w_.size() + o.w_.size(), 0);
  for (size_t ka = 0; ka < w_.size(); ++ka) {
    uint64_t word = w_[ka];
    while (word) {
      uint32_t b = uint32_t(__builtin_ctzll(word));
      word &= word - 1;
      // xor o shifted by ka*64 + b
      uint32_t shift_words = uint32_t(ka);
      uint32_t shift_bits = b;
      for (size_t kb = 0; kb < o.w_.size(); ++kb) {
        uint64_t v = o.w_[kb];
        r.w_[kb + shift_words] ^= v << shift_bits;
        if (shift_bits) r.w_[kb + shift_words + 1] ^= v >> (64 - shift_bits);
      }
    }
  }
  r.trim();
  return r;
}

bool Poly::operator==(const Poly& o) const { return deg_ == o.deg_ && w_ == o.w_; }

bool Poly::operator<(const Poly& o) const {
  if (deg_ != o.deg_) return deg_ < o.deg_;
  for (int64_t k = int64_t(w_.size()) - 1; k >= 0; --k)
    if (w_[k] != o.w_[k]) return w_[k] < o.w_[k];
  return false;
}

void Poly::divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  check(!b.is_zero(), ErrorKind::InvalidInput, "division by zero polynomial");
  q = Poly();
  r = a;
  while (r.deg_ >= b.deg_) {
    uint32_t shift = uint32_t(r.deg_ - b.deg_);
    q.set_coeff(shift, true);
    Poly t = b * Poly::monomial(shift);
    r = r + t;
  }
}

Poly Poly::operator%(const Poly& o) const {
  Poly q, r;
  divmod(*this, o, q, r);
  return r;
}

Poly Poly::operator/(const Poly& o) const {
  Poly q, r;
  divmod(*this, o, q, r);
  return q;
}

Poly Poly::gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a % b;
    a = b;
    b = r;
  }
  return a;
}

Poly Poly::derivative() const {
  Poly d;
  for (int64_t i = 1; i <= deg_; i += 2)
    if (coeff(uint32_t(i))) d.set_coeff(uint32_t(i - 1), true);
  return d;
}

Poly Poly::even_part_sqrt() const {
  Poly h;
  for (int64_t i = 0; i <= deg_; i += 2)
    if (coeff(uint32_t(i))) h.set_coeff(uint32_t(i / 2), true);
  return h;
}

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int64_t i = deg_; i >= 0; --i) {
    if (!coeff(uint32_t(i))) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0)
      os << "1";
    else if (i == 1)
      os << "x";
    else
      os << "x^" << i;
  }
  return os.str();
}

Poly ext_gcd(const Poly& a, const Poly& b, Poly& x, Poly& y) {
  Poly old_r = a, r = b;
  Poly old_x = Poly::one(), xx = Poly::zero();
  Poly old_y = Poly::zero(), yy = Poly::one();
  while (!r.is_zero()) {
    Poly q, rem;
    Poly::divmod(old_r, r, q, rem);
    old_r = r;
    r = rem;
    Poly tx = old_x + q * xx;
    old_x = xx;
    xx = tx;
    Poly ty = old_y + q * yy;
    old_y = yy;
    yy = ty;
  }
  x = old_x;
  y = old_y;
  return old_r;
}

namespace {

Poly powmod_sqr(const Poly& a, const Poly& mod) { return (a * a) % mod; }

void edf(const Poly& f, uint32_t e, Rng& rng, std::vector<Poly>& out) {
  if (f.degree() == int64_t(e)) {
    out.push_back(f);
    return;
  }
  for (int attempt = 0; attempt < 256; ++attempt) {
    Poly r;
    for (int64_t i = 0; i < f.degree(); ++i)
      if (rng.flip()) r.set_coeff(uint32_t(i), true);
    if (r.is_zero()) continue;
    // trace map of GF(2^e): r + r^2 + r^4 + ... (e terms) mod f
    Poly t = r, acc = r;
    for (uint32_t j = 1; j < e; ++j) {
      t = powmod_sqr(t, f);
      acc = acc + t;
    }
    Poly g = Poly::gcd(acc, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      edf(g, e, rng, out);
      edf(f / g, e, rng, out);
      return;
    }
  }
  fail(ErrorKind::Inconclusive, "equal-degree factorization did not split");
}

void ddf(const Poly& f, Rng& rng, std::vector<Poly>& out) {
  Poly rest = f;
  Poly h = Poly::x();  // x^{2^i} mod rest, maintained incrementally
  uint32_t i = 0;
  while (rest.degree() > 0) {
    ++i;
    if (int64_t(2 * i) > rest.degree()) {
      out.push_back(rest);  // irreducible remainder
      return;
    }
    h = powmod_sqr(h, rest);
    Poly g = Poly::gcd(h + Poly::x(), rest);
    if (g.degree() > 0) {
      edf(g, i, rng, out);
      rest = rest / g;
      h = h % rest;
    }
  }
}

void factor_rec(const Poly& f, Rng& rng, std::vector<std::pair<Poly, uint32_t>>& out,
                uint32_t mult) {
  if (f.degree() <= 0) return;
  if (f.degree() == 1) {
    out.emplace_back(f, mult);
    return;
  }
  Poly d = f.derivative();
  if (d.is_zero()) {
    factor_rec(f.even_part_sqrt(), rng, out, mult * 2);
    return;
  }
  Poly g = Poly::gcd(f, d);
  if (g.degree() > 0) {
    factor_rec(g, rng, out, mult);
    factor_rec(f / g, rng, out, mult);
    return;
  }
  std::vector<Poly> irred;
  ddf(f, rng, irred);
  for (auto& p : irred) out.emplace_back(p, mult);
}

}  // namespace

std::vector<std::pair<Poly, uint32_t>> factor(const Poly& f, Rng& rng) {
  check(!f.is_zero(), ErrorKind::InvalidInput, "factor of zero polynomial");
  std::vector<std::pair<Poly, uint32_t>> raw;
  factor_rec(f, rng, raw, 1);
  // merge duplicates, canonical order
  std::sort(raw.begin(), raw.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<Poly, uint32_t>> out;
  for (auto& pr : raw) {
    if (!out.empty() && out.back().first == pr.first)
      out.back().second += pr.second;
    else
      out.push_back(pr);
  }
  return out;
}

Mat eval_poly(const Poly& p, const Mat& a) {
  check(a.rows() == a.cols(), ErrorKind::NotSquare, "poly evaluation needs square matrix");
  Mat acc(a.rows(), a.cols());
  for (int64_t i = p.degree(); i >= 0; --i) {
    acc = acc * a;
    if (p.coeff(uint32_t(i)))
      for (uint32_t r = 0; r < a.rows(); ++r) acc.set(r, r, !acc.get(r, r));
  }
  return acc;
}

namespace {

// v * p(A) for a row vector v.
Mat eval_poly_vec(const Poly& p, const Mat& a, const Mat& v) {
  Mat acc(1, a.cols());
  for (int64_t i = p.degree(); i >= 0; --i) {
    acc = acc * a;
    if (p.coeff(uint32_t(i))) acc = acc + v;
  }
  return acc;
}

// Minimal polynomial of the pair (A, v): least-degree monic p with v*p(A)=0.
Poly local_min_poly(const Mat& a, const Mat& v) {
  uint32_t d = a.rows();
  // Krylov rows with coefficient tracking: [v A^k | e_k]
  Mat kry(d + 1, d + d + 1);
  Mat cur = v;
  for (uint32_t k = 0; k <= d; ++k) {
    for (uint32_t c = 0; c < d; ++c)
      if (cur.get(0, c)) kry.set(k, c, true);
    kry.set(k, d + k, true);
    // eliminate against previous rows (they are kept echelonized on the left d columns)
    if (k < d) cur = cur * a;
  }
  // Row-reduce top-down; the first row whose left block becomes zero yields the relation.
  std::vector<int32_t> pivot_of_col(d, -1);
  for (uint32_t k = 0; k <= d; ++k) {
    // reduce row k against established pivots
    for (uint32_t c = 0; c < d; ++c) {
      if (kry.get(k, c) && pivot_of_col[c] >= 0) kry.xor_row_from(k, kry, uint32_t(pivot_of_col[c]));
    }
    int32_t lead = -1;
    for (uint32_t c = 0; c < d; ++c)
      if (kry.get(k, c)) {
        lead = int32_t(c);
        break;
      }
    if (lead < 0) {
      Poly p;
      for (uint32_t j = 0; j <= k; ++j)
        if (kry.get(k, d + j)) p.set_coeff(j, true);
      return p;
    }
    pivot_of_col[lead] = int32_t(k);
  }
  fail(ErrorKind::Inconclusive, "local minimal polynomial not found");
}

}  // namespace

Poly min_poly(const Mat& a) {
  check(a.rows() == a.cols(), ErrorKind::NotSquare, "min_poly needs square matrix");
  uint32_t d = a.rows();
  Poly m = Poly::one();
  for (uint32_t i = 0; i < d; ++i) {
    Mat e(1, d);
    e.set(0, i, true);
    Mat w = eval_poly_vec(m, a, e);
    if (w.is_zero()) continue;
    Poly p = local_min_poly(a, w);
    m = m * p;
  }
  check(eval_poly(m, a).is_zero(), ErrorKind::Inconclusive, "min_poly verification failed");
  return m;
}

}  // namespace tameblocks::gf2
