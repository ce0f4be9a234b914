#include "tameblocks/modrep2.hpp"

#include <algorithm>
#include <mutex>

#include "tameblocks/error.hpp"

namespace tameblocks::modrep2 {

using gf2::Poly;
using permgrp::SgenRef;

// ---------------------------------------------------------------------------
// GF2Module

struct GF2Module::SgenCache {
  std::mutex mu;
  std::vector<std::optional<Mat>> mats;
};

GF2Module::GF2Module(const PermGroup* group, std::vector<Mat> action, std::string label,
                     bool check_relations)
    : group_(group), action_(std::move(action)), label_(std::move(label)) {
  check(group_ != nullptr, ErrorKind::InvalidInput, "module needs a group");
  check(action_.size() == group_->generators().size(), ErrorKind::ShapeMismatch,
        "one action matrix per generator");
  check(!action_.empty(), ErrorKind::InvalidInput, "module needs generators");
  dim_ = action_[0].rows();
  for (auto& a : action_) {
    check(a.rows() == dim_ && a.cols() == dim_, ErrorKind::ShapeMismatch,
          "action matrices must be square of equal size");
    auto inv = a.inverse();
    check(inv.has_value(), ErrorKind::InvalidInput, "action matrix is singular");
    action_inv_.push_back(std::move(*inv));
  }
  cache_ = std::make_shared<SgenCache>();
  if (check_relations && dim_ > 0) {
    // seeded random words must evaluate equally through the permutation group
    // (chain factorization) and directly in the representation
    Rng rng(0x6F2D ^ (uint64_t(dim_) << 20) ^ group_->seed());
    for (int trial = 0; trial < 20; ++trial) {
      uint32_t len = 1 + uint32_t(rng.below(6));
      Perm p = Perm::identity(group_->degree());
      Mat m = Mat::identity(dim_);
      for (uint32_t i = 0; i < len; ++i) {
        uint32_t gi = uint32_t(rng.below(action_.size()));
        bool inv = rng.flip();
        p = p * (inv ? group_->generators()[gi].inverse() : group_->generators()[gi]);
        m = m * (inv ? action_inv_[gi] : action_[gi]);
      }
      check(matrix_of(p) == m, ErrorKind::DataCorrupt,
            "action matrices do not satisfy the group relations");
    }
  }
}

Mat GF2Module::matrix_of(const Perm& g) const {
  auto sgen_seq = group_->factor_strong(g);  // NotMember when outside
  std::lock_guard<std::mutex> lock(cache_->mu);
  uint32_t total = group_->strong_generator_count();
  if (cache_->mats.size() < total) cache_->mats.resize(total);
  // strong generator recipes only reference earlier pool entries, so one
  // forward pass materializes everything
  for (uint32_t k = 0; k < cache_->mats.size(); ++k) {
    if (cache_->mats[k]) continue;
    Mat m = Mat::identity(dim_);
    for (const SgenRef& ref : group_->strong_generator_recipe(k)) {
      if (ref.from_pool) {
        check(ref.idx < k && cache_->mats[ref.idx].has_value(), ErrorKind::Inconclusive,
              "recipe references a later pool entry");
        if (ref.inverse)
          m = m * *cache_->mats[ref.idx]->inverse();
        else
          m = m * *cache_->mats[ref.idx];
      } else {
        m = m * (ref.inverse ? action_inv_[ref.idx] : action_[ref.idx]);
      }
    }
    cache_->mats[k] = std::move(m);
  }
  Mat out = Mat::identity(dim_);
  for (uint32_t i : sgen_seq) out = out * *cache_->mats[i];
  return out;
}

nlohmann::json GF2Module::to_json() const {
  nlohmann::json j;
  j["dim"] = dim_;
  nlohmann::json gens = nlohmann::json::array();
  for (auto& a : action_) {
    nlohmann::json rows = nlohmann::json::array();
    for (uint32_t r = 0; r < dim_; ++r) rows.push_back(a.row_hex(r));
    gens.push_back(rows);
  }
  j["generators"] = gens;
  j["group"] = group_->name();
  j["label"] = label_;
  return j;
}

GF2Module GF2Module::from_json(const nlohmann::json& j, const PermGroup* group) {
  uint32_t dim = j.at("dim").get<uint32_t>();
  std::vector<Mat> action;
  for (auto& gj : j.at("generators")) {
    std::vector<std::string> rows = gj.get<std::vector<std::string>>();
    check(uint32_t(rows.size()) == dim, ErrorKind::ShapeMismatch, "module JSON row count");
    action.push_back(Mat::from_row_hex(rows, dim));
  }
  return GF2Module(group, std::move(action), j.value("label", std::string()));
}

// ---------------------------------------------------------------------------
// constructors

GF2Module trivial_module(const PermGroup* G) {
  std::vector<Mat> action(G->generators().size(), Mat::identity(1));
  return GF2Module(G, std::move(action), "k", false);
}

GF2Module perm_module(const PermGroup* G, const PermGroup& H,
                      const permgrp::Budgets& budgets) {
  check(G->order() % H.order() == 0 && G->order() / H.order() <= 2000, ErrorKind::TooLarge,
        "permutation module dimension beyond budget");
  permgrp::Budgets b = budgets;
  b.coset_count = std::max<uint64_t>(b.coset_count, 2000);
  auto t = permgrp::coset_table(*G, H, b);
  std::vector<Mat> action;
  for (auto& pm : t.action) {
    Mat m(t.count, t.count);
    for (uint32_t i = 0; i < t.count; ++i) m.set(i, pm[i], true);
    action.push_back(std::move(m));
  }
  return GF2Module(G, std::move(action), "k[G/H] dim " + std::to_string(t.count));
}

GF2Module direct_sum(const GF2Module& A, const GF2Module& B) {
  check(A.group_ptr() == B.group_ptr(), ErrorKind::InvalidInput,
        "direct sum needs a common group");
  uint32_t d = A.dim() + B.dim();
  std::vector<Mat> action;
  for (size_t g = 0; g < A.action().size(); ++g) {
    Mat m(d, d);
    for (uint32_t r = 0; r < A.dim(); ++r)
      for (uint32_t c = 0; c < A.dim(); ++c)
        if (A.action()[g].get(r, c)) m.set(r, c, true);
    for (uint32_t r = 0; r < B.dim(); ++r)
      for (uint32_t c = 0; c < B.dim(); ++c)
        if (B.action()[g].get(r, c)) m.set(A.dim() + r, A.dim() + c, true);
    action.push_back(std::move(m));
  }
  return GF2Module(A.group_ptr(), std::move(action), A.label() + " + " + B.label(), false);
}

GF2Module restrict_to(const GF2Module& M, const PermGroup* H) {
  std::vector<Mat> action;
  for (auto& h : H->generators()) action.push_back(M.matrix_of(h));
  return GF2Module(H, std::move(action), M.label() + "|_H", false);
}

GF2Module induce(const GF2Module& M, const PermGroup* G, const permgrp::Budgets& budgets) {
  const PermGroup& H = M.group();
  check(G->order() % H.order() == 0, ErrorKind::NotMember, "index is not integral");
  uint64_t index = G->order() / H.order();
  check(M.dim() * index <= 2000, ErrorKind::TooLarge, "induced dimension beyond budget");
  permgrp::Budgets b = budgets;
  b.coset_count = std::max<uint64_t>(b.coset_count, index);
  auto t = permgrp::coset_table(*G, H, b);
  uint32_t d = uint32_t(M.dim() * t.count);
  std::vector<Mat> action;
  for (size_t gi = 0; gi < G->generators().size(); ++gi) {
    const Perm& g = G->generators()[gi];
    Mat m(d, d);
    for (uint32_t i = 0; i < t.count; ++i) {
      uint32_t j = t.action[gi][i];
      Perm h = t.reps[i] * g * t.reps[j].inverse();
      Mat hm = M.matrix_of(h);  // NotMember would flag a broken coset table
      for (uint32_t r = 0; r < M.dim(); ++r)
        for (uint32_t c = 0; c < M.dim(); ++c)
          if (hm.get(r, c)) m.set(i * M.dim() + r, j * M.dim() + c, true);
    }
    action.push_back(std::move(m));
  }
  return GF2Module(G, std::move(action), M.label() + " induced");
}

uint32_t fixed_dim(const GF2Module& M) {
  uint32_t d = M.dim();
  Mat stacked(d, uint32_t(d * M.action().size()));
  for (size_t g = 0; g < M.action().size(); ++g)
    for (uint32_t r = 0; r < d; ++r)
      for (uint32_t c = 0; c < d; ++c) {
        bool v = M.action()[g].get(r, c) ^ (r == c);
        if (v) stacked.set(r, uint32_t(g * d + c), true);
      }
  return stacked.left_nullspace().rows();
}

uint32_t cofixed_dim(const GF2Module& M) {
  uint32_t d = M.dim();
  Mat stacked(d, uint32_t(d * M.action().size()));
  for (size_t g = 0; g < M.action().size(); ++g) {
    Mat t = M.action()[g].transpose();
    for (uint32_t r = 0; r < d; ++r)
      for (uint32_t c = 0; c < d; ++c) {
        bool v = t.get(r, c) ^ (r == c);
        if (v) stacked.set(r, uint32_t(g * d + c), true);
      }
  }
  return stacked.left_nullspace().rows();
}

// ---------------------------------------------------------------------------
// spinning

namespace {

struct Echelon {
  Mat rows;
  std::vector<uint32_t> pivots;
  Mat combos;  // row i = expression of rows[i] over the raw rows
  uint32_t width, combo_width;

  Echelon(uint32_t w, uint32_t cw)
      : rows(0, w), pivots(), combos(0, cw), width(w), combo_width(cw) {}

  // reduce v (and its combo) in place; returns the leading column or -1
  int64_t reduce(Mat& v, Mat& combo) const {
    for (uint32_t i = 0; i < pivots.size(); ++i) {
      if (v.get(0, pivots[i])) {
        v.xor_row_from(0, rows, i);
        combo.xor_row_from(0, combos, i);
      }
    }
    for (uint32_t c = 0; c < width; ++c)
      if (v.get(0, c)) return c;
    return -1;
  }

  void insert(const Mat& v, const Mat& combo, uint32_t pivot) {
    Mat nr(rows.rows() + 1, width);
    for (uint32_t i = 0; i < rows.rows(); ++i) nr.xor_row_from(i, rows, i);
    nr.xor_row_from(rows.rows(), v, 0);
    Mat nc(combos.rows() + 1, combo_width);
    for (uint32_t i = 0; i < combos.rows(); ++i) nc.xor_row_from(i, combos, i);
    nc.xor_row_from(combos.rows(), combo, 0);
    rows = std::move(nr);
    combos = std::move(nc);
    pivots.push_back(pivot);
  }
};

struct SpinData {
  Mat raw;                      // k x d, rows independent, discovery order
  std::vector<int32_t> parent;  // -1 for seeds
  std::vector<uint32_t> via;    // generator index for children; seed ordinal for seeds
  std::vector<uint32_t> seeds;  // raw indices of the module generators
  struct Relation {
    uint32_t p;
    uint32_t gen;
    Mat coeffs;  // 1 x k over raw indices
  };
  std::vector<Relation> relations;
};

// Spin the whole module from greedily chosen seed vectors, recording the
// parent structure and every rejection relation. raw[child] = raw[parent]*g
// holds exactly, which is what makes homomorphisms determined by seed images.
SpinData spin_module(const GF2Module& M) {
  uint32_t d = M.dim();
  SpinData sp;
  sp.raw = Mat(0, d);
  Echelon ech(d, d);
  auto append_raw = [&](const Mat& v, int32_t parent, uint32_t via) {
    Mat nr(sp.raw.rows() + 1, d);
    for (uint32_t i = 0; i < sp.raw.rows(); ++i) nr.xor_row_from(i, sp.raw, i);
    nr.xor_row_from(sp.raw.rows(), v, 0);
    sp.raw = std::move(nr);
    sp.parent.push_back(parent);
    sp.via.push_back(via);
  };
  uint32_t next_std = 0;
  uint32_t processed = 0;
  while (processed < sp.raw.rows() || ech.pivots.size() < d) {
    if (processed == sp.raw.rows()) {
      // queue drained but the span is not full: plant a fresh seed
      bool added = false;
      while (next_std < d && !added) {
        Mat v(1, d);
        v.set(0, next_std, true);
        ++next_std;
        Mat vr = v;
        Mat combo(1, d);
        int64_t piv = ech.reduce(vr, combo);
        if (piv >= 0) {
          combo.set(0, sp.raw.rows(), true);
          sp.seeds.push_back(sp.raw.rows());
          append_raw(v, -1, uint32_t(sp.seeds.size() - 1));
          ech.insert(vr, combo, uint32_t(piv));
          added = true;
        }
      }
      check(added, ErrorKind::Inconclusive, "spin ran out of seed vectors");
      continue;
    }
    uint32_t idx = processed++;
    Mat x = sp.raw.submatrix_rows({idx});
    for (uint32_t gi = 0; gi < M.action().size(); ++gi) {
      Mat w = x * M.action()[gi];
      Mat wr = w;
      Mat combo(1, d);
      int64_t piv = ech.reduce(wr, combo);
      if (piv < 0) {
        sp.relations.push_back({idx, gi, std::move(combo)});
      } else {
        combo.set(0, sp.raw.rows(), true);
        append_raw(w, int32_t(idx), gi);
        ech.insert(wr, combo, uint32_t(piv));
      }
    }
  }
  return sp;
}

// Closure of the row space of `seeds` under the action, as an RREF basis.
Mat spin_subspace(const std::vector<Mat>& action, const Mat& seeds) {
  uint32_t d = seeds.cols();
  Mat basis = seeds.row_basis();
  bool grew = true;
  while (grew) {
    grew = false;
    for (uint32_t i = 0; i < basis.rows() && !grew; ++i) {
      Mat x = basis.submatrix_rows({i});
      for (auto& a : action) {
        Mat w = x * a;
        Mat test(basis.rows() + 1, d);
        for (uint32_t r = 0; r < basis.rows(); ++r) test.xor_row_from(r, basis, r);
        test.xor_row_from(basis.rows(), w, 0);
        Mat nb = test.row_basis();
        if (nb.rows() > basis.rows()) {
          basis = std::move(nb);
          grew = true;
          break;
        }
      }
    }
  }
  return basis;
}

// coordinates of v in an RREF basis (pivot extraction); asserts membership
Mat coords_in(const Mat& basis, const std::vector<uint32_t>& pivots, const Mat& v) {
  Mat c(1, basis.rows());
  for (uint32_t i = 0; i < basis.rows(); ++i)
    if (v.get(0, pivots[i])) c.set(0, i, true);
  Mat rebuilt = c * basis;
  check(rebuilt == v, ErrorKind::Inconclusive, "vector outside invariant subspace");
  return c;
}

GF2Module submodule_on(const GF2Module& M, const Mat& basis_in, const std::string& label) {
  std::vector<uint32_t> pivots;
  Mat basis = basis_in.row_basis(&pivots);
  std::vector<Mat> action;
  for (auto& a : M.action()) {
    Mat sub(basis.rows(), basis.rows());
    for (uint32_t r = 0; r < basis.rows(); ++r) {
      Mat v = basis.submatrix_rows({r}) * a;
      Mat c = coords_in(basis, pivots, v);
      for (uint32_t k = 0; k < basis.rows(); ++k)
        if (c.get(0, k)) sub.set(r, k, true);
    }
    action.push_back(std::move(sub));
  }
  return GF2Module(M.group_ptr(), std::move(action), label, false);
}

GF2Module quotient_on(const GF2Module& M, const Mat& basis_in, const std::string& label) {
  std::vector<uint32_t> pivots;
  Mat basis = basis_in.row_basis(&pivots);
  uint32_t d = M.dim(), k = basis.rows();
  std::vector<bool> is_pivot(d, false);
  for (uint32_t p : pivots) is_pivot[p] = true;
  std::vector<uint32_t> comp;
  for (uint32_t c = 0; c < d; ++c)
    if (!is_pivot[c]) comp.push_back(c);
  Mat full(d, d);
  for (uint32_t r = 0; r < k; ++r) full.xor_row_from(r, basis, r);
  for (uint32_t r = 0; r < comp.size(); ++r) full.set(k + r, comp[r], true);
  auto finv = full.inverse();
  check(finv.has_value(), ErrorKind::Inconclusive, "quotient basis not complete");
  std::vector<Mat> action;
  for (auto& a : M.action()) {
    Mat q(uint32_t(comp.size()), uint32_t(comp.size()));
    for (uint32_t r = 0; r < comp.size(); ++r) {
      Mat v(1, d);
      v.set(0, comp[r], true);
      Mat coords = (v * a) * *finv;
      for (uint32_t c = 0; c < comp.size(); ++c)
        if (coords.get(0, k + c)) q.set(r, c, true);
    }
    action.push_back(std::move(q));
  }
  return GF2Module(M.group_ptr(), std::move(action), label, false);
}

}  // namespace

// ---------------------------------------------------------------------------
// hom spaces

std::vector<Mat> hom_space(const GF2Module& A, const GF2Module& B) {
  check(A.group_ptr() == B.group_ptr() ||
            A.group().canonical_json() == B.group().canonical_json(),
        ErrorKind::InvalidInput, "hom space needs modules over one group");
  check(A.action().size() == B.action().size(), ErrorKind::ShapeMismatch, "generator counts");
  uint32_t da = A.dim(), db = B.dim();
  SpinData sp = spin_module(A);
  uint32_t r = uint32_t(sp.seeds.size());
  uint32_t unknowns = r * db;

  // W[j] expresses phi(raw_j) as a linear map (unknowns x db) of seed images
  std::vector<Mat> W(sp.raw.rows());
  for (uint32_t j = 0; j < sp.raw.rows(); ++j) {
    if (sp.parent[j] < 0) {
      Mat w(unknowns, db);
      uint32_t block = sp.via[j];
      for (uint32_t i = 0; i < db; ++i) w.set(block * db + i, i, true);
      W[j] = std::move(w);
    } else {
      W[j] = W[sp.parent[j]] * B.action()[sp.via[j]];
    }
  }

  // each relation contributes db scalar constraints on the seed images
  Mat ech(0, unknowns);
  for (auto& rel : sp.relations) {
    Mat D = W[rel.p] * B.action()[rel.gen];
    for (uint32_t j = 0; j < sp.raw.rows(); ++j)
      if (rel.coeffs.get(0, j)) D = D + W[j];
    if (D.is_zero()) continue;
    Mat cols = D.transpose();
    Mat merged(ech.rows() + cols.rows(), unknowns);
    for (uint32_t i = 0; i < ech.rows(); ++i) merged.xor_row_from(i, ech, i);
    for (uint32_t i = 0; i < cols.rows(); ++i) merged.xor_row_from(ech.rows() + i, cols, i);
    ech = merged.row_basis();
    if (ech.rows() == unknowns) return {};  // only the zero map
  }
  Mat solutions = ech.rows() ? ech.right_nullspace() : Mat::identity(unknowns);

  auto raw_inv = sp.raw.inverse();
  check(raw_inv.has_value(), ErrorKind::Inconclusive, "spin basis is singular");
  std::vector<Mat> out;
  for (uint32_t s = 0; s < solutions.rows(); ++s) {
    Mat U = solutions.submatrix_rows({s});
    Mat phi_raw(da, db);
    for (uint32_t j = 0; j < da; ++j) {
      Mat img = U * W[j];
      for (uint32_t c = 0; c < db; ++c)
        if (img.get(0, c)) phi_raw.set(j, c, true);
    }
    Mat phi = *raw_inv * phi_raw;
    for (size_t g = 0; g < A.action().size(); ++g)
      check(A.action()[g] * phi == phi * B.action()[g], ErrorKind::Inconclusive,
            "hom candidate fails to intertwine");
    out.push_back(std::move(phi));
  }
  return out;
}

std::optional<Mat> module_iso(const GF2Module& A, const GF2Module& B, uint64_t seed) {
  if (A.dim() != B.dim()) return std::nullopt;
  auto homs = hom_space(A, B);
  if (homs.empty()) return std::nullopt;
  for (auto& h : homs)
    if (h.inverse()) return h;
  Rng rng(seed);
  for (int trial = 0; trial < 64; ++trial) {
    Mat cand(A.dim(), B.dim());
    bool nonzero = false;
    for (auto& h : homs)
      if (rng.flip()) {
        cand = cand + h;
        nonzero = true;
      }
    if (nonzero && cand.inverse()) return cand;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// chop

namespace {

Mat random_algebra_element(const GF2Module& M, Rng& rng) {
  uint32_t d = M.dim();
  Mat theta(d, d);
  uint32_t terms = 2 + uint32_t(rng.below(3));
  for (uint32_t t = 0; t < terms; ++t) {
    Mat prod = Mat::identity(d);
    uint32_t len = 1 + uint32_t(rng.below(3));
    for (uint32_t i = 0; i < len; ++i) prod = prod * M.action()[rng.below(M.action().size())];
    theta = theta + prod;
  }
  if (rng.flip()) theta = theta + Mat::identity(d);
  return theta;
}

void chop_rec(const GF2Module& M, Rng& rng, std::vector<GF2Module>& out) {
  uint32_t d = M.dim();
  check(d <= 2000, ErrorKind::TooLarge, "chop dimension beyond budget");
  if (d == 0) return;
  if (d == 1) {
    out.push_back(M);
    return;
  }
  std::vector<Mat> transposed;
  for (auto& a : M.action()) transposed.push_back(a.transpose());

  for (int attempt = 0; attempt < 40; ++attempt) {
    Mat theta = random_algebra_element(M, rng);
    Poly mp = gf2::min_poly(theta);
    if (mp.degree() < 1) continue;
    auto factors = gf2::factor(mp, rng);
    for (auto& [p, mult] : factors) {
      Mat P = gf2::eval_poly(p, theta);
      Mat N = P.left_nullspace();
      check(N.rows() > 0, ErrorKind::Inconclusive, "kernel of minpoly factor empty");
      for (uint32_t vi = 0; vi < N.rows(); ++vi) {
        Mat S = spin_subspace(M.action(), N.submatrix_rows({vi}));
        if (S.rows() < d) {
          GF2Module sub = submodule_on(M, S, M.label() + ".sub");
          GF2Module quo = quotient_on(M, S, M.label() + ".quo");
          chop_rec(sub, rng, out);
          chop_rec(quo, rng, out);
          return;
        }
      }
      if (N.rows() == uint64_t(p.degree())) {
        // minimal nullity: one dual kernel vector settles irreducibility
        Mat NT = P.transpose().left_nullspace();
        check(NT.rows() > 0, ErrorKind::Inconclusive, "dual kernel empty");
        Mat ST = spin_subspace(transposed, NT.submatrix_rows({0}));
        if (ST.rows() < d) {
          Mat S = ST.right_nullspace();  // the perp of a dual submodule
          GF2Module sub = submodule_on(M, S, M.label() + ".sub");
          GF2Module quo = quotient_on(M, S, M.label() + ".quo");
          chop_rec(sub, rng, out);
          chop_rec(quo, rng, out);
          return;
        }
        out.push_back(M);  // certified irreducible over GF(2)
        return;
      }
    }
  }
  fail(ErrorKind::Inconclusive, "chop exceeded its retry budget");
}

}  // namespace

std::vector<Constituent> chop(const GF2Module& M, uint64_t seed) {
  Rng rng(seed);
  std::vector<GF2Module> factors;
  chop_rec(M, rng, factors);
  std::vector<Constituent> grouped;
  for (auto& f : factors) {
    bool merged = false;
    for (auto& g : grouped) {
      // both sides are irreducible, so a nonzero hom is an isomorphism
      if (g.module.dim() == f.dim() && !hom_space(g.module, f).empty()) {
        ++g.multiplicity;
        merged = true;
        break;
      }
    }
    if (!merged) grouped.push_back({std::move(f), 1});
  }
  std::sort(grouped.begin(), grouped.end(), [](const Constituent& a, const Constituent& b) {
    return a.module.dim() < b.module.dim();
  });
  return grouped;
}

// ---------------------------------------------------------------------------
// direct-sum splitting

namespace {

struct RelativeSummand {
  GF2Module module;
  Mat inclusion;
  Mat projection;
};

std::vector<RelativeSummand> split_rec(const GF2Module& M, Rng rng) {
  uint32_t d = M.dim();
  std::vector<Mat> ends = hom_space(M, M);
  check(!ends.empty(), ErrorKind::Inconclusive, "endomorphism ring empty");

  auto try_split = [&](const Mat& phi) -> std::optional<Mat> {
    Poly mp = gf2::min_poly(phi);
    if (mp.degree() < 1) return std::nullopt;
    Rng frng(0xFAC7 ^ uint64_t(mp.degree()));
    auto factors = gf2::factor(mp, frng);
    if (factors.size() < 2) return std::nullopt;
    Poly f1 = Poly::one();
    for (uint32_t i = 0; i < factors[0].second; ++i) f1 = f1 * factors[0].first;
    Poly f2 = mp / f1;
    Poly a, b;
    Poly g = gf2::ext_gcd(f1, f2, a, b);
    check(g.is_one(), ErrorKind::Inconclusive, "factor split not coprime");
    Mat e = gf2::eval_poly(b * f2, phi);
    check(e * e == e, ErrorKind::Inconclusive, "fitting idempotent fails e^2 = e");
    check(!e.is_zero() && !e.is_identity(), ErrorKind::Inconclusive,
          "fitting idempotent degenerate");
    return e;
  };

  std::optional<Mat> split_e;
  if (ends.size() > 1) {
    // the 50-sample local-ring certificate: a sample with a composite minimal
    // polynomial splits; unit-or-nilpotent samples are evidence of locality
    for (int sample = 0; sample < 50 && !split_e; ++sample) {
      Mat phi(d, d);
      bool nonzero = false;
      if (sample < int(ends.size())) {
        phi = ends[sample];
        nonzero = !phi.is_zero();
      } else {
        for (auto& ei : ends)
          if (rng.flip()) {
            phi = phi + ei;
            nonzero = true;
          }
      }
      if (!nonzero) continue;
      split_e = try_split(phi);
    }
  }
  if (!split_e) {
    return {{M, Mat::identity(d), Mat::identity(d)}};
  }

  auto piece = [&](const Mat& e, const char* tag) {
    std::vector<uint32_t> pivots;
    Mat basis = e.row_basis(&pivots);
    uint32_t k = basis.rows();
    Mat proj(d, k);
    for (uint32_t i = 0; i < d; ++i) {
      Mat c = coords_in(basis, pivots, e.submatrix_rows({i}));
      for (uint32_t j = 0; j < k; ++j)
        if (c.get(0, j)) proj.set(i, j, true);
    }
    check((basis * proj).is_identity(), ErrorKind::Inconclusive, "projection not a retraction");
    std::vector<Mat> action;
    for (auto& a : M.action()) action.push_back(basis * a * proj);
    GF2Module sub(M.group_ptr(), std::move(action), M.label() + tag, false);
    return std::make_tuple(std::move(sub), std::move(basis), std::move(proj));
  };

  Mat e1 = *split_e;
  Mat e2 = e1 + Mat::identity(d);
  auto partA = piece(e1, ".a");
  auto partB = piece(e2, ".b");

  std::vector<RelativeSummand> out;
  uint64_t salt = 1;
  for (auto* part : {&partA, &partB}) {
    auto& [sub, incl, proj] = *part;
    auto inner = split_rec(sub, rng.fork(salt++));
    for (auto& s : inner) {
      out.push_back({std::move(s.module), s.inclusion * incl, proj * s.projection});
    }
  }
  return out;
}

}  // namespace

SummandDecomposition split_summands(const GF2Module& M, uint64_t seed) {
  check(M.dim() <= 300, ErrorKind::TooLarge, "summand splitting budget is dim <= 300");
  check(M.dim() >= 1, ErrorKind::InvalidInput, "empty module");
  auto rel = split_rec(M, Rng(seed));
  SummandDecomposition dec;
  dec.parent_dim = M.dim();
  Mat total(M.dim(), M.dim());
  uint64_t dim_sum = 0;
  for (auto& s : rel) {
    Mat idem = s.projection * s.inclusion;
    check(idem * idem == idem, ErrorKind::Inconclusive, "summand witness not idempotent");
    check((s.inclusion * s.projection).is_identity(), ErrorKind::Inconclusive,
          "inclusion/projection do not retract");
    total = total + idem;
    dim_sum += s.module.dim();
    dec.summands.push_back(
        {std::move(s.module), std::move(s.inclusion), std::move(s.projection), std::move(idem)});
  }
  check(total.is_identity(), ErrorKind::Inconclusive, "idempotents do not sum to identity");
  check(dim_sum == M.dim(), ErrorKind::Inconclusive, "summand dimensions do not sum up");
  for (size_t i = 0; i < dec.summands.size(); ++i)
    for (size_t j = 0; j < dec.summands.size(); ++j) {
      if (i == j) continue;
      check((dec.summands[i].idempotent * dec.summands[j].idempotent).is_zero(),
            ErrorKind::Inconclusive, "idempotents not orthogonal");
    }
  return dec;
}

GF2Module scott_module(const PermGroup* G, const PermGroup& H, uint64_t seed,
                       const permgrp::Budgets& budgets) {
  GF2Module M = perm_module(G, H, budgets);
  auto dec = split_summands(M, seed);
  std::optional<size_t> found;
  for (size_t i = 0; i < dec.summands.size(); ++i) {
    if (cofixed_dim(dec.summands[i].module) > 0) {
      check(!found.has_value(), ErrorKind::NonUnique,
            "two summands with trivial quotient; the head of k[G/H] is one-dimensional");
      found = i;
    }
  }
  check(found.has_value(), ErrorKind::NonUnique, "no summand with trivial quotient");
  GF2Module sc = std::move(dec.summands[*found].module);
  check(fixed_dim(sc) > 0, ErrorKind::Inconclusive,
        "the summand with trivial head misses the trivial socle");
  sc.set_label("Sc(" + G->name() + ", " + H.name() + ")");
  return sc;
}

bool is_relatively_projective(const GF2Module& M, const PermGroup& H,
                              const permgrp::Budgets& budgets) {
  check(M.dim() <= 64, ErrorKind::TooLarge, "relative projectivity budget is dim <= 64");
  const PermGroup& G = M.group();
  for (auto& h : H.generators())
    check(G.contains(h), ErrorKind::NotMember, "H is not a subgroup of the module's group");
  auto t = permgrp::coset_table(G, H, budgets);

  GF2Module MH = restrict_to(M, &H);
  std::vector<Mat> ends = hom_space(MH, MH);
  if (ends.empty()) return false;

  std::vector<Mat> rep, rep_inv;
  rep.reserve(t.count);
  for (auto& r : t.reps) {
    rep.push_back(M.matrix_of(r));
    rep_inv.push_back(*rep.back().inverse());
  }

  uint32_t d = M.dim();
  Mat system(uint32_t(ends.size()), d * d);
  for (uint32_t i = 0; i < ends.size(); ++i) {
    Mat tr(d, d);
    for (uint32_t j = 0; j < t.count; ++j) tr = tr + rep_inv[j] * ends[i] * rep[j];
    for (uint32_t r = 0; r < d; ++r)
      for (uint32_t c = 0; c < d; ++c)
        if (tr.get(r, c)) system.set(i, r * d + c, true);
  }
  Mat target(1, d * d);
  for (uint32_t r = 0; r < d; ++r) target.set(0, r * d + r, true);
  return system.solve_left(target).has_value();
}

uint32_t pim_count(const PermGroup& G, const permgrp::Budgets& budgets) {
  uint32_t count = 0;
  for (auto& c : G.conjugacy_classes(budgets.class_order))
    if (c.rep_order % 2 == 1) ++count;
  return count;
}

}  // namespace tameblocks::modrep2
