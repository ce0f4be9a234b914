#include "tameblocks/permgrp.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "tameblocks/blockinv.hpp"
#include "tameblocks/error.hpp"

namespace tameblocks::permgrp {

namespace {

constexpr uint32_t kMaxDegree = 65535;  // points fit in uint16 arenas

uint64_t fnv1a(const void* data, size_t n, uint64_t h = 0xcbf29ce484222325ULL) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  for (size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

uint64_t mix64(uint64_t h, uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h * 0xff51afd7ed558ccdULL;
}

uint64_t hash_images(const std::vector<Point>& img) {
  uint64_t h = 0x84222325cbf29ce4ULL ^ img.size();
  for (Point p : img) h = mix64(h, p);
  return h;
}

/// Set of permutations of one fixed degree, stored packed in a uint16 arena
/// with an open-addressing index. Insertion order is the arena order.
class PackedPermSet {
public:
  explicit PackedPermSet(uint32_t degree) : degree_(degree) { rehash(1024); }

  size_t size() const { return count_; }

  void reserve(size_t n) {
    size_t want = 2;
    while (want < 2 * n + 16) want <<= 1;
    if (want > table_.size()) rehash(want);
    arena_.reserve(n * degree_);
  }

  // returns (index, inserted)
  std::pair<uint32_t, bool> insert(const std::vector<Point>& img) {
    if (2 * (count_ + 1) >= table_.size()) rehash(table_.size() * 2);
    uint64_t h = hash_images(img);
    size_t mask = table_.size() - 1;
    size_t slot = h & mask;
    while (table_[slot] != UINT32_MAX) {
      uint32_t idx = table_[slot];
      if (equals(idx, img)) return {idx, false};
      slot = (slot + 1) & mask;
    }
    uint32_t idx = uint32_t(count_);
    for (Point p : img) arena_.push_back(uint16_t(p));
    table_[slot] = idx;
    ++count_;
    return {idx, true};
  }

  int64_t find(const std::vector<Point>& img) const {
    uint64_t h = hash_images(img);
    size_t mask = table_.size() - 1;
    size_t slot = h & mask;
    while (table_[slot] != UINT32_MAX) {
      uint32_t idx = table_[slot];
      if (equals(idx, img)) return idx;
      slot = (slot + 1) & mask;
    }
    return -1;
  }

  Perm at(uint32_t idx) const {
    std::vector<Point> img(degree_);
    const uint16_t* p = arena_.data() + size_t(idx) * degree_;
    for (uint32_t i = 0; i < degree_; ++i) img[i] = p[i];
    return Perm::unchecked(std::move(img));
  }

  const uint16_t* raw(uint32_t idx) const { return arena_.data() + size_t(idx) * degree_; }

private:
  bool equals(uint32_t idx, const std::vector<Point>& img) const {
    const uint16_t* p = arena_.data() + size_t(idx) * degree_;
    for (uint32_t i = 0; i < degree_; ++i)
      if (p[i] != img[i]) return false;
    return true;
  }

  void rehash(size_t n) {
    table_.assign(n, UINT32_MAX);
    size_t mask = n - 1;
    for (uint32_t idx = 0; idx < count_; ++idx) {
      const uint16_t* p = arena_.data() + size_t(idx) * degree_;
      uint64_t h = 0x84222325cbf29ce4ULL ^ degree_;
      for (uint32_t i = 0; i < degree_; ++i) h = mix64(h, p[i]);
      size_t slot = h & mask;
      while (table_[slot] != UINT32_MAX) slot = (slot + 1) & mask;
      table_[slot] = idx;
    }
  }

  uint32_t degree_;
  std::vector<uint16_t> arena_;
  std::vector<uint32_t> table_;
  size_t count_ = 0;
};

std::vector<WordLetter> reversed_inverse(const std::vector<WordLetter>& w) {
  std::vector<WordLetter> out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->gen, !it->inverse});
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Stabilizer chain
//
// Deterministic Schreier-Sims with incremental bookkeeping: orbits only ever
// extend (Schreier trees are stable), and each level records how many
// (orbit point, generator) pairs have already been verified, so adding a
// generator costs only the genuinely new Schreier generators.

class StabChain {
public:
  void build(uint32_t degree, const std::vector<Perm>& gens,
             const std::vector<Point>& base_hint = {},
             const std::vector<std::pair<Perm, std::vector<WordLetter>>>& extra = {}) {
    degree_ = degree;
    levels_.clear();
    sgens_.clear();
    sgens_inv_.clear();
    words_.clear();
    recipes_.clear();
    for (Point b : base_hint) push_level(b);
    for (uint32_t i = 0; i < gens.size(); ++i) {
      if (gens[i].is_identity()) continue;
      extend_with(gens[i], {{i, false}});
    }
    for (auto& [g, w] : extra) {
      if (g.is_identity()) continue;
      extend_with(g, w);
    }
  }

  /// Adds a member candidate; returns false if it was already contained.
  bool extend_with(const Perm& g, std::vector<WordLetter> word) {
    if (contains(g)) return false;
    size_t L = 0;
    while (L < levels_.size() && g[levels_[L].base] == levels_[L].base) ++L;
    if (L == levels_.size()) {
      Point b = 0;
      while (g[b] == b) ++b;
      push_level(b);
    }
    uint32_t idx = uint32_t(sgens_.size());
    sgens_inv_.push_back(g.inverse());
    sgens_.push_back(g);
    std::vector<SgenRef> recipe;
    for (auto& l : word) recipe.push_back({false, l.gen, l.inverse});
    recipes_.push_back(std::move(recipe));
    words_.push_back(std::move(word));
    for (size_t j = 0; j <= L && j < levels_.size(); ++j) levels_[j].gen_idx.push_back(idx);
    for (size_t j = std::min(L + 1, levels_.size()); j-- > 0;) complete(j);
    return true;
  }

  uint32_t degree() const { return degree_; }

  uint64_t order() const {
    uint64_t o = 1;
    for (auto& l : levels_) {
      check(o <= UINT64_MAX / std::max<size_t>(l.orbit.size(), 1), ErrorKind::TooLarge,
            "group order overflows");
      o *= l.orbit.size();
    }
    return o;
  }

  size_t num_levels() const { return levels_.size(); }
  Point base_point(size_t i) const { return levels_[i].base; }

  bool contains(const Perm& g) const {
    Perm h = g;
    for (size_t i = 0; i < levels_.size(); ++i) {
      Point t = h[levels_[i].base];
      if (t == levels_[i].base) continue;
      if (levels_[i].pos[t] < 0) return false;
      h = h * transversal(i, t).inverse();
    }
    return h.is_identity();
  }

  Perm transversal(size_t level, Point p) const {
    const Level& l = levels_[level];
    if (!l.trans.empty()) return l.trans[l.pos[p]];
    std::vector<uint32_t> labels;
    collect_labels(level, p, labels);
    Perm u = Perm::identity(degree_);
    for (uint32_t gi : labels) u = u * sgens_[gi];
    return u;
  }

  void collect_labels(size_t level, Point p, std::vector<uint32_t>& out) const {
    const Level& l = levels_[level];
    out.clear();
    while (p != l.base) {
      out.push_back(l.via[p]);
      p = l.parent[p];
    }
    std::reverse(out.begin(), out.end());
  }

  const std::vector<Perm>& sgens() const { return sgens_; }
  const std::vector<std::vector<WordLetter>>& sgen_words() const { return words_; }
  const std::vector<std::vector<SgenRef>>& sgen_recipes() const { return recipes_; }
  const std::vector<Point>& orbit(size_t level) const { return levels_[level].orbit; }

  /// g as a product of strong generators (indices; no inverses), or NotMember.
  std::vector<uint32_t> factor_strong(const Perm& g) const {
    Perm h = g;
    std::vector<std::vector<uint32_t>> parts;
    for (size_t i = 0; i < levels_.size(); ++i) {
      Point t = h[levels_[i].base];
      if (t == levels_[i].base) {
        parts.emplace_back();
        continue;
      }
      if (levels_[i].pos[t] < 0) fail(ErrorKind::NotMember, "element not in group");
      std::vector<uint32_t> labels;
      collect_labels(i, t, labels);
      parts.push_back(labels);
      h = h * transversal(i, t).inverse();
    }
    check(h.is_identity(), ErrorKind::NotMember, "element not in group");
    std::vector<uint32_t> out;
    for (auto it = parts.rbegin(); it != parts.rend(); ++it)
      out.insert(out.end(), it->begin(), it->end());
    return out;
  }

  Perm random_element(Rng& rng) const {
    Perm g = Perm::identity(degree_);
    for (size_t i = levels_.size(); i-- > 0;) {
      const Level& l = levels_[i];
      Point p = l.orbit[rng.below(l.orbit.size())];
      g = g * transversal(i, p);
    }
    return g;
  }

  void for_each_element(const std::function<bool(const Perm&)>& fn) const {
    size_t L = levels_.size();
    if (L == 0) {
      fn(Perm::identity(degree_));
      return;
    }
    std::vector<std::vector<Perm>> tables(L);
    for (size_t i = 0; i < L; ++i) {
      tables[i].reserve(levels_[i].orbit.size());
      for (Point p : levels_[i].orbit) tables[i].push_back(transversal(i, p));
    }
    std::vector<size_t> idx(L, 0);
    std::vector<Perm> prefix(L + 1);
    prefix[L] = Perm::identity(degree_);
    for (size_t i = L; i-- > 0;) prefix[i] = prefix[i + 1] * tables[i][0];
    while (true) {
      if (!fn(prefix[0])) return;
      size_t i = 0;
      while (i < L) {
        if (++idx[i] < tables[i].size()) break;
        idx[i] = 0;
        ++i;
      }
      if (i == L) return;
      for (size_t j = i + 1; j-- > 0;) prefix[j] = prefix[j + 1] * tables[j][idx[j]];
    }
  }

  std::string digest() const {
    uint64_t h = fnv1a(&degree_, sizeof(degree_));
    for (auto& l : levels_) {
      h = fnv1a(&l.base, sizeof(l.base), h);
      h = fnv1a(l.orbit.data(), l.orbit.size() * sizeof(Point), h);
    }
    for (auto& g : sgens_) h = fnv1a(g.images().data(), g.degree() * sizeof(Point), h);
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
  }

private:
  struct Level {
    Point base = 0;
    std::vector<uint32_t> gen_idx;
    std::vector<Point> orbit;
    std::vector<int32_t> pos;
    std::vector<Point> parent;
    std::vector<uint32_t> via;
    std::vector<Perm> trans;     // cached transversals (empty once too wide)
    std::vector<uint32_t> done;  // per orbit position: generators already processed
    bool cache_trans = true;
  };

  void push_level(Point b) {
    Level l;
    l.base = b;
    l.pos.assign(degree_, -1);
    l.parent.assign(degree_, 0);
    l.via.assign(degree_, 0);
    l.orbit = {b};
    l.pos[b] = 0;
    l.trans = {Perm::identity(degree_)};
    l.done = {0};
    levels_.push_back(std::move(l));
  }

  // grow the orbit with the current generator set; existing tree entries are
  // never rewritten, so verified Schreier pairs stay verified
  void extend_orbit(size_t li) {
    Level& l = levels_[li];
    for (size_t qi = 0; qi < l.orbit.size(); ++qi) {
      Point p = l.orbit[qi];
      for (uint32_t gi : l.gen_idx) {
        Point q = sgens_[gi][p];
        if (l.pos[q] >= 0) continue;
        l.pos[q] = int32_t(l.orbit.size());
        l.parent[q] = p;
        l.via[q] = gi;
        l.orbit.push_back(q);
        l.done.push_back(0);
        if (l.cache_trans) {
          if (uint64_t(l.orbit.size()) * degree_ > (uint64_t(1) << 23)) {
            l.cache_trans = false;
            l.trans.clear();
          } else {
            l.trans.push_back(l.trans[l.pos[p]] * sgens_[gi]);
          }
        }
      }
    }
  }

  // sift with word and recipe tracking from a given level
  std::pair<Perm, size_t> sift_word(Perm g, std::vector<WordLetter>& w,
                                    std::vector<SgenRef>& recipe, size_t from) const {
    for (size_t i = from; i < levels_.size(); ++i) {
      Point t = g[levels_[i].base];
      if (t == levels_[i].base) continue;
      if (levels_[i].pos[t] < 0) return {std::move(g), i};
      std::vector<uint32_t> labels;
      collect_labels(i, t, labels);
      g = g * transversal(i, t).inverse();
      for (auto it = labels.rbegin(); it != labels.rend(); ++it) {
        const auto& gw = words_[*it];
        auto rw = reversed_inverse(gw);
        w.insert(w.end(), rw.begin(), rw.end());
        recipe.push_back({true, *it, true});
      }
    }
    return {std::move(g), levels_.size()};
  }

  // process the not-yet-verified Schreier generators of one level
  void complete(size_t i) {
    if (i >= levels_.size()) return;
    extend_orbit(i);
    for (size_t qi = 0; qi < levels_[i].orbit.size(); ++qi) {
      while (levels_[i].done[qi] < levels_[i].gen_idx.size()) {
        uint32_t slot = levels_[i].done[qi]++;
        uint32_t gi = levels_[i].gen_idx[slot];
        Point p = levels_[i].orbit[qi];
        Point q = sgens_[gi][p];
        Perm up = transversal(i, p);
        Perm uq = transversal(i, q);
        Perm s = up * sgens_[gi] * uq.inverse();
        if (s.is_identity()) continue;
        std::vector<WordLetter> w;
        std::vector<SgenRef> recipe;
        std::vector<uint32_t> labels;
        collect_labels(i, p, labels);
        for (uint32_t li : labels) {
          w.insert(w.end(), words_[li].begin(), words_[li].end());
          recipe.push_back({true, li, false});
        }
        w.insert(w.end(), words_[gi].begin(), words_[gi].end());
        recipe.push_back({true, gi, false});
        collect_labels(i, q, labels);
        for (auto it = labels.rbegin(); it != labels.rend(); ++it) {
          auto rw = reversed_inverse(words_[*it]);
          w.insert(w.end(), rw.begin(), rw.end());
          recipe.push_back({true, *it, true});
        }
        auto [residue, j] = sift_word(std::move(s), w, recipe, i + 1);
        if (!residue.is_identity()) {
          insert_residue(std::move(residue), std::move(w), std::move(recipe), j, i);
          // deeper levels are stable again; this level's pair bookkeeping
          // survived because the tree never moved
        }
      }
    }
  }

  // insertion discovered while completing level `from`; the residue fixes
  // base[0..j-1] with j >= from+1
  void insert_residue(Perm r, std::vector<WordLetter> w, std::vector<SgenRef> recipe, size_t j,
                      size_t from) {
    if (j == levels_.size()) {
      Point b = 0;
      while (r[b] == b) ++b;
      push_level(b);
    }
    uint32_t idx = uint32_t(sgens_.size());
    sgens_inv_.push_back(r.inverse());
    sgens_.push_back(std::move(r));
    words_.push_back(std::move(w));
    recipes_.push_back(std::move(recipe));
    for (size_t lv = from + 1; lv <= j && lv < levels_.size(); ++lv)
      levels_[lv].gen_idx.push_back(idx);
    for (size_t lv = std::min(j + 1, levels_.size()); lv-- > from + 1;) complete(lv);
  }

  uint32_t degree_ = 0;
  std::vector<Perm> sgens_, sgens_inv_;
  std::vector<std::vector<WordLetter>> words_;
  std::vector<std::vector<SgenRef>> recipes_;
  std::vector<Level> levels_;
};

// ---------------------------------------------------------------------------
// PermGroup

struct PermGroup::ClassCache {
  std::mutex mu;
  bool done = false;
  std::vector<ConjClass> v;
};

namespace {

struct CacheConfig {
  bool enabled = false;
  std::string dir;
};

CacheConfig cache_config() {
  CacheConfig c;
  if (const char* d = std::getenv("TAMEBLOCKS_CACHE"); d && *d) {
    c.enabled = true;
    c.dir = d;
  }
  return c;
}

std::string cache_key(uint32_t degree, const std::vector<Perm>& gens, uint64_t seed) {
  uint64_t h1 = fnv1a(&degree, sizeof(degree));
  h1 = fnv1a(&seed, sizeof(seed), h1);
  uint64_t h2 = fnv1a(&seed, sizeof(seed), 0x84222325cbf29ce4ULL);
  for (auto& g : gens) {
    h1 = fnv1a(g.images().data(), g.degree() * sizeof(Point), h1);
    h2 = fnv1a(g.images().data(), g.degree() * sizeof(Point), h2 * 31 + 7);
  }
  std::ostringstream os;
  os << std::hex << h1 << "-" << h2 << ".chain.json";
  return os.str();
}

nlohmann::json word_to_json(const std::vector<WordLetter>& w) {
  nlohmann::json arr = nlohmann::json::array();
  for (auto& l : w) arr.push_back(nlohmann::json::array({l.gen, l.inverse ? 1 : 0}));
  return arr;
}

std::vector<WordLetter> word_from_json(const nlohmann::json& j) {
  std::vector<WordLetter> w;
  for (auto& e : j) w.push_back({e.at(0).get<uint32_t>(), e.at(1).get<int>() != 0});
  return w;
}

}  // namespace

PermGroup::PermGroup(std::vector<Perm> generators, uint64_t seed) : seed_(seed) {
  check(!generators.empty(), ErrorKind::InvalidInput, "need at least one generator (may be identity)");
  degree_ = generators[0].degree();
  check(degree_ >= 1, ErrorKind::InvalidInput, "degree must be positive");
  check(degree_ <= kMaxDegree, ErrorKind::BudgetExceeded, "degree exceeds supported maximum");
  for (auto& g : generators)
    check(g.degree() == degree_, ErrorKind::DegreeMismatch, "generators have mixed degrees");
  gens_ = std::move(generators);
  classes_ = std::make_shared<ClassCache>();

  auto chain = std::make_shared<StabChain>();
  const auto cfg = cache_config();
  bool loaded = false;
  std::string path;
  if (cfg.enabled) {
    path = cfg.dir + "/" + cache_key(degree_, gens_, seed_);
    std::ifstream in(path);
    if (in) {
      try {
        nlohmann::json j;
        in >> j;
        std::vector<Point> base = j.at("base").get<std::vector<Point>>();
        std::vector<std::pair<Perm, std::vector<WordLetter>>> extra;
        for (auto& wj : j.at("sgen_words")) {
          auto w = word_from_json(wj);
          Perm g = Perm::identity(degree_);
          for (auto& l : w) {
            const Perm& base_gen = gens_.at(l.gen);
            g = g * (l.inverse ? base_gen.inverse() : base_gen);
          }
          extra.emplace_back(std::move(g), std::move(w));
        }
        chain->build(degree_, gens_, base, extra);
        loaded = (chain->order() == j.at("order").get<uint64_t>());
      } catch (...) {
        loaded = false;
      }
    }
  }
  if (!loaded) {
    chain = std::make_shared<StabChain>();
    chain->build(degree_, gens_);
    if (cfg.enabled) {
      std::error_code ec;
      std::filesystem::create_directories(cfg.dir, ec);
      nlohmann::json j;
      std::vector<Point> base;
      for (size_t i = 0; i < chain->num_levels(); ++i) base.push_back(chain->base_point(i));
      j["base"] = base;
      nlohmann::json words = nlohmann::json::array();
      for (auto& w : chain->sgen_words()) words.push_back(word_to_json(w));
      j["sgen_words"] = words;
      j["order"] = chain->order();
      std::string tmp = path + ".tmp";
      std::ofstream out(tmp);
      if (out) {
        out << j.dump();
        out.close();
        std::filesystem::rename(tmp, path, ec);
      }
    }
  }
  chain_ = std::move(chain);
}

uint64_t PermGroup::order() const { return chain_->order(); }

bool PermGroup::contains(const Perm& g) const {
  if (g.degree() != degree_) return false;
  return chain_->contains(g);
}

Perm PermGroup::random_element(Rng& rng) const { return chain_->random_element(rng); }

std::vector<Point> PermGroup::base() const {
  std::vector<Point> b;
  for (size_t i = 0; i < chain_->num_levels(); ++i) b.push_back(chain_->base_point(i));
  return b;
}

uint32_t PermGroup::strong_generator_count() const { return uint32_t(chain_->sgens().size()); }
const Perm& PermGroup::strong_generator(uint32_t i) const { return chain_->sgens()[i]; }
const std::vector<WordLetter>& PermGroup::strong_generator_word(uint32_t i) const {
  return chain_->sgen_words()[i];
}
const std::vector<SgenRef>& PermGroup::strong_generator_recipe(uint32_t i) const {
  return chain_->sgen_recipes()[i];
}

std::vector<uint32_t> PermGroup::factor_strong(const Perm& g) const {
  check(g.degree() == degree_, ErrorKind::DegreeMismatch, "degree mismatch");
  return chain_->factor_strong(g);
}

std::vector<WordLetter> PermGroup::factor_word(const Perm& g) const {
  std::vector<WordLetter> out;
  for (uint32_t si : factor_strong(g)) {
    const auto& w = chain_->sgen_words()[si];
    out.insert(out.end(), w.begin(), w.end());
  }
  return out;
}

Perm PermGroup::evaluate_word(const std::vector<WordLetter>& w) const {
  Perm g = Perm::identity(degree_);
  for (auto& l : w) {
    const Perm& base_gen = gens_.at(l.gen);
    g = g * (l.inverse ? base_gen.inverse() : base_gen);
  }
  return g;
}

void PermGroup::for_each_element(const std::function<bool(const Perm&)>& fn) const {
  chain_->for_each_element(fn);
}

std::vector<Perm> PermGroup::elements(uint64_t budget) const {
  check(order() <= budget, ErrorKind::TooLarge, "group too large to enumerate");
  std::vector<Perm> out;
  out.reserve(order());
  for_each_element([&](const Perm& g) {
    out.push_back(g);
    return true;
  });
  return out;
}

std::vector<Point> PermGroup::orbit_of(Point p) const {
  check(p < degree_, ErrorKind::InvalidInput, "point out of range");
  std::vector<Point> orbit{p};
  std::vector<bool> seen(degree_, false);
  seen[p] = true;
  for (size_t i = 0; i < orbit.size(); ++i)
    for (auto& g : gens_) {
      Point q = g[orbit[i]];
      if (!seen[q]) {
        seen[q] = true;
        orbit.push_back(q);
      }
    }
  return orbit;
}

const std::vector<ConjClass>& PermGroup::conjugacy_classes(uint64_t order_budget) const {
  std::lock_guard<std::mutex> lock(classes_->mu);
  if (classes_->done) return classes_->v;
  check(order() <= order_budget, ErrorKind::TooLarge,
        "order " + std::to_string(order()) + " exceeds class enumeration budget");
  PackedPermSet set(degree_);
  set.reserve(order());
  for_each_element([&](const Perm& g) {
    set.insert(g.images());
    return true;
  });
  check(set.size() == order(), ErrorKind::Inconclusive, "enumeration inconsistency");
  std::vector<Perm> gen_inv;
  for (auto& g : gens_) gen_inv.push_back(g.inverse());
  std::vector<bool> visited(set.size(), false);
  std::vector<ConjClass> classes;
  std::vector<uint32_t> queue;
  std::vector<Point> scratch(degree_);
  for (uint32_t idx = 0; idx < set.size(); ++idx) {
    if (visited[idx]) continue;
    visited[idx] = true;
    queue.assign(1, idx);
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      const uint16_t* e = set.raw(queue[qi]);
      for (size_t gi = 0; gi < gens_.size(); ++gi) {
        // conjugate by the generator, straight into the scratch buffer
        const auto& g = gens_[gi].images();
        const auto& ginv = gen_inv[gi].images();
        for (Point p = 0; p < degree_; ++p) scratch[p] = g[e[ginv[p]]];
        int64_t ci = set.find(scratch);
        check(ci >= 0, ErrorKind::Inconclusive, "conjugate escaped enumeration");
        if (!visited[ci]) {
          visited[ci] = true;
          queue.push_back(uint32_t(ci));
        }
      }
    }
    Perm rep = set.at(idx);
    uint64_t rep_order = rep.order();
    classes.push_back({std::move(rep), queue.size(), rep_order});
  }
  classes_->v = std::move(classes);
  classes_->done = true;
  return classes_->v;
}

nlohmann::json PermGroup::to_json() const {
  nlohmann::json j;
  j["degree"] = degree_;
  nlohmann::json gens = nlohmann::json::array();
  for (auto& g : gens_) gens.push_back(g.images());
  j["generators"] = gens;
  if (!name_.empty()) j["name"] = name_;
  j["seed"] = seed_;
  return j;
}

std::string PermGroup::canonical_json() const { return to_json().dump(); }

PermGroup PermGroup::from_json(const nlohmann::json& j) {
  check(j.is_object(), ErrorKind::InvalidInput, "group JSON must be an object");
  check(j.contains("degree") && j.contains("generators"), ErrorKind::InvalidInput,
        "group JSON needs degree and generators");
  uint32_t degree = j.at("degree").get<uint32_t>();
  std::vector<Perm> gens;
  for (auto& gj : j.at("generators")) {
    std::vector<Point> img = gj.get<std::vector<Point>>();
    check(img.size() == degree, ErrorKind::DegreeMismatch, "generator has wrong degree");
    gens.emplace_back(std::move(img));
  }
  if (gens.empty()) gens.push_back(Perm::identity(degree));
  uint64_t seed = j.value("seed", uint64_t(0));
  PermGroup g(std::move(gens), seed);
  if (j.contains("name")) g.set_name(j.at("name").get<std::string>());
  return g;
}

std::string PermGroup::chain_digest() const { return chain_->digest(); }

PermGroup load_group_file(const std::string& path) {
  std::ifstream in(path);
  check(bool(in), ErrorKind::InvalidInput, "cannot open group file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail(ErrorKind::InvalidInput, std::string("bad group JSON: ") + e.what());
  }
  return PermGroup::from_json(j);
}

void save_group_file(const PermGroup& G, const std::string& path) {
  std::ofstream out(path);
  check(bool(out), ErrorKind::InvalidInput, "cannot write group file " + path);
  out << G.canonical_json();
}

// ---------------------------------------------------------------------------
// Subgroups and basic operations

Subgroup subgroup(const PermGroup& parent, std::vector<Perm> gens, uint64_t seed) {
  for (auto& g : gens)
    check(parent.contains(g), ErrorKind::NotMember, "subgroup generator outside parent");
  if (gens.empty()) gens.push_back(Perm::identity(parent.degree()));
  return Subgroup{&parent, PermGroup(std::move(gens), seed)};
}

Subgroup point_stabilizer(const PermGroup& G, Point p) {
  check(p < G.degree(), ErrorKind::InvalidInput, "point out of range");
  // orbit with Schreier tree
  std::vector<Point> orbit{p};
  std::vector<int32_t> pos(G.degree(), -1);
  std::vector<Point> parent(G.degree(), 0);
  std::vector<uint32_t> via(G.degree(), 0);
  pos[p] = 0;
  const auto& gens = G.generators();
  for (size_t qi = 0; qi < orbit.size(); ++qi)
    for (uint32_t gi = 0; gi < gens.size(); ++gi) {
      Point q = gens[gi][orbit[qi]];
      if (pos[q] < 0) {
        pos[q] = int32_t(orbit.size());
        parent[q] = orbit[qi];
        via[q] = gi;
        orbit.push_back(q);
      }
    }
  auto transversal = [&](Point q) {
    std::vector<uint32_t> labels;
    while (q != p) {
      labels.push_back(via[q]);
      q = parent[q];
    }
    Perm u = Perm::identity(G.degree());
    for (auto it = labels.rbegin(); it != labels.rend(); ++it) u = u * gens[*it];
    return u;
  };
  uint64_t target = G.order() / orbit.size();
  std::vector<Perm> stab_gens{Perm::identity(G.degree())};
  PermGroup S(stab_gens, G.seed());
  for (Point q : orbit) {
    if (S.order() == target) break;
    Perm uq = transversal(q);
    for (uint32_t gi = 0; gi < gens.size() && S.order() < target; ++gi) {
      Perm s = uq * gens[gi] * transversal(gens[gi][q]).inverse();
      if (!s.is_identity() && !S.contains(s)) {
        stab_gens.push_back(s);
        S = PermGroup(stab_gens, G.seed());
      }
    }
  }
  check(S.order() == target, ErrorKind::Inconclusive, "point stabilizer incomplete");
  return Subgroup{&G, std::move(S)};
}

namespace {

// Conjugation orbit of x under G, with parent pointers for witnesses.
struct ConjOrbit {
  PackedPermSet set;
  std::vector<uint32_t> parent;
  std::vector<uint32_t> via;
  explicit ConjOrbit(uint32_t degree) : set(degree) {}

  Perm transversal(const PermGroup& G, uint32_t idx) const {
    std::vector<uint32_t> labels;
    while (idx != 0) {
      labels.push_back(via[idx]);
      idx = parent[idx];
    }
    Perm u = Perm::identity(G.degree());
    for (auto it = labels.rbegin(); it != labels.rend(); ++it) u = u * G.generators()[*it];
    return u;
  }
};

// BFS of the conjugation orbit; if target is non-null, stops early when found
// and reports its index.
ConjOrbit conj_orbit(const PermGroup& G, const Perm& x, const Perm* target, int64_t* target_idx) {
  ConjOrbit o(G.degree());
  o.set.insert(x.images());
  o.parent.push_back(0);
  o.via.push_back(0);
  if (target_idx) *target_idx = (target && *target == x) ? 0 : -1;
  if (target_idx && *target_idx >= 0) return o;
  std::vector<Perm> gen_inv;
  for (auto& g : G.generators()) gen_inv.push_back(g.inverse());
  for (uint32_t qi = 0; qi < o.set.size(); ++qi) {
    Perm e = o.set.at(qi);
    for (uint32_t gi = 0; gi < G.generators().size(); ++gi) {
      Perm c = gen_inv[gi] * e * G.generators()[gi];
      auto [idx, fresh] = o.set.insert(c.images());
      if (fresh) {
        o.parent.push_back(qi);
        o.via.push_back(gi);
        if (target && c == *target) {
          if (target_idx) *target_idx = idx;
          return o;
        }
      }
    }
  }
  return o;
}

}  // namespace

Subgroup centralizer(const PermGroup& G, const Perm& x) {
  check(G.contains(x), ErrorKind::NotMember, "element not in group");
  ConjOrbit orbit = conj_orbit(G, x, nullptr, nullptr);
  uint64_t class_size = orbit.set.size();
  check(G.order() % class_size == 0, ErrorKind::Inconclusive, "orbit-stabilizer violated");
  uint64_t target = G.order() / class_size;
  std::vector<Perm> cgens{Perm::identity(G.degree())};
  PermGroup C(cgens, G.seed());
  for (uint32_t qi = 0; qi < orbit.set.size() && C.order() < target; ++qi) {
    Perm y = orbit.set.at(qi);
    Perm uy = orbit.transversal(G, qi);
    for (uint32_t gi = 0; gi < G.generators().size() && C.order() < target; ++gi) {
      const Perm& g = G.generators()[gi];
      Perm yg = y.conjugated_by(g);
      int64_t idx = orbit.set.find(yg.images());
      check(idx >= 0, ErrorKind::Inconclusive, "conjugation orbit incomplete");
      Perm s = uy * g * orbit.transversal(G, uint32_t(idx)).inverse();
      if (!s.is_identity() && !C.contains(s)) {
        cgens.push_back(s);
        C = PermGroup(cgens, G.seed());
      }
    }
  }
  check(C.order() == target, ErrorKind::Inconclusive, "centralizer incomplete");
  return Subgroup{&G, std::move(C)};
}

std::optional<Perm> conjugating_witness(const PermGroup& G, const Perm& x, const Perm& y) {
  check(G.contains(x) && G.contains(y), ErrorKind::NotMember, "element not in group");
  if (x.cycle_type() != y.cycle_type()) return std::nullopt;
  int64_t idx = -1;
  ConjOrbit orbit = conj_orbit(G, x, &y, &idx);
  if (idx < 0) return std::nullopt;
  Perm u = orbit.transversal(G, uint32_t(idx));
  return u;
}

// ---------------------------------------------------------------------------
// Cosets, normalizer, quotient

CosetTable coset_table(const PermGroup& G, const PermGroup& H, const Budgets& budgets) {
  check(H.degree() == G.degree(), ErrorKind::DegreeMismatch, "subgroup degree mismatch");
  check(G.order() % H.order() == 0, ErrorKind::NotMember, "index is not integral");
  uint64_t index = G.order() / H.order();
  check(index <= budgets.coset_count, ErrorKind::TooLarge,
        "coset count " + std::to_string(index) + " exceeds budget");
  std::vector<Perm> h_elems = H.elements(budgets.subgroup_enum);

  std::vector<Point> cand(G.degree());
  auto canon = [&](const Perm& g) {
    const auto& gi = g.images();
    std::vector<Point> best(G.degree());
    for (size_t i = 0; i < h_elems.size(); ++i) {
      const auto& hi = h_elems[i].images();
      for (Point p = 0; p < G.degree(); ++p) cand[p] = gi[hi[p]];
      if (i == 0 || cand < best) best = cand;
    }
    return best;
  };

  CosetTable t;
  PackedPermSet labels(G.degree());
  labels.reserve(index);
  labels.insert(canon(Perm::identity(G.degree())));
  t.reps.push_back(Perm::identity(G.degree()));
  std::vector<std::vector<uint32_t>> act(G.generators().size());
  for (uint32_t qi = 0; qi < t.reps.size(); ++qi) {
    for (uint32_t gi = 0; gi < G.generators().size(); ++gi) {
      Perm next = t.reps[qi] * G.generators()[gi];
      auto [idx, fresh] = labels.insert(canon(next));
      if (fresh) {
        check(t.reps.size() < index, ErrorKind::Inconclusive, "coset enumeration overflow");
        t.reps.push_back(std::move(next));
      }
      act[gi].push_back(idx);
    }
  }
  check(t.reps.size() == index, ErrorKind::Inconclusive, "coset enumeration incomplete");
  t.count = uint32_t(index);
  for (uint32_t gi = 0; gi < G.generators().size(); ++gi) {
    std::vector<Point> img(act[gi].begin(), act[gi].end());
    t.action.emplace_back(std::move(img));
  }
  return t;
}

bool is_normal(const PermGroup& G, const PermGroup& N) {
  for (auto& n : N.generators())
    if (!G.contains(n)) return false;
  for (auto& g : G.generators())
    for (auto& n : N.generators())
      if (!N.contains(n.conjugated_by(g))) return false;
  return true;
}

PermGroup quotient_by(const PermGroup& G, const PermGroup& N, uint64_t seed,
                      const Budgets& budgets) {
  check(is_normal(G, N), ErrorKind::NotNormal, "subgroup is not normal");
  if (N.order() == 1) {
    PermGroup copy(G.generators(), seed);
    copy.set_name(G.name());
    return copy;
  }
  CosetTable t = coset_table(G, N, budgets);
  std::vector<Perm> qgens = t.action;
  if (qgens.empty()) qgens.push_back(Perm::identity(t.count));
  PermGroup Q(std::move(qgens), seed);
  check(Q.order() == G.order() / N.order(), ErrorKind::Inconclusive,
        "quotient order mismatch");
  return Q;
}

Subgroup normalizer(const PermGroup& G, const PermGroup& H, const Budgets& budgets) {
  CosetTable t = coset_table(G, H, budgets);
  std::vector<Perm> ngens = H.generators();
  uint64_t passing = 0;
  std::vector<Perm> extras;
  for (auto& rep : t.reps) {
    bool ok = true;
    for (auto& h : H.generators()) {
      if (!H.contains(h.conjugated_by(rep))) {
        ok = false;
        break;
      }
    }
    if (ok) {
      ++passing;
      extras.push_back(rep);
    }
  }
  uint64_t target = H.order() * passing;
  PermGroup Ngrp(ngens, G.seed());
  for (auto& e : extras) {
    if (Ngrp.order() == target) break;
    if (!Ngrp.contains(e)) {
      ngens.push_back(e);
      Ngrp = PermGroup(ngens, G.seed());
    }
  }
  check(Ngrp.order() == target, ErrorKind::Inconclusive, "normalizer incomplete");
  return Subgroup{&G, std::move(Ngrp)};
}

// ---------------------------------------------------------------------------
// Closures

Subgroup normal_closure(const PermGroup& G, const std::vector<Perm>& seeds, uint64_t seed) {
  std::vector<Perm> gens;
  for (auto& s : seeds) {
    check(G.contains(s), ErrorKind::NotMember, "closure seed outside group");
    if (!s.is_identity()) gens.push_back(s);
  }
  if (gens.empty()) gens.push_back(Perm::identity(G.degree()));
  PermGroup N(gens, seed);
  // index loop: gens grows as new conjugates are found, and every entry gets
  // processed, so the result is closed under conjugation by the generators
  for (size_t wi = 0; wi < gens.size(); ++wi) {
    for (auto& g : G.generators()) {
      Perm c = gens[wi].conjugated_by(g);
      if (!N.contains(c)) {
        gens.push_back(c);
        N = PermGroup(gens, seed);
      }
    }
  }
  return Subgroup{&G, std::move(N)};
}

Subgroup derived_subgroup(const PermGroup& G, uint64_t seed) {
  std::vector<Perm> comms;
  const auto& gens = G.generators();
  for (size_t i = 0; i < gens.size(); ++i)
    for (size_t j = 0; j < gens.size(); ++j) {
      if (i == j) continue;
      Perm c = gens[i].inverse() * gens[j].inverse() * gens[i] * gens[j];
      if (!c.is_identity()) comms.push_back(c);
    }
  return normal_closure(G, comms, seed);
}

Subgroup o2prime(const PermGroup& G, const Budgets& budgets) {
  if (G.order() % 2 == 1) {
    // odd group: O_{2'}(G) = G
    return Subgroup{&G, PermGroup(G.generators(), G.seed())};
  }
  const auto& classes = G.conjugacy_classes(budgets.class_order);
  std::vector<Perm> gens;
  for (auto& cl : classes) {
    if (cl.rep_order % 2 == 0 || cl.rep_order == 1) continue;
    Subgroup closure = normal_closure(G, {cl.rep}, G.seed());
    if (closure.group.order() % 2 == 1) {
      for (auto& g : closure.group.generators())
        if (!g.is_identity()) gens.push_back(g);
    }
  }
  if (gens.empty()) gens.push_back(Perm::identity(G.degree()));
  PermGroup O(gens, G.seed());
  check(O.order() % 2 == 1, ErrorKind::Inconclusive, "odd core is not odd");
  check(is_normal(G, O), ErrorKind::Inconclusive, "odd core is not normal");
  return Subgroup{&G, std::move(O)};
}

Subgroup o_upper_2prime(const PermGroup& G, uint64_t seed, const Budgets& budgets) {
  Subgroup P = sylow2(G, seed, budgets);
  Subgroup N = normal_closure(G, P.group.generators(), seed);
  uint64_t index = G.order() / N.group.order();
  check(index % 2 == 1, ErrorKind::Inconclusive, "O^{2'} index is even");
  return N;
}

// ---------------------------------------------------------------------------
// Sylow 2-subgroups by normalizer ascent

Subgroup sylow2(const PermGroup& G, uint64_t seed, const Budgets& budgets) {
  uint64_t target = blockinv::two_part(G.order());
  if (target == 1)
    return Subgroup{&G, PermGroup({Perm::identity(G.degree())}, seed)};
  Budgets ascent = budgets;
  ascent.coset_count = std::max<uint64_t>(budgets.coset_count, 500'000);

  for (uint64_t attempt = 0; attempt < 8; ++attempt) {
    Rng stream = Rng(seed).fork(attempt);
    // sample for a 2-element with large 2-part
    Perm best = Perm::identity(G.degree());
    uint64_t best_order = 1;
    uint64_t samples = 64 * (attempt + 1);
    for (uint64_t i = 0; i < samples; ++i) {
      Perm x = G.random_element(stream);
      Perm y = x.two_part_power();
      uint64_t o = y.order();
      if (o > best_order) {
        best = y;
        best_order = o;
        if (best_order == target) break;
      }
    }
    if (best_order == 1) continue;
    std::vector<Perm> sgens{best};
    PermGroup S(sgens, seed);
    bool stalled = false;
    while (S.order() < target && !stalled) {
      stalled = true;
      try {
        Subgroup N = normalizer(G, S, ascent);
        // |N : S| is even while S is not Sylow; find a 2-element of N outside S.
        for (uint64_t tries = 0; tries < 400; ++tries) {
          Perm n = N.group.random_element(stream);
          Perm y = n.two_part_power();
          if (!y.is_identity() && !S.contains(y)) {
            sgens.push_back(y);
            S = PermGroup(sgens, seed);
            stalled = false;
            break;
          }
        }
      } catch (const Error&) {
        // normalizer transversal too large from this start; retry the attempt
        // with more samples and a hopefully larger starting 2-part
        break;
      }
    }
    if (S.order() == target) return Subgroup{&G, std::move(S)};
  }
  fail(ErrorKind::Stalled, "sylow2 normalizer ascent exhausted its retry budget");
}

// ---------------------------------------------------------------------------
// Fingerprints

namespace {

std::vector<uint64_t> abelian_invariants_of(const PermGroup& A, const Budgets& budgets) {
  uint64_t n = A.order();
  if (n == 1) return {};
  check(n <= budgets.abelian_quotient, ErrorKind::TooLarge, "abelian quotient too large");
  std::vector<uint64_t> orders;
  A.for_each_element([&](const Perm& g) {
    orders.push_back(g.order());
    return true;
  });
  // primary decomposition per prime
  std::map<uint64_t, std::vector<uint32_t>> parts;  // prime -> partition (desc)
  uint64_t m = n;
  for (uint64_t p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    while (m % p == 0) m /= p;
    parts[p] = {};
  }
  if (m > 1) parts[m] = {};
  for (auto& [p, lambda] : parts) {
    // c[k] = #elements of order dividing p^k (within the p-part of their order)
    std::vector<uint64_t> cnt;
    for (uint64_t o : orders) {
      uint32_t e = 0;
      while (o % p == 0) {
        o /= p;
        ++e;
      }
      if (cnt.size() < e + 1) cnt.resize(e + 1, 0);
      ++cnt[e];
    }
    std::vector<uint64_t> cum(cnt.size());
    std::partial_sum(cnt.begin(), cnt.end(), cum.begin());
    // log_p of cumulative counts gives conjugate partition
    std::vector<uint32_t> logs;
    for (uint64_t c : cum) {
      uint32_t e = 0;
      uint64_t v = 1;
      while (v < c) {
        v *= p;
        ++e;
      }
      check(v == c, ErrorKind::Inconclusive, "abelian p-group counting failed");
      logs.push_back(e);
    }
    for (size_t k = 1; k < logs.size(); ++k) {
      uint32_t parts_ge_k = logs[k] - logs[k - 1];
      // parts_ge_k = number of parts >= k
      while (lambda.size() < parts_ge_k) lambda.push_back(0);
      for (uint32_t i = 0; i < parts_ge_k; ++i) lambda[i] += 1;
    }
    std::sort(lambda.begin(), lambda.end(), std::greater<>());
  }
  size_t m_parts = 0;
  for (auto& [p, lambda] : parts) m_parts = std::max(m_parts, lambda.size());
  std::vector<uint64_t> inv(m_parts, 1);
  for (auto& [p, lambda] : parts)
    for (size_t i = 0; i < lambda.size(); ++i) {
      uint64_t pw = 1;
      for (uint32_t k = 0; k < lambda[i]; ++k) pw *= p;
      inv[i] *= pw;
    }
  // inv[0] is the largest factor; report ascending divisibility
  std::reverse(inv.begin(), inv.end());
  return inv;
}

}  // namespace

Fingerprint fingerprint(const PermGroup& G, const Budgets& budgets) {
  Fingerprint fp;
  fp.order = G.order();
  const auto& classes = G.conjugacy_classes(budgets.class_order);
  fp.class_count = uint32_t(classes.size());
  for (auto& c : classes) {
    fp.class_profile.emplace_back(c.rep_order, c.size);
    if (c.size == 1) ++fp.center_order;
  }
  std::sort(fp.class_profile.begin(), fp.class_profile.end());
  Subgroup D = derived_subgroup(G, G.seed() ^ 0xD1);
  fp.derived_order = D.group.order();
  if (fp.derived_order == fp.order) {
    return fp;  // perfect group, trivial abelianization
  }
  PermGroup A = quotient_by(G, D.group, G.seed() ^ 0xA8, budgets);
  fp.abelian_invariants = abelian_invariants_of(A, budgets);
  return fp;
}

bool fingerprint_match(const PermGroup& A, const PermGroup& B, const Budgets& budgets) {
  return fingerprint(A, budgets) == fingerprint(B, budgets);
}

nlohmann::json Fingerprint::to_json() const {
  nlohmann::json j;
  j["order"] = order;
  j["class_count"] = class_count;
  nlohmann::json prof = nlohmann::json::array();
  for (auto& [o, s] : class_profile) prof.push_back(nlohmann::json::array({o, s}));
  j["class_profile"] = prof;
  j["center_order"] = center_order;
  j["derived_order"] = derived_order;
  j["abelian_invariants"] = abelian_invariants;
  return j;
}

PermGroup direct_product(const PermGroup& A, const PermGroup& B, uint64_t seed) {
  uint32_t d = A.degree() + B.degree();
  std::vector<Perm> gens;
  for (auto& g : A.generators()) {
    std::vector<Point> img(d);
    for (Point p = 0; p < A.degree(); ++p) img[p] = g[p];
    for (Point p = 0; p < B.degree(); ++p) img[A.degree() + p] = A.degree() + p;
    gens.emplace_back(std::move(img));
  }
  for (auto& g : B.generators()) {
    std::vector<Point> img(d);
    for (Point p = 0; p < A.degree(); ++p) img[p] = p;
    for (Point p = 0; p < B.degree(); ++p) img[A.degree() + p] = A.degree() + g[p];
    gens.emplace_back(std::move(img));
  }
  return PermGroup(std::move(gens), seed);
}

}  // namespace tameblocks::permgrp
