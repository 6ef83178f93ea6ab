#include <algorithm>
#include <limits>
#include <numeric>

#include "fibrep/homology.hpp"

namespace fibrep {

namespace {

using Entry = std::pair<std::uint32_t, std::int64_t>;

// ---------------------------------------------------------------------------
// Reduction engine. Cells of all levels get global ids; level l holds the
// cells of degree base + l. Phase 1 removes pairs (a, b) with a unit
// incidence that need no fill-in (coreductions and free faces) on flat
// arrays; phase 2 eliminates remaining unit pivots with fill-in; phase 3 runs
// a dense Smith normal form on whatever is left.

struct Flat {
  std::vector<std::size_t> offset;  // level -> first global id, size levels+1
  std::vector<std::size_t> bd_start, cb_start;
  std::vector<std::uint32_t> bd_idx, cb_idx;
  std::vector<std::int64_t> bd_val;

  std::size_t size() const { return offset.back(); }
  int level(std::size_t c) const {
    return static_cast<int>(std::upper_bound(offset.begin(), offset.end(), c) - offset.begin()) - 1;
  }
};

Flat flatten(const ChainComplex& cx, int levels) {
  Flat f;
  f.offset.push_back(0);
  for (int l = 0; l < levels; ++l) f.offset.push_back(f.offset.back() + cx.ranks[l]);
  const std::size_t n = f.size();
  if (n > std::numeric_limits<std::uint32_t>::max()) throw BudgetExceeded("homology: too many cells");
  f.bd_start.assign(n + 1, 0);
  for (int l = 1; l < levels; ++l) {
    const auto& m = cx.boundary[l];
    for (std::size_t j = 0; j < m.cols; ++j)
      f.bd_start[f.offset[l] + j + 1] = m.col_start[j + 1] - m.col_start[j];
  }
  for (std::size_t c = 0; c < n; ++c) f.bd_start[c + 1] += f.bd_start[c];
  f.bd_idx.resize(f.bd_start[n]);
  f.bd_val.resize(f.bd_start[n]);
  std::vector<std::size_t> cb_count(n + 1, 0);
  for (int l = 1; l < levels; ++l) {
    const auto& m = cx.boundary[l];
    for (std::size_t j = 0; j < m.cols; ++j) {
      std::size_t dst = f.bd_start[f.offset[l] + j];
      for (std::size_t e = m.col_start[j]; e < m.col_start[j + 1]; ++e, ++dst) {
        const auto face = static_cast<std::uint32_t>(f.offset[l - 1] + m.row[e]);
        f.bd_idx[dst] = face;
        f.bd_val[dst] = m.value[e];
        ++cb_count[face + 1];
      }
    }
  }
  for (std::size_t c = 0; c < n; ++c) cb_count[c + 1] += cb_count[c];
  f.cb_start = cb_count;
  f.cb_idx.resize(f.cb_start[n]);
  std::vector<std::size_t> fill(f.cb_start.begin(), f.cb_start.end() - 1);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t e = f.bd_start[c]; e < f.bd_start[c + 1]; ++e)
      f.cb_idx[fill[f.bd_idx[e]]++] = static_cast<std::uint32_t>(c);
  return f;
}

// Returns the alive mask after zero-fill reductions.
std::vector<std::uint8_t> zero_fill_reduce(const Flat& f) {
  const std::size_t n = f.size();
  std::vector<std::uint8_t> alive(n, 1);
  std::vector<std::uint32_t> bd_count(n), cb_count(n);
  std::vector<std::uint32_t> stack;
  for (std::size_t c = 0; c < n; ++c) {
    bd_count[c] = static_cast<std::uint32_t>(f.bd_start[c + 1] - f.bd_start[c]);
    cb_count[c] = static_cast<std::uint32_t>(f.cb_start[c + 1] - f.cb_start[c]);
    if (bd_count[c] == 1 || cb_count[c] == 1) stack.push_back(static_cast<std::uint32_t>(c));
  }
  auto kill = [&](std::uint32_t x) {
    alive[x] = 0;
    for (std::size_t e = f.bd_start[x]; e < f.bd_start[x + 1]; ++e) {
      const auto y = f.bd_idx[e];
      if (alive[y] && --cb_count[y] == 1) stack.push_back(y);
    }
    for (std::size_t e = f.cb_start[x]; e < f.cb_start[x + 1]; ++e) {
      const auto z = f.cb_idx[e];
      if (alive[z] && --bd_count[z] == 1) stack.push_back(z);
    }
  };
  auto coefficient = [&](std::uint32_t b, std::uint32_t a) -> std::int64_t {
    for (std::size_t e = f.bd_start[b]; e < f.bd_start[b + 1]; ++e)
      if (f.bd_idx[e] == a) return f.bd_val[e];
    return 0;
  };
  while (!stack.empty()) {
    const auto c = stack.back();
    stack.pop_back();
    if (!alive[c]) continue;
    if (bd_count[c] == 1) {  // coreduction: the only remaining face
      for (std::size_t e = f.bd_start[c]; e < f.bd_start[c + 1]; ++e) {
        const auto a = f.bd_idx[e];
        if (!alive[a]) continue;
        if (f.bd_val[e] == 1 || f.bd_val[e] == -1) {
          kill(c);
          kill(a);
        }
        break;
      }
      if (!alive[c]) continue;
    }
    if (cb_count[c] == 1) {  // free face
      for (std::size_t e = f.cb_start[c]; e < f.cb_start[c + 1]; ++e) {
        const auto b = f.cb_idx[e];
        if (!alive[b]) continue;
        const auto v = coefficient(b, c);
        if (v == 1 || v == -1) {
          kill(b);
          kill(c);
        }
        break;
      }
    }
  }
  return alive;
}

template <class Int>
struct Residual {
  int levels = 0;
  std::vector<int> level_of;
  std::vector<std::vector<std::pair<std::uint32_t, Int>>> bd;  // sorted by face
  std::vector<std::vector<std::uint32_t>> cb;                 // may hold stale ids
  std::vector<std::uint8_t> alive;

  const Int* coefficient(std::uint32_t x, std::uint32_t a) const {
    const auto& v = bd[x];
    auto it = std::lower_bound(v.begin(), v.end(), a, [](const auto& e, std::uint32_t k) { return e.first < k; });
    return it != v.end() && it->first == a ? &it->second : nullptr;
  }

  void clean_coboundary(std::uint32_t a) {
    auto& v = cb[a];
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    std::erase_if(v, [&](std::uint32_t x) { return !alive[x] || coefficient(x, a) == nullptr; });
  }

  static bool is_unit(const Int& v) { return v == Int(1) || v == Int(-1); }

  // Pairs face a with cell b, <db, a> = e = +-1.
  void eliminate(std::uint32_t a, std::uint32_t b, const Int& e) {
    clean_coboundary(a);
    const auto db = bd[b];
    std::vector<std::pair<std::uint32_t, Int>> merged;
    for (std::uint32_t x : cb[a]) {
      if (x == b) continue;
      const Int factor = mul(*coefficient(x, a), e);
      // dx <- dx - factor * db
      merged.clear();
      const auto& dx = bd[x];
      std::size_t i = 0, j = 0;
      while (i < dx.size() || j < db.size()) {
        if (j == db.size() || (i < dx.size() && dx[i].first < db[j].first)) {
          merged.push_back(dx[i++]);
        } else if (i == dx.size() || db[j].first < dx[i].first) {
          merged.emplace_back(db[j].first, neg(mul(factor, db[j].second)));
          cb[db[j].first].push_back(x);
          ++j;
        } else {
          Int v = sub(dx[i].second, mul(factor, db[j].second));
          if (v != 0) merged.emplace_back(dx[i].first, std::move(v));
          ++i;
          ++j;
        }
      }
      bd[x].swap(merged);
    }
    clean_coboundary(b);
    for (std::uint32_t y : cb[b]) {
      auto& v = bd[y];
      auto it = std::lower_bound(v.begin(), v.end(), b, [](const auto& en, std::uint32_t k) { return en.first < k; });
      v.erase(it);
    }
    for (auto x : {a, b}) {
      alive[x] = 0;
      bd[x].clear();
      bd[x].shrink_to_fit();
      cb[x].clear();
      cb[x].shrink_to_fit();
    }
  }

  void reduce() {
    std::size_t threshold = 0;
    for (;;) {
      bool progress = false;
      for (std::uint32_t b = 0; b < bd.size(); ++b) {
        if (!alive[b] || bd[b].empty()) continue;
        std::size_t best = std::numeric_limits<std::size_t>::max();
        std::uint32_t best_a = 0;
        bool found = false;
        for (const auto& [a, v] : bd[b]) {
          if (!is_unit(v)) continue;
          clean_coboundary(a);
          const std::size_t cost = (cb[a].size() - 1) * (bd[b].size() - 1);
          if (!found || cost < best) {
            best = cost;
            best_a = a;
            found = true;
          }
        }
        if (found && best <= threshold) {
          const Int e = *coefficient(b, best_a);
          eliminate(best_a, b, e);
          progress = true;
        }
      }
      if (progress) continue;
      if (threshold == std::numeric_limits<std::size_t>::max()) break;
      threshold = threshold > (std::numeric_limits<std::size_t>::max() >> 3)
                      ? std::numeric_limits<std::size_t>::max()
                      : std::max<std::size_t>(1, threshold * 4);
      if (threshold > (std::size_t{1} << 40)) threshold = std::numeric_limits<std::size_t>::max();
    }
  }
};

// Diagonalizes m in place and returns the nonzero diagonal as invariant
// factors (each dividing the next, all positive).
template <class Int>
std::vector<Int> smith_diagonal(std::vector<std::vector<Int>>& m, std::size_t rows, std::size_t cols) {
  std::vector<Int> diag;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // smallest nonzero entry of the remaining block as pivot
    std::size_t pr = rows, pc = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (m[i][j] != 0 && (pr == rows || abs_value(m[i][j]) < abs_value(m[pr][pc]))) {
          pr = i;
          pc = j;
        }
    if (pr == rows) break;
    std::swap(m[t], m[pr]);
    for (std::size_t i = 0; i < rows; ++i) std::swap(m[i][t], m[i][pc]);
    for (;;) {
      bool clean = true;
      const Int p = m[t][t];
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m[i][t] == 0) continue;
        const Int q = m[i][t] / p;
        if (q != 0)
          for (std::size_t j = t; j < cols; ++j)
            if (m[t][j] != 0) m[i][j] = sub(m[i][j], mul(q, m[t][j]));
        if (m[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m[t][j] == 0) continue;
        const Int q = m[t][j] / p;
        if (q != 0)
          for (std::size_t i = t; i < rows; ++i)
            if (m[i][t] != 0) m[i][j] = sub(m[i][j], mul(q, m[i][t]));
        if (m[t][j] != 0) clean = false;
      }
      if (clean) break;
      // move a smaller remainder into the pivot position
      std::size_t bi = t, bj = t;
      for (std::size_t i = t + 1; i < rows; ++i)
        if (m[i][t] != 0 && abs_value(m[i][t]) < abs_value(m[bi][bj])) {
          bi = i;
          bj = t;
        }
      for (std::size_t j = t + 1; j < cols; ++j)
        if (m[t][j] != 0 && abs_value(m[t][j]) < abs_value(m[bi][bj])) {
          bi = t;
          bj = j;
        }
      if (bi != t) std::swap(m[t], m[bi]);
      if (bj != t)
        for (std::size_t i = 0; i < rows; ++i) std::swap(m[i][t], m[i][bj]);
    }
    diag.push_back(abs_value(m[t][t]));
  }
  // diag(a, b) ~ diag(gcd, lcm) until each entry divides the next
  for (std::size_t i = 0; i < diag.size(); ++i)
    for (std::size_t j = i + 1; j < diag.size(); ++j) {
      Int a = diag[i], b = diag[j];
      while (b != 0) {
        Int r = a % b;
        a = b;
        b = r;
      }
      const Int g = a;
      if (g == diag[i]) continue;
      diag[j] = mul(diag[i] / g, diag[j]);
      diag[i] = g;
    }
  std::sort(diag.begin(), diag.end());
  return diag;
}

template <class Int>
std::vector<HomologyGroup> finish(const Flat& f, const std::vector<std::uint8_t>& mask, int levels,
                                  int base, bool top_truncated) {
  Residual<Int> r;
  r.levels = levels;
  std::vector<std::uint32_t> local(f.size(), 0);
  std::vector<std::uint32_t> global;
  for (std::size_t c = 0; c < f.size(); ++c)
    if (mask[c]) {
      local[c] = static_cast<std::uint32_t>(global.size());
      global.push_back(static_cast<std::uint32_t>(c));
    }
  const std::size_t n = global.size();
  r.bd.resize(n);
  r.cb.resize(n);
  r.alive.assign(n, 1);
  r.level_of.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = global[i];
    r.level_of[i] = f.level(c);
    for (std::size_t e = f.bd_start[c]; e < f.bd_start[c + 1]; ++e)
      if (mask[f.bd_idx[e]]) {
        const auto a = local[f.bd_idx[e]];
        r.bd[i].emplace_back(a, Int(f.bd_val[e]));
        r.cb[a].push_back(static_cast<std::uint32_t>(i));
      }
    std::sort(r.bd[i].begin(), r.bd[i].end(), [](auto& x, auto& y) { return x.first < y.first; });
  }
  r.reduce();

  std::vector<std::vector<std::uint32_t>> cells(levels);
  std::vector<std::uint32_t> pos(n, 0);
  for (std::uint32_t i = 0; i < n; ++i)
    if (r.alive[i]) {
      pos[i] = static_cast<std::uint32_t>(cells[r.level_of[i]].size());
      cells[r.level_of[i]].push_back(i);
    }
  std::vector<std::vector<Int>> factors(levels + 1);  // factors[l]: boundary into level l-1
  for (int l = 1; l < levels; ++l) {
    const std::size_t rows = cells[l - 1].size(), cols = cells[l].size();
    if (rows == 0 || cols == 0) continue;
    if (rows * cols > 200'000'000) throw BudgetExceeded("homology: residual matrix too large");
    std::vector<std::vector<Int>> m(rows, std::vector<Int>(cols, Int(0)));
    bool any = false;
    for (std::size_t j = 0; j < cols; ++j)
      for (const auto& [a, v] : r.bd[cells[l][j]]) {
        m[pos[a]][j] = v;
        any = true;
      }
    if (any) factors[l] = smith_diagonal(m, rows, cols);
  }
  std::vector<HomologyGroup> out;
  for (int l = 0; l < levels; ++l) {
    HomologyGroup h;
    h.degree = base + l;
    const std::size_t rank_in = l == 0 ? 0 : factors[l].size();
    const std::size_t rank_out = factors[l + 1].size();
    h.betti = cells[l].size() - rank_in - rank_out;
    for (const auto& v : factors[l + 1])
      if (v > 1) h.torsion.push_back(BigInt(v));
    h.truncated = top_truncated && l == levels - 1;
    out.push_back(std::move(h));
  }
  return out;
}

}  // namespace

std::vector<HomologyGroup> raw_homology(const ChainComplex& cx, int up_to) {
  if (up_to < cx.base) return {};
  // Degrees <= up_to need the boundary out of up_to + 1 and nothing higher.
  const int levels = std::min<int>(static_cast<int>(cx.ranks.size()), up_to - cx.base + 2);
  const bool top_truncated = levels == static_cast<int>(cx.ranks.size()) && !cx.complete;
  const Flat f = flatten(cx, levels);
  const auto mask = zero_fill_reduce(f);
  std::vector<HomologyGroup> hs;
  try {
    hs = finish<std::int64_t>(f, mask, levels, cx.base, top_truncated);
  } catch (const Overflow&) {
    hs = finish<BigInt>(f, mask, levels, cx.base, top_truncated);
  }
  while (!hs.empty() && hs.back().degree > up_to) hs.pop_back();
  return hs;
}

std::vector<HomologyGroup> homology(const ChainComplex& cx, int up_to) {
  auto reduced = raw_homology(augment(cx), up_to);
  std::vector<HomologyGroup> out;
  for (auto& h : reduced) {
    if (h.degree < 0) continue;
    if (h.degree == 0 && cx.rank(0) > 0) ++h.betti;
    out.push_back(std::move(h));
  }
  return out;
}

std::vector<HomologyGroup> homology(const FiniteCategory& c, int up_to) {
  auto cp = std::make_shared<const FiniteCategory>(c);
  return homology(chain_complex(nerve(cp, up_to + 1)), up_to);
}

std::string to_string(const HomologyGroup& h) {
  std::string s;
  if (h.betti > 0) s = h.betti == 1 ? "Z" : "Z^" + std::to_string(h.betti);
  for (const auto& t : h.torsion) s += (s.empty() ? "" : " + ") + std::string("Z/") + t.str();
  if (s.empty()) s = "0";
  return s;
}

std::string to_string(const std::vector<HomologyGroup>& hs) {
  std::string s;
  for (const auto& h : hs) {
    if (h.is_zero()) continue;
    if (!s.empty()) s += ' ';
    s += "H" + std::to_string(h.degree) + "=" + to_string(h);
    if (h.truncated) s += "(truncated)";
  }
  return s.empty() ? "0" : s;
}

}  // namespace fibrep
