#include <algorithm>
#include <map>

#include "fibrep/homology.hpp"

namespace fibrep {

bool is_loop_free(const FiniteCategory& c) {
  const std::size_t n = c.num_objects();
  std::vector<std::size_t> indegree(n, 0);
  std::vector<std::vector<ObjId>> succ(n);
  for (MorId m = 0; m < static_cast<MorId>(c.num_morphisms()); ++m) {
    if (c.is_identity(m)) continue;
    if (c.dom(m) == c.cod(m)) return false;
    succ[c.dom(m)].push_back(c.cod(m));
    ++indegree[c.cod(m)];
  }
  std::vector<ObjId> ready;
  for (std::size_t x = 0; x < n; ++x)
    if (indegree[x] == 0) ready.push_back(static_cast<ObjId>(x));
  std::size_t seen = 0;
  while (!ready.empty()) {
    ObjId x = ready.back();
    ready.pop_back();
    ++seen;
    for (ObjId y : succ[x])
      if (--indegree[y] == 0) ready.push_back(y);
  }
  return seen == n;
}

std::size_t NerveTruncation::count(int d) const {
  if (d < 0 || d > max_dim) return 0;
  if (d == 0) return category->num_objects();
  return chains[d].size() / static_cast<std::size_t>(d);
}

std::optional<std::size_t> NerveTruncation::find(std::span<const MorId> chain) const {
  const int d = static_cast<int>(chain.size());
  if (d < 1 || d > max_dim) return std::nullopt;
  std::size_t lo = 0, hi = count(d);
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    auto s = simplex(d, mid);
    if (std::lexicographical_compare(s.begin(), s.end(), chain.begin(), chain.end()))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < count(d) && std::ranges::equal(simplex(d, lo), chain)) return lo;
  return std::nullopt;
}

NerveTruncation nerve(CategoryPtr cp, int k, std::size_t simplex_limit) {
  if (k < 0) throw Error("nerve: negative dimension");
  const auto& c = *cp;
  NerveTruncation nv;
  nv.category = cp;
  nv.max_dim = k;
  nv.loop_free = is_loop_free(c);
  nv.chains.resize(k + 1);

  // Non-identity morphisms out of each object, in id order, so that extending
  // a sorted list of chains at the end keeps it sorted.
  std::vector<std::vector<MorId>> out(c.num_objects());
  for (MorId m = 0; m < static_cast<MorId>(c.num_morphisms()); ++m)
    if (!c.is_identity(m)) out[c.dom(m)].push_back(m);

  std::size_t total = c.num_objects();
  for (int d = 1; d <= k; ++d) {
    auto& cur = nv.chains[d];
    if (d == 1) {
      for (MorId m = 0; m < static_cast<MorId>(c.num_morphisms()); ++m)
        if (!c.is_identity(m)) cur.push_back(m);
    } else {
      const auto& prev = nv.chains[d - 1];
      const std::size_t w = d - 1;
      for (std::size_t i = 0; i + w <= prev.size(); i += w) {
        for (MorId g : out[c.cod(prev[i + w - 1])]) {
          cur.insert(cur.end(), prev.begin() + i, prev.begin() + i + w);
          cur.push_back(g);
        }
        if (total + cur.size() / d > simplex_limit)
          throw BudgetExceeded("nerve: more than " + std::to_string(simplex_limit) +
                               " simplices up to dimension " + std::to_string(d));
      }
    }
    total += cur.size() / d;
  }
  // Complete iff no chain extends past dimension k.
  nv.complete = true;
  if (k == 0) {
    for (const auto& o : out)
      if (!o.empty()) nv.complete = false;
  } else {
    const auto& top = nv.chains[k];
    for (std::size_t i = 0; i < top.size(); i += k)
      if (!out[c.cod(top[i + k - 1])].empty()) {
        nv.complete = false;
        break;
      }
  }
  return nv;
}

void SparseMatrix::push_column(std::span<const std::pair<std::uint32_t, std::int64_t>> entries) {
  for (const auto& [r, v] : entries) {
    row.push_back(r);
    value.push_back(v);
  }
  col_start.push_back(row.size());
  ++cols;
}

std::vector<std::vector<std::int64_t>> SparseMatrix::dense() const {
  std::vector<std::vector<std::int64_t>> m(rows, std::vector<std::int64_t>(cols, 0));
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t e = col_start[j]; e < col_start[j + 1]; ++e) m[row[e]][j] += value[e];
  return m;
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols != b.rows) throw Error("multiply: dimension mismatch");
  SparseMatrix r;
  r.rows = a.rows;
  std::vector<std::int64_t> acc(a.rows, 0);
  std::vector<std::uint32_t> touched;
  std::vector<std::pair<std::uint32_t, std::int64_t>> col;
  for (std::size_t j = 0; j < b.cols; ++j) {
    for (std::size_t e = b.col_start[j]; e < b.col_start[j + 1]; ++e) {
      const std::size_t k = b.row[e];
      for (std::size_t f = a.col_start[k]; f < a.col_start[k + 1]; ++f) {
        const auto i = a.row[f];
        if (acc[i] == 0) touched.push_back(i);
        acc[i] = add(acc[i], mul(a.value[f], b.value[e]));
      }
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    col.clear();
    for (auto i : touched) {
      if (acc[i] != 0) col.emplace_back(i, acc[i]);
      acc[i] = 0;
    }
    touched.clear();
    r.push_column(col);
  }
  return r;
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
  return a.rows == b.rows && a.cols == b.cols && a.col_start == b.col_start && a.row == b.row &&
         a.value == b.value;
}

namespace {

// Sorts by row, sums duplicates, drops zeros.
void normalize_column(std::vector<std::pair<std::uint32_t, std::int64_t>>& col) {
  std::sort(col.begin(), col.end(), [](auto& x, auto& y) { return x.first < y.first; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < col.size();) {
    auto r = col[i].first;
    std::int64_t v = 0;
    for (; i < col.size() && col[i].first == r; ++i) v += col[i].second;
    if (v != 0) col[out++] = {r, v};
  }
  col.resize(out);
}

}  // namespace

ChainComplex chain_complex(const NerveTruncation& nv) {
  const auto& c = *nv.category;
  ChainComplex cx;
  cx.base = 0;
  cx.complete = nv.complete;
  for (int d = 0; d <= nv.max_dim; ++d) cx.ranks.push_back(nv.count(d));
  cx.boundary.resize(nv.max_dim + 1);

  std::vector<std::pair<std::uint32_t, std::int64_t>> col;
  std::vector<MorId> face;
  for (int d = 1; d <= nv.max_dim; ++d) {
    auto& m = cx.boundary[d];
    m.rows = cx.ranks[d - 1];
    const std::size_t n = cx.ranks[d];
    m.row.reserve(n * (d + 1));
    m.value.reserve(n * (d + 1));
    m.col_start.reserve(n + 1);
    auto lookup = [&](std::span<const MorId> ch) -> std::uint32_t {
      auto pos = nv.find(ch);
      if (!pos) throw Error("chain_complex: face missing from the nerve");
      return static_cast<std::uint32_t>(*pos);
    };
    for (std::size_t j = 0; j < n; ++j) {
      auto s = nv.simplex(d, j);
      col.clear();
      if (d == 1) {
        col.emplace_back(c.cod(s[0]), 1);
        col.emplace_back(c.dom(s[0]), -1);
      } else {
        col.emplace_back(lookup(s.subspan(1)), 1);
        for (int i = 1; i < d; ++i) {
          const MorId g = c.compose(s[i], s[i - 1]);
          if (c.is_identity(g)) continue;  // degenerate face
          face.assign(s.begin(), s.end());
          face[i - 1] = g;
          face.erase(face.begin() + i);
          col.emplace_back(lookup(face), i % 2 == 0 ? 1 : -1);
        }
        col.emplace_back(lookup(s.first(d - 1)), d % 2 == 0 ? 1 : -1);
      }
      normalize_column(col);
      m.push_column(col);
    }
  }
  return cx;
}

CheckReport check_boundary_squares(const ChainComplex& cx) {
  CheckReport r;
  for (std::size_t i = 2; i < cx.ranks.size(); ++i) {
    auto sq = multiply(cx.boundary[i - 1], cx.boundary[i]);
    if (sq.nnz() != 0) {
      std::size_t j = 0;
      while (sq.col_start[j + 1] == 0) ++j;
      r.fail("boundary squares to zero", "degree " + std::to_string(cx.base + static_cast<int>(i)) +
                                             ", cell " + std::to_string(j));
    }
  }
  return r;
}

ChainComplex augment(const ChainComplex& cx) {
  if (cx.base != 0) throw Error("augment: complex does not start in degree 0");
  ChainComplex a;
  a.base = -1;
  a.complete = cx.complete;
  a.ranks.push_back(1);
  a.ranks.insert(a.ranks.end(), cx.ranks.begin(), cx.ranks.end());
  a.boundary.resize(1);
  SparseMatrix eps;
  eps.rows = 1;
  const std::pair<std::uint32_t, std::int64_t> one{0, 1};
  for (std::size_t j = 0; j < (cx.ranks.empty() ? 0 : cx.ranks[0]); ++j) eps.push_column({&one, 1});
  a.boundary.push_back(std::move(eps));
  for (std::size_t i = 1; i < cx.boundary.size(); ++i) a.boundary.push_back(cx.boundary[i]);
  return a;
}

}  // namespace fibrep
