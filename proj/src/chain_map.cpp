#include <algorithm>

#include "fibrep/homology.hpp"

namespace fibrep {

namespace {

using Entry = std::pair<std::uint32_t, std::int64_t>;

SparseMatrix identity_matrix(std::size_t n) {
  SparseMatrix m;
  m.rows = n;
  for (std::size_t j = 0; j < n; ++j) {
    const Entry e{static_cast<std::uint32_t>(j), 1};
    m.push_column({&e, 1});
  }
  return m;
}

SparseMatrix combine(const SparseMatrix& a, const SparseMatrix& b, std::int64_t sb) {
  SparseMatrix r;
  r.rows = a.rows;
  std::vector<Entry> col;
  for (std::size_t j = 0; j < a.cols; ++j) {
    col.clear();
    for (std::size_t e = a.col_start[j]; e < a.col_start[j + 1]; ++e) col.emplace_back(a.row[e], a.value[e]);
    for (std::size_t e = b.col_start[j]; e < b.col_start[j + 1]; ++e)
      col.emplace_back(b.row[e], mul(sb, b.value[e]));
    std::sort(col.begin(), col.end(), [](auto& x, auto& y) { return x.first < y.first; });
    std::vector<Entry> merged;
    for (const auto& [rw, v] : col) {
      if (!merged.empty() && merged.back().first == rw)
        merged.back().second = add(merged.back().second, v);
      else
        merged.emplace_back(rw, v);
    }
    std::erase_if(merged, [](const Entry& x) { return x.second == 0; });
    r.push_column(merged);
  }
  return r;
}

std::string describe(const std::vector<HomologyGroup>& hs, int d) {
  for (const auto& h : hs)
    if (h.degree == d) return to_string(h);
  return "0";
}

}  // namespace

ChainMap induced_chain_map(const Functor& f, const NerveTruncation& sn, const NerveTruncation& tn,
                           const ChainComplex& source, const ChainComplex& target) {
  ChainMap m;
  m.source = &source;
  m.target = &target;
  const auto& t = *f.target;
  const int top = std::min(sn.max_dim, tn.max_dim);
  std::vector<MorId> image;
  for (int d = 0; d <= top; ++d) {
    SparseMatrix mat;
    mat.rows = tn.count(d);
    for (std::size_t j = 0; j < sn.count(d); ++j) {
      if (d == 0) {
        const Entry e{static_cast<std::uint32_t>(f.obj(static_cast<ObjId>(j))), 1};
        mat.push_column({&e, 1});
        continue;
      }
      image.clear();
      bool degenerate = false;
      for (MorId g : sn.simplex(d, j)) {
        const MorId h = f.mor(g);
        if (t.is_identity(h)) {
          degenerate = true;
          break;
        }
        image.push_back(h);
      }
      if (degenerate) {
        mat.push_column({});
        continue;
      }
      auto pos = tn.find(image);
      if (!pos) throw Error("induced_chain_map: image chain missing from the target nerve");
      const Entry e{static_cast<std::uint32_t>(*pos), 1};
      mat.push_column({&e, 1});
    }
    m.degree.push_back(std::move(mat));
  }
  return m;
}

InducedMap induced_chain_map(const Functor& f, int k) {
  InducedMap r;
  r.source_nerve = nerve(f.source, k);
  r.target_nerve = nerve(f.target, k);
  r.source = chain_complex(r.source_nerve);
  r.target = chain_complex(r.target_nerve);
  r.map = induced_chain_map(f, r.source_nerve, r.target_nerve, r.source, r.target);
  return r;
}

CheckReport check_chain_map(const ChainMap& m) {
  CheckReport r;
  const auto& s = *m.source;
  const auto& t = *m.target;
  for (std::size_t i = 1; i < m.degree.size(); ++i) {
    // d' F_i = F_{i-1} d
    auto left = multiply(t.boundary[i], m.degree[i]);
    auto right = multiply(m.degree[i - 1], s.boundary[i]);
    if (!(left == right)) r.fail("chain map commutes with boundaries", "degree " + std::to_string(s.base + static_cast<int>(i)));
  }
  return r;
}

namespace {

ChainMap augment_map(const ChainMap& m, const ChainComplex& as, const ChainComplex& at) {
  ChainMap a;
  a.source = &as;
  a.target = &at;
  a.degree.push_back(identity_matrix(1));
  for (const auto& d : m.degree) a.degree.push_back(d);
  return a;
}

// Cone_d = A_{d-1} (+) B_d, d(a, b) = (-da, Fa + db). Both complexes and the
// map must share the same base; the cone covers degrees base .. top.
ChainComplex mapping_cone(const ChainMap& m, int top) {
  const auto& a = *m.source;
  const auto& b = *m.target;
  ChainComplex c;
  c.base = b.base;
  c.complete = a.complete && b.complete && top >= std::max(a.top() + 1, b.top());
  for (int d = c.base; d <= top; ++d) c.ranks.push_back(a.rank(d - 1) + b.rank(d));
  c.boundary.resize(1);
  std::vector<Entry> col;
  for (int d = c.base + 1; d <= top; ++d) {
    SparseMatrix mat;
    mat.rows = c.ranks[d - 1 - c.base];
    const std::size_t a_rows = a.rank(d - 2);  // rows of A_{d-2}, then B_{d-1}
    // A_{d-1} columns
    for (std::size_t j = 0; j < a.rank(d - 1); ++j) {
      col.clear();
      if (d - 1 > a.base) {
        const auto& da = a.boundary[d - 1 - a.base];
        for (std::size_t e = da.col_start[j]; e < da.col_start[j + 1]; ++e)
          col.emplace_back(da.row[e], -da.value[e]);
      }
      if (static_cast<std::size_t>(d - 1 - a.base) < m.degree.size()) {
        const auto& fm = m.degree[d - 1 - a.base];
        for (std::size_t e = fm.col_start[j]; e < fm.col_start[j + 1]; ++e)
          col.emplace_back(static_cast<std::uint32_t>(a_rows + fm.row[e]), fm.value[e]);
      }
      mat.push_column(col);
    }
    for (std::size_t j = 0; j < b.rank(d); ++j) {
      const auto& db = b.boundary[d - b.base];
      col.clear();
      for (std::size_t e = db.col_start[j]; e < db.col_start[j + 1]; ++e)
        col.emplace_back(static_cast<std::uint32_t>(a_rows + db.row[e]), db.value[e]);
      mat.push_column(col);
    }
    c.boundary.push_back(std::move(mat));
  }
  return c;
}

void require_degree(const ChainComplex& cx, int needed, const char* what) {
  if (cx.top() < needed && !cx.complete)
    throw Error(std::string(what) + ": truncation too small (needs degree " + std::to_string(needed) +
                " data, have " + std::to_string(cx.top()) + ")");
}

}  // namespace

CheckReport is_quasi_iso(const ChainMap& m, int k) {
  require_degree(*m.source, k + 1, "is_quasi_iso");
  require_degree(*m.target, k + 1, "is_quasi_iso");
  CheckReport r;
  const auto as = augment(*m.source);
  const auto at = augment(*m.target);
  auto am = augment_map(m, as, at);
  // The cone needs A up to k and B up to k + 1.
  const auto cone = mapping_cone(am, k + 1);
  const auto hc = raw_homology(cone, k);
  for (const auto& h : hc)
    if (!h.is_zero())
      r.fail("cone homology", "reduced H" + std::to_string(h.degree) + "(cone) = " + to_string(h));
  const auto ha = homology(*m.source, k);
  const auto hb = homology(*m.target, k);
  const auto sa = describe(ha, k), sb = describe(hb, k);
  if (sa != sb) r.fail("H" + std::to_string(k) + " mismatch", sa + " vs " + sb);
  r.note("homology isomorphism through degree " + std::to_string(k) +
         " (a necessary condition for a homotopy equivalence, not a proof of one)");
  return r;
}

CheckReport is_quasi_iso(const Functor& f, int k) {
  auto im = induced_chain_map(f, k + 1);
  return is_quasi_iso(im.map, k);
}

namespace {

// Integer column echelon form of a dense matrix; returns pivot rows and
// optionally the unimodular column transform (m * v = echelon).
struct Echelon {
  std::vector<std::vector<BigInt>> e;  // rows x cols
  std::vector<std::vector<BigInt>> v;  // cols x cols
  std::vector<std::size_t> pivot_row;  // per pivot column t (columns 0..rank-1)
};

Echelon column_echelon(std::vector<std::vector<BigInt>> m, std::size_t rows, std::size_t cols, bool track) {
  Echelon out;
  if (track) {
    out.v.assign(cols, std::vector<BigInt>(cols, 0));
    for (std::size_t j = 0; j < cols; ++j) out.v[j][j] = 1;
  }
  auto col_op = [&](std::size_t dst, std::size_t src, const BigInt& q) {  // col dst -= q col src
    for (std::size_t i = 0; i < rows; ++i)
      if (m[i][src] != 0) m[i][dst] -= q * m[i][src];
    if (track)
      for (std::size_t i = 0; i < cols; ++i)
        if (out.v[i][src] != 0) out.v[i][dst] -= q * out.v[i][src];
  };
  auto col_swap = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    for (std::size_t i = 0; i < rows; ++i) std::swap(m[i][x], m[i][y]);
    if (track)
      for (std::size_t i = 0; i < cols; ++i) std::swap(out.v[i][x], out.v[i][y]);
  };
  std::size_t t = 0;
  for (std::size_t r = 0; r < rows && t < cols; ++r) {
    for (;;) {
      std::size_t best = cols;
      for (std::size_t j = t; j < cols; ++j)
        if (m[r][j] != 0 && (best == cols || abs(m[r][j]) < abs(m[r][best]))) best = j;
      if (best == cols) break;
      col_swap(t, best);
      bool done = true;
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m[r][j] == 0) continue;
        col_op(j, t, m[r][j] / m[r][t]);
        if (m[r][j] != 0) done = false;
      }
      if (done) {
        out.pivot_row.push_back(r);
        ++t;
        break;
      }
    }
  }
  out.e = std::move(m);
  return out;
}

std::vector<std::vector<BigInt>> to_big(const SparseMatrix& s) {
  std::vector<std::vector<BigInt>> m(s.rows, std::vector<BigInt>(s.cols, 0));
  for (std::size_t j = 0; j < s.cols; ++j)
    for (std::size_t e = s.col_start[j]; e < s.col_start[j + 1]; ++e) m[s.row[e]][j] += s.value[e];
  return m;
}

constexpr std::size_t kDenseLimit = 6000;

}  // namespace

CheckReport chain_maps_agree_on_homology(const ChainMap& a, const ChainMap& b, int k) {
  const auto& s = *a.source;
  const auto& t = *a.target;
  require_degree(s, k, "nat_trans_homology_agreement");
  require_degree(t, k + 1, "nat_trans_homology_agreement");
  CheckReport r;
  for (int d = 0; d <= k; ++d) {
    if (s.rank(d) == 0) continue;
    if (s.rank(d) > kDenseLimit || t.rank(d + 1) > kDenseLimit || t.rank(d) > kDenseLimit)
      throw BudgetExceeded("nat_trans_homology_agreement: complex too large in degree " + std::to_string(d));
    const auto diff = combine(a.degree[d], b.degree[d], -1);
    // cycles of the source
    std::vector<std::vector<BigInt>> cycles;  // each of length rank_d
    if (d == 0) {
      for (std::size_t j = 0; j < s.rank(0); ++j) {
        std::vector<BigInt> z(s.rank(0), 0);
        z[j] = 1;
        cycles.push_back(std::move(z));
      }
    } else {
      const auto& bd = s.boundary[d];
      auto ech = column_echelon(to_big(bd), bd.rows, bd.cols, true);
      for (std::size_t j = ech.pivot_row.size(); j < bd.cols; ++j) {
        std::vector<BigInt> z(bd.cols);
        for (std::size_t i = 0; i < bd.cols; ++i) z[i] = ech.v[i][j];
        cycles.push_back(std::move(z));
      }
    }
    // boundaries of the target
    Echelon im;
    const std::size_t rows = t.rank(d);
    if (d + 1 <= t.top()) {
      const auto& bd = t.boundary[d + 1 - t.base];
      im = column_echelon(to_big(bd), bd.rows, bd.cols, false);
    }
    for (std::size_t zi = 0; zi < cycles.size(); ++zi) {
      std::vector<BigInt> y(rows, 0);
      const auto& z = cycles[zi];
      for (std::size_t j = 0; j < diff.cols; ++j) {
        if (z[j] == 0) continue;
        for (std::size_t e = diff.col_start[j]; e < diff.col_start[j + 1]; ++e) y[diff.row[e]] += z[j] * diff.value[e];
      }
      bool member = true;
      for (std::size_t p = 0; p < im.pivot_row.size() && member; ++p) {
        const std::size_t rw = im.pivot_row[p];
        if (y[rw] == 0) continue;
        if (y[rw] % im.e[rw][p] != 0) {
          member = false;
          break;
        }
        const BigInt q = y[rw] / im.e[rw][p];
        for (std::size_t i = 0; i < rows; ++i)
          if (im.e[i][p] != 0) y[i] -= q * im.e[i][p];
      }
      if (member)
        member = std::all_of(y.begin(), y.end(), [](const BigInt& x) { return x == 0; });
      if (!member) {
        r.fail("induced maps differ on homology", "degree " + std::to_string(d) + ", cycle " + std::to_string(zi));
        break;
      }
    }
  }
  r.note("agreement of induced maps on homology through degree " + std::to_string(k));
  return r;
}

CheckReport nat_trans_homology_agreement(const NatTransformation& h, int k) {
  CheckReport r;
  auto v = validate_nat_trans(h);
  if (!v.passed()) {
    r.absorb(v, "transformation");
    return r;
  }
  auto sn = nerve(h.from.source, k);
  auto tn = nerve(h.from.target, k + 1);
  auto sc = chain_complex(sn);
  auto tc = chain_complex(tn);
  auto a = induced_chain_map(h.from, sn, tn, sc, tc);
  auto b = induced_chain_map(h.to, sn, tn, sc, tc);
  r.absorb(chain_maps_agree_on_homology(a, b, k));
  return r;
}

}  // namespace fibrep
