#include "fibrep/zigzag.hpp"

#include <algorithm>
#include <functional>

namespace fibrep {

std::string to_string(Variant v) { return v == Variant::Strict ? "str" : "le"; }

Variant parse_variant(std::string_view text) {
  if (text == "str") return Variant::Strict;
  if (text == "le") return Variant::Ordered;
  throw InputError("unknown variant '" + std::string(text) + "' (expected str or le)");
}

MonotoneMap identity_map(int n) { return inclusion_map(n, n); }

MonotoneMap inclusion_map(int m, int n) {
  MonotoneMap phi{m, n, {}};
  for (int i = 1; i <= m; ++i) phi.values.push_back(i);
  return phi;
}

MonotoneMap compose_maps(const MonotoneMap& psi, const MonotoneMap& phi) {
  if (phi.n != psi.m) throw Error("compose_maps: arity mismatch");
  MonotoneMap r{phi.m, psi.n, {}};
  for (int i = 1; i <= phi.m; ++i) r.values.push_back(psi(phi(i)));
  return r;
}

MonotoneMap extend_last(const MonotoneMap& phi) {
  MonotoneMap r = phi;
  r.m += 1;
  r.n += 1;
  r.values.push_back(r.n);
  return r;
}

bool is_admissible(const MonotoneMap& phi, Variant v) {
  if (phi.m < 1 || phi.n < 1 || static_cast<int>(phi.values.size()) != phi.m) return false;
  for (int i = 1; i <= phi.m; ++i) {
    if (phi(i) < 1 || phi(i) > phi.n) return false;
    if (i > 1 && phi(i) <= phi(i - 1)) return false;
    if (v == Variant::Ordered && phi(i) != i) return false;
  }
  return true;
}

std::string to_string(const MonotoneMap& phi) {
  std::string s = "[" + std::to_string(phi.m) + "]->[" + std::to_string(phi.n) + "](";
  for (int i = 1; i <= phi.m; ++i) s += (i > 1 ? "," : "") + std::to_string(phi(i));
  return s + ")";
}

std::vector<int> position_map(const MonotoneMap& phi) {
  std::vector<int> pm(2 * phi.n + 1, 0);
  int k = 0;  // number of source indices with phi(k) <= current j
  for (int j = 1; j <= phi.n; ++j) {
    if (k < phi.m && phi(k + 1) == j) {
      ++k;
      pm[2 * j - 1] = 2 * k - 1;
    } else {
      pm[2 * j - 1] = 2 * k;
    }
    pm[2 * j] = 2 * k;
  }
  return pm;
}

std::optional<MorId> IndexCategory::find(const MonotoneMap& phi) const {
  auto id = category->find_morphism(to_string(phi));
  if (!id) return std::nullopt;
  return *id;
}

IndexCategory build_index_category(Variant v, int max_stage) {
  if (max_stage < 1) throw InputError("stage must be at least 1");
  IndexCategory ic;
  ic.variant = v;
  ic.max_stage = max_stage;
  CategoryBuilder b;
  for (int n = 1; n <= max_stage; ++n) b.add_object("[" + std::to_string(n) + "]");
  for (int m = 1; m <= max_stage; ++m)
    for (int n = m; n <= max_stage; ++n) {
      // all strictly increasing value sequences, lexicographic
      std::vector<int> vals(m);
      std::function<void(int, int)> rec = [&](int i, int lo) {
        if (i == m) {
          MonotoneMap phi{m, n, vals};
          if (!is_admissible(phi, v)) return;
          MorId id = b.add_morphism(to_string(phi), m - 1, n - 1);
          if (m == n) b.set_identity(m - 1, id);
          ic.maps.push_back(std::move(phi));
          return;
        }
        for (int x = lo; x <= n - (m - 1 - i); ++x) {
          vals[i] = x;
          rec(i + 1, x + 1);
        }
      };
      rec(0, 1);
    }
  std::unordered_map<std::string, MorId> index;
  for (MorId f = 0; f < static_cast<MorId>(ic.maps.size()); ++f) index.emplace(to_string(ic.maps[f]), f);
  ic.category = b.build([&](MorId g, MorId f) {
    return index.at(to_string(compose_maps(ic.maps[g], ic.maps[f])));
  });
  return ic;
}

std::string zigzag_id(const FiniteCategory& d, const ZigZag& y) {
  std::string s = d.object_id(y.objects[0]);
  for (std::size_t p = 0; p + 1 < y.objects.size(); ++p) {
    if (p % 2 == 0)
      s += " -" + d.morphism_id(y.arrows[p]) + "-> " + d.object_id(y.objects[p + 1]);
    else
      s += " <-" + d.morphism_id(y.arrows[p]) + "- " + d.object_id(y.objects[p + 1]);
  }
  return s;
}

CheckReport validate_zigzag(const FiniteCategory& d, const ZigZag& y) {
  CheckReport r;
  if (y.objects.size() < 3 || y.objects.size() % 2 == 0 || y.arrows.size() + 1 != y.objects.size()) {
    r.fail("zig-zag shape", "needs 2n+1 objects and 2n arrows with n >= 1");
    return r;
  }
  for (std::size_t p = 0; p < y.arrows.size(); ++p) {
    const ObjId from = p % 2 == 0 ? y.objects[p] : y.objects[p + 1];
    const ObjId to = p % 2 == 0 ? y.objects[p + 1] : y.objects[p];
    MorId a = y.arrows[p];
    if (a < 0 || a >= static_cast<MorId>(d.num_morphisms()) || d.dom(a) != from || d.cod(a) != to)
      r.fail("zig-zag arrow endpoints", "arrow " + std::to_string(p));
  }
  return r;
}

ZigZag constant_zigzag(const FiniteCategory& d, ObjId x, int n) {
  ZigZag y;
  y.objects.assign(2 * n + 1, x);
  y.arrows.assign(2 * n, d.identity(x));
  return y;
}

bool is_zigzag_morphism(const FiniteCategory& d, const ZigZag& s, const ZigZag& t,
                        std::span<const MorId> c) {
  if (s.objects.size() != t.objects.size() || c.size() != s.objects.size()) return false;
  for (std::size_t p = 0; p < c.size(); ++p)
    if (d.dom(c[p]) != s.objects[p] || d.cod(c[p]) != t.objects[p]) return false;
  for (std::size_t p = 0; p < s.arrows.size(); ++p) {
    // bar position b, mid position m
    const std::size_t b = p % 2 == 0 ? p : p + 1;
    const std::size_t m = p % 2 == 0 ? p + 1 : p;
    if (d.compose(c[m], s.arrows[p]) != d.compose(t.arrows[p], c[b])) return false;
  }
  return true;
}

ZigZag lambda_phi(const FiniteCategory& d, const MonotoneMap& phi, const ZigZag& y) {
  if (y.length() != phi.m) throw Error("lambda_phi: arity mismatch");
  const auto pm = position_map(phi);
  ZigZag r;
  r.objects.reserve(pm.size());
  for (int s : pm) r.objects.push_back(y.objects[s]);
  for (std::size_t p = 0; p + 1 < pm.size(); ++p)
    r.arrows.push_back(pm[p] == pm[p + 1] ? d.identity(y.objects[pm[p]])
                                          : y.arrows[std::min(pm[p], pm[p + 1])]);
  return r;
}

std::vector<MorId> lambda_phi_morphism(const MonotoneMap& phi, std::span<const MorId> t) {
  if (static_cast<int>(t.size()) != 2 * phi.m + 1) throw Error("lambda_phi_morphism: arity mismatch");
  std::vector<MorId> r;
  for (int s : position_map(phi)) r.push_back(t[s]);
  return r;
}

ZigZag shift_zigzag(const FiniteCategory& d, const ZigZag& y) {
  ZigZag r = y;
  const ObjId last = y.objects.back();
  r.objects.push_back(last);
  r.objects.push_back(last);
  r.arrows.push_back(d.identity(last));
  r.arrows.push_back(d.identity(last));
  return r;
}

namespace {

std::string raw_key(const ZigZag& y) {
  return std::string(reinterpret_cast<const char*>(y.arrows.data()), y.arrows.size() * sizeof(MorId)) +
         std::string(reinterpret_cast<const char*>(y.objects.data()), sizeof(ObjId));
}

std::string components_id(const FiniteCategory& d, std::span<const MorId> c) {
  std::string s = "{";
  for (std::size_t p = 0; p < c.size(); ++p) s += (p ? "," : "") + d.morphism_id(c[p]);
  return s + "}";
}

void enumerate_zigzags(const FiniteCategory& d, int n, const Budget& budget, std::vector<ZigZag>& out) {
  ZigZag cur;
  cur.objects.resize(2 * n + 1);
  cur.arrows.resize(2 * n);
  std::function<void(int)> rec = [&](int p) {  // position p (bar) is filled
    if (p == 2 * n) {
      out.push_back(cur);
      budget.check(out.size(), "zig-zag enumeration");
      return;
    }
    for (MorId a : d.outgoing(cur.objects[p])) {
      cur.arrows[p] = a;
      cur.objects[p + 1] = d.cod(a);
      for (MorId b : d.incoming(d.cod(a))) {
        cur.arrows[p + 1] = b;
        cur.objects[p + 2] = d.dom(b);
        rec(p + 2);
      }
    }
  };
  for (ObjId x = 0; x < static_cast<ObjId>(d.num_objects()); ++x) {
    cur.objects[0] = x;
    rec(0);
  }
}

LambdaN assemble(CategoryPtr d, int n, std::vector<ZigZag> zigzags, const Budget& budget) {
  const auto& dc = *d;
  LambdaN l;
  l.base = d;
  l.n = n;
  l.zigzags = std::move(zigzags);
  CategoryBuilder b;
  std::vector<std::string> names;
  for (ObjId o = 0; o < static_cast<ObjId>(l.zigzags.size()); ++o) {
    if (l.zigzags[o].length() != n || !validate_zigzag(dc, l.zigzags[o]).passed())
      throw InputError("build_lambda_n: invalid zig-zag");
    names.push_back(zigzag_id(dc, l.zigzags[o]));
    b.add_object(names.back());
    if (!l.index.emplace(raw_key(l.zigzags[o]), o).second)
      throw InputError("build_lambda_n: repeated zig-zag " + names.back());
  }
  // In a thin base the components already determine source and target.
  bool thin = true;
  for (ObjId x = 0; x < static_cast<ObjId>(dc.num_objects()) && thin; ++x)
    for (MorId a : dc.outgoing(x))
      if (dc.hom(x, dc.cod(a)).size() > 1) {
        thin = false;
        break;
      }
  const int w = 2 * n + 1;
  std::unordered_map<std::int64_t, std::vector<MorId>> local_hom;  // until the category exists
  std::vector<MorId> comp(w);
  std::vector<std::span<const MorId>> homs(w);
  for (ObjId s = 0; s < static_cast<ObjId>(l.zigzags.size()); ++s) {
    const auto& ys = l.zigzags[s];
    for (ObjId t = 0; t < static_cast<ObjId>(l.zigzags.size()); ++t) {
      const auto& yt = l.zigzags[t];
      bool possible = true;
      for (int p = 0; p < w && possible; ++p) {
        homs[p] = dc.hom(ys.objects[p], yt.objects[p]);
        possible = !homs[p].empty();
      }
      if (!possible) continue;
      // components chosen left to right; the square of arrow p-1 is checked
      // as soon as position p is set
      std::function<void(int)> rec = [&](int p) {
        if (p == w) {
          MorId m = b.add_morphism(thin ? components_id(dc, comp)
                                        : components_id(dc, comp) + ":" + names[s] + "=>" + names[t],
                                   s, t);
          l.component_table.insert(l.component_table.end(), comp.begin(), comp.end());
          local_hom[(static_cast<std::int64_t>(s) << 32) | t].push_back(m);
          if (s == t && std::all_of(comp.begin(), comp.end(), [&](MorId c) { return dc.is_identity(c); }))
            b.set_identity(s, m);
          return;
        }
        for (MorId c : homs[p]) {
          comp[p] = c;
          if (p > 0) {
            const int a = p - 1;
            const int bar = a % 2 == 0 ? a : a + 1;
            const int mid = a % 2 == 0 ? a + 1 : a;
            if (dc.compose(comp[mid], ys.arrows[a]) != dc.compose(yt.arrows[a], comp[bar])) continue;
          }
          rec(p + 1);
        }
      };
      rec(0);
    }
    budget.check(b.num_morphisms(), "path category morphisms");
  }
  l.category = b.build([&](MorId g, MorId f) {
    std::vector<MorId> c(w);
    for (int p = 0; p < w; ++p) c[p] = dc.compose(l.components(g)[p], l.components(f)[p]);
    auto it = local_hom.find((static_cast<std::int64_t>(b.dom(f)) << 32) | b.cod(g));
    if (it == local_hom.end()) return kNone;
    for (MorId m : it->second) {
      auto cm = l.components(m);
      if (std::equal(cm.begin(), cm.end(), c.begin())) return m;
    }
    return kNone;
  });
  l.p0 = Functor{l.category, d, {}, {}};
  l.p1 = Functor{l.category, d, {}, {}};
  for (const auto& y : l.zigzags) {
    l.p0.on_objects.push_back(y.objects.front());
    l.p1.on_objects.push_back(y.objects.back());
  }
  for (MorId m = 0; m < static_cast<MorId>(l.category->num_morphisms()); ++m) {
    l.p0.on_morphisms.push_back(l.components(m).front());
    l.p1.on_morphisms.push_back(l.components(m).back());
  }
  return l;
}

}  // namespace

std::optional<ObjId> LambdaN::find(const ZigZag& y) const {
  if (y.length() != n) return std::nullopt;
  auto it = index.find(raw_key(y));
  if (it == index.end()) return std::nullopt;
  return it->second;
}

std::optional<MorId> LambdaN::find_morphism(ObjId s, ObjId t, std::span<const MorId> comps) const {
  for (MorId m : category->hom(s, t)) {
    auto c = components(m);
    if (std::equal(c.begin(), c.end(), comps.begin(), comps.end())) return m;
  }
  return std::nullopt;
}

LambdaN build_lambda_n(CategoryPtr d, int n, const Budget& budget) {
  if (n < 1) throw InputError("build_lambda_n: n must be at least 1");
  std::vector<ZigZag> zs;
  enumerate_zigzags(*d, n, budget, zs);
  return assemble(std::move(d), n, std::move(zs), budget);
}

LambdaN build_lambda_n_on(CategoryPtr d, int n, const std::vector<ZigZag>& objects, const Budget& budget) {
  if (n < 1) throw InputError("build_lambda_n: n must be at least 1");
  return assemble(std::move(d), n, objects, budget);
}

Functor lambda_functor(const LambdaN& source, const LambdaN& target, const MonotoneMap& phi) {
  if (phi.m != source.n || phi.n != target.n) throw Error("lambda_functor: arity mismatch");
  const auto& d = *source.base;
  Functor f{source.category, target.category, {}, {}};
  for (const auto& y : source.zigzags) {
    auto o = target.find(lambda_phi(d, phi, y));
    if (!o) throw Error("lambda_functor: image zig-zag missing from the target");
    f.on_objects.push_back(*o);
  }
  const auto& sc = *source.category;
  for (MorId m = 0; m < static_cast<MorId>(sc.num_morphisms()); ++m) {
    auto c = lambda_phi_morphism(phi, source.components(m));
    auto r = target.find_morphism(f.on_objects[sc.dom(m)], f.on_objects[sc.cod(m)], c);
    if (!r) throw Error("lambda_functor: image morphism missing from the target");
    f.on_morphisms.push_back(*r);
  }
  return f;
}

}  // namespace fibrep
