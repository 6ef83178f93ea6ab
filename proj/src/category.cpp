#include "fibrep/category.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace fibrep {

void CheckReport::fail(std::string law, std::string witness) {
  failures.push_back({std::move(law), std::move(witness)});
}

bool CheckReport::has_failure(std::string_view law) const {
  return std::any_of(failures.begin(), failures.end(),
                     [&](const Failure& f) { return f.law == law; });
}

void CheckReport::absorb(const CheckReport& other, std::string_view context) {
  for (const auto& f : other.failures) {
    if (context.empty())
      failures.push_back(f);
    else
      failures.push_back({std::string(context) + ": " + f.law, f.witness});
  }
  for (const auto& n : other.notes)
    notes.push_back(context.empty() ? n : std::string(context) + ": " + n);
}

std::string CheckReport::summary(std::size_t max_failures) const {
  if (passed()) return "passed";
  std::ostringstream out;
  out << failures.size() << " failure(s)";
  for (std::size_t i = 0; i < failures.size() && i < max_failures; ++i)
    out << "; " << failures[i].law << " " << failures[i].witness;
  if (failures.size() > max_failures) out << "; ...";
  return out.str();
}

void Budget::check(std::size_t count, std::string_view what) const {
  if (count > limit) {
    throw BudgetExceeded(std::string(what) + " exceeds the budget of " +
                         std::to_string(limit) + " (reached " + std::to_string(count) + ")");
  }
}

MorId FiniteCategory::compose(MorId g, MorId f) const {
  ObjId c = morphisms_[f].cod;
  if (c == kNone || morphisms_[g].dom != c) return kNone;
  return table_[table_start_[f] + pos_in_out_[g]];
}

std::span<const MorId> FiniteCategory::outgoing(ObjId x) const {
  return {out_flat_.data() + out_start_[x], out_start_[x + 1] - out_start_[x]};
}

std::span<const MorId> FiniteCategory::incoming(ObjId x) const {
  return {in_flat_.data() + in_start_[x], in_start_[x + 1] - in_start_[x]};
}

std::span<const MorId> FiniteCategory::hom(ObjId x, ObjId y) const {
  auto out = outgoing(x);
  auto lo = std::lower_bound(out.begin(), out.end(), y,
                             [&](MorId f, ObjId v) { return morphisms_[f].cod < v; });
  auto hi = std::upper_bound(lo, out.end(), y,
                             [&](ObjId v, MorId f) { return v < morphisms_[f].cod; });
  return {&*out.begin() + (lo - out.begin()), static_cast<std::size_t>(hi - lo)};
}

std::optional<ObjId> FiniteCategory::find_object(std::string_view id) const {
  auto it = object_index_.find(std::string(id));
  if (it == object_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<MorId> FiniteCategory::find_morphism(std::string_view id) const {
  auto it = morphism_index_.find(std::string(id));
  if (it == morphism_index_.end()) return std::nullopt;
  return it->second;
}

ObjId CategoryBuilder::add_object(std::string id) {
  objects_.push_back(std::move(id));
  return static_cast<ObjId>(objects_.size() - 1);
}

MorId CategoryBuilder::add_morphism(std::string id, ObjId dom, ObjId cod) {
  morphisms_.push_back({std::move(id), dom, cod});
  return static_cast<MorId>(morphisms_.size() - 1);
}

void CategoryBuilder::set_identity(ObjId x, MorId f) { identities_.push_back({x, f}); }

void CategoryBuilder::set_composite(MorId g, MorId f, MorId gf) {
  entries_.push_back({g, f, gf});
}

CategoryPtr CategoryBuilder::build() { return finish(nullptr); }

CategoryPtr CategoryBuilder::build(const std::function<MorId(MorId, MorId)>& composer) {
  return finish(&composer);
}

CategoryPtr CategoryBuilder::finish(const std::function<MorId(MorId, MorId)>* composer) {
  auto c = std::make_shared<FiniteCategory>();
  const auto nobj = static_cast<ObjId>(objects_.size());
  const auto nmor = static_cast<MorId>(morphisms_.size());
  c->objects_ = objects_;
  c->morphisms_ = morphisms_;  // copied: composers may still query the builder
  c->issues_ = std::move(issues_);

  for (ObjId x = 0; x < nobj; ++x) {
    if (!c->object_index_.emplace(c->objects_[x], x).second)
      c->issues_.push_back("duplicate object id '" + c->objects_[x] + "'");
  }
  std::vector<bool> usable(nmor, true);
  for (MorId f = 0; f < nmor; ++f) {
    auto& m = c->morphisms_[f];
    if (!c->morphism_index_.emplace(m.id, f).second)
      c->issues_.push_back("duplicate morphism id '" + m.id + "'");
    if (m.dom < 0 || m.dom >= nobj || m.cod < 0 || m.cod >= nobj) {
      c->issues_.push_back("morphism '" + m.id + "' has a dangling endpoint");
      m.dom = m.dom >= 0 && m.dom < nobj ? m.dom : kNone;
      m.cod = m.cod >= 0 && m.cod < nobj ? m.cod : kNone;
      usable[f] = false;
    }
  }

  c->identities_.assign(nobj, kNone);
  for (auto [x, f] : identities_) {
    if (x < 0 || x >= nobj || f < 0 || f >= nmor) {
      c->issues_.push_back("identity entry refers to an unknown id");
      continue;
    }
    c->identities_[x] = f;
  }

  std::vector<std::vector<MorId>> out(nobj), in(nobj);
  for (MorId f = 0; f < nmor; ++f) {
    if (!usable[f]) continue;
    out[c->morphisms_[f].dom].push_back(f);
    in[c->morphisms_[f].cod].push_back(f);
  }
  c->pos_in_out_.assign(nmor, -1);
  c->out_start_.assign(nobj + 1, 0);
  c->in_start_.assign(nobj + 1, 0);
  for (ObjId x = 0; x < nobj; ++x) {
    std::stable_sort(out[x].begin(), out[x].end(), [&](MorId a, MorId b) {
      return c->morphisms_[a].cod < c->morphisms_[b].cod;
    });
    c->out_start_[x + 1] = c->out_start_[x] + out[x].size();
    c->in_start_[x + 1] = c->in_start_[x] + in[x].size();
    for (std::size_t i = 0; i < out[x].size(); ++i) {
      c->pos_in_out_[out[x][i]] = static_cast<std::int32_t>(i);
      c->out_flat_.push_back(out[x][i]);
    }
    c->in_flat_.insert(c->in_flat_.end(), in[x].begin(), in[x].end());
  }

  c->table_start_.assign(nmor, 0);
  std::size_t total = 0;
  for (MorId f = 0; f < nmor; ++f) {
    c->table_start_[f] = total;
    if (usable[f]) total += out[c->morphisms_[f].cod].size();
  }
  c->table_.assign(total, kNone);

  auto slot = [&](MorId g, MorId f) -> MorId* {
    if (!usable[f] || !usable[g] || c->morphisms_[g].dom != c->morphisms_[f].cod) return nullptr;
    return &c->table_[c->table_start_[f] + c->pos_in_out_[g]];
  };
  for (const auto& e : entries_) {
    if (e.g < 0 || e.g >= nmor || e.f < 0 || e.f >= nmor || e.gf < 0 || e.gf >= nmor) {
      c->issues_.push_back("composition entry refers to an unknown morphism id");
      continue;
    }
    MorId* s = slot(e.g, e.f);
    if (s == nullptr) {
      c->issues_.push_back("composition entry for non-composable pair (" + c->morphisms_[e.g].id +
                           ", " + c->morphisms_[e.f].id + ")");
      continue;
    }
    if (*s != kNone && *s != e.gf)
      c->issues_.push_back("conflicting composition entries for (" + c->morphisms_[e.g].id + ", " +
                           c->morphisms_[e.f].id + ")");
    *s = e.gf;
  }
  if (composer != nullptr) {
    for (MorId f = 0; f < nmor; ++f) {
      if (!usable[f]) continue;
      for (MorId g : out[c->morphisms_[f].cod]) {
        MorId* s = slot(g, f);
        if (*s == kNone) *s = (*composer)(g, f);
      }
    }
  }
  return c;
}

bool same_category(const FiniteCategory& a, const FiniteCategory& b) {
  if (&a == &b) return true;
  if (a.num_objects() != b.num_objects() || a.num_morphisms() != b.num_morphisms()) return false;
  for (ObjId x = 0; x < static_cast<ObjId>(a.num_objects()); ++x) {
    if (a.object_id(x) != b.object_id(x) || a.identity(x) != b.identity(x)) return false;
  }
  for (MorId f = 0; f < static_cast<MorId>(a.num_morphisms()); ++f) {
    const auto& ma = a.morphism(f);
    const auto& mb = b.morphism(f);
    if (ma.id != mb.id || ma.dom != mb.dom || ma.cod != mb.cod) return false;
  }
  for (MorId f = 0; f < static_cast<MorId>(a.num_morphisms()); ++f) {
    if (a.cod(f) == kNone) continue;
    for (MorId g : a.outgoing(a.cod(f)))
      if (a.compose(g, f) != b.compose(g, f)) return false;
  }
  return true;
}

std::string describe_morphism(const FiniteCategory& c, MorId f) {
  const auto& m = c.morphism(f);
  auto name = [&](ObjId x) { return x == kNone ? std::string("?") : c.object_id(x); };
  return m.id + ": " + name(m.dom) + " -> " + name(m.cod);
}

CheckReport validate_category(const FiniteCategory& c) {
  CheckReport r;
  for (const auto& issue : c.load_issues()) r.fail("malformed input", issue);
  const auto nobj = static_cast<ObjId>(c.num_objects());
  const auto nmor = static_cast<MorId>(c.num_morphisms());
  auto pair = [&](MorId g, MorId f) {
    return "(" + c.morphism_id(g) + ", " + c.morphism_id(f) + ")";
  };

  for (ObjId x = 0; x < nobj; ++x) {
    MorId e = c.identity(x);
    if (e == kNone) {
      r.fail("identity missing", c.object_id(x));
    } else if (c.dom(e) != x || c.cod(e) != x) {
      r.fail("identity endpoints", c.object_id(x) + " -> " + c.morphism_id(e));
    }
  }
  bool total = true;
  for (MorId f = 0; f < nmor; ++f) {
    if (c.cod(f) == kNone || c.dom(f) == kNone) continue;
    for (MorId g : c.outgoing(c.cod(f))) {
      MorId gf = c.compose(g, f);
      if (gf == kNone) {
        r.fail("composition undefined", pair(g, f));
        total = false;
      } else if (c.dom(gf) != c.dom(f) || c.cod(gf) != c.cod(g)) {
        r.fail("composite endpoints", pair(g, f) + " = " + c.morphism_id(gf));
        total = false;
      }
    }
  }
  for (MorId f = 0; f < nmor; ++f) {
    if (c.cod(f) == kNone || c.dom(f) == kNone) continue;
    MorId ic = c.identity(c.cod(f));
    MorId id = c.identity(c.dom(f));
    if (ic != kNone && c.dom(ic) == c.cod(f) && c.compose(ic, f) != f)
      r.fail("left unit law", pair(ic, f));
    if (id != kNone && c.cod(id) == c.dom(f) && c.compose(f, id) != f)
      r.fail("right unit law", pair(f, id));
  }
  if (!total) {
    r.note("associativity not checked: composition table is not total");
    return r;
  }
  std::size_t reported = 0;
  for (MorId f = 0; f < nmor; ++f) {
    if (c.cod(f) == kNone || c.dom(f) == kNone) continue;
    for (MorId g : c.outgoing(c.cod(f))) {
      MorId gf = c.compose(g, f);
      for (MorId h : c.outgoing(c.cod(g))) {
        if (c.compose(h, gf) != c.compose(c.compose(h, g), f)) {
          if (++reported <= 100)
            r.fail("associativity", "(" + c.morphism_id(h) + ", " + c.morphism_id(g) + ", " +
                                        c.morphism_id(f) + ")");
        }
      }
    }
  }
  if (reported > 100) r.note(std::to_string(reported) + " associativity failures in total");
  return r;
}

}  // namespace fibrep
