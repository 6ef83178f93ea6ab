#include "fibrep/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "fibrep/standard.hpp"

namespace fibrep {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& what) {
  throw InputError("field '" + field + "': " + what);
}

const Json& member(const Json& doc, const std::string& key, const std::string& ctx) {
  if (!doc.is_object()) bad(ctx, "expected an object");
  auto it = doc.find(key);
  if (it == doc.end()) bad(ctx.empty() ? key : ctx + "." + key, "missing");
  return *it;
}

std::string str(const Json& v, const std::string& field) {
  if (!v.is_string()) bad(field, "expected a string");
  return v.get<std::string>();
}

ObjId object_ref(const std::map<std::string, ObjId>& index, const Json& v, const std::string& field) {
  const auto name = str(v, field);
  auto it = index.find(name);
  if (it == index.end()) bad(field, "unknown object '" + name + "'");
  return it->second;
}

MorId morphism_ref(const FiniteCategory& c, const Json& v, const std::string& field) {
  const auto name = str(v, field);
  auto m = c.find_morphism(name);
  if (!m) bad(field, "unknown morphism '" + name + "'");
  return *m;
}

ObjId object_ref(const FiniteCategory& c, const Json& v, const std::string& field) {
  const auto name = str(v, field);
  auto x = c.find_object(name);
  if (!x) bad(field, "unknown object '" + name + "'");
  return *x;
}

std::vector<std::string> object_names(const Json& doc) {
  const auto& objs = member(doc, "objects", "");
  if (!objs.is_array()) bad("objects", "expected an array");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < objs.size(); ++i) names.push_back(str(objs[i], "objects[" + std::to_string(i) + "]"));
  return names;
}

CategoryPtr poset_from_json(const Json& doc) {
  const auto names = object_names(doc);
  std::map<std::string, ObjId> index;
  for (std::size_t i = 0; i < names.size(); ++i) index.emplace(names[i], static_cast<ObjId>(i));
  std::vector<std::pair<std::string, std::string>> rel;
  std::map<std::pair<ObjId, ObjId>, std::string> given;  // user ids for relations
  if (doc.contains("morphisms")) {
    const auto& ms = doc["morphisms"];
    if (!ms.is_array()) bad("morphisms", "expected an array");
    for (std::size_t i = 0; i < ms.size(); ++i) {
      const std::string ctx = "morphisms[" + std::to_string(i) + "]";
      const ObjId a = object_ref(index, member(ms[i], "dom", ctx), ctx + ".dom");
      const ObjId b = object_ref(index, member(ms[i], "cod", ctx), ctx + ".cod");
      rel.emplace_back(names[a], names[b]);
      if (ms[i].contains("id")) given[{a, b}] = str(ms[i]["id"], ctx + ".id");
    }
  }
  if (doc.contains("relations")) {
    const auto& rs = doc["relations"];
    if (!rs.is_array()) bad("relations", "expected an array of pairs");
    for (std::size_t i = 0; i < rs.size(); ++i) {
      const std::string ctx = "relations[" + std::to_string(i) + "]";
      if (!rs[i].is_array() || rs[i].size() != 2) bad(ctx, "expected a pair");
      const ObjId a = object_ref(index, rs[i][0], ctx + "[0]");
      const ObjId b = object_ref(index, rs[i][1], ctx + "[1]");
      rel.emplace_back(names[a], names[b]);
    }
  }
  if (doc.contains("identity")) {
    const auto& ids = doc["identity"];
    if (!ids.is_object()) bad("identity", "expected an object");
    for (auto it = ids.begin(); it != ids.end(); ++it) {
      const ObjId x = object_ref(index, Json(it.key()), "identity");
      given[{x, x}] = str(it.value(), "identity." + it.key());
    }
  }
  const auto closed = poset_category(names, rel);
  if (given.empty()) return closed;
  // Same table, relabelled with the ids the document chose.
  CategoryBuilder b;
  for (const auto& n : names) b.add_object(n);
  for (MorId m = 0; m < static_cast<MorId>(closed->num_morphisms()); ++m) {
    auto it = given.find({closed->dom(m), closed->cod(m)});
    b.add_morphism(it == given.end() ? closed->morphism_id(m) : it->second, closed->dom(m), closed->cod(m));
  }
  for (ObjId x = 0; x < static_cast<ObjId>(names.size()); ++x) b.set_identity(x, closed->identity(x));
  return b.build([&](MorId g, MorId f) { return closed->compose(g, f); });
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw InputError(p.string() + ": cannot open");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Json parse_file(const fs::path& p) {
  const auto text = read_file(p);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // Translate the byte offset into a line/column for the message.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError(p.string() + ":" + std::to_string(line) + ":" + std::to_string(col) + ": invalid JSON");
  }
}

DocumentKind kind_of(const Json& doc) {
  if (!doc.is_object()) bad("", "document must be a JSON object");
  if (doc.contains("type")) {
    const auto t = str(doc["type"], "type");
    if (t == "category") return DocumentKind::Category;
    if (t == "functor") return DocumentKind::Functor;
    if (t == "nat_transformation") return DocumentKind::NatTransformation;
    bad("type", "unknown document type '" + t + "'");
  }
  if (doc.contains("components")) return DocumentKind::NatTransformation;
  if (doc.contains("source")) return DocumentKind::Functor;
  return DocumentKind::Category;
}

// A reference is a path relative to `base` or an inline document.
Document resolve(const Json& ref, const fs::path& base, DocumentKind want, const std::string& field) {
  Document d;
  if (ref.is_string()) {
    fs::path p = ref.get<std::string>();
    if (p.is_relative()) p = base / p;
    d = load_document(p);
  } else if (ref.is_object()) {
    try {
      d = document_from_json(ref, base);
    } catch (const InputError& e) {
      throw InputError(field + ": " + e.what());
    }
  } else {
    bad(field, "expected a path or an inline document");
  }
  if (d.kind != want) bad(field, "refers to a document of the wrong type");
  return d;
}

Functor functor_from_json(const Json& doc, const fs::path& base) {
  Functor f;
  f.source = resolve(member(doc, "source", ""), base, DocumentKind::Category, "source").category;
  f.target = resolve(member(doc, "target", ""), base, DocumentKind::Category, "target").category;
  const auto& s = *f.source;
  const auto& t = *f.target;
  f.on_objects.assign(s.num_objects(), kNone);
  f.on_morphisms.assign(s.num_morphisms(), kNone);
  const auto& objs = member(doc, "objects", "");
  if (!objs.is_object()) bad("objects", "expected an object map");
  for (auto it = objs.begin(); it != objs.end(); ++it) {
    const ObjId x = object_ref(s, Json(it.key()), "objects");
    f.on_objects[x] = object_ref(t, it.value(), "objects." + it.key());
  }
  if (doc.contains("morphisms")) {
    const auto& ms = doc["morphisms"];
    if (!ms.is_object()) bad("morphisms", "expected an object map");
    for (auto it = ms.begin(); it != ms.end(); ++it) {
      const MorId m = morphism_ref(s, Json(it.key()), "morphisms");
      f.on_morphisms[m] = morphism_ref(t, it.value(), "morphisms." + it.key());
    }
  } else {
    // Thin target: the morphism map is forced by the object map.
    for (MorId m = 0; m < static_cast<MorId>(s.num_morphisms()); ++m) {
      const ObjId a = f.on_objects[s.dom(m)], b = f.on_objects[s.cod(m)];
      if (a == kNone || b == kNone) continue;
      auto h = t.hom(a, b);
      if (h.size() > 1) bad("morphisms", "required: the target has parallel morphisms");
      if (h.size() == 1) f.on_morphisms[m] = h.front();
    }
  }
  return f;
}

NatTransformation nat_from_json(const Json& doc, const fs::path& base) {
  NatTransformation h;
  h.from = resolve(member(doc, "from", ""), base, DocumentKind::Functor, "from").functor;
  h.to = resolve(member(doc, "to", ""), base, DocumentKind::Functor, "to").functor;
  const auto& s = *h.from.source;
  const auto& t = *h.from.target;
  h.components.assign(s.num_objects(), kNone);
  const auto& cs = member(doc, "components", "");
  if (!cs.is_object()) bad("components", "expected an object map");
  for (auto it = cs.begin(); it != cs.end(); ++it) {
    const ObjId x = object_ref(s, Json(it.key()), "components");
    h.components[x] = morphism_ref(t, it.value(), "components." + it.key());
  }
  return h;
}

Json names(const FiniteCategory& c, const std::vector<ObjId>& xs) {
  Json a = Json::array();
  for (ObjId x : xs) a.push_back(x == kNone ? Json() : Json(c.object_id(x)));
  return a;
}

Json morphism_names(const FiniteCategory& c, std::span<const MorId> ms) {
  Json a = Json::array();
  for (MorId m : ms) a.push_back(m == kNone ? Json() : Json(c.morphism_id(m)));
  return a;
}

Json functor_maps(const Functor& f) {
  Json j = Json::object();
  Json o = Json::object(), m = Json::object();
  for (ObjId x = 0; x < static_cast<ObjId>(f.on_objects.size()); ++x)
    o[f.source->object_id(x)] = f.obj(x) == kNone ? Json() : Json(f.target->object_id(f.obj(x)));
  for (MorId g = 0; g < static_cast<MorId>(f.on_morphisms.size()); ++g)
    m[f.source->morphism_id(g)] = f.mor(g) == kNone ? Json() : Json(f.target->morphism_id(f.mor(g)));
  j["objects"] = std::move(o);
  j["morphisms"] = std::move(m);
  return j;
}

}  // namespace

CategoryPtr category_from_json(const Json& doc) {
  if (doc.contains("poset") && doc["poset"].is_boolean() && doc["poset"].get<bool>()) return poset_from_json(doc);
  const auto onames = object_names(doc);
  std::map<std::string, ObjId> index;
  CategoryBuilder b;
  for (const auto& n : onames) index.emplace(n, b.add_object(n));
  const auto& ms = member(doc, "morphisms", "");
  if (!ms.is_array()) bad("morphisms", "expected an array");
  std::map<std::string, MorId> mindex;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const std::string ctx = "morphisms[" + std::to_string(i) + "]";
    const auto id = str(member(ms[i], "id", ctx), ctx + ".id");
    const ObjId a = object_ref(index, member(ms[i], "dom", ctx), ctx + ".dom");
    const ObjId c = object_ref(index, member(ms[i], "cod", ctx), ctx + ".cod");
    mindex.emplace(id, b.add_morphism(id, a, c));
  }
  auto mref = [&](const Json& v, const std::string& field) {
    const auto name = str(v, field);
    auto it = mindex.find(name);
    if (it == mindex.end()) bad(field, "unknown morphism '" + name + "'");
    return it->second;
  };
  if (doc.contains("identity")) {
    const auto& ids = doc["identity"];
    if (!ids.is_object()) bad("identity", "expected an object");
    for (auto it = ids.begin(); it != ids.end(); ++it)
      b.set_identity(object_ref(index, Json(it.key()), "identity"), mref(it.value(), "identity." + it.key()));
  }
  if (doc.contains("compose")) {
    const auto& cs = doc["compose"];
    if (!cs.is_array()) bad("compose", "expected an array");
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const std::string ctx = "compose[" + std::to_string(i) + "]";
      const MorId f = mref(member(cs[i], "after", ctx), ctx + ".after");
      const MorId g = mref(member(cs[i], "then", ctx), ctx + ".then");
      const MorId gf = mref(member(cs[i], "equals", ctx), ctx + ".equals");
      b.set_composite(g, f, gf);
    }
  }
  // Composites with an identity are implied; everything else must be listed.
  std::vector<bool> is_id(ms.size(), false);
  if (doc.contains("identity"))
    for (auto it = doc["identity"].begin(); it != doc["identity"].end(); ++it)
      is_id[mindex.at(it.value().get<std::string>())] = true;
  return b.build([&](MorId g, MorId f) -> MorId {
    if (is_id[g]) return f;
    if (is_id[f]) return g;
    return kNone;
  });
}

Json category_to_json(const FiniteCategory& c) {
  Json j;
  j["type"] = "category";
  Json objs = Json::array();
  for (const auto& o : c.object_ids()) objs.push_back(o);
  j["objects"] = std::move(objs);
  Json ms = Json::array();
  for (MorId m = 0; m < static_cast<MorId>(c.num_morphisms()); ++m)
    ms.push_back(Json{{"id", c.morphism_id(m)},
                      {"dom", c.dom(m) == kNone ? Json() : Json(c.object_id(c.dom(m)))},
                      {"cod", c.cod(m) == kNone ? Json() : Json(c.object_id(c.cod(m)))}});
  j["morphisms"] = std::move(ms);
  Json ids = Json::object();
  for (ObjId x = 0; x < static_cast<ObjId>(c.num_objects()); ++x)
    if (c.identity(x) != kNone) ids[c.object_id(x)] = c.morphism_id(c.identity(x));
  j["identity"] = std::move(ids);
  Json comp = Json::array();
  for (MorId f = 0; f < static_cast<MorId>(c.num_morphisms()); ++f) {
    if (c.cod(f) == kNone || c.is_identity(f)) continue;
    for (MorId g : c.outgoing(c.cod(f))) {
      if (c.is_identity(g)) continue;
      const MorId gf = c.compose(g, f);
      if (gf == kNone) continue;
      comp.push_back(Json{{"after", c.morphism_id(f)}, {"then", c.morphism_id(g)}, {"equals", c.morphism_id(gf)}});
    }
  }
  j["compose"] = std::move(comp);
  return j;
}

Document document_from_json(const Json& doc, const fs::path& base) {
  Document d;
  d.kind = kind_of(doc);
  switch (d.kind) {
    case DocumentKind::Category:
      d.category = category_from_json(doc);
      break;
    case DocumentKind::Functor:
      d.functor = functor_from_json(doc, base);
      break;
    case DocumentKind::NatTransformation:
      d.transformation = nat_from_json(doc, base);
      break;
  }
  return d;
}

Document load_document(const fs::path& path) {
  const Json doc = parse_file(path);
  try {
    auto d = document_from_json(doc, path.parent_path());
    d.path = path;
    return d;
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  } catch (const Error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

CategoryPtr load_category(const fs::path& path) {
  auto d = load_document(path);
  if (d.kind != DocumentKind::Category) throw InputError(path.string() + ": not a category document");
  return d.category;
}

Functor load_functor(const fs::path& path) {
  auto d = load_document(path);
  if (d.kind != DocumentKind::Functor) throw InputError(path.string() + ": not a functor document");
  return d.functor;
}

Json functor_to_json(const Functor& f, Json source_ref, Json target_ref) {
  Json j;
  j["type"] = "functor";
  j["source"] = std::move(source_ref);
  j["target"] = std::move(target_ref);
  auto maps = functor_maps(f);
  j["objects"] = std::move(maps["objects"]);
  j["morphisms"] = std::move(maps["morphisms"]);
  return j;
}

Json nat_trans_to_json(const NatTransformation& h, Json from_ref, Json to_ref) {
  Json j;
  j["type"] = "nat_transformation";
  j["from"] = std::move(from_ref);
  j["to"] = std::move(to_ref);
  Json cs = Json::object();
  for (ObjId x = 0; x < static_cast<ObjId>(h.components.size()); ++x)
    cs[h.from.source->object_id(x)] =
        h.components[x] == kNone ? Json() : Json(h.from.target->morphism_id(h.components[x]));
  j["components"] = std::move(cs);
  return j;
}

Json report_to_json(const CheckReport& r) {
  Json j;
  j["passed"] = r.passed();
  Json fs_ = Json::array();
  for (const auto& f : r.failures) fs_.push_back(Json{{"law", f.law}, {"witness", f.witness}});
  j["failures"] = std::move(fs_);
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j;
}

Json homology_to_json(const std::vector<HomologyGroup>& groups) {
  Json a = Json::array();
  for (const auto& g : groups) {
    Json t = Json::array();
    for (const auto& v : g.torsion) t.push_back(v.str());
    a.push_back(Json{{"degree", g.degree}, {"betti", g.betti}, {"torsion", std::move(t)}, {"truncated", g.truncated}});
  }
  return a;
}

Json replacement_to_json(const ReplacementStage& st) {
  const auto& c = *st.category();
  const auto& cs = *st.f.source;
  const auto& d = *st.f.target;
  Json j = category_to_json(c);
  j["stage"] = Json{{"max_stage", st.max_stage}, {"variant", to_string(st.variant)}};
  Json objs = Json::object();
  for (ObjId o = 0; o < static_cast<ObjId>(c.num_objects()); ++o) {
    const auto& p = st.path(o);
    objs[c.object_id(o)] = Json{{"x", cs.object_id(st.x_of(o))},
                                {"length", st.length(o)},
                                {"path", names(d, p.objects)},
                                {"arrows", morphism_names(d, p.arrows)}};
  }
  Json mors = Json::object();
  for (MorId m = 0; m < static_cast<MorId>(c.num_morphisms()); ++m)
    mors[c.morphism_id(m)] = Json{{"w", cs.morphism_id(st.w_of(m))},
                                  {"phi", st.phi(m).values},
                                  {"components", morphism_names(d, st.components(m))}};
  j["decoding"] = Json{{"objects", std::move(objs)}, {"morphisms", std::move(mors)}};
  j["f_h"] = functor_maps(st.f_h);
  j["q"] = functor_maps(st.q);
  j["i"] = functor_maps(st.i);
  return j;
}

Json theorem_b_to_json(const TheoremBReport& r, const std::string& target) {
  Json j;
  j["check"] = r.check + (r.dual ? " (dual)" : "");
  j["target"] = target;
  j["stage"] = r.stage.empty() ? Json() : Json(r.stage);
  j["degree_bound"] = r.degree;
  j["verdict"] = r.passed() ? "pass" : "fail";
  Json w = Json::array();
  const auto& d = *r.f.target;
  for (const auto& e : r.entries) {
    Json x;
    x["v"] = describe_morphism(d, e.v);
    x["forced"] = e.forced;
    x["source_objects"] = e.source_objects;
    x["target_objects"] = e.target_objects;
    x["quasi_iso"] = report_to_json(e.quasi_iso);
    w.push_back(std::move(x));
  }
  j["witnesses"] = std::move(w);
  return j;
}

Json evrard_to_json(const EvrardReport& r, const std::string& target) {
  Json j;
  j["check"] = "evrard-replacement";
  j["target"] = target;
  j["stage"] = Json{{"max_stage", r.max_stage},
                    {"variant", to_string(r.variant)},
                    {"objects", r.stage_objects},
                    {"morphisms", r.stage_morphisms}};
  j["degree_bound"] = r.degree;
  j["verdict"] = to_string(r.verdict);
  Json w = Json::array();
  w.push_back(Json{{"layer", "strict"}, {"report", report_to_json(r.strict)}});
  w.push_back(Json{{"layer", "witnesses"}, {"report", report_to_json(r.witnesses)}});
  w.push_back(Json{{"layer", "homological"},
                   {"stage", r.homological.stage},
                   {"answers", r.homological.answers},
                   {"theorem_b", theorem_b_to_json(r.homological.theorem_b, target)},
                   {"report", report_to_json(r.homological.report)}});
  if (r.probe.stage != 0)
    w.push_back(Json{{"layer", "stability"},
                     {"stage", r.probe.stage},
                     {"answers", r.probe.answers},
                     {"report", report_to_json(r.stability)}});
  j["witnesses"] = std::move(w);
  return j;
}

Json adjoint_to_json(const AdjointSearchResult& r, const Functor& f) {
  Json j;
  j["side"] = r.right ? "right" : "left";
  j["found"] = r.found;
  if (r.found) {
    j["adjoint"] = functor_maps(r.adjoint);
    Json u = Json::object();
    for (ObjId y = 0; y < static_cast<ObjId>(r.universal.size()); ++y)
      u[r.adjoint.source->object_id(y)] = r.adjoint.source->morphism_id(r.universal[y]);
    j[r.right ? "counit" : "unit"] = std::move(u);
    j["report"] = report_to_json(r.report);
  } else if (r.witness != kNone) {
    j["witness"] = f.target->object_id(r.witness);
  }
  return j;
}

}  // namespace fibrep
