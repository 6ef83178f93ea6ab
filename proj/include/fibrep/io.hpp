#pragma once

#include <filesystem>

#include <json.hpp>

#include "fibrep/homology.hpp"
#include "fibrep/path_category.hpp"
#include "fibrep/theorem_b.hpp"

namespace fibrep {

using Json = nlohmann::ordered_json;

// Category documents:
//   {"type": "category", "objects": [..], "morphisms": [{"id","dom","cod"}],
//    "identity": {obj: mor}, "compose": [{"after": f, "then": g, "equals": g∘f}]}
// With "poset": true the table is derived from the morphisms (read as
// relations dom <= cod, closed under transitivity) or from "relations":
// [[a, b], ..]; identities and composites may then be omitted.
CategoryPtr category_from_json(const Json& doc);
Json category_to_json(const FiniteCategory& c);

// Functor documents reference their categories by path (relative to the
// document) or inline:
//   {"type": "functor", "source": ref, "target": ref,
//    "objects": {x: y}, "morphisms": {m: n}}
// "morphisms" may be omitted when the target has at most one morphism per
// pair of objects.
// Transformation documents: {"type": "nat_transformation", "from": ref,
// "to": ref, "components": {x: mor}} with functor refs.
enum class DocumentKind { Category, Functor, NatTransformation };

struct Document {
  DocumentKind kind = DocumentKind::Category;
  std::filesystem::path path;
  CategoryPtr category;
  Functor functor;
  NatTransformation transformation;
};

// Throws InputError with file and field context.
Document load_document(const std::filesystem::path& path);
Document document_from_json(const Json& doc, const std::filesystem::path& base);
CategoryPtr load_category(const std::filesystem::path& path);
Functor load_functor(const std::filesystem::path& path);

Json functor_to_json(const Functor& f, Json source_ref, Json target_ref);
Json nat_trans_to_json(const NatTransformation& h, Json from_ref, Json to_ref);

Json report_to_json(const CheckReport& r);
Json homology_to_json(const std::vector<HomologyGroup>& groups);
// Category plus a "decoding" block (X, zig-zag, phi, components) and the
// maps f_h, q, i.
Json replacement_to_json(const ReplacementStage& st);

// {check, target, stage, degree_bound, verdict, witnesses[..]}
Json theorem_b_to_json(const TheoremBReport& r, const std::string& target);
Json evrard_to_json(const EvrardReport& r, const std::string& target);
// `f` is the functor the search ran on (names the witness object).
Json adjoint_to_json(const AdjointSearchResult& r, const Functor& f);

}  // namespace fibrep
