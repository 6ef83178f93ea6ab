#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace fibrep {

using ObjId = std::int32_t;
using MorId = std::int32_t;
inline constexpr std::int32_t kNone = -1;

struct Failure {
  std::string law;
  std::string witness;
};

// Evidence for any verification; passed() iff no failures were recorded.
struct CheckReport {
  std::vector<Failure> failures;
  std::vector<std::string> notes;

  bool passed() const { return failures.empty(); }
  void fail(std::string law, std::string witness);
  void note(std::string text) { notes.push_back(std::move(text)); }
  bool has_failure(std::string_view law) const;
  // Appends another report's failures/notes, prefixing each law with `context`.
  void absorb(const CheckReport& other, std::string_view context = {});
  std::string summary(std::size_t max_failures = 5) const;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input that cannot be interpreted (bad JSON, unknown ids in a request, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

// A construction refused because its precondition check failed.
class CheckFailed : public Error {
 public:
  CheckFailed(const std::string& what, CheckReport report)
      : Error(what + ": " + report.summary()), report_(std::move(report)) {}
  const CheckReport& report() const { return report_; }

 private:
  CheckReport report_;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// Upper bound on enumerated morphisms (or simplices) of one construction.
struct Budget {
  std::size_t limit = 200000;
  void check(std::size_t count, std::string_view what) const;
};

class FiniteCategory {
 public:
  struct Morphism {
    std::string id;
    ObjId dom = kNone;
    ObjId cod = kNone;
  };

  std::size_t num_objects() const { return objects_.size(); }
  std::size_t num_morphisms() const { return morphisms_.size(); }

  const std::string& object_id(ObjId x) const { return objects_[x]; }
  const std::vector<std::string>& object_ids() const { return objects_; }
  const Morphism& morphism(MorId f) const { return morphisms_[f]; }
  const std::string& morphism_id(MorId f) const { return morphisms_[f].id; }
  ObjId dom(MorId f) const { return morphisms_[f].dom; }
  ObjId cod(MorId f) const { return morphisms_[f].cod; }

  // kNone when the identity was never declared.
  MorId identity(ObjId x) const { return identities_[x]; }
  bool is_identity(MorId f) const {
    ObjId d = morphisms_[f].dom;
    return d != kNone && identities_[d] == f;
  }

  // g∘f; kNone when not composable or missing from the table.
  MorId compose(MorId g, MorId f) const;

  // Morphisms out of / into x; outgoing is sorted by codomain.
  std::span<const MorId> outgoing(ObjId x) const;
  std::span<const MorId> incoming(ObjId x) const;
  std::span<const MorId> hom(ObjId x, ObjId y) const;
  // Index of f inside outgoing(dom f).
  std::size_t position_in_outgoing(MorId f) const { return static_cast<std::size_t>(pos_in_out_[f]); }

  std::optional<ObjId> find_object(std::string_view id) const;
  std::optional<MorId> find_morphism(std::string_view id) const;

  // Problems detected while loading (dangling/duplicate ids, table entries for
  // non-composable pairs). validate_category reports them as failures.
  const std::vector<std::string>& load_issues() const { return issues_; }

 private:
  friend class CategoryBuilder;

  std::vector<std::string> objects_;
  std::vector<Morphism> morphisms_;
  std::vector<MorId> identities_;
  std::vector<MorId> out_flat_, in_flat_;
  std::vector<std::size_t> out_start_, in_start_;
  std::vector<std::int32_t> pos_in_out_;       // index of f inside outgoing(dom f)
  std::vector<std::size_t> table_start_;       // per f: row into table_
  std::vector<MorId> table_;                   // table_[start(f) + pos(g)] = g∘f
  std::unordered_map<std::string, ObjId> object_index_;
  std::unordered_map<std::string, MorId> morphism_index_;
  std::vector<std::string> issues_;
};

using CategoryPtr = std::shared_ptr<const FiniteCategory>;

class CategoryBuilder {
 public:
  ObjId add_object(std::string id);
  MorId add_morphism(std::string id, ObjId dom, ObjId cod);
  void set_identity(ObjId x, MorId f);
  void set_composite(MorId g, MorId f, MorId gf);
  void add_issue(std::string issue) { issues_.push_back(std::move(issue)); }

  std::size_t num_objects() const { return objects_.size(); }
  std::size_t num_morphisms() const { return morphisms_.size(); }
  ObjId dom(MorId f) const { return morphisms_[f].dom; }
  ObjId cod(MorId f) const { return morphisms_[f].cod; }

  // Finalize with only the composites set explicitly.
  CategoryPtr build();
  // Finalize, filling every composable pair from composer(g, f).
  CategoryPtr build(const std::function<MorId(MorId g, MorId f)>& composer);

 private:
  CategoryPtr finish(const std::function<MorId(MorId, MorId)>* composer);

  std::vector<std::string> objects_;
  std::vector<FiniteCategory::Morphism> morphisms_;
  std::vector<std::pair<ObjId, MorId>> identities_;
  struct Entry {
    MorId g, f, gf;
  };
  std::vector<Entry> entries_;
  std::vector<std::string> issues_;
};

// Pointer identity or equal tables (ids, dom/cod, identities, composition).
bool same_category(const FiniteCategory& a, const FiniteCategory& b);

CheckReport validate_category(const FiniteCategory& c);

std::string describe_morphism(const FiniteCategory& c, MorId f);

}  // namespace fibrep
