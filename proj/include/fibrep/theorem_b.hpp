#pragma once

#include <optional>

#include "fibrep/path_category.hpp"

namespace fibrep {

// An object T with exactly one morphism X -> T from every X (dually X <- T);
// hom_sizes[X] lists |C(X, T)| (resp. |C(T, X)|).
struct ExtremalObject {
  ObjId object = kNone;
  std::vector<std::size_t> hom_sizes;
};

std::optional<ExtremalObject> find_terminal(const FiniteCategory& c);
std::optional<ExtremalObject> find_initial(const FiniteCategory& c);

// Adjoint of F: C -> D assembled from universal arrows. For a right adjoint G,
// universal[d] is the counit F(G d) -> d, terminal in F\d, and unit[c] is
// c -> G F c; for a left adjoint L, universal[d] is the unit d -> F(L d),
// initial in d\F, and unit[c] is the counit L F c -> c. When the search fails,
// `witness` is an object d of D whose comma category has no terminal (initial)
// object.
struct AdjointSearchResult {
  bool found = false;
  bool right = true;
  Functor adjoint;
  std::vector<MorId> universal;
  std::vector<MorId> unit;
  ObjId witness = kNone;
  CheckReport report;  // adjoint functoriality, naturality and triangle identities
};

AdjointSearchResult find_right_adjoint(const Functor& f, const Budget& budget = {});
AdjointSearchResult find_left_adjoint(const Functor& f, const Budget& budget = {});

// Per object Y of D: the fiber f^{-1}Y, the comma category (Y\f when
// prefibred is asked, f\Y otherwise), the inclusion i_Y (resp. j_Y) and the
// adjoint search on it.
struct FibredSearch {
  Functor f;
  bool cofibred = false;
  std::vector<Fiber> fibers;
  std::vector<CommaCategory> commas;
  std::vector<Functor> inclusions;
  std::vector<AdjointSearchResult> adjoints;
  ObjId witness = kNone;  // first Y without an adjoint

  bool found() const { return witness == kNone; }
};

FibredSearch is_prefibred(const Functor& f, const Budget& budget = {});
FibredSearch is_precofibred(const Functor& f, const Budget& budget = {});

// v* = R_Y ∘ [v*] ∘ i_Y' : f^{-1}Y' -> f^{-1}Y, and
// v_* = L_Y' ∘ [v_*] ∘ j_Y : f^{-1}Y -> f^{-1}Y'. Throw Error naming the
// missing adjoint when the search did not find it.
Functor base_change(const FibredSearch& prefibred, MorId v, const Budget& budget = {});
Functor cobase_change(const FibredSearch& precofibred, MorId v, const Budget& budget = {});

struct TheoremBEntry {
  MorId v = kNone;
  bool forced = false;  // identity of D, [id*] = id
  std::size_t source_objects = 0, target_objects = 0;
  CheckReport quasi_iso;
};

struct TheoremBReport {
  std::string check;
  Functor f;
  int degree = 0;
  bool dual = false;  // [v_*]: f\Y -> f\Y' instead of [v*]: Y'\f -> Y\f
  std::string stage;  // truncation metadata, empty for plain functors
  std::vector<TheoremBEntry> entries;

  bool passed() const;
  CheckReport summary() const;  // failures of the entries, prefixed by v
};

struct TheoremBOptions {
  int degree = 2;
  bool dual = false;
  bool allow_loops = false;  // skip the loop-free check on the target
  Budget budget;
};

TheoremBReport check_theorem_b_hypothesis(const Functor& f, const TheoremBOptions& opt = {});
// Base (dual: cobase) change functors are homology isomorphisms through the
// degree; throws Error "not prefibred" / "not precofibred" with the witness.
TheoremBReport check_corollary_hypothesis(const Functor& f, const TheoremBOptions& opt = {});

enum class Verdict { Pass, Fail, Unstable };
std::string to_string(Verdict v);

// Homological answers at one stage, compared verbatim by the stability probe.
struct HomologicalLayer {
  int stage = 0;
  TheoremBReport theorem_b;
  CheckReport q_quasi_iso;
  std::vector<CheckReport> lambda_quasi_iso;  // p1 on Lambda_n D, n = 1..stage
  std::vector<std::string> answers;           // one line per check: "<name> pass|fail"
  CheckReport report;
};

struct EvrardReport {
  Functor f;
  int max_stage = 2;
  int degree = 1;
  Variant variant = Variant::Strict;
  std::size_t stage_objects = 0, stage_morphisms = 0;
  CheckReport strict;      // q∘i = id, f_h∘i = f, pullback square, l_Y∘j_Y = T_f
  CheckReport witnesses;   // T/theta, transports, l_Y/omega, iq witness
  HomologicalLayer homological;
  HomologicalLayer probe;  // the same at max_stage + 1
  CheckReport stability;   // answers that changed between N and N+1
  Verdict verdict = Verdict::Fail;
};

struct EvrardOptions {
  int max_stage = 2;
  int degree = 1;
  Variant variant = Variant::Strict;
  bool probe = true;
  Budget budget;
};

EvrardReport verify_evrard_replacement(const Functor& f, const EvrardOptions& opt = {});

}  // namespace fibrep
