#pragma once

#include "fibrep/path_category.hpp"

namespace fibrep {

// Functors between consecutive stages N -> N+1. Transformations whose target
// functor lands one stage up use the stage inclusion as their source functor.

// T: Y |-> Y -id-> Ybar_n <-id- Ybar_n, and theta: inclusion -> T whose
// components are (phi = i |-> i, identities).
struct Shift {
  Functor inclusion;
  Functor shift;
  NatTransformation theta;
};

Shift shift_functor(const PathCategoryStage& lo, const PathCategoryStage& hi);
Shift shift_functor(const ReplacementStage& lo, const ReplacementStage& hi);

// Set-theoretical fiber of f_h over Y at one stage.
Fiber stage_fiber(const ReplacementStage& st, ObjId y);

// In the le variant a morphism with phi = i |-> i between paths of different
// lengths has no image under u_dagger or l_Y (the tail would need arrows out
// of Y' resp. Y into the padded part of the longer path); those entries are
// left as kNone and show up in validate_functor.
//
// For u: Y -> Y' in D:
//   lower  = u_dagger    : F_Y(N)   -> F_Y'(N+1), appends -u-> Y' <-id- Y'
//   upper  = u_dagger_up : F_Y'(M)  -> F_Y(M),   last backward arrow b |-> b∘u
//   theta1 : incl -> upper(N+1) ∘ lower         on F_Y(N)
//   theta2 : lower ∘ upper(N) -> T_f             on F_Y'(N)
struct Transport {
  MorId u = kNone;
  ObjId y = kNone, y2 = kNone;
  Fiber fiber_y_lo, fiber_y_hi, fiber_y2_lo, fiber_y2_hi;
  Functor incl_y, incl_y2;
  Functor lower;
  Functor upper_lo, upper_hi;
  Functor shift_y2;  // T_f restricted to F_Y'(N) -> F_Y'(N+1)
  NatTransformation theta1, theta2;
};

Functor u_dagger(const ReplacementStage& lo, const Fiber& from, const ReplacementStage& hi,
                 const Fiber& to, MorId u);
Functor u_dagger_up(const ReplacementStage& st, const Fiber& from, const Fiber& to, MorId u);
Transport transport(const ReplacementStage& lo, const ReplacementStage& hi, MorId u);

// l_Y: f_h\Y (N) -> F_Y (N+1), (o, s) |-> o ++ "-s-> Y <-id- Y", with
// omega: incl -> j_Y ∘ l_Y and the strict identity l_Y ∘ j_Y = T_f.
struct EllY {
  ObjId y = kNone;
  Fiber fiber_lo, fiber_hi;
  CommaCategory comma_lo, comma_hi;
  Functor comma_inclusion;
  Functor j_lo, j_hi;  // fiber -> comma, o |-> (o, id_Y)
  Functor ell;
  Functor shift_fiber;  // T_f on F_Y (N) -> F_Y (N+1)
  NatTransformation omega;
};

EllY ell_y(const ReplacementStage& lo, const ReplacementStage& hi, ObjId y, const Budget& budget = {});
// l_Y ∘ j_Y = T_f as tables.
CheckReport check_ell_identity(const EllY& e);

}  // namespace fibrep
