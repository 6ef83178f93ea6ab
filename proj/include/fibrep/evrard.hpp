#pragma once

#include "fibrep/path_category.hpp"

namespace fibrep {

// H: C1 -> Lambda_n C2 (or a full subcategory of it) with p0∘H = f and
// p1∘H = g. Only fixed-length witnesses are represented.
struct EvrardHomotopy {
  Functor f, g;
  std::shared_ptr<const LambdaN> host;
  Functor h;
};

CheckReport check_evrard_homotopy(const EvrardHomotopy& w);

// The 2n+1 positional functors C1 -> C2 of a witness and the 2n
// transformations between neighbours: forward arrows give
// position 2i-2 -> 2i-1, backward arrows give position 2i -> 2i-1.
struct TransformationChain {
  std::vector<Functor> functors;
  std::vector<NatTransformation> transformations;
};

TransformationChain witness_to_nat_trans_chain(const EvrardHomotopy& w);

// n = 1 witness f(X) -h_X-> g(X) <-id- g(X) for h: f -> g.
EvrardHomotopy witness_from_transformation(const NatTransformation& h, const Budget& budget = {});
// Constant witness certifying f ~ f.
EvrardHomotopy constant_witness(const Functor& f, const Budget& budget = {});

// On Lambda_n D: the rewriter Y |-> constant zig-zag on Ybar_0.
Functor constant_start_functor(const LambdaN& l);

// Y_(0) -a-> Y^(1) <-b- Y_(1) -> ... -> Y^(n) <-b- Y_(n): an Evrard homotopy
// from the constant-start rewriter to the identity of Lambda_n D, hosted in
// Lambda_n(Lambda_n D) restricted to its image.
EvrardHomotopy contraction_witness(const LambdaN& l, const Budget& budget = {});

// The same ladder on the replacement stage, from i∘q to the identity, with
// the constant path on f(X) as starting point; length N+1. Lookups that the
// stage cannot host are reported as failures in `issues`.
struct IqWitness {
  EvrardHomotopy witness;
  CheckReport issues;
  bool built() const { return issues.passed(); }
};

IqWitness iq_homotopy_witness(const ReplacementStage& st, const Budget& budget = {});

}  // namespace fibrep
