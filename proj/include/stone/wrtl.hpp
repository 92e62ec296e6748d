#pragma once

#include "stone/learn.hpp"
#include "stone/proof.hpp"

namespace stone {

// Refutation built around a skeleton of n segments, one per non-source
// vertex; the m cells of segment i learn the clauses {~p(i,j), r(j)} in
// subproofs hanging off the segment's spine. w-inferences appear only where
// a segment has to learn two clauses in one cell.
Proof build_regwrtl(const StoneInstance& inst);

// The right branch above a typical cell (i, j), before its resolution with
// the sink clause of stone m: derives {~r(j), ~p(i-1,m), r(m)}, plus
// {~p(i,j)} when i is a predecessor of i-1.
ProofBuilder::Id build_right_side(ProofBuilder& B, const StoneInstance& inst, int i,
                                  int j, LearnState& state);

}  // namespace stone
