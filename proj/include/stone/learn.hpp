#pragma once

#include "stone/builder.hpp"
#include "stone/instance.hpp"

namespace stone {

// Per (non-source vertex, stone) progress of the three-stage learning of the
// clause {~p(i,j), r(j)}, plus the first proof occurrence of each learned
// artifact so later uses can be lemma leaves.
//
// Stage 1 learns the clauses {~p(i',j'), ~p(i'',j''), ~p(i,j), r(j)} (one per
// stone pair), stage 2 the clauses {~p(i'',j''), ~p(i,j), r(j)}, stage 3 the
// clause {~p(i,j), r(j)} itself.
struct LearnState {
  struct Cell {
    int level = 0;  // 0..3
    ProofBuilder::Id clause_node = ProofBuilder::kNone;
    std::vector<ProofBuilder::Id> stage1;  // (j'-1)*m + (j''-1)
    std::vector<ProofBuilder::Id> stage2;  // j''-1
  };
  int n = 0, m = 0;
  std::vector<Cell> cells;

  LearnState() = default;
  LearnState(int n, int m) : n(n), m(m), cells(n * m) {
    for (Cell& c : cells) {
      c.stage1.assign(m * m, ProofBuilder::kNone);
      c.stage2.assign(m, ProofBuilder::kNone);
    }
  }

  Cell& cell(int i, int j) { return cells[(i - 1) * m + (j - 1)]; }
  const Cell& cell(int i, int j) const { return cells[(i - 1) * m + (j - 1)]; }

  // Sources are 3-learned by definition.
  int level(const StoneInstance& inst, int i, int j) const {
    return inst.is_source(i) ? 3 : cell(i, j).level;
  }
  bool vertex_3learned(const StoneInstance& inst, int i) const {
    if (inst.is_source(i)) return true;
    for (int j = 1; j <= m; ++j)
      if (cell(i, j).level < 3) return false;
    return true;
  }

  // Leaf for a use of {~p(i,j), r(j)}: a source clause axiom or a lemma
  // pointing at the learned occurrence.
  ProofBuilder::Id learned_ref(ProofBuilder& B, const StoneInstance& inst, int i,
                               int j) const;
};

enum class LearnMode {
  Inline,  // derive every stage in place (regWRTL)
  Staged   // perform only the stages above the current level and advance it
};

// Derivation of {~p(i,j), r(j)} from the instance clauses and the learned
// predecessor clauses. Both predecessors of i must be 3-learned.
ProofBuilder::Id build_learn(ProofBuilder& B, const StoneInstance& inst, int i, int j,
                             LearnState& state, LearnMode mode);

// Variant with side stones: derives {~r(s) : s in side} + {~p(i,j), r(j)} and
// never resolves on the side stones' r-variables. Does not touch levels.
ProofBuilder::Id build_learn_side(ProofBuilder& B, const StoneInstance& inst, int i,
                                  int j, const std::vector<int>& side,
                                  LearnState& state);

}  // namespace stone
