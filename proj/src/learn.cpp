#include "stone/learn.hpp"

#include <algorithm>

namespace stone {

namespace {

void ensure(bool cond, BuildError::Code code, const std::string& msg) {
  if (!cond) throw BuildError(code, msg);
}

struct LearnCtx {
  ProofBuilder& B;
  const StoneInstance& inst;
  int i, j;
  int ip, ipp;  // predecessors of i, ip < ipp
  std::vector<char> side;  // indexed by stone; stones whose r stays negated
  LearnState& state;

  const StoneVarMap& V() const { return inst.vars; }
  int m() const { return inst.m; }

  ProofBuilder::Id ax(int idx) { return B.axiom(idx, inst.cnf.clauses[idx - 1]); }
  ProofBuilder::Id ref(int v, int s) { return state.learned_ref(B, inst, v, s); }

  // stage 1 clause for the stone pair (jp on ip, jpp on ipp)
  ProofBuilder::Id stage1_node(int jp, int jpp) {
    ProofBuilder::Id t = ax(inst.induction_axiom(i, jp, jpp, j));
    if (jp == jpp) {
      // one step suffices; the ip-side clause is used
      if (side[jp]) return t;
      return B.res(ref(ip, jp), t, V().r(jp));
    }
    if (!side[jp]) t = B.res(ref(ip, jp), t, V().r(jp));
    if (!side[jpp]) t = B.res(ref(ipp, jpp), t, V().r(jpp));
    return t;
  }

  // stage 2 clause for jpp: ladder over the cover clause of ip
  ProofBuilder::Id stage2_node(int jpp, bool lemma_stage1, bool record_stage1) {
    ProofBuilder::Id acc = ax(inst.cover_axiom(ip));
    for (int jp = m(); jp >= 1; --jp) {
      ProofBuilder::Id rhs;
      if (jp == j) {
        rhs = ref(ip, j);
      } else if (lemma_stage1) {
        ProofBuilder::Id src = state.cell(i, j).stage1[(jp - 1) * m() + (jpp - 1)];
        ensure(src != ProofBuilder::kNone, BuildError::Code::Internal,
               "stage-1 clause not recorded");
        rhs = B.lemma(src);
      } else {
        rhs = stage1_node(jp, jpp);
        if (record_stage1) state.cell(i, j).stage1[(jp - 1) * m() + (jpp - 1)] = rhs;
      }
      acc = B.res(acc, rhs, V().p(ip, jp));
    }
    return acc;
  }

  ProofBuilder::Id stage3_node(bool lemma_stage2, bool lemma_stage1, bool record_stage1,
                               bool record_stage2) {
    ProofBuilder::Id acc = ax(inst.cover_axiom(ipp));
    for (int jpp = m(); jpp >= 1; --jpp) {
      ProofBuilder::Id rhs;
      if (jpp == j) {
        rhs = ref(ipp, j);
      } else if (lemma_stage2) {
        ProofBuilder::Id src = state.cell(i, j).stage2[jpp - 1];
        ensure(src != ProofBuilder::kNone, BuildError::Code::Internal,
               "stage-2 clause not recorded");
        rhs = B.lemma(src);
      } else {
        rhs = stage2_node(jpp, lemma_stage1, record_stage1);
        if (record_stage2) state.cell(i, j).stage2[jpp - 1] = rhs;
      }
      acc = B.res(acc, rhs, V().p(ipp, jpp));
    }
    return acc;
  }
};

LearnCtx make_ctx(ProofBuilder& B, const StoneInstance& inst, int i, int j,
                  const std::vector<int>& side, LearnState& state) {
  ensure(!inst.is_source(i), BuildError::Code::MalformedClause,
         "cannot learn a source clause");
  ensure(j >= 1 && j <= inst.m, BuildError::Code::MalformedClause, "stone out of range");
  const auto [ip, ipp] = inst.graph.pred_pair(i);
  ensure(state.vertex_3learned(inst, ip) && state.vertex_3learned(inst, ipp),
         BuildError::Code::PredecessorNotLearned,
         "predecessors of " + std::to_string(i) + " are not 3-learned");
  LearnCtx ctx{B, inst, i, j, ip, ipp, std::vector<char>(inst.m + 1, 0), state};
  for (int s : side) {
    ensure(s != j, BuildError::Code::SideContainsTarget, "side stones contain the target");
    ensure(s >= 1 && s <= inst.m, BuildError::Code::MalformedClause, "side stone range");
    ctx.side[s] = 1;
  }
  return ctx;
}

}  // namespace

ProofBuilder::Id LearnState::learned_ref(ProofBuilder& B, const StoneInstance& inst,
                                         int i, int j) const {
  if (inst.is_source(i))
    return B.axiom(inst.source_axiom(i, j), inst.cnf.clauses[inst.source_axiom(i, j) - 1]);
  const Cell& c = cell(i, j);
  if (c.clause_node == ProofBuilder::kNone)
    throw BuildError(BuildError::Code::PredecessorNotLearned,
                     "clause for vertex " + std::to_string(i) + ", stone " +
                         std::to_string(j) + " not learned yet");
  return B.lemma(c.clause_node);
}

ProofBuilder::Id build_learn(ProofBuilder& B, const StoneInstance& inst, int i, int j,
                             LearnState& state, LearnMode mode) {
  LearnCtx ctx = make_ctx(B, inst, i, j, {}, state);
  if (mode == LearnMode::Inline) {
    ProofBuilder::Id root = ctx.stage3_node(false, false, false, false);
    LearnState::Cell& c = state.cell(i, j);
    if (c.clause_node == ProofBuilder::kNone) {
      c.clause_node = root;
      c.level = 3;
    }
    return root;
  }
  LearnState::Cell& c = state.cell(i, j);
  if (c.level >= 3)
    throw BuildError(BuildError::Code::AlreadyLearned,
                     "clause already 3-learned; use a lemma leaf");
  const int K = c.level;
  ProofBuilder::Id root =
      ctx.stage3_node(/*lemma_stage2=*/K >= 2, /*lemma_stage1=*/K >= 1,
                      /*record_stage1=*/K == 0, /*record_stage2=*/K == 1);
  c.level = K + 1;
  if (c.level == 3) c.clause_node = root;
  return root;
}

ProofBuilder::Id build_learn_side(ProofBuilder& B, const StoneInstance& inst, int i,
                                  int j, const std::vector<int>& side,
                                  LearnState& state) {
  LearnCtx ctx = make_ctx(B, inst, i, j, side, state);
  return ctx.stage3_node(false, false, false, false);
}

}  // namespace stone
