#include "stone/wrtl.hpp"

namespace stone {

namespace {

struct WrtlBuilder {
  ProofBuilder& B;
  const StoneInstance& inst;
  LearnState& st;
  const StoneVarMap& V;
  int n, m;

  WrtlBuilder(ProofBuilder& B, const StoneInstance& inst, LearnState& st)
      : B(B), inst(inst), st(st), V(inst.vars), n(inst.n()), m(inst.m) {}

  ProofBuilder::Id ax(int idx) { return B.axiom(idx, inst.cnf.clauses[idx - 1]); }

  // {~p(i,j), r(j)}: lemma when already learned, else derived here.
  ProofBuilder::Id learn_or_ref(int i, int j) {
    if (inst.is_source(i) || st.cell(i, j).clause_node != ProofBuilder::kNone)
      return st.learned_ref(B, inst, i, j);
    return build_learn(B, inst, i, j, st, LearnMode::Inline);
  }

  // {~p(1,m), [~p(i,j)], ~r(j), ~p(i-1,m)}
  ProofBuilder::Id right_branch(int i, int j) {
    ProofBuilder::Id t = build_right_side(B, inst, i, j, st);
    return B.res(t, ax(inst.sink_axiom(m)), V.r(m));
  }

  // {~p(1,m), ~p(i-1,m), ~p(i,j)} for 2 <= i <= n
  ProofBuilder::Id typical_cell(int i, int j) {
    return B.res(learn_or_ref(i, j), right_branch(i, j), V.r(j));
  }

  // {~p(1,j)}
  ProofBuilder::Id sink_cell(int j) {
    return B.res(learn_or_ref(1, j), ax(inst.sink_axiom(j)), V.r(j));
  }

  // {~p(1,m), ~p(i,m)}; learns (i, m)
  ProofBuilder::Id stone_m_cell(int i) {
    return B.res(learn_or_ref(i, m), ax(inst.sink_axiom(m)), V.r(m));
  }

  // Right child of the segment-i spine at row j <= m-1.
  ProofBuilder::Id cell(int i, int j) {
    const bool w_cell = j == m - 1 && (i <= n - 1 || i == 1);
    if (!w_cell) return i == 1 ? sink_cell(j) : typical_cell(i, j);
    // one w-inference makes room to learn both (i, m-1) and (i, m)
    ProofBuilder::Id x = i == 1 ? sink_cell(m - 1) : typical_cell(i, m - 1);
    ProofBuilder::Id y = stone_m_cell(i);
    return B.res_w(x, y, V.p(i, m));
  }
};

}  // namespace

ProofBuilder::Id build_right_side(ProofBuilder& B, const StoneInstance& inst, int i,
                                  int j, LearnState& state) {
  const StoneVarMap& V = inst.vars;
  const int m = inst.m;
  const auto [a, b] = inst.graph.pred_pair(i - 1);
  if (a != i && b != i)
    return build_learn_side(B, inst, i - 1, m, {j}, state);

  // i feeds i-1; derive {~p(i,j), ~r(j), ~p(i-1,m), r(m)} over the other
  // predecessor's cover clause
  const int istar = a == i ? b : a;
  auto stones = [&](int jstar) {
    return a == i ? std::pair{j, jstar} : std::pair{jstar, j};
  };
  ProofBuilder::Id acc = B.axiom(inst.cover_axiom(istar),
                                 inst.cnf.clauses[inst.cover_axiom(istar) - 1]);
  for (int jstar = m; jstar >= 1; --jstar) {
    ProofBuilder::Id rhs;
    if (jstar == m) {
      rhs = state.learned_ref(B, inst, istar, m);
    } else {
      auto [s1, s2] = stones(jstar);
      int idx = inst.induction_axiom(i - 1, s1, s2, m);
      ProofBuilder::Id ax = B.axiom(idx, inst.cnf.clauses[idx - 1]);
      rhs = jstar == j ? ax : B.res(state.learned_ref(B, inst, istar, jstar), ax, V.r(jstar));
    }
    acc = B.res(acc, rhs, V.p(istar, jstar));
  }
  return acc;
}

Proof build_regwrtl(const StoneInstance& inst) {
  ProofBuilder B;
  LearnState st(inst.n(), inst.m);
  WrtlBuilder w(B, inst, st);
  const int n = inst.n(), m = inst.m;

  // segments are stacked top (vertex n) to bottom (vertex 1); the spine node
  // at the top of segment i resolves the cover clause of i against the
  // continuation from above
  ProofBuilder::Id cont = w.stone_m_cell(n);
  for (int i = n; i >= 1; --i) {
    ProofBuilder::Id spine =
        B.res_w(w.ax(inst.cover_axiom(i)), cont, inst.vars.p(i, m));
    for (int j = m - 1; j >= 1; --j)
      spine = B.res_w(spine, w.cell(i, j), inst.vars.p(i, j));
    cont = spine;
  }
  if (!B.clause(cont).empty())
    throw BuildError(BuildError::Code::Internal, "refutation root is not empty");
  return B.linearize(cont, System::RegWRTL);
}

}  // namespace stone
