#include "stone/rti.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <ostream>
#include <set>

namespace stone {

namespace {
void ensure(bool cond, BuildError::Code code, const std::string& msg) {
  if (!cond) throw BuildError(code, msg);
}
}  // namespace

Clause UnfinishedClause::clause(const StoneVarMap& V) const {
  Clause c;
  for (auto [i, j] : entries) c.add(-V.p(i, j));
  return c;
}

std::vector<int> UnfinishedClause::dom() const {
  std::vector<int> d;
  for (auto& e : entries) d.push_back(e.first);
  return d;
}

SupportAnalysis analyze_supports(const StoneGraph& g,
                                 const std::vector<std::pair<int, int>>& entries) {
  const int k = (int)entries.size();
  SupportAnalysis sa;
  sa.k = k;
  sa.bypassed.assign(k, 0);
  sa.max_bypasser.assign(k, -1);
  sa.direct.assign(k, std::vector<char>(k, 0));
  sa.support_set.assign(k, {});
  for (int l = 0; l < k; ++l) {
    for (int l2 = l + 1; l2 < k; ++l2)
      if (entries[l2].second == entries[l].second) sa.max_bypasser[l] = l2;
    sa.bypassed[l] = sa.max_bypasser[l] >= 0;
  }
  for (int l = 0; l < k; ++l)
    for (int l2 = l + 1; l2 < k; ++l2) {
      bool d = false;
      if (sa.max_bypasser[l] == l2) d = true;
      if (!sa.bypassed[l] && !g.is_source(entries[l].first)) {
        auto [a, b] = g.pred_pair(entries[l].first);
        if (entries[l2].first == a || entries[l2].first == b) d = true;
      }
      sa.direct[l2][l] = d;
    }
  // supporters of l: reflexive-transitive closure upward
  for (int l = 0; l < k; ++l) {
    std::vector<char> in(k, 0);
    in[l] = 1;
    std::vector<int> work{l};
    while (!work.empty()) {
      int y = work.back();
      work.pop_back();
      for (int x = y + 1; x < k; ++x)
        if (sa.direct[x][y] && !in[x]) {
          in[x] = 1;
          work.push_back(x);
        }
    }
    for (int x = 0; x < k; ++x)
      if (in[x]) sa.support_set[l].push_back(x);
  }
  return sa;
}

WellFormed is_well_formed(const StoneInstance& inst, const UnfinishedClause& c,
                          const LearnState& state) {
  if (c.entries.empty()) return {true, ""};
  const int k = c.k();
  const int n = inst.n();
  for (int l = 0; l + 1 < k; ++l)
    if (c.entries[l].first >= c.entries[l + 1].first)
      return {false, "entries not ascending in the vertex"};
  if (c.entries[0].first != 1) return {false, "first entry is not the sink"};
  const int ik = c.maxdom();
  if (ik > n) return {false, "entry above the last non-source"};

  // condition on the pool: no r-literals, and at most one stone per vertex
  // among the negative p-literals, none above maxdom
  std::vector<int> pool_stone(inst.N() + 1, 0);
  for (Lit l : c.pool_context.lits()) {
    Var v = var_of(l);
    if (!inst.vars.is_p(v)) return {false, "pool contains an r-literal"};
    if (l > 0) continue;  // positive p-literals come from expansion spines
    int pv = inst.vars.p_vertex(v), ps = inst.vars.p_stone(v);
    if (pv > ik) return {false, "pool mentions a vertex above maxdom"};
    if (pool_stone[pv] != 0 && pool_stone[pv] != ps)
      return {false, "pool pebbles one vertex with two stones"};
    pool_stone[pv] = ps;
  }
  for (auto [i, j] : c.entries)
    if (!c.pool_context.contains(-inst.vars.p(i, j)))
      return {false, "pool does not contain the clause"};

  SupportAnalysis sa = analyze_supports(inst.graph, c.entries);
  std::vector<char> in_dom(inst.N() + 1, 0);
  for (auto [i, j] : c.entries) in_dom[i] = 1;
  for (int l = 0; l < k; ++l) {
    if (sa.bypassed[l]) continue;
    const int v = c.entries[l].first;
    if (inst.is_source(v)) continue;
    auto [a, b] = inst.graph.pred_pair(v);
    for (int pr : {a, b}) {
      const bool alpha = in_dom[pr];
      const bool beta = state.vertex_3learned(inst, pr) && pool_stone[pr] == 0;
      const bool gamma = pr > ik && !state.vertex_3learned(inst, pr);
      if (!(alpha || beta || gamma))
        return {false, "entry " + std::to_string(v) + ": predecessor " +
                           std::to_string(pr) + " fits no condition"};
    }
  }
  if ((int)sa.support_set[0].size() != k)
    return {false, "an entry does not support the sink entry"};
  return {true, ""};
}

std::optional<int> is_extendible(const StoneInstance& inst, const UnfinishedClause& c,
                                 const LearnState& state) {
  if (c.entries.empty()) return 1;
  const int ik = c.maxdom();
  SupportAnalysis sa = analyze_supports(inst.graph, c.entries);
  int best = 0;
  for (int l = 0; l < c.k(); ++l) {
    if (sa.bypassed[l]) continue;
    const int v = c.entries[l].first;
    if (inst.is_source(v)) continue;
    auto [a, b] = inst.graph.pred_pair(v);
    for (int pr : {a, b})
      if (pr > ik && !state.vertex_3learned(inst, pr) && (best == 0 || pr < best))
        best = pr;
  }
  if (best == 0) return std::nullopt;
  return best;
}

std::vector<UnfinishedClause> expansion_children(const StoneInstance& inst,
                                                 const UnfinishedClause& c, int i_new) {
  const StoneVarMap& V = inst.vars;
  const int m = inst.m, k = c.k();
  ensure(i_new > c.maxdom() && i_new <= inst.n(), BuildError::Code::NotExtendible,
         "extension vertex out of range");

  std::vector<UnfinishedClause> out(m);
  std::vector<Clause> kept(m + 1);  // p-literal part of child t (old entries)
  for (int t = 1; t <= m; ++t) {
    UnfinishedClause& ch = out[t - 1];
    if (k == 0) {
      ch.entries = {{i_new, t}};
    } else {
      std::vector<std::pair<int, int>> ext = c.entries;
      ext.push_back({i_new, t});
      SupportAnalysis sa = analyze_supports(inst.graph, ext);
      std::vector<char> in_s1(k + 1, 0);
      for (int e : sa.support_set[0]) in_s1[e] = 1;
      ensure(in_s1[k], BuildError::Code::Internal,
             "extension vertex does not support the sink entry");
      for (int e = 0; e < k; ++e)
        if (in_s1[e]) ch.entries.push_back(c.entries[e]);
      ch.entries.push_back({i_new, t});
    }
    for (int e = 0; e + 1 < (int)ch.entries.size(); ++e)
      kept[t].add(-V.p(ch.entries[e].first, ch.entries[e].second));
  }

  // union of kept parts over children 1..m must give back the whole clause
  Clause cstar;
  std::vector<Clause> cstar_at(m + 1);
  for (int t = 1; t <= m; ++t) {
    cstar = clause_union(cstar, kept[t]);
    cstar_at[t] = cstar;
  }
  ensure(cstar == c.clause(V), BuildError::Code::Internal,
         "children do not cover the expanded clause");

  // pool contexts: path to child t passes the spine clauses above it
  Clause suffix;  // union of spine clauses for rows m-1 down to t
  for (int t = m; t >= 1; --t) {
    if (t < m) {
      Clause spine = cstar_at[t];
      for (int s = t + 1; s <= m; ++s) spine.add(V.p(i_new, s));
      suffix = clause_union(suffix, spine);
    }
    Clause pool = clause_union(c.pool_context, suffix);
    pool = clause_union(pool, kept[t]);
    pool.add(-V.p(i_new, t));
    out[t - 1].pool_context = pool;
  }
  return out;
}

ClosurePlan closure_plan(const StoneInstance& inst, const UnfinishedClause& c,
                         const LearnState& state) {
  const StoneVarMap& V = inst.vars;
  const int k = c.k();
  ensure(k > 1, BuildError::Code::MalformedClause, "closure plans need k > 1");
  ClosurePlan plan;
  plan.entries = c.entries;
  plan.sa = analyze_supports(inst.graph, c.entries);
  std::vector<int> entry_of(inst.N() + 1, -1);
  for (int e = 0; e < k; ++e) entry_of[c.entries[e].first] = e;

  plan.in_B.assign(k, 0);
  plan.in_B1.assign(k, 0);
  plan.in_B2.assign(k, 0);
  plan.in_Bplus.assign(k, 0);
  for (int e = 0; e < k; ++e) {
    if (plan.sa.bypassed[e]) continue;
    auto [a, b] = inst.graph.pred_pair(c.entries[e].first);
    const bool a_out = entry_of[a] < 0, b_out = entry_of[b] < 0;
    for (int pr : {a, b})
      if (entry_of[pr] < 0)
        ensure(state.vertex_3learned(inst, pr), BuildError::Code::ClauseExtendible,
               "outside predecessor not 3-learned; the clause is extendible");
    plan.in_B[e] = a_out || b_out;
    plan.in_B2[e] = a_out && b_out;
    plan.in_B1[e] = plan.in_B[e] && !plan.in_B2[e];
  }
  for (int e = 0; e < k; ++e)
    plan.in_Bplus[e] =
        plan.in_B[e] || (plan.sa.bypassed[e] && plan.in_B[plan.sa.max_bypasser[e]]);

  for (int e = k - 1; e >= 0; --e)
    if (plan.in_B[e] || e == 0) plan.t_order.push_back(e);
  ensure(plan.t_order.front() == k - 1 && plan.in_B2[k - 1],
         BuildError::Code::Internal, "the maximal entry must have both predecessors outside");
  ensure(plan.t_order.back() == 0, BuildError::Code::Internal,
         "the sink entry must close the enumeration");

  // S^B: closure through non-B members only, stopping at B and at bypassers in B
  plan.support_B.assign(k, {});
  for (int e = 0; e < k; ++e) {
    std::vector<char> in(k, 0);
    in[e] = 1;
    std::vector<int> work{e};
    while (!work.empty()) {
      int y = work.back();
      work.pop_back();
      if (y != e && plan.in_B[y]) continue;
      if (plan.sa.bypassed[y]) {
        int mb = plan.sa.max_bypasser[y];
        if (!plan.in_B[mb] && !in[mb]) {
          in[mb] = 1;
          work.push_back(mb);
        }
      } else {
        auto [a, b] = inst.graph.pred_pair(c.entries[y].first);
        for (int pr : {a, b})
          if (entry_of[pr] >= 0 && !in[entry_of[pr]]) {
            in[entry_of[pr]] = 1;
            work.push_back(entry_of[pr]);
          }
      }
    }
    for (int x = 0; x < k; ++x)
      if (in[x]) plan.support_B[e].push_back(x);
  }

  plan.C_ell.assign(k, {});
  plan.E_ell.assign(k, {});
  for (int e = 0; e < k; ++e) {
    for (int x : plan.support_B[e]) {
      if (!(plan.sa.bypassed[e] && x == e))
        plan.C_ell[e].add(-V.p(c.entries[x].first, c.entries[x].second));
      if (plan.in_Bplus[x] && !(plan.in_B[e] && x == e))
        plan.E_ell[e].add(-V.r(c.entries[x].second));
    }
  }

  const int r = plan.r();
  plan.C_star.assign(r + 1, Clause{-V.p(1, c.entries[0].second)});
  for (int q = r - 1; q >= 0; --q)
    plan.C_star[q] =
        clause_union(plan.C_star[q + 1], plan.C_ell[plan.t_order[q + 1 - 1]]);
  plan.F.assign(r + 1, Clause{});
  for (int q = 1; q <= r; ++q) {
    if (q == r && !plan.in_B[0]) {
      plan.F[q] = plan.E_ell[0];
    } else {
      Clause f;
      for (int q2 = 1; q2 < q; ++q2)
        f.add(-V.r(c.entries[plan.t_order[q2 - 1]].second));
      plan.F[q] = f;
    }
  }
  return plan;
}

int DagDerivation::height() const {
  std::vector<int> h(nodes.size(), 1);
  for (std::size_t v = 0; v < nodes.size(); ++v)
    for (const Link& l : nodes[v].links) h[v] = std::max(h[v], h[l.child] + 1);
  int best = 0;
  for (int x : h) best = std::max(best, x);
  return best;
}

int DagDerivation::expanded_once_size() const {
  int total = 0;
  for (const Node& nd : nodes) total += 1 + 2 * (int)nd.links.size();
  return total;
}

namespace {

struct DagExpander {
  ProofBuilder& B;
  const DagDerivation& dag;
  std::vector<ProofBuilder::Id> learned;

  DagExpander(ProofBuilder& B, const DagDerivation& dag)
      : B(B), dag(dag), learned(dag.nodes.size(), ProofBuilder::kNone) {}

  // returns (subtree root, subtree is an input derivation)
  std::pair<ProofBuilder::Id, bool> expand(int v) {
    if (learned[v] != ProofBuilder::kNone) return {B.lemma(learned[v]), true};
    const DagDerivation::Node& nd = dag.nodes[v];
    // children expanded right-to-left so the construction chronology matches
    // the postorder of the assembled chain
    std::vector<std::pair<ProofBuilder::Id, bool>> kids(nd.links.size());
    for (int i = (int)nd.links.size() - 1; i >= 0; --i)
      kids[i] = expand(nd.links[i].child);
    ProofBuilder::Id acc = B.axiom(nd.axiom, nd.axiom_clause);
    bool input = true;
    bool acc_leaf = true;
    for (std::size_t i = 0; i < nd.links.size(); ++i) {
      auto [cid, cinput] = kids[i];
      input = input && cinput && (B.is_leaf(cid) || acc_leaf);
      acc = B.res(cid, acc, nd.links[i].pivot);
      acc_leaf = false;
    }
    ensure(B.clause(acc) == nd.clause, BuildError::Code::Internal,
           "dag node expansion clause mismatch");
    if (input) learned[v] = acc;
    return {acc, input};
  }
};

}  // namespace

ProofBuilder::Id dag_to_tree(ProofBuilder& B, const DagDerivation& dag, int final_node) {
  DagExpander ex(B, dag);
  return ex.expand(final_node).first;
}

namespace {

// Builder context shared by the closure construction.
struct RtiCtx {
  ProofBuilder& B;
  const StoneInstance& inst;
  LearnState& state;
  const StoneVarMap& V;

  ProofBuilder::Id ax(int idx) { return B.axiom(idx, inst.cnf.clauses[idx - 1]); }

  // Regular dag deriving the clauses {C_l, E_l, r(j_l)} for the entries of
  // S^B(scope_root) outside B+; returns the dag node per entry (shared for
  // bypassed entries).
  DagDerivation build_support_dag(const ClosurePlan& plan, int scope_root,
                                  std::vector<int>& node_of) {
    DagDerivation dag;
    const auto& entries = plan.entries;
    std::vector<int> entry_of(inst.N() + 1, -1);
    for (int e = 0; e < (int)entries.size(); ++e) entry_of[entries[e].first] = e;
    node_of.assign(entries.size(), -1);

    std::vector<int> scope = plan.support_B[scope_root];  // ascending
    for (int idx = (int)scope.size() - 1; idx >= 0; --idx) {
      const int x = scope[idx];
      if (plan.in_Bplus[x]) continue;
      if (plan.sa.bypassed[x]) {
        const int rep = plan.sa.max_bypasser[x];
        ensure(node_of[rep] >= 0, BuildError::Code::Internal,
               "shared support node missing");
        node_of[x] = node_of[rep];
        continue;
      }
      const auto [pa, pb] = inst.graph.pred_pair(entries[x].first);
      const int ea = entry_of[pa], eb = entry_of[pb];
      ensure(ea >= 0 && eb >= 0, BuildError::Code::Internal,
             "support entry with an outside predecessor");
      const int sa_ = entries[ea].second, sb = entries[eb].second;
      DagDerivation::Node nd;
      nd.axiom = inst.induction_axiom(entries[x].first, sa_, sb, entries[x].second);
      nd.axiom_clause = inst.cnf.clauses[nd.axiom - 1];
      const bool pa_in = !plan.in_Bplus[ea], pb_in = !plan.in_Bplus[eb];
      auto rep = [&](int e) {
        return plan.sa.bypassed[e] ? plan.sa.max_bypasser[e] : e;
      };
      if (pa_in && pb_in) {
        const int ra = rep(ea), rb = rep(eb);
        if (ra == rb) {
          nd.links.push_back({node_of[ra], V.r(entries[ra].second)});
        } else {
          const int first = std::max(ra, rb), second = std::min(ra, rb);
          nd.links.push_back({node_of[first], V.r(entries[first].second)});
          nd.links.push_back({node_of[second], V.r(entries[second].second)});
        }
      } else if (pa_in || pb_in) {
        const int e_in = pa_in ? ea : eb;
        nd.links.push_back({node_of[rep(e_in)], V.r(entries[rep(e_in)].second)});
      }
      // fold the links to fix the node clause
      Clause acc = nd.axiom_clause;
      for (const auto& l : nd.links)
        acc = resolve(dag.nodes[l.child].clause, acc, var_of(l.pivot), Rule::Standard);
      Clause expected = clause_union(plan.C_ell[x], plan.E_ell[x]);
      expected.add(V.r(entries[x].second));
      ensure(acc == expected, BuildError::Code::Internal,
             "support clause mismatch at entry " + std::to_string(x));
      nd.clause = acc;
      dag.nodes.push_back(std::move(nd));
      node_of[x] = (int)dag.nodes.size() - 1;
    }
    return dag;
  }

  // Side derivation for an entry with one predecessor inside the clause:
  // a ladder over the outside predecessor's cover clause, then one more
  // resolution against the support dag unless the inside predecessor's
  // stone is already carried by F_q.
  ProofBuilder::Id build_L_B1(const ClosurePlan& plan, int q) {
    const auto& entries = plan.entries;
    const int t = plan.t_order[q - 1];
    const auto [vt, jt] = entries[t];
    ensure(plan.in_B1[t], BuildError::Code::WrongBucket,
           "not a one-outside-predecessor entry");
    std::vector<int> entry_of(inst.N() + 1, -1);
    for (int e = 0; e < (int)entries.size(); ++e) entry_of[entries[e].first] = e;
    const auto [pa, pb] = inst.graph.pred_pair(vt);
    const bool pa_inside = entry_of[pa] >= 0;
    const int lp = pa_inside ? entry_of[pa] : entry_of[pb];
    const int ipp = pa_inside ? pb : pa;
    ensure(lp >= 0 && entry_of[ipp] < 0, BuildError::Code::WrongBucket,
           "expected exactly one predecessor inside the clause");
    const int jlp = entries[lp].second;

    // the support part comes first in postorder
    ProofBuilder::Id support = ProofBuilder::kNone;
    if (!plan.in_Bplus[lp]) {
      std::vector<int> node_of;
      DagDerivation dag = build_support_dag(plan, t, node_of);
      const int rep = plan.sa.bypassed[lp] ? plan.sa.max_bypasser[lp] : lp;
      ensure(node_of[rep] >= 0, BuildError::Code::Internal, "support dag misses the hook");
      support = dag_to_tree(B, dag, node_of[rep]);
    }

    std::vector<char> in_F(inst.m + 1, 0);
    for (int q2 = 1; q2 < q; ++q2) in_F[entries[plan.t_order[q2 - 1]].second] = 1;
    ProofBuilder::Id acc = ax(inst.cover_axiom(ipp));
    for (int jpp = inst.m; jpp >= 1; --jpp) {
      ProofBuilder::Id rhs;
      if (jpp == jt) {
        rhs = state.learned_ref(B, inst, ipp, jt);
      } else {
        // the inside predecessor keeps its own stone, the outside one tries jpp
        const int s1 = pa_inside ? jlp : jpp;
        const int s2 = pa_inside ? jpp : jlp;
        ProofBuilder::Id axn = ax(inst.induction_axiom(vt, s1, s2, jt));
        rhs = (jpp == jlp || in_F[jpp])
                  ? axn
                  : B.res(state.learned_ref(B, inst, ipp, jpp), axn, V.r(jpp));
      }
      acc = B.res(acc, rhs, V.p(ipp, jpp));
    }
    if (plan.in_Bplus[lp]) return acc;
    return B.res(support, acc, V.r(jlp));
  }

  // Derives {C_t, F_q, r(j_t)} for the q-th member of the enumeration.
  ProofBuilder::Id build_L(const ClosurePlan& plan, int q, bool& green,
                           std::ostream* log) {
    const int t = plan.t_order[q - 1];
    const auto [vt, jt] = plan.entries[t];
    ProofBuilder::Id out;
    if (q == plan.r() && t == 0 && !plan.in_B[0]) {
      std::vector<int> node_of;
      DagDerivation dag = build_support_dag(plan, 0, node_of);
      const int rep = plan.sa.bypassed[0] ? plan.sa.max_bypasser[0] : 0;
      ensure(!plan.in_Bplus[0] && node_of[rep] >= 0, BuildError::Code::Internal,
             "sink support derivation missing");
      out = dag_to_tree(B, dag, node_of[rep]);
    } else if (plan.in_B2[t]) {
      if (q == 1) {
        const int before = state.level(inst, vt, jt);
        if (before == 3) {
          out = state.learned_ref(B, inst, vt, jt);
        } else {
          out = build_learn(B, inst, vt, jt, state, LearnMode::Staged);
          green = true;
          if (log)
            *log << "  learn (" << vt << ',' << jt << ") " << before << "->"
                 << before + 1 << '\n';
        }
      } else {
        std::vector<int> side;
        for (int q2 = 1; q2 < q; ++q2)
          side.push_back(plan.entries[plan.t_order[q2 - 1]].second);
        out = build_learn_side(B, inst, vt, jt, side, state);
      }
    } else {
      out = build_L_B1(plan, q);
    }
    Clause expected = clause_union(plan.C_ell[t], plan.F[q]);
    expected.add(V.r(jt));
    ensure(B.clause(out) == expected, BuildError::Code::Internal,
           "side derivation clause mismatch at q=" + std::to_string(q));
    return out;
  }

  ProofBuilder::Id build_closure(const UnfinishedClause& uc, RtiTrace& tr) {
    const int k = uc.k();
    ensure(k >= 1, BuildError::Code::Internal, "cannot close the empty clause");
    ensure(!is_extendible(inst, uc, state), BuildError::Code::ClauseExtendible,
           "the leaf can still be extended");
    ++tr.closures;
    bool green = false;
    ProofBuilder::Id out;
    if (k == 1) {
      const auto [v1, j1] = uc.entries[0];
      ensure(v1 == 1, BuildError::Code::MalformedClause, "singleton must be the sink");
      ProofBuilder::Id L;
      if (state.level(inst, 1, j1) == 3) {
        L = state.learned_ref(B, inst, 1, j1);
      } else {
        if (tr.log)
          *tr.log << "closure {~p(1," << j1 << ")} learn (1," << j1 << ") "
                  << state.level(inst, 1, j1) << "->" << state.level(inst, 1, j1) + 1
                  << '\n';
        L = build_learn(B, inst, 1, j1, state, LearnMode::Staged);
        green = true;
      }
      out = B.res(L, ax(inst.sink_axiom(j1)), V.r(j1));
    } else {
      ClosurePlan plan = closure_plan(inst, uc, state);
      if (tr.log) {
        auto show = [&](const char* name, const std::vector<char>& in) {
          *tr.log << ' ' << name << "={";
          bool first = true;
          for (int e = 0; e < k; ++e)
            if (in[e]) {
              if (!first) *tr.log << ',';
              *tr.log << plan.entries[e].first;
              first = false;
            }
          *tr.log << '}';
        };
        *tr.log << "closure " << uc.clause(V).str();
        show("B", plan.in_B);
        show("B1", plan.in_B1);
        show("B2", plan.in_B2);
        show("B+", plan.in_Bplus);
        *tr.log << '\n';
      }
      const int r = plan.r();
      const int j1 = plan.entries[0].second;
      // side derivations in postorder: q = 1 first
      std::vector<ProofBuilder::Id> L(r + 1, ProofBuilder::kNone);
      const bool sink_leaf_top = plan.in_Bplus[0] && !plan.in_B[0];
      for (int q = 1; q <= (sink_leaf_top ? r - 1 : r); ++q)
        L[q] = build_L(plan, q, green, tr.log);
      ProofBuilder::Id acc;
      if (sink_leaf_top) {
        acc = ax(inst.sink_axiom(j1));
      } else {
        acc = B.res(L[r], ax(inst.sink_axiom(j1)), V.r(j1));
      }
      ensure(B.clause(acc) == clause_union(plan.C_star[r - 1], plan.F[r]),
             BuildError::Code::Internal, "closure spine top mismatch");
      for (int q = r - 1; q >= 1; --q) {
        acc = B.res(L[q], acc, V.r(plan.entries[plan.t_order[q - 1]].second));
        ensure(B.clause(acc) == clause_union(plan.C_star[q - 1], plan.F[q]),
               BuildError::Code::Internal, "closure spine clause mismatch");
      }
      if (tr.keep_records) tr.plans.push_back({uc, plan});
      out = acc;
    }
    if (green) ++tr.green_closures;
    ensure(B.clause(out) == uc.clause(V), BuildError::Code::Internal,
           "closure does not rederive the leaf clause");
    return out;
  }
};

}  // namespace

ProofBuilder::Id build_closure(ProofBuilder& B, const StoneInstance& inst,
                               const UnfinishedClause& uc, LearnState& state,
                               RtiTrace& trace) {
  RtiCtx ctx{B, inst, state, inst.vars};
  return ctx.build_closure(uc, trace);
}

Proof build_regrti(const StoneInstance& inst, RtiTrace* trace) {
  if (inst.m < inst.N())
    throw BuildError(BuildError::Code::StonesInsufficient,
                     "need at least as many stones as vertices");
  ProofBuilder B;
  LearnState state(inst.n(), inst.m);
  RtiTrace local;
  RtiTrace& tr = trace ? *trace : local;
  RtiCtx ctx{B, inst, state, inst.vars};

  const long step_budget =
      2000 + 400L * inst.n() * inst.n() * inst.m * inst.m;
  long steps = 0;

  std::function<ProofBuilder::Id(const UnfinishedClause&)> process =
      [&](const UnfinishedClause& uc) -> ProofBuilder::Id {
    ensure(++steps <= step_budget, BuildError::Code::Internal,
           "frontier loop exceeded its step budget");
    WellFormed wf = is_well_formed(inst, uc, state);
    if (tr.keep_records) tr.frontier.push_back({uc, wf});
    ensure(wf.ok, BuildError::Code::WellFormednessBroken,
           "frontier clause not well-formed: " + wf.violation);
    auto ext = is_extendible(inst, uc, state);
    if (!ext) return ctx.build_closure(uc, tr);
    ++tr.expansions;
    const int i_new = *ext;
    std::vector<UnfinishedClause> children = expansion_children(inst, uc, i_new);
    std::vector<ProofBuilder::Id> ids(inst.m);
    for (int t = 1; t <= inst.m; ++t) ids[t - 1] = process(children[t - 1]);
    ProofBuilder::Id acc = ctx.ax(inst.cover_axiom(i_new));
    for (int t = 1; t <= inst.m; ++t)
      acc = B.res(acc, ids[t - 1], inst.vars.p(i_new, t));
    ensure(B.clause(acc) == uc.clause(inst.vars), BuildError::Code::Internal,
           "expansion does not rederive the leaf clause");
    return acc;
  };

  UnfinishedClause empty;
  ProofBuilder::Id root = process(empty);
  ensure(B.clause(root).empty(), BuildError::Code::Internal,
         "refutation root is not empty");
  tr.final_state = state;
  return B.linearize(root, System::RegRTI);
}

}  // namespace stone
