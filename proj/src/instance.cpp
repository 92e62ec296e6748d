#include "stone/instance.hpp"

namespace stone {

int StoneInstance::induction_axiom(int i, int jp, int jpp, int j) const {
  const int base = N() + m * (N() - n()) + m;
  const long per_vertex = (long)m * (m - 1) * (m - 1);
  // pairs (a,b) are lexicographic; a pair with a==b has m-1 conclusions, else m-2
  long before = (long)(i - 1) * per_vertex;
  before += (long)(jp - 1) * (m - 1) * (m - 1);          // all pairs with a < jp
  before += (long)(jpp - 1) * (m - 2) + (jp < jpp ? 1 : 0);  // pairs (jp, b), b < jpp
  int rank = j - 1;
  if (jp < j) --rank;
  if (jpp != jp && jpp < j) --rank;
  return base + (int)before + rank + 1;
}

StoneInstance generate_stone(const StoneGraph& g, int m) {
  if (m < 1) throw std::invalid_argument("need at least one stone");
  StoneInstance inst;
  inst.graph = g;
  inst.m = m;
  inst.vars = StoneVarMap{g.num_vertices, m};
  inst.cnf.num_vars = inst.vars.num_vars();
  const StoneVarMap& V = inst.vars;
  const int N = g.num_vertices, n = g.num_nonsources();
  auto& cs = inst.cnf.clauses;

  // every vertex carries some stone
  for (int i = 1; i <= N; ++i) {
    std::vector<Lit> lits;
    for (int j = 1; j <= m; ++j) lits.push_back(V.p(i, j));
    cs.emplace_back(lits);
  }
  // stones on sources are red
  for (int i = n + 1; i <= N; ++i)
    for (int j = 1; j <= m; ++j) cs.push_back(Clause{-V.p(i, j), V.r(j)});
  // no red stone on the sink
  for (int j = 1; j <= m; ++j) cs.push_back(Clause{-V.p(1, j), -V.r(j)});
  // redness propagates from both predecessors
  for (int i = 1; i <= n; ++i) {
    const auto [ip, ipp] = g.pred_pair(i);
    for (int jp = 1; jp <= m; ++jp)
      for (int jpp = 1; jpp <= m; ++jpp)
        for (int j = 1; j <= m; ++j) {
          if (j == jp || j == jpp) continue;
          cs.push_back(Clause{-V.p(ip, jp), -V.r(jp), -V.p(ipp, jpp), -V.r(jpp),
                              -V.p(i, j), V.r(j)});
        }
  }
  return inst;
}

}  // namespace stone
