#pragma once

#include "stone/clause.hpp"
#include "stone/graph.hpp"

namespace stone {

// Dense variable numbering: p(i,j) = (i-1)m + j, r(j) = Nm + j.
struct StoneVarMap {
  int N = 0, m = 0;
  Var p(int i, int j) const { return (i - 1) * m + j; }
  Var r(int j) const { return N * m + j; }
  int num_vars() const { return (N + 1) * m; }

  bool is_p(Var v) const { return v >= 1 && v <= N * m; }
  int p_vertex(Var v) const { return (v - 1) / m + 1; }
  int p_stone(Var v) const { return (v - 1) % m + 1; }
  int r_stone(Var v) const { return v - N * m; }
};

// The generated instance plus O(1) lookup of each clause family member's
// position inside the canonical clause order.
struct StoneInstance {
  StoneGraph graph;
  int m = 0;
  StoneVarMap vars;
  Cnf cnf;

  int N() const { return graph.num_vertices; }
  int n() const { return graph.num_nonsources(); }
  bool is_source(int i) const { return graph.is_source(i); }

  // 1-based clause indices
  int cover_axiom(int i) const { return i; }
  int source_axiom(int i, int j) const { return N() + (i - (n() + 1)) * m + j; }
  int sink_axiom(int j) const { return N() + m * (N() - n()) + j; }
  int induction_axiom(int i, int jp, int jpp, int j) const;
};

// Clause families, in order: vertex covers, source clauses, sink clauses,
// induction clauses in lexicographic (i, j', j'', j) order.
StoneInstance generate_stone(const StoneGraph& g, int m);

}  // namespace stone
