#pragma once

#include <iosfwd>
#include <optional>

#include "stone/learn.hpp"
#include "stone/proof.hpp"

namespace stone {

// Frontier clause {~p(i1,j1),...,~p(ik,jk)}, i1 < ... < ik, together with the
// union of clause literals on the path from the root to its leaf position.
struct UnfinishedClause {
  std::vector<std::pair<int, int>> entries;  // (vertex, stone)
  Clause pool_context;                       // includes the clause itself

  int k() const { return (int)entries.size(); }
  Clause clause(const StoneVarMap& V) const;
  std::vector<int> dom() const;
  int maxdom() const { return entries.empty() ? 0 : entries.back().first; }
};

// Bypass and support structure of a frontier clause. Entry indices are
// 0-based positions into `entries`.
struct SupportAnalysis {
  int k = 0;
  std::vector<char> bypassed;
  std::vector<int> max_bypasser;              // entry index, -1 if not bypassed
  std::vector<std::vector<char>> direct;      // direct[a][b]: a directly supports b
  std::vector<std::vector<int>> support_set;  // S_l as ascending entry indices
};
SupportAnalysis analyze_supports(const StoneGraph& g,
                                 const std::vector<std::pair<int, int>>& entries);

struct WellFormed {
  bool ok = false;
  std::string violation;  // empty when ok
};
// Domain shape, per-entry predecessor conditions and support coverage. The
// pool context may carry positive p-literals from expansion spines; the
// constraint applies to its negative p-literals.
WellFormed is_well_formed(const StoneInstance& inst, const UnfinishedClause& c,
                          const LearnState& state);

// The least predecessor (over non-bypassed entries) that lies above maxdom
// and is not yet 3-learned; vertex 1 for the empty clause; nullopt when the
// clause cannot be extended.
std::optional<int> is_extendible(const StoneInstance& inst, const UnfinishedClause& c,
                                 const LearnState& state);

// The m children replacing an extendible leaf: child t keeps exactly the
// entries supporting vertex 1 in C + {~p(i_new,t)} and appends (i_new, t).
std::vector<UnfinishedClause> expansion_children(const StoneInstance& inst,
                                                 const UnfinishedClause& c, int i_new);

// Closure bookkeeping for a non-extendible leaf with k > 1: the B-sets, the
// decreasing enumeration of B u {vertex 1}, and the clause families hung on
// the closure spine.
struct ClosurePlan {
  std::vector<std::pair<int, int>> entries;
  SupportAnalysis sa;
  std::vector<char> in_B, in_B1, in_B2, in_Bplus;  // per entry
  std::vector<int> t_order;                        // entry indices, vertex-descending
  std::vector<std::vector<int>> support_B;         // S^B_l as entry indices
  std::vector<Clause> C_ell, E_ell;                // per entry
  std::vector<Clause> C_star;                      // q = 0..r
  std::vector<Clause> F;                           // q = 1..r; F[0] unused
  int r() const { return (int)t_order.size(); }
};
ClosurePlan closure_plan(const StoneInstance& inst, const UnfinishedClause& c,
                         const LearnState& state);

// Regular dag-shaped derivation: each node is one axiom resolved against the
// conclusions of earlier nodes (left input is the linked node, which carries
// the positive r-literal).
struct DagDerivation {
  struct Link {
    int child = -1;
    Var pivot = 0;
  };
  struct Node {
    Clause clause;
    int axiom = 0;  // clause index of the starting axiom
    Clause axiom_clause;
    std::vector<Link> links;  // applied in order to the axiom
  };
  std::vector<Node> nodes;
  int height() const;
  int expanded_once_size() const;  // tree nodes if every node is placed once
};

// Turns a dag derivation into a tree fragment: the first use of a node is
// derived inline; once an inline occurrence is an input derivation the node
// counts as learned and later uses become lemma leaves, otherwise they are
// re-derived. Size stays within dag size x dag height.
ProofBuilder::Id dag_to_tree(ProofBuilder& B, const DagDerivation& dag, int final_node);

struct RtiTrace {
  long expansions = 0;
  long closures = 0;
  long green_closures = 0;
  bool keep_records = false;
  std::vector<std::pair<UnfinishedClause, ClosurePlan>> plans;   // k > 1 closures
  std::vector<std::pair<UnfinishedClause, WellFormed>> frontier; // at creation
  LearnState final_state;  // learning levels when the loop finished
  std::ostream* log = nullptr;
};

// Derivation replacing one non-extendible leaf: rederives its clause from
// instance clauses and previously learned ones. When the maximal entry's
// clause sits below level 3 the closure advances it by one level (a green
// closure). Throws ClauseExtendible when the leaf could still be extended.
ProofBuilder::Id build_closure(ProofBuilder& B, const StoneInstance& inst,
                               const UnfinishedClause& uc, LearnState& state,
                               RtiTrace& trace);

// Frontier loop: expand extendible leaves, close the rest, leftmost first.
// Requires m >= N.
Proof build_regrti(const StoneInstance& inst, RtiTrace* trace = nullptr);

}  // namespace stone
