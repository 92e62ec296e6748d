#pragma once

#include "stone/proof.hpp"

namespace stone {

enum class Reason {
  AxiomMismatch,
  LemmaNotAvailable,
  LemmaNotInput,
  RuleNotAllowed,
  ResolventMismatch,
  IrregularPath
};
const char* reason_name(Reason r);

struct CheckStats {
  int size = 0;
  int height = 0;          // nodes on the longest root-to-leaf path
  int lemma_leaves = 0;
  int distinct_pivots = 0;
};

struct CheckReport {
  bool accepted = false;
  Reason reason = Reason::AxiomMismatch;  // first failure in postorder
  int node = 0;
  CheckStats stats;
  std::string message;
};

CheckStats proof_stats(const Proof& p);

// Validity per system: axiom leaves must match the formula exactly, lemma
// leaves must reference an earlier node with an identical clause (for regRTI
// one derived by an input subderivation), inner clauses must equal the
// rule-computed resolvent under a rule the system allows, and no pivot may
// repeat on a root-to-leaf path.
CheckReport check_proof(const Proof& p, const Cnf& gamma);  // system from the proof
CheckReport check_proof_as(const Proof& p, const Cnf& gamma, System system);

std::vector<bool> input_derivation_flags(const Proof& p, const Cnf& gamma);

struct SemanticReport {
  bool accepted = false;
  int node = 0;
  std::string what;  // EntailmentFailure | OracleDisagreement
};

// Independent soundness oracle: each inner clause must be entailed by its
// children, and an empty root requires the formula to be unsatisfiable.
SemanticReport check_semantic(const Proof& p, const Cnf& gamma);

// Rewrites each w-inference as the unique degenerate inference over the same
// pivot; every output clause is a subset of the input clause and the size is
// unchanged. Throws BuildError(InputNotValid) unless the input checks as
// regWRTL.
Proof convert_regwrtl_to_pool(const Proof& p, const Cnf& gamma);

// Diagnostic per the greedy property: flags nodes some subclause of which is
// prior-learned although the node is not itself a prior-learned leaf.
struct GreedyReport {
  struct Item {
    int node = 0;
    Clause witness;  // the prior-learned subclause
  };
  std::vector<Item> flagged;
  bool greedy() const { return flagged.empty(); }
};
GreedyReport check_greedy(const Proof& p, const Cnf& gamma);

// One seeded structural mutation: pivot swap, literal drop on an inner
// clause, lemma retarget to a later node, or rule retag.
Proof mutate_proof(const Proof& p, std::uint64_t seed);

}  // namespace stone
