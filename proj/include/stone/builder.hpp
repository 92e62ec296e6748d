#pragma once

#include "stone/proof.hpp"

namespace stone {

struct BuildError : std::runtime_error {
  enum class Code {
    StonesInsufficient,
    PredecessorNotLearned,
    AlreadyLearned,
    NotExtendible,
    ClauseExtendible,
    WellFormednessBroken,
    WrongBucket,
    NotB2,
    SideContainsTarget,
    MalformedClause,
    InputNotValid,
    Internal
  };
  Code code;
  BuildError(Code c, const std::string& what) : std::runtime_error(what), code(c) {}
};

// Grow-only arena of proof nodes. Construction order is free; linearize()
// emits one subtree in postorder and renumbers lemma targets, checking that
// every target lands earlier in postorder and that no arena node is placed
// twice (sharing must go through lemma leaves).
class ProofBuilder {
public:
  using Id = int;
  static constexpr Id kNone = -1;

  Id axiom(int axiom_index, Clause c);
  Id lemma(Id target);
  // Standard resolution; throws BuildError::Internal when not applicable.
  Id res(Id l, Id r, Var pivot);
  // w-resolution (falls back to the same union; tags Standard when both
  // pivot occurrences are present).
  Id res_w(Id l, Id r, Var pivot);

  const Clause& clause(Id id) const { return arena_[id].clause; }
  bool is_leaf(Id id) const { return arena_[id].kind != ProofNode::Kind::Inner; }
  std::size_t arena_size() const { return arena_.size(); }

  Proof linearize(Id root, System system) const;

private:
  struct Node {
    ProofNode::Kind kind;
    Clause clause;
    int axiom = 0;
    Id target = kNone;
    Rule rule = Rule::Standard;
    Var pivot = 0;
    Id left = kNone, right = kNone;
  };
  Id push(Node n) {
    arena_.push_back(std::move(n));
    return (Id)arena_.size() - 1;
  }
  std::vector<Node> arena_;
};

}  // namespace stone
