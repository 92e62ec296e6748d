#include "stone/builder.hpp"

namespace stone {

ProofBuilder::Id ProofBuilder::axiom(int axiom_index, Clause c) {
  Node n;
  n.kind = ProofNode::Kind::Axiom;
  n.axiom = axiom_index;
  n.clause = std::move(c);
  return push(std::move(n));
}

ProofBuilder::Id ProofBuilder::lemma(Id target) {
  if (target == kNone) throw BuildError(BuildError::Code::Internal, "lemma of nothing");
  Node n;
  n.kind = ProofNode::Kind::Lemma;
  n.target = target;
  n.clause = arena_[target].clause;
  return push(std::move(n));
}

ProofBuilder::Id ProofBuilder::res(Id l, Id r, Var pivot) {
  Node n;
  n.kind = ProofNode::Kind::Inner;
  n.rule = Rule::Standard;
  n.pivot = pivot;
  n.left = l;
  n.right = r;
  try {
    n.clause = resolve(arena_[l].clause, arena_[r].clause, pivot, Rule::Standard);
  } catch (const RuleError& e) {
    throw BuildError(BuildError::Code::Internal,
                     std::string("bad resolution while building: ") + e.what() + " on " +
                         arena_[l].clause.str() + " | " + arena_[r].clause.str() +
                         " pivot " + std::to_string(pivot));
  }
  return push(std::move(n));
}

ProofBuilder::Id ProofBuilder::res_w(Id l, Id r, Var pivot) {
  const Clause& a = arena_[l].clause;
  const Clause& b = arena_[r].clause;
  if (a.contains(pivot) && b.contains(-pivot)) return res(l, r, pivot);
  Node n;
  n.kind = ProofNode::Kind::Inner;
  n.rule = Rule::W;
  n.pivot = pivot;
  n.left = l;
  n.right = r;
  n.clause = resolve(a, b, pivot, Rule::W);
  return push(std::move(n));
}

Proof ProofBuilder::linearize(Id root, System system) const {
  Proof p;
  p.system = system;
  std::vector<int> post(arena_.size(), 0);
  // iterative postorder: (node, children-done flag)
  std::vector<std::pair<Id, bool>> stack{{root, false}};
  while (!stack.empty()) {
    auto [u, done] = stack.back();
    stack.pop_back();
    const Node& nd = arena_[u];
    if (!done) {
      if (post[u] != 0)
        throw BuildError(BuildError::Code::Internal,
                         "arena node placed twice; share via lemma leaves");
      if (nd.kind == ProofNode::Kind::Inner) {
        stack.push_back({u, true});
        stack.push_back({nd.right, false});
        stack.push_back({nd.left, false});
        continue;
      }
    }
    ProofNode out;
    out.kind = nd.kind;
    out.clause = nd.clause;
    out.rule = nd.rule;
    out.pivot = nd.pivot;
    if (nd.kind == ProofNode::Kind::Axiom) {
      out.axiom = nd.axiom;
    } else if (nd.kind == ProofNode::Kind::Lemma) {
      if (post[nd.target] == 0)
        throw BuildError(BuildError::Code::Internal,
                         "lemma target not yet placed in postorder");
      out.target = post[nd.target];
    } else {
      out.left = post[nd.left];
      out.right = post[nd.right];
    }
    p.nodes.push_back(std::move(out));
    post[u] = p.size();
  }
  validate_postorder(p);
  return p;
}

}  // namespace stone
