#include "stone/check.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <unordered_set>

#include "stone/builder.hpp"
#include "stone/oracle.hpp"

namespace stone {

const char* reason_name(Reason r) {
  switch (r) {
    case Reason::AxiomMismatch: return "AxiomMismatch";
    case Reason::LemmaNotAvailable: return "LemmaNotAvailable";
    case Reason::LemmaNotInput: return "LemmaNotInput";
    case Reason::RuleNotAllowed: return "RuleNotAllowed";
    case Reason::ResolventMismatch: return "ResolventMismatch";
    case Reason::IrregularPath: return "IrregularPath";
  }
  return "?";
}

CheckStats proof_stats(const Proof& p) {
  CheckStats st;
  st.size = p.size();
  std::vector<int> depth(p.size() + 1, 1);
  std::set<Var> pivots;
  for (int u = p.size(); u >= 1; --u) {
    const ProofNode& nd = p.node(u);
    if (nd.kind == ProofNode::Kind::Lemma) ++st.lemma_leaves;
    if (nd.kind == ProofNode::Kind::Inner) {
      pivots.insert(nd.pivot);
      depth[nd.left] = depth[nd.right] = depth[u] + 1;
    }
    st.height = std::max(st.height, depth[u]);
  }
  st.distinct_pivots = (int)pivots.size();
  return st;
}

std::vector<bool> input_derivation_flags(const Proof& p, const Cnf& gamma) {
  Proof q = p;  // shallow node copy; rebind to the given formula
  q.over = &gamma;
  return input_derivation_flags(q);
}

namespace {

bool rule_allowed(System sys, Rule r) {
  switch (sys) {
    case System::RegRTL:
    case System::RegRTI: return r == Rule::Standard;
    case System::RegWRTL: return r == Rule::Standard || r == Rule::W;
    case System::Pool: return r == Rule::Standard || r == Rule::Degenerate;
  }
  return false;
}

// Degenerate "otherwise" admits either input, so membership is checked
// against the set of legal conclusions.
bool resolvent_matches(const Clause& a, const Clause& b, Var pivot, Rule rule,
                       const Clause& stored) {
  if (a.contains(-pivot) || b.contains(pivot)) return false;
  const bool in_a = a.contains(pivot);
  const bool in_b = b.contains(-pivot);
  switch (rule) {
    case Rule::Standard:
      return in_a && in_b &&
             stored == clause_union(a.without(pivot), b.without(-pivot));
    case Rule::W:
      return stored == clause_union(a.without(pivot), b.without(-pivot));
    case Rule::Degenerate:
      if (in_a && in_b)
        return stored == clause_union(a.without(pivot), b.without(-pivot));
      if (in_a) return stored == b;
      if (in_b) return stored == a;
      return stored == a || stored == b;
  }
  return false;
}

}  // namespace

CheckReport check_proof(const Proof& p, const Cnf& gamma) {
  return check_proof_as(p, gamma, p.system);
}

CheckReport check_proof_as(const Proof& p, const Cnf& gamma, System system) {
  CheckReport rep;
  rep.stats = proof_stats(p);

  // collect (node, rank, reason); the minimum is the first failure in postorder
  struct Failure {
    int node;
    int rank;  // order of checks within one node
    Reason reason;
  };
  std::vector<Failure> fs;

  const bool rti = system == System::RegRTI;
  std::vector<bool> input;
  if (rti) input = input_derivation_flags(p, gamma);

  for (int u = 1; u <= p.size(); ++u) {
    const ProofNode& nd = p.node(u);
    switch (nd.kind) {
      case ProofNode::Kind::Axiom: {
        if (nd.axiom < 1 || nd.axiom > (int)gamma.clauses.size() ||
            nd.clause != gamma.clauses[nd.axiom - 1])
          fs.push_back({u, 0, Reason::AxiomMismatch});
        break;
      }
      case ProofNode::Kind::Lemma: {
        if (nd.target < 1 || nd.target >= u || nd.clause != p.node(nd.target).clause) {
          fs.push_back({u, 0, Reason::LemmaNotAvailable});
        } else if (rti && !input[nd.target]) {
          fs.push_back({u, 1, Reason::LemmaNotInput});
        }
        break;
      }
      case ProofNode::Kind::Inner: {
        if (!rule_allowed(system, nd.rule)) {
          fs.push_back({u, 0, Reason::RuleNotAllowed});
          break;
        }
        if (!resolvent_matches(p.node(nd.left).clause, p.node(nd.right).clause,
                               nd.pivot, nd.rule, nd.clause))
          fs.push_back({u, 1, Reason::ResolventMismatch});
        break;
      }
    }
  }

  // regularity: pivot sets along root-to-leaf paths
  {
    std::vector<std::pair<int, bool>> stack{{p.root(), false}};
    std::unordered_set<Var> on_path;
    while (!stack.empty()) {
      auto [u, leaving] = stack.back();
      stack.pop_back();
      const ProofNode& nd = p.node(u);
      if (nd.kind != ProofNode::Kind::Inner) continue;
      if (leaving) {
        on_path.erase(nd.pivot);
        continue;
      }
      if (on_path.count(nd.pivot)) fs.push_back({u, 2, Reason::IrregularPath});
      bool inserted = on_path.insert(nd.pivot).second;
      if (inserted) stack.push_back({u, true});
      stack.push_back({nd.right, false});
      stack.push_back({nd.left, false});
    }
  }

  if (fs.empty()) {
    rep.accepted = true;
    return rep;
  }
  auto best = std::min_element(fs.begin(), fs.end(), [](const Failure& a, const Failure& b) {
    return std::pair(a.node, a.rank) < std::pair(b.node, b.rank);
  });
  rep.accepted = false;
  rep.node = best->node;
  rep.reason = best->reason;
  rep.message = std::string(reason_name(best->reason)) + " at node " +
                std::to_string(best->node);
  return rep;
}

SemanticReport check_semantic(const Proof& p, const Cnf& gamma) {
  SemanticReport rep;
  for (int u = 1; u <= p.size(); ++u) {
    const ProofNode& nd = p.node(u);
    if (nd.kind != ProofNode::Kind::Inner) continue;
    if (!entails({p.node(nd.left).clause, p.node(nd.right).clause}, nd.clause)) {
      rep.accepted = false;
      rep.node = u;
      rep.what = "EntailmentFailure";
      return rep;
    }
  }
  if (p.node(p.root()).clause.empty() && solve(gamma).sat) {
    rep.accepted = false;
    rep.node = p.root();
    rep.what = "OracleDisagreement";
    return rep;
  }
  rep.accepted = true;
  return rep;
}

Proof convert_regwrtl_to_pool(const Proof& p, const Cnf& gamma) {
  CheckReport in = check_proof_as(p, gamma, System::RegWRTL);
  if (!in.accepted)
    throw BuildError(BuildError::Code::InputNotValid,
                     "input does not check as regWRTL: " + in.message);
  Proof q;
  q.system = System::Pool;
  q.nodes.reserve(p.nodes.size());
  for (int u = 1; u <= p.size(); ++u) {
    ProofNode nd = p.node(u);
    switch (nd.kind) {
      case ProofNode::Kind::Axiom:
        break;  // axiom clauses are unchanged
      case ProofNode::Kind::Lemma:
        nd.clause = q.node(nd.target).clause;
        break;
      case ProofNode::Kind::Inner: {
        const Clause& a = q.node(nd.left).clause;
        const Clause& b = q.node(nd.right).clause;
        const bool in_a = a.contains(nd.pivot);
        const bool in_b = b.contains(-nd.pivot);
        nd.rule = (in_a && in_b) ? Rule::Standard : Rule::Degenerate;
        nd.clause = resolve(a, b, nd.pivot, Rule::Degenerate, Side::Left);
        break;
      }
    }
    q.nodes.push_back(std::move(nd));
  }
  return q;
}

GreedyReport check_greedy(const Proof& p, const Cnf& gamma) {
  Proof bound = p;
  bound.over = &gamma;
  GreedyReport rep;
  std::vector<int> pre = preorder_rank(bound);
  std::vector<bool> input;
  if (bound.system == System::RegRTI) input = input_derivation_flags(bound);

  for (int u = 1; u <= bound.size(); ++u) {
    const Clause& cu = bound.node(u).clause;
    Clause witness;
    bool found_sub = false, cu_prior = false;
    auto scan = [&](const Clause& d) {
      if (clause_subsumes(d, cu)) {
        if (!found_sub) witness = d;
        found_sub = true;
        if (d == cu) cu_prior = true;
      }
    };
    for (const Clause& d : gamma.clauses) scan(d);
    for (int v = 1; v < u; ++v) {
      if (pre[v] >= pre[u]) continue;
      if (!input.empty() && !input[v]) continue;
      scan(bound.node(v).clause);
    }
    if (!found_sub) continue;
    const bool leaf = bound.node(u).kind != ProofNode::Kind::Inner;
    if (!(leaf && cu_prior)) rep.flagged.push_back({u, witness});
  }
  return rep;
}

Proof mutate_proof(const Proof& p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Proof q = p;
  std::vector<int> inner, lemmas;
  Var max_var = 1;
  for (int u = 1; u <= q.size(); ++u) {
    const ProofNode& nd = q.node(u);
    if (nd.kind == ProofNode::Kind::Inner) {
      inner.push_back(u);
      max_var = std::max(max_var, nd.pivot);
    }
    if (nd.kind == ProofNode::Kind::Lemma) lemmas.push_back(u);
    for (Lit l : nd.clause.lits()) max_var = std::max(max_var, var_of(l));
  }
  if (q.over) max_var = std::max(max_var, q.over->num_vars);

  auto pick = [&](const std::vector<int>& v) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
  };

  for (int attempt = 0; attempt < 64; ++attempt) {
    switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
      case 0: {  // pivot swap
        if (inner.empty()) break;
        int u = pick(inner);
        Var nv = std::uniform_int_distribution<Var>(1, max_var)(rng);
        if (nv == q.node(u).pivot) break;
        q.node(u).pivot = nv;
        return q;
      }
      case 1: {  // literal drop
        if (inner.empty()) break;
        int u = pick(inner);
        const Clause& c = q.node(u).clause;
        if (c.empty()) break;
        std::size_t k = std::uniform_int_distribution<std::size_t>(0, c.size() - 1)(rng);
        q.node(u).clause = c.without(c.lits()[k]);
        return q;
      }
      case 2: {  // lemma retarget forward
        if (lemmas.empty()) break;
        int u = pick(lemmas);
        if (u >= q.size()) break;
        q.node(u).target = std::uniform_int_distribution<int>(u, q.size())(rng);
        return q;
      }
      case 3: {  // rule retag
        if (inner.empty()) break;
        int u = pick(inner);
        Rule old = q.node(u).rule;
        Rule tags[3] = {Rule::Standard, Rule::Degenerate, Rule::W};
        Rule nr = tags[std::uniform_int_distribution<int>(0, 2)(rng)];
        if (nr == old) break;
        q.node(u).rule = nr;
        return q;
      }
    }
  }
  return q;  // degenerate proof with nothing to mutate
}

}  // namespace stone
