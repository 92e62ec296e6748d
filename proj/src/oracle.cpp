#include "stone/oracle.hpp"

#include <algorithm>
#include <set>

namespace stone {

namespace {

struct Dpll {
  const Cnf& f;
  const SolveLimits& limits;
  Assignment assign;
  std::vector<std::vector<int>> by_var;  // var -> clause indices
  long decisions = 0;

  Dpll(const Cnf& f, const SolveLimits& limits)
      : f(f), limits(limits), assign(f.num_vars), by_var(f.num_vars + 1) {
    for (int ci = 0; ci < (int)f.clauses.size(); ++ci)
      for (Lit l : f.clauses[ci].lits()) by_var[var_of(l)].push_back(ci);
  }

  // Checks one clause: returns false on conflict, sets a unit if found.
  bool visit(int ci, std::vector<Var>& trail, std::vector<Var>& queue) {
    const Clause& c = f.clauses[ci];
    Lit unit = 0;
    int undet = 0;
    for (Lit l : c.lits()) {
      if (assign.satisfies(l)) return true;
      if (!assign.falsifies(l)) {
        if (++undet > 1) return true;
        unit = l;
      }
    }
    if (undet == 0) return false;
    assign.set(var_of(unit), is_positive(unit));
    trail.push_back(var_of(unit));
    queue.push_back(var_of(unit));
    return true;
  }

  // Propagates consequences of the queued assignments; false on conflict.
  bool propagate(std::vector<Var>& trail, std::vector<Var> queue) {
    while (!queue.empty()) {
      Var v = queue.back();
      queue.pop_back();
      for (int ci : by_var[v])
        if (!visit(ci, trail, queue)) return false;
    }
    return true;
  }

  Var pick() const {
    for (Var v = 1; v <= f.num_vars; ++v)
      if (assign.get(v) == 0) return v;
    return 0;
  }

  bool run(std::vector<Var> queue) {
    std::vector<Var> trail;
    if (!propagate(trail, std::move(queue))) {
      for (Var u : trail) assign.unset(u);
      return false;
    }
    Var v = pick();
    if (v == 0) return true;
    if (++decisions > limits.max_decisions)
      throw OracleError(OracleError::Code::BudgetExceeded, "decision budget exceeded");
    for (bool phase : {true, false}) {
      assign.set(v, phase);
      if (run({v})) return true;
      assign.unset(v);
    }
    for (Var u : trail) assign.unset(u);
    return false;
  }

  bool top() {
    // seed with units and detect empty clauses
    std::vector<Var> trail, queue;
    for (int ci = 0; ci < (int)f.clauses.size(); ++ci)
      if (!visit(ci, trail, queue)) return false;
    if (!propagate(trail, std::move(queue))) return false;
    Var v = pick();
    if (v == 0) return true;
    if (++decisions > limits.max_decisions)
      throw OracleError(OracleError::Code::BudgetExceeded, "decision budget exceeded");
    for (bool phase : {true, false}) {
      assign.set(v, phase);
      if (run({v})) return true;
      assign.unset(v);
    }
    return false;
  }
};

}  // namespace

SolveResult solve(const Cnf& f, const SolveLimits& limits) {
  Dpll d(f, limits);
  SolveResult res;
  res.sat = d.top();
  res.decisions = d.decisions;
  if (res.sat) res.model = d.assign;
  return res;
}

bool entails(const std::vector<Clause>& hyps, const Clause& concl, int max_vars) {
  std::set<Var> vars;
  for (const Clause& h : hyps)
    for (Lit l : h.lits()) vars.insert(var_of(l));
  for (Lit l : concl.lits()) vars.insert(var_of(l));
  if ((int)vars.size() > max_vars)
    throw OracleError(OracleError::Code::TooLarge,
                      "entailment over " + std::to_string(vars.size()) + " variables");
  Cnf q;
  q.num_vars = vars.empty() ? 0 : *vars.rbegin();
  q.clauses = hyps;
  for (Lit l : concl.lits()) q.clauses.push_back(Clause{-l});
  return !solve(q).sat;
}

}  // namespace stone
