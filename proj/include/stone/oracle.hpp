#pragma once

#include "stone/clause.hpp"

namespace stone {

struct OracleError : std::runtime_error {
  enum class Code { BudgetExceeded, TooLarge };
  Code code;
  OracleError(Code c, const std::string& what) : std::runtime_error(what), code(c) {}
};

struct SolveResult {
  bool sat = false;
  Assignment model;  // meaningful only when sat
  long decisions = 0;
};

struct SolveLimits {
  long max_decisions = 50'000'000;
};

// Plain DPLL with unit propagation, no learning. Branching is deterministic:
// lowest unassigned variable, true first.
SolveResult solve(const Cnf& f, const SolveLimits& limits = {});

// true iff every total assignment satisfying all hypotheses satisfies the
// conclusion. Decided by refuting hyps + unit negations of the conclusion.
bool entails(const std::vector<Clause>& hyps, const Clause& concl, int max_vars = 30);

}  // namespace stone
