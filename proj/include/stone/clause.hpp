#pragma once

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace stone {

// Literals are DIMACS-style signed ints: +v is the variable v, -v its negation.
using Var = int;
using Lit = int;

inline Var var_of(Lit l) { return l < 0 ? -l : l; }
inline bool is_positive(Lit l) { return l > 0; }
inline Lit negate(Lit l) { return -l; }

// A clause is a set of literals kept as a sorted, duplicate-free array so that
// equality and hashing are exact. Order: by variable, positive before negative.
class Clause {
public:
  Clause() = default;
  Clause(std::initializer_list<Lit> ls) : lits_(ls) { canonize(); }
  explicit Clause(std::vector<Lit> ls) : lits_(std::move(ls)) { canonize(); }

  const std::vector<Lit>& lits() const { return lits_; }
  std::size_t size() const { return lits_.size(); }
  bool empty() const { return lits_.empty(); }

  bool contains(Lit l) const;
  bool has_var(Var v) const { return contains(v) || contains(-v); }
  // Both signs of some variable present.
  bool tautological() const;

  Clause without(Lit l) const;
  void add(Lit l);

  bool operator==(const Clause& o) const { return lits_ == o.lits_; }
  bool operator!=(const Clause& o) const { return lits_ != o.lits_; }
  bool operator<(const Clause& o) const { return lits_ < o.lits_; }

  std::size_t hash() const;
  std::string str() const;

private:
  void canonize();
  std::vector<Lit> lits_;
};

Clause clause_union(const Clause& a, const Clause& b);

struct ClauseHash {
  std::size_t operator()(const Clause& c) const { return c.hash(); }
};

// true iff a is a subset of b
bool clause_subsumes(const Clause& a, const Clause& b);

struct Cnf {
  int num_vars = 0;
  std::vector<Clause> clauses;
};

enum class Tri { False, True, Undetermined };

// Partial assignment, indexed by variable: 0 unset, +1 true, -1 false.
struct Assignment {
  std::vector<std::int8_t> val;
  explicit Assignment(int num_vars = 0) : val(num_vars + 1, 0) {}
  void ensure(Var v) {
    if (v >= (int)val.size()) val.resize(v + 1, 0);
  }
  void set(Var v, bool b) {
    ensure(v);
    val[v] = b ? 1 : -1;
  }
  void unset(Var v) { val[v] = 0; }
  int get(Var v) const { return v < (int)val.size() ? val[v] : 0; }
  bool satisfies(Lit l) const { return get(var_of(l)) == (is_positive(l) ? 1 : -1); }
  bool falsifies(Lit l) const { return get(var_of(l)) == (is_positive(l) ? -1 : 1); }
};

Tri evaluate(const Clause& c, const Assignment& a);

// Inference rules over a pivot variable. The pivot is taken positively in
// the left input and negatively in the right one.
enum class Rule { Standard, Degenerate, W };

enum class Side { Left, Right };

struct RuleError : std::runtime_error {
  enum class Code { StandardRuleViolation, SideConditionViolation };
  Code code;
  RuleError(Code c, const std::string& what) : std::runtime_error(what), code(c) {}
};

// Side condition for all three rules: -pivot must not occur in a, +pivot not in b.
// Standard requires +pivot in a and -pivot in b and yields (a \ p) u (b \ ~p).
// W yields the same union unconditionally. Degenerate falls back to one input
// when a pivot occurrence is missing; with neither present the caller picks a
// side (left by default).
Clause resolve(const Clause& a, const Clause& b, Var pivot, Rule rule,
               Side degenerate_side = Side::Left);

const char* rule_letter(Rule r);  // "r", "d", "w"

}  // namespace stone
