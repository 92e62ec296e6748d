#include "stone/clause.hpp"

#include <algorithm>

namespace stone {

namespace {
// var-major order, positive literal before negative
inline std::uint64_t lit_key(Lit l) {
  return (std::uint64_t)var_of(l) * 2 + (l < 0 ? 1 : 0);
}
inline bool lit_less(Lit a, Lit b) { return lit_key(a) < lit_key(b); }
}  // namespace

void Clause::canonize() {
  for (Lit l : lits_)
    if (l == 0) throw std::invalid_argument("zero literal in clause");
  std::sort(lits_.begin(), lits_.end(), lit_less);
  lits_.erase(std::unique(lits_.begin(), lits_.end()), lits_.end());
}

bool Clause::contains(Lit l) const {
  return std::binary_search(lits_.begin(), lits_.end(), l, lit_less);
}

bool Clause::tautological() const {
  for (std::size_t i = 0; i + 1 < lits_.size(); ++i)
    if (lits_[i] == -lits_[i + 1]) return true;
  return false;
}

Clause Clause::without(Lit l) const {
  Clause c;
  c.lits_.reserve(lits_.size());
  for (Lit x : lits_)
    if (x != l) c.lits_.push_back(x);
  return c;
}

void Clause::add(Lit l) {
  if (contains(l)) return;
  lits_.insert(std::upper_bound(lits_.begin(), lits_.end(), l, lit_less), l);
}

std::size_t Clause::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (Lit l : lits_) {
    h ^= (std::size_t)(std::uint32_t)l;
    h *= 1099511628211ull;
  }
  return h;
}

std::string Clause::str() const {
  std::string s = "{";
  for (std::size_t i = 0; i < lits_.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(lits_[i]);
  }
  return s + "}";
}

Clause clause_union(const Clause& a, const Clause& b) {
  std::vector<Lit> out;
  out.reserve(a.size() + b.size());
  std::merge(a.lits().begin(), a.lits().end(), b.lits().begin(), b.lits().end(),
             std::back_inserter(out), lit_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return Clause(std::move(out));
}

bool clause_subsumes(const Clause& a, const Clause& b) {
  return std::includes(b.lits().begin(), b.lits().end(), a.lits().begin(),
                       a.lits().end(), lit_less);
}

Tri evaluate(const Clause& c, const Assignment& a) {
  bool all_false = true;
  for (Lit l : c.lits()) {
    if (a.satisfies(l)) return Tri::True;
    if (!a.falsifies(l)) all_false = false;
  }
  return all_false ? Tri::False : Tri::Undetermined;
}

Clause resolve(const Clause& a, const Clause& b, Var pivot, Rule rule,
               Side degenerate_side) {
  if (pivot <= 0) throw std::invalid_argument("pivot must be a variable");
  if (a.contains(-pivot) || b.contains(pivot))
    throw RuleError(RuleError::Code::SideConditionViolation,
                    "pivot " + std::to_string(pivot) +
                        " occurs negatively in the left input or positively in the right");
  const bool in_a = a.contains(pivot);
  const bool in_b = b.contains(-pivot);
  switch (rule) {
    case Rule::Standard:
      if (!in_a || !in_b)
        throw RuleError(RuleError::Code::StandardRuleViolation,
                        "standard resolution needs the pivot in both inputs");
      return clause_union(a.without(pivot), b.without(-pivot));
    case Rule::W:
      return clause_union(a.without(pivot), b.without(-pivot));
    case Rule::Degenerate:
      if (in_a && in_b) return clause_union(a.without(pivot), b.without(-pivot));
      if (in_a && !in_b) return b;
      if (!in_a && in_b) return a;
      return degenerate_side == Side::Left ? a : b;
  }
  throw std::logic_error("unreachable");
}

const char* rule_letter(Rule r) {
  switch (r) {
    case Rule::Standard: return "r";
    case Rule::Degenerate: return "d";
    case Rule::W: return "w";
  }
  return "?";
}

}  // namespace stone
