#include "stone/proof.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

namespace stone {

const char* system_name(System s) {
  switch (s) {
    case System::RegRTL: return "regRTL";
    case System::RegWRTL: return "regWRTL";
    case System::Pool: return "pool";
    case System::RegRTI: return "regRTI";
  }
  return "?";
}

std::optional<System> system_from_name(const std::string& name) {
  std::string low;
  for (char c : name) low += (char)tolower((unsigned char)c);
  if (low == "regrtl") return System::RegRTL;
  if (low == "regwrtl") return System::RegWRTL;
  if (low == "pool") return System::Pool;
  if (low == "regrti") return System::RegRTI;
  return std::nullopt;
}

std::vector<int> subtree_sizes(const Proof& p) {
  std::vector<int> sz(p.size() + 1, 1);
  for (int u = 1; u <= p.size(); ++u)
    if (p.node(u).kind == ProofNode::Kind::Inner)
      sz[u] = 1 + sz[p.node(u).left] + sz[p.node(u).right];
  return sz;
}

void validate_postorder(const Proof& p) {
  if (p.size() < 1) throw ParseError("empty proof");
  std::vector<int> sz(p.size() + 1, 1);
  for (int u = 1; u <= p.size(); ++u) {
    const ProofNode& nd = p.node(u);
    if (nd.kind == ProofNode::Kind::Inner) {
      if (nd.left < 1 || nd.right < 1 || nd.left >= u || nd.right >= u)
        throw ParseError("node " + std::to_string(u) + ": children must precede it");
      if (nd.right != u - 1)
        throw ParseError("node " + std::to_string(u) + ": not in postorder");
      sz[u] = 1 + sz[nd.left] + sz[nd.right];
      if (nd.left != u - 1 - sz[nd.right])
        throw ParseError("node " + std::to_string(u) + ": subtree blocks not contiguous");
    } else if (nd.kind == ProofNode::Kind::Lemma) {
      if (nd.target < 1 || nd.target > p.size())
        throw ParseError("node " + std::to_string(u) + ": lemma target out of range");
    }
  }
  if (sz[p.root()] != p.size())
    throw ParseError("nodes do not form a single tree rooted at the last node");
}

std::vector<int> parent_of(const Proof& p) {
  std::vector<int> par(p.size() + 1, 0);
  for (int u = 1; u <= p.size(); ++u)
    if (p.node(u).kind == ProofNode::Kind::Inner) {
      par[p.node(u).left] = u;
      par[p.node(u).right] = u;
    }
  return par;
}

std::vector<int> preorder_rank(const Proof& p) {
  std::vector<int> rank(p.size() + 1, 0);
  int next = 1;
  std::vector<int> stack{p.root()};
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    rank[u] = next++;
    const ProofNode& nd = p.node(u);
    if (nd.kind == ProofNode::Kind::Inner) {
      stack.push_back(nd.right);  // left explored first
      stack.push_back(nd.left);
    }
  }
  return rank;
}

Clause cpool(const Proof& p, int node) {
  std::vector<int> par = parent_of(p);
  Clause acc;
  for (int u = node; u != 0; u = par[u]) acc = clause_union(acc, p.node(u).clause);
  return acc;
}

std::vector<bool> input_derivation_flags(const Proof& p) {
  std::unordered_set<Clause, ClauseHash> gamma;
  if (p.over)
    for (const Clause& c : p.over->clauses) gamma.insert(c);
  auto qualifies = [&](int child) {
    const ProofNode& c = p.node(child);
    if (c.kind != ProofNode::Kind::Inner) return true;
    return gamma.count(c.clause) > 0;
  };
  std::vector<bool> input(p.size() + 1, true);
  for (int u = 1; u <= p.size(); ++u) {
    const ProofNode& nd = p.node(u);
    if (nd.kind != ProofNode::Kind::Inner) continue;
    input[u] = input[nd.left] && input[nd.right] &&
               (qualifies(nd.left) || qualifies(nd.right));
  }
  return input;
}

bool is_input_derivation(const Proof& p, int node) {
  return input_derivation_flags(p)[node];
}

namespace {

std::vector<Clause> collect_learned(const Proof& p, int node, bool need_preorder) {
  std::vector<Clause> out;
  std::unordered_set<Clause, ClauseHash> seen;
  auto push = [&](const Clause& c) {
    if (seen.insert(c).second) out.push_back(c);
  };
  if (p.over)
    for (const Clause& c : p.over->clauses) push(c);
  const bool input_only = p.system == System::RegRTI;
  std::vector<bool> input;
  if (input_only) input = input_derivation_flags(p);
  std::vector<int> pre;
  if (need_preorder) pre = preorder_rank(p);
  for (int u = 1; u < node; ++u) {
    if (input_only && !input[u]) continue;
    if (need_preorder && pre[u] >= pre[node]) continue;
    push(p.node(u).clause);
  }
  return out;
}

}  // namespace

std::vector<Clause> learned_at(const Proof& p, int node) {
  return collect_learned(p, node, false);
}

std::vector<Clause> prior_learned_at(const Proof& p, int node) {
  return collect_learned(p, node, true);
}

void bind_formula(Proof& p, const Cnf& gamma) {
  p.over = &gamma;
  for (int u = 1; u <= p.size(); ++u) {
    ProofNode& nd = p.node(u);
    if (nd.kind == ProofNode::Kind::Axiom) {
      if (nd.axiom >= 1 && nd.axiom <= (int)gamma.clauses.size())
        nd.clause = gamma.clauses[nd.axiom - 1];
    } else if (nd.kind == ProofNode::Kind::Lemma) {
      if (nd.target >= 1 && nd.target < u) nd.clause = p.node(nd.target).clause;
    }
  }
}

Proof read_proof(std::istream& in) {
  Proof p;
  std::string line;
  bool have_header = false;
  int expected = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ls(line);
    std::string tok;
    ls >> tok;
    if (tok == "p") {
      std::string kind, sys;
      if (!(ls >> kind >> sys >> expected) || kind != "proof")
        throw ParseError("bad proof header: " + line);
      auto s = system_from_name(sys);
      if (!s) throw ParseError("unknown proof system: " + sys);
      p.system = *s;
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError("proof node before header");
    ProofNode nd;
    if (tok == "a") {
      nd.kind = ProofNode::Kind::Axiom;
      if (!(ls >> nd.axiom) || nd.axiom < 1) throw ParseError("bad axiom line: " + line);
    } else if (tok == "l") {
      nd.kind = ProofNode::Kind::Lemma;
      if (!(ls >> nd.target) || nd.target < 1) throw ParseError("bad lemma line: " + line);
    } else if (tok == "r" || tok == "d" || tok == "w") {
      nd.kind = ProofNode::Kind::Inner;
      nd.rule = tok == "r" ? Rule::Standard : tok == "d" ? Rule::Degenerate : Rule::W;
      Lit l;
      std::vector<Lit> lits;
      if (!(ls >> nd.pivot >> nd.left >> nd.right) || nd.pivot < 1)
        throw ParseError("bad inner node line: " + line);
      bool terminated = false;
      while (ls >> l) {
        if (l == 0) {
          terminated = true;
          break;
        }
        lits.push_back(l);
      }
      if (!terminated) throw ParseError("inner node clause not terminated by 0: " + line);
      nd.clause = Clause(lits);
      if (nd.clause.tautological())
        throw ParseError("inner node clause contains a complementary pair: " + line);
    } else {
      throw ParseError("unexpected proof line: " + line);
    }
    p.nodes.push_back(std::move(nd));
  }
  if (!have_header) throw ParseError("missing proof header");
  if (p.size() != expected)
    throw ParseError("node count mismatch: header says " + std::to_string(expected) +
                     ", found " + std::to_string(p.size()));
  validate_postorder(p);
  return p;
}

void write_proof(std::ostream& out, const Proof& p) {
  out << "p proof " << system_name(p.system) << ' ' << p.size() << '\n';
  for (int u = 1; u <= p.size(); ++u) {
    const ProofNode& nd = p.node(u);
    switch (nd.kind) {
      case ProofNode::Kind::Axiom:
        out << "a " << nd.axiom << '\n';
        break;
      case ProofNode::Kind::Lemma:
        out << "l " << nd.target << '\n';
        break;
      case ProofNode::Kind::Inner:
        out << rule_letter(nd.rule) << ' ' << nd.pivot << ' ' << nd.left << ' '
            << nd.right;
        for (Lit l : nd.clause.lits()) out << ' ' << l;
        out << " 0\n";
        break;
    }
  }
}

Proof read_proof_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_proof(in);
}

void write_proof_file(const std::string& path, const Proof& p) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open " + path + " for writing");
  write_proof(out, p);
}

}  // namespace stone
