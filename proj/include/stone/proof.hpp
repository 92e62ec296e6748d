#pragma once

#include <iosfwd>
#include <optional>

#include "stone/clause.hpp"
#include "stone/dimacs.hpp"

namespace stone {

enum class System { RegRTL, RegWRTL, Pool, RegRTI };

const char* system_name(System s);
std::optional<System> system_from_name(const std::string& name);

// One node of a tree-with-lemmas proof. Leaves are axioms (index into the
// formula) or lemmas (reference to an earlier node with the same clause);
// inner nodes carry a rule tag, a pivot variable and two children.
struct ProofNode {
  enum class Kind { Axiom, Lemma, Inner };
  Kind kind = Kind::Axiom;
  Clause clause;
  int axiom = 0;   // Axiom: 1-based index into the formula
  int target = 0;  // Lemma: id of the referenced occurrence
  Rule rule = Rule::Standard;
  Var pivot = 0;
  int left = 0, right = 0;
};

// Nodes are stored in postorder; ids are 1..size and the root is the last
// node. `over` points at the formula the proof is about (non-owning).
struct Proof {
  System system = System::RegRTL;
  std::vector<ProofNode> nodes;  // nodes[0] unused
  const Cnf* over = nullptr;

  Proof() { nodes.emplace_back(); }
  int size() const { return (int)nodes.size() - 1; }
  int root() const { return size(); }
  const ProofNode& node(int id) const { return nodes[id]; }
  ProofNode& node(int id) { return nodes[id]; }
};

// Structure helpers. parent_of()[root] == 0.
std::vector<int> subtree_sizes(const Proof& p);
std::vector<int> parent_of(const Proof& p);
// 1-based ranks; preorder visits node, left subtree, right subtree.
std::vector<int> preorder_rank(const Proof& p);

// Checks that ids really are a postorder numbering of one tree: each inner
// node's right child is id-1 and the two subtree blocks are contiguous.
void validate_postorder(const Proof& p);  // throws ParseError

// Union of the clause literals on the path from the root down to the node.
Clause cpool(const Proof& p, int node);

// A subtree is an input derivation when every inference in it has at least
// one hypothesis that is a leaf (axiom or lemma) or whose clause belongs to
// the formula. Computed for all nodes in one bottom-up sweep.
std::vector<bool> input_derivation_flags(const Proof& p);
bool is_input_derivation(const Proof& p, int node);

// Clauses available as lemmas just before `node` in postorder: the formula
// plus every clause derived earlier (for regRTI only input-derived ones).
std::vector<Clause> learned_at(const Proof& p, int node);

// The formula plus clauses with an occurrence before `node` in both postorder
// and preorder (for regRTI restricted to input-derived occurrences).
std::vector<Clause> prior_learned_at(const Proof& p, int node);

// Fills leaf clauses from the formula (axioms) and targets (lemmas) and sets
// `over`. Out-of-range axiom indices and forward lemma targets are left for
// the checker to report.
void bind_formula(Proof& p, const Cnf& gamma);

// Text format, one node per line in postorder:
//   p proof <system> <num-nodes>
//   a <axiom-index> | l <node-id> | r|d|w <pivot> <left> <right> <lit...> 0
Proof read_proof(std::istream& in);
void write_proof(std::ostream& out, const Proof& p);
Proof read_proof_file(const std::string& path);
void write_proof_file(const std::string& path, const Proof& p);

}  // namespace stone
