#include <doctest.h>

#include "stone/check.hpp"
#include "stone/oracle.hpp"
#include "stone/wrtl.hpp"

using namespace stone;

TEST_CASE("skeleton refutation for the smallest ladder") {
  StoneInstance inst = generate_stone(ladder_family(3), 3);
  Proof p = build_regwrtl(inst);
  CHECK(p.node(p.root()).clause.empty());
  CheckReport rep = check_proof_as(p, inst.cnf, System::RegWRTL);
  CHECK(rep.accepted);

  // w-inferences appear only at the two designated cells of segment 1
  // (the only segment: n = 1): the (1, m-1) cell
  int w_count = 0;
  for (int u = 1; u <= p.size(); ++u)
    if (p.node(u).kind == ProofNode::Kind::Inner && p.node(u).rule == Rule::W) {
      ++w_count;
      CHECK(p.node(u).pivot == inst.vars.p(1, inst.m));
      CHECK(p.node(u).clause == Clause{-inst.vars.p(1, inst.m - 1)});
    }
  CHECK(w_count == 1);
}

TEST_CASE("spine pivots: each p(i,j) resolved once, no r-pivots on the spine") {
  StoneInstance inst = generate_stone(ladder_family(4), 4);
  Proof p = build_regwrtl(inst);
  REQUIRE(check_proof_as(p, inst.cnf, System::RegWRTL).accepted);
  // walk the skeleton: rows continue left, segment tops (cover axiom on the
  // left) continue right, and the walk leaves the spine at the first r-pivot
  std::vector<int> seen(inst.cnf.num_vars + 1, 0);
  int u = p.root();
  while (p.node(u).kind == ProofNode::Kind::Inner &&
         inst.vars.is_p(p.node(u).pivot)) {
    Var piv = p.node(u).pivot;
    CHECK(seen[piv] == 0);
    seen[piv] = 1;
    u = p.node(p.node(u).left).kind == ProofNode::Kind::Axiom ? p.node(u).right
                                                              : p.node(u).left;
  }
  // every p(i,j) of a non-source vertex was a spine pivot exactly once
  for (int i = 1; i <= inst.n(); ++i)
    for (int j = 1; j <= inst.m; ++j) CHECK(seen[inst.vars.p(i, j)] == 1);
}

TEST_CASE("right side over a predecessor pair") {
  // ladder(4): vertex 3 feeds vertex 2, the other predecessor of 2 is 4
  StoneInstance inst = generate_stone(ladder_family(4), 4);
  ProofBuilder B;
  LearnState st(inst.n(), inst.m);
  auto t = build_right_side(B, inst, 3, 1, st);
  CHECK(B.clause(t) == Clause{-inst.vars.p(3, 1), -inst.vars.r(1),
                              -inst.vars.p(2, 4), inst.vars.r(4)});
  Proof p = B.linearize(t, System::RegRTL);
  CHECK(check_proof(p, inst.cnf).accepted);
}

TEST_CASE("right side without the predecessor link") {
  // pyramid(3): vertex 3 is not a predecessor of vertex 2 (preds of 2 are 4,5)
  StoneInstance inst = generate_stone(pyramid_family(3), 6);
  ProofBuilder B;
  LearnState st(inst.n(), inst.m);
  auto t = build_right_side(B, inst, 3, 1, st);
  CHECK(B.clause(t) ==
        Clause{-inst.vars.r(1), -inst.vars.p(2, inst.m), inst.vars.r(inst.m)});
  Proof p = B.linearize(t, System::RegRTL);
  CHECK(check_proof(p, inst.cnf).accepted);
}

TEST_CASE("small stone counts still refute") {
  for (auto [N, m] : {std::pair{3, 1}, {4, 1}, {5, 2}, {4, 2}, {6, 3}}) {
    StoneInstance inst = generate_stone(ladder_family(N), m);
    Proof p = build_regwrtl(inst);
    CHECK(p.node(p.root()).clause.empty());
    CHECK(check_proof_as(p, inst.cnf, System::RegWRTL).accepted);
  }
}

TEST_CASE("pyramids refute too") {
  StoneInstance inst = generate_stone(pyramid_family(3), 6);
  Proof p = build_regwrtl(inst);
  CHECK(check_proof_as(p, inst.cnf, System::RegWRTL).accepted);
}

TEST_CASE("pool conversion end to end") {
  StoneInstance inst = generate_stone(ladder_family(3), 3);
  Proof p = build_regwrtl(inst);
  Proof q = convert_regwrtl_to_pool(p, inst.cnf);
  CHECK(q.size() == p.size());
  CHECK(check_proof_as(q, inst.cnf, System::Pool).accepted);
  for (int u = 1; u <= p.size(); ++u)
    CHECK(clause_subsumes(q.node(u).clause, p.node(u).clause));
}

TEST_CASE("semantic oracle agrees on the built refutation") {
  StoneInstance inst = generate_stone(ladder_family(3), 3);
  Proof p = build_regwrtl(inst);
  CHECK(check_semantic(p, inst.cnf).accepted);
}

TEST_CASE("w-inference count has the expected closed form") {
  // m >= 2: one w-cell in segment 1 plus one per interior segment; m = 1:
  // the degenerate spine chains n-1 w-inferences (none when n = 1)
  for (auto [N, m] : {std::pair{3, 3}, {4, 4}, {5, 3}, {6, 5}, {3, 1}, {5, 1},
                      {4, 2}, {6, 2}}) {
    StoneInstance inst = generate_stone(ladder_family(N), m);
    Proof p = build_regwrtl(inst);
    REQUIRE(check_proof_as(p, inst.cnf, System::RegWRTL).accepted);
    int w = 0;
    for (int u = 1; u <= p.size(); ++u)
      if (p.node(u).kind == ProofNode::Kind::Inner && p.node(u).rule == Rule::W) ++w;
    int n = inst.n();
    int expect = m >= 2 ? (n == 1 ? 1 : n - 1) : (n == 1 ? 0 : n - 1);
    CHECK(w == expect);
  }
}

TEST_CASE("irregular custom graphs refute across stone counts") {
  StoneGraph g = validate_graph(8, {{1, 2, 3}, {2, 4, 5}, {3, 4, 6}, {4, 5, 6},
                                    {5, 6, 7}, {6, 7, 8}});
  for (int m : {1, 2, 8}) {
    StoneInstance inst = generate_stone(g, m);
    Proof p = build_regwrtl(inst);
    CHECK(check_proof_as(p, inst.cnf, System::RegWRTL).accepted);
    Proof pool = convert_regwrtl_to_pool(p, inst.cnf);
    CHECK(check_proof_as(pool, inst.cnf, System::Pool).accepted);
  }
}
