#include <chrono>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "stone/check.hpp"
#include "stone/dimacs.hpp"
#include "stone/graph.hpp"
#include "stone/instance.hpp"
#include "stone/oracle.hpp"
#include "stone/proof.hpp"
#include "stone/rti.hpp"
#include "stone/wrtl.hpp"

using namespace stone;

namespace {

StoneInstance make_instance(const std::string& family, int stones) {
  return generate_stone(graph_from_family_spec(family), stones);
}

int run_gen(const std::string& family, int stones, const std::string& out) {
  StoneInstance inst = make_instance(family, stones);
  if (out.empty())
    write_dimacs(std::cout, inst.cnf);
  else
    write_dimacs_file(out, inst.cnf);
  std::cerr << "c stone instance: N=" << inst.N() << " n=" << inst.n()
            << " m=" << inst.m << " vars=" << inst.cnf.num_vars
            << " clauses=" << inst.cnf.clauses.size() << '\n';
  return 0;
}

int run_build(const std::string& system, const std::string& family, int stones,
              const std::string& out, const std::string& trace_path) {
  StoneInstance inst = make_instance(family, stones);
  Proof proof;
  if (system == "regwrtl") {
    proof = build_regwrtl(inst);
  } else if (system == "regrti") {
    RtiTrace trace;
    std::ofstream trace_out;
    if (!trace_path.empty()) {
      trace_out.open(trace_path);
      if (!trace_out) {
        std::cerr << "cannot open trace file " << trace_path << '\n';
        return 2;
      }
      trace.log = &trace_out;
    }
    proof = build_regrti(inst, &trace);
    std::cerr << "c expansions=" << trace.expansions << " closures=" << trace.closures
              << " green=" << trace.green_closures << '\n';
  } else {
    std::cerr << "build supports systems regwrtl and regrti\n";
    return 2;
  }
  if (out.empty())
    write_proof(std::cout, proof);
  else
    write_proof_file(out, proof);
  CheckStats st = proof_stats(proof);
  std::cerr << "c proof size=" << st.size << " height=" << st.height
            << " lemmas=" << st.lemma_leaves << '\n';
  return 0;
}

int run_check(const std::string& system, const std::string& cnf_path,
              const std::string& proof_path, bool semantic, bool greedy) {
  Cnf gamma = read_dimacs_file(cnf_path);
  Proof proof = read_proof_file(proof_path);
  bind_formula(proof, gamma);
  System sys = proof.system;
  if (!system.empty()) {
    auto s = system_from_name(system);
    if (!s) {
      std::cerr << "unknown system " << system << '\n';
      return 2;
    }
    sys = *s;
  }
  CheckReport rep = check_proof_as(proof, gamma, sys);
  if (!rep.accepted) {
    std::cout << "REJECT " << rep.node << ' ' << reason_name(rep.reason) << '\n';
    return 1;
  }
  std::cout << "ACCEPT " << system_name(sys) << " size=" << rep.stats.size
            << " height=" << rep.stats.height << " lemmas=" << rep.stats.lemma_leaves
            << " pivots=" << rep.stats.distinct_pivots << '\n';
  if (semantic) {
    SemanticReport sem = check_semantic(proof, gamma);
    if (!sem.accepted) {
      std::cout << "REJECT " << sem.node << ' ' << sem.what << '\n';
      return 1;
    }
    std::cout << "SEMANTIC-ACCEPT\n";
  }
  if (greedy) {
    GreedyReport gr = check_greedy(proof, gamma);
    if (gr.greedy()) {
      std::cout << "GREEDY\n";
    } else {
      std::cout << "NOT-GREEDY " << gr.flagged.size() << " nodes";
      for (std::size_t i = 0; i < gr.flagged.size() && i < 10; ++i)
        std::cout << ' ' << gr.flagged[i].node;
      std::cout << '\n';
    }
  }
  return 0;
}

int run_topool(const std::string& cnf_path, const std::string& in_path,
               const std::string& out_path) {
  Cnf gamma = read_dimacs_file(cnf_path);
  Proof proof = read_proof_file(in_path);
  bind_formula(proof, gamma);
  Proof pool = convert_regwrtl_to_pool(proof, gamma);
  if (out_path.empty())
    write_proof(std::cout, pool);
  else
    write_proof_file(out_path, pool);
  return 0;
}

int run_oracle(const std::string& cnf_path, long budget) {
  Cnf f = read_dimacs_file(cnf_path);
  SolveLimits limits;
  if (budget > 0) limits.max_decisions = budget;
  SolveResult res = solve(f, limits);
  if (res.sat) {
    std::cout << "SAT decisions=" << res.decisions << '\n';
    std::cout << "v";
    for (Var v = 1; v <= f.num_vars; ++v)
      if (res.model.get(v) != 0) std::cout << ' ' << (res.model.get(v) > 0 ? v : -v);
    std::cout << " 0\n";
  } else {
    std::cout << "UNSAT decisions=" << res.decisions << '\n';
  }
  return 0;
}

int run_stats(const std::string& proof_path, const std::string& family, int stones,
              bool csv) {
  Proof proof = read_proof_file(proof_path);
  CheckStats st = proof_stats(proof);
  std::map<Var, long> pivot_hist;
  for (int u = 1; u <= proof.size(); ++u)
    if (proof.node(u).kind == ProofNode::Kind::Inner) ++pivot_hist[proof.node(u).pivot];
  double ratio = -1.0;
  int N = 0, m = stones;
  if (!family.empty() && stones > 0) {
    StoneGraph g = graph_from_family_spec(family);
    N = g.num_vertices;
    double denom = proof.system == System::RegRTI
                       ? (double)N * N * N * m * m * m * m
                       : (double)N * m * m * m;
    ratio = st.size / denom;
  }
  if (csv) {
    std::cout << "size,height,N,m,system,ratio\n";
    std::cout << st.size << ',' << st.height << ',' << N << ',' << m << ','
              << system_name(proof.system) << ',' << (ratio < 0 ? 0.0 : ratio) << '\n';
    return 0;
  }
  std::cout << "system " << system_name(proof.system) << '\n';
  std::cout << "size " << st.size << '\n';
  std::cout << "height " << st.height << '\n';
  std::cout << "lemma-leaves " << st.lemma_leaves << '\n';
  std::cout << "distinct-pivots " << st.distinct_pivots << '\n';
  if (ratio >= 0) {
    std::cout << (proof.system == System::RegRTI ? "size/(N^3*m^4) " : "size/(N*m^3) ")
              << ratio << '\n';
  }
  std::cout << "pivot-histogram\n";
  for (auto [v, cnt] : pivot_hist) std::cout << "  " << v << ' ' << cnt << '\n';
  return 0;
}

int run_fuzz(const std::string& system, const std::string& cnf_path,
             const std::string& proof_path, int count, std::uint64_t seed) {
  Cnf gamma = read_dimacs_file(cnf_path);
  Proof proof = read_proof_file(proof_path);
  bind_formula(proof, gamma);
  System sys = proof.system;
  if (!system.empty()) {
    auto s = system_from_name(system);
    if (!s) {
      std::cerr << "unknown system " << system << '\n';
      return 2;
    }
    sys = *s;
  }
  CheckReport base = check_proof_as(proof, gamma, sys);
  if (!base.accepted) {
    std::cerr << "baseline proof rejected: " << base.message << '\n';
    return 2;
  }
  int rejected = 0, accepted_sound = 0, accepted_unsound = 0;
  for (int i = 0; i < count; ++i) {
    Proof mut = mutate_proof(proof, seed + i);
    CheckReport rep = check_proof_as(mut, gamma, sys);
    if (!rep.accepted) {
      ++rejected;
      continue;
    }
    SemanticReport sem = check_semantic(mut, gamma);
    if (sem.accepted)
      ++accepted_sound;
    else
      ++accepted_unsound;
  }
  double rate = count > 0 ? 100.0 * rejected / count : 100.0;
  std::cout << "mutants=" << count << " rejected=" << rejected
            << " accepted-sound=" << accepted_sound
            << " accepted-unsound=" << accepted_unsound << " detection=" << rate
            << "%\n";
  return accepted_unsound == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stone instance generator, refutation builder and checker"};
  app.require_subcommand(1);

  std::string family = "ladder:3", system, cnf_path, proof_path, out_path, trace_path;
  int stones = 3, count = 1000;
  long budget = 0;
  std::uint64_t seed = 1;
  bool semantic = false, greedy = false, csv = false;

  auto* gen = app.add_subcommand("gen", "generate a Stone instance as DIMACS");
  gen->add_option("--family", family, "ladder:N | pyramid:h | file:PATH")->required();
  gen->add_option("--stones", stones, "number of stones m")->required();
  gen->add_option("--out", out_path, "output path (stdout when omitted)");

  auto* build = app.add_subcommand("build", "build a refutation");
  build->add_option("--system", system, "regwrtl | regrti")->required();
  build->add_option("--family", family, "ladder:N | pyramid:h | file:PATH")->required();
  build->add_option("--stones", stones, "number of stones m")->required();
  build->add_option("--out", out_path, "output path (stdout when omitted)");
  build->add_option("--trace", trace_path, "closure trace log (regrti only)");

  auto* check = app.add_subcommand("check", "check a proof file");
  check->add_option("--system", system, "regRTL | regWRTL | pool | regRTI");
  check->add_option("--cnf", cnf_path, "DIMACS file")->required();
  check->add_option("--proof", proof_path, "proof file")->required();
  check->add_flag("--semantic", semantic, "also run the semantic oracle");
  check->add_flag("--greedy", greedy, "also report the greedy diagnostic");

  auto* topool = app.add_subcommand("topool", "convert a regWRTL proof to pool");
  topool->add_option("--cnf", cnf_path, "DIMACS file")->required();
  topool->add_option("--proof", proof_path, "regWRTL proof file")->required();
  topool->add_option("--out", out_path, "output path (stdout when omitted)");

  auto* oracle = app.add_subcommand("oracle", "DPLL satisfiability oracle");
  oracle->add_option("--cnf", cnf_path, "DIMACS file")->required();
  oracle->add_option("--budget", budget, "decision budget");

  auto* stats = app.add_subcommand("stats", "print proof statistics");
  stats->add_option("--proof", proof_path, "proof file")->required();
  stats->add_option("--family", family, "instance family for bound ratios");
  stats->add_option("--stones", stones, "stones for bound ratios");
  stats->add_flag("--csv", csv, "emit one CSV row");

  auto* fuzz = app.add_subcommand("fuzz", "mutation campaign against the checker");
  fuzz->add_option("--system", system, "system to check mutants against");
  fuzz->add_option("--cnf", cnf_path, "DIMACS file")->required();
  fuzz->add_option("--proof", proof_path, "proof file")->required();
  fuzz->add_option("--count", count, "number of mutants");
  fuzz->add_option("--seed", seed, "base seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage errors
  }

  try {
    if (gen->parsed()) return run_gen(family, stones, out_path);
    if (build->parsed()) return run_build(system, family, stones, out_path, trace_path);
    if (check->parsed()) return run_check(system, cnf_path, proof_path, semantic, greedy);
    if (topool->parsed()) return run_topool(cnf_path, proof_path, out_path);
    if (oracle->parsed()) return run_oracle(cnf_path, budget);
    if (stats->parsed()) return run_stats(proof_path, family, stones, csv);
    if (fuzz->parsed()) return run_fuzz(system, cnf_path, proof_path, count, seed);
  } catch (const BuildError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code == BuildError::Code::StonesInsufficient ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
