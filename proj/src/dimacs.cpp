#include "stone/dimacs.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace stone {

Cnf read_dimacs(std::istream& in) {
  Cnf f;
  bool have_header = false;
  int expected_clauses = 0;
  std::string line;
  std::vector<Lit> cur;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c') continue;
    if (line[0] == 'p') {
      std::istringstream hs(line);
      std::string p, fmt;
      if (!(hs >> p >> fmt >> f.num_vars >> expected_clauses) || fmt != "cnf")
        throw ParseError("bad DIMACS header: " + line);
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError("clause before DIMACS header");
    std::istringstream ls(line);
    Lit l;
    while (ls >> l) {
      if (l == 0) {
        f.clauses.emplace_back(cur);
        cur.clear();
      } else {
        if (var_of(l) > f.num_vars)
          throw ParseError("literal " + std::to_string(l) + " exceeds declared variables");
        cur.push_back(l);
      }
    }
  }
  if (!have_header) throw ParseError("missing DIMACS header");
  if (!cur.empty()) throw ParseError("clause not terminated by 0");
  if ((int)f.clauses.size() != expected_clauses)
    throw ParseError("clause count mismatch: header says " + std::to_string(expected_clauses) +
                     ", found " + std::to_string(f.clauses.size()));
  return f;
}

void write_dimacs(std::ostream& out, const Cnf& f) {
  out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
  for (const Clause& c : f.clauses) {
    for (Lit l : c.lits()) out << l << ' ';
    out << "0\n";
  }
}

Cnf read_dimacs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_dimacs(in);
}

void write_dimacs_file(const std::string& path, const Cnf& f) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open " + path + " for writing");
  write_dimacs(out, f);
}

}  // namespace stone
