#pragma once

#include <iosfwd>
#include <stdexcept>

#include "stone/clause.hpp"

namespace stone {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Standard DIMACS CNF: "c" comment lines, one "p cnf <vars> <clauses>" header,
// zero-terminated clauses.
Cnf read_dimacs(std::istream& in);
void write_dimacs(std::ostream& out, const Cnf& f);

Cnf read_dimacs_file(const std::string& path);
void write_dimacs_file(const std::string& path, const Cnf& f);

}  // namespace stone
