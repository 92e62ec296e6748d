#pragma once

#include <array>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace stone {

struct GraphError : std::runtime_error {
  enum class Code { TooSmall, BadNumbering, MultipleSinks, SourceGap, BadInDegree, Malformed };
  Code code;
  GraphError(Code c, const std::string& what) : std::runtime_error(what), code(c) {}
};

// Single-sink dag over vertices 1..N. Vertex 1 is the sink, vertices n+1..N
// are the sources, and every edge (i',i) has i' > i. Each non-source vertex
// i in 1..n stores its two predecessors as an ordered pair with first < second.
struct StoneGraph {
  int num_vertices = 0;                          // N
  std::vector<std::pair<int, int>> preds;        // index 1..n; index 0 unused

  int num_nonsources() const { return (int)preds.size() - 1; }  // n
  bool is_source(int i) const { return i > num_nonsources(); }
  const std::pair<int, int>& pred_pair(int i) const { return preds[i]; }
};

// Raw row "pred i i1 i2".
using PredRow = std::array<int, 3>;

// Checks vertex numbering, in-degrees, source contiguity and sink uniqueness.
StoneGraph validate_graph(int num_vertices, const std::vector<PredRow>& rows);

// preds(i) = (i+1, i+2); sources N-1 and N.
StoneGraph ladder_family(int N);

// Triangular grid of the given height; row r (sink row is 1) has r vertices and
// each vertex's predecessors are its two upper neighbours. N = h(h+1)/2.
StoneGraph pyramid_family(int height);

// Text format: "graph N" then one "pred i i1 i2" line per non-source i.
StoneGraph read_graph(std::istream& in);
void write_graph(std::ostream& out, const StoneGraph& g);
StoneGraph read_graph_file(const std::string& path);

// "ladder:N" | "pyramid:h" | "file:PATH"
StoneGraph graph_from_family_spec(const std::string& spec);

}  // namespace stone
