#include "stone/graph.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "stone/dimacs.hpp"

namespace stone {

StoneGraph validate_graph(int num_vertices, const std::vector<PredRow>& rows) {
  const int N = num_vertices;
  const int n = (int)rows.size();
  if (N < 3 || n < 1)
    throw GraphError(GraphError::Code::TooSmall,
                     "need at least one non-source and two sources");
  if (n >= N)
    throw GraphError(GraphError::Code::SourceGap, "no sources: n must be < N");

  StoneGraph g;
  g.num_vertices = N;
  g.preds.assign(n + 1, {0, 0});
  std::vector<bool> seen(n + 1, false);
  for (const PredRow& row : rows) {
    int i = row[0], a = row[1], b = row[2];
    if (i < 1 || i > n || seen[i])
      throw GraphError(GraphError::Code::SourceGap,
                       "pred rows must cover exactly vertices 1.." + std::to_string(n));
    seen[i] = true;
    if (a > b) std::swap(a, b);
    if (a == b)
      throw GraphError(GraphError::Code::BadInDegree,
                       "vertex " + std::to_string(i) + " needs two distinct predecessors");
    if (a <= i || b <= i)
      throw GraphError(GraphError::Code::BadNumbering,
                       "edge into " + std::to_string(i) + " from a vertex not above it");
    if (b > N)
      throw GraphError(GraphError::Code::BadNumbering,
                       "predecessor of " + std::to_string(i) + " exceeds vertex count");
    g.preds[i] = {a, b};
  }

  // every vertex except the sink must feed some edge, else it is a second sink
  std::vector<bool> has_out(N + 1, false);
  for (int i = 1; i <= n; ++i) {
    has_out[g.preds[i].first] = true;
    has_out[g.preds[i].second] = true;
  }
  for (int v = 2; v <= N; ++v)
    if (!has_out[v])
      throw GraphError(GraphError::Code::MultipleSinks,
                       "vertex " + std::to_string(v) + " has no outgoing edge");
  return g;
}

StoneGraph ladder_family(int N) {
  if (N < 3) throw GraphError(GraphError::Code::TooSmall, "ladder needs N >= 3");
  std::vector<PredRow> rows;
  for (int i = 1; i <= N - 2; ++i) rows.push_back({i, i + 1, i + 2});
  return validate_graph(N, rows);
}

StoneGraph pyramid_family(int height) {
  if (height < 2) throw GraphError(GraphError::Code::TooSmall, "pyramid needs height >= 2");
  auto id = [](int row, int pos) { return (row - 1) * row / 2 + pos; };
  const int N = height * (height + 1) / 2;
  std::vector<PredRow> rows;
  for (int r = 1; r < height; ++r)
    for (int q = 1; q <= r; ++q)
      rows.push_back({id(r, q), id(r + 1, q), id(r + 1, q + 1)});
  return validate_graph(N, rows);
}

StoneGraph read_graph(std::istream& in) {
  std::string line, tok;
  int N = -1;
  std::vector<PredRow> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ls(line);
    ls >> tok;
    if (tok == "graph") {
      if (!(ls >> N)) throw ParseError("bad graph header: " + line);
    } else if (tok == "pred") {
      PredRow row{};
      if (!(ls >> row[0] >> row[1] >> row[2])) throw ParseError("bad pred row: " + line);
      rows.push_back(row);
    } else {
      throw ParseError("unexpected graph line: " + line);
    }
  }
  if (N < 0) throw ParseError("missing graph header");
  return validate_graph(N, rows);
}

void write_graph(std::ostream& out, const StoneGraph& g) {
  out << "graph " << g.num_vertices << '\n';
  for (int i = 1; i <= g.num_nonsources(); ++i)
    out << "pred " << i << ' ' << g.preds[i].first << ' ' << g.preds[i].second << '\n';
}

StoneGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_graph(in);
}

StoneGraph graph_from_family_spec(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw ParseError("family spec must be ladder:N, pyramid:h or file:PATH");
  const std::string kind = spec.substr(0, colon);
  const std::string arg = spec.substr(colon + 1);
  if (kind == "file") return read_graph_file(arg);
  int v = 0;
  try {
    v = std::stoi(arg);
  } catch (...) {
    throw ParseError("bad family parameter: " + spec);
  }
  if (kind == "ladder") return ladder_family(v);
  if (kind == "pyramid") return pyramid_family(v);
  throw ParseError("unknown family: " + kind);
}

}  // namespace stone
