#include "dagorder/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "dagorder/errors.hpp"

namespace dagorder {

namespace {

std::string lowercase(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

bool next_content_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    std::size_t pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos) continue;   // blank
    if (line[pos] == '%') continue;           // comment
    return true;
  }
  return false;
}

} // namespace

SparsePattern parse_matrix_market(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw io_error("matrix market: empty stream");

  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (lowercase(banner) != "%%matrixmarket")
    throw io_error("matrix market: missing %%MatrixMarket banner");
  if (lowercase(object) != "matrix")
    throw io_error("matrix market: unsupported object '" + object + "'");
  if (lowercase(format) != "coordinate")
    throw io_error("matrix market: unsupported format '" + format + "' (coordinate only)");
  field = lowercase(field);
  if (field != "pattern" && field != "real" && field != "integer")
    throw io_error("matrix market: unsupported field '" + field + "'");
  symmetry = lowercase(symmetry);
  if (symmetry != "general" && symmetry != "symmetric")
    throw io_error("matrix market: unsupported symmetry '" + symmetry + "'");

  if (!next_content_line(in, line)) throw io_error("matrix market: missing size line");
  std::int64_t rows = 0, cols = 0, nnz = 0;
  {
    std::istringstream sizes(line);
    if (!(sizes >> rows >> cols >> nnz) || rows < 0 || cols < 0 || nnz < 0)
      throw io_error("matrix market: malformed size line '" + line + "'");
  }

  SparsePattern p;
  p.rows = rows;
  p.cols = cols;
  p.symmetric_header = symmetry == "symmetric";
  p.entries.reserve(static_cast<std::size_t>(p.symmetric_header ? 2 * nnz : nnz));

  for (std::int64_t k = 0; k < nnz; ++k) {
    if (!next_content_line(in, line))
      throw io_error("matrix market: expected " + std::to_string(nnz) + " entries, got " +
                     std::to_string(k));
    std::istringstream entry(line);
    std::int64_t i = 0, j = 0;
    if (!(entry >> i >> j))
      throw io_error("matrix market: malformed entry '" + line + "'");
    if (i < 1 || i > rows || j < 1 || j > cols)
      throw io_error("matrix market: entry (" + std::to_string(i) + "," + std::to_string(j) +
                     ") out of bounds for " + std::to_string(rows) + "x" + std::to_string(cols));
    const auto u = static_cast<vertex_t>(i - 1);
    const auto v = static_cast<vertex_t>(j - 1);
    p.entries.push_back({u, v});
    if (p.symmetric_header && u != v) p.entries.push_back({v, u});
  }

  std::sort(p.entries.begin(), p.entries.end());
  p.entries.erase(std::unique(p.entries.begin(), p.entries.end()), p.entries.end());
  return p;
}

SparsePattern parse_matrix_market_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open '" + path + "'");
  return parse_matrix_market(in);
}

void write_matrix_market(std::ostream& out, const SparsePattern& p) {
  out << "%%MatrixMarket matrix coordinate pattern general\n";
  out << p.rows << ' ' << p.cols << ' ' << p.entries.size() << '\n';
  for (const Edge& e : p.entries) out << e.u + 1 << ' ' << e.v + 1 << '\n';
}

PatternGraph to_digraph(const SparsePattern& p) {
  if (p.rows != p.cols)
    throw validation_error("to_digraph: pattern is not square (" + std::to_string(p.rows) + "x" +
                           std::to_string(p.cols) + ")");
  std::vector<Edge> edges;
  edges.reserve(p.entries.size());
  for (const Edge& e : p.entries)
    if (e.u != e.v) edges.push_back(e);

  PatternGraph out;
  out.graph = DiGraph(static_cast<vertex_t>(p.rows), edges);
  const auto all = out.graph.edges();
  std::int64_t with_reverse = 0;
  for (const Edge& e : all)
    if (std::binary_search(all.begin(), all.end(), Edge{e.v, e.u})) ++with_reverse;
  out.symmetric_edge_percent =
      all.empty() ? 0.0 : 100.0 * static_cast<double>(with_reverse) / static_cast<double>(all.size());
  return out;
}

namespace {

DiGraph triangular_part(const SparsePattern& p, bool upper) {
  std::vector<Edge> edges;
  for (const Edge& e : p.entries) {
    if (upper ? (e.u < e.v) : (e.u > e.v)) edges.push_back(e);
  }
  return DiGraph(static_cast<vertex_t>(p.rows), edges);
}

// |edges| / |vertices incident to at least one edge|; 0 for an edgeless part.
double edge_density(const DiGraph& g) {
  if (g.num_edges() == 0) return 0.0;
  std::int64_t touched = 0;
  for (vertex_t v = 0; v < g.num_vertices(); ++v)
    if (g.degree(v) > 0) ++touched;
  return static_cast<double>(g.num_edges()) / static_cast<double>(touched);
}

DiGraph largest_component_subgraph(const DiGraph& g) {
  auto components = weakly_connected_components(g);
  std::size_t best = 0;
  for (std::size_t i = 1; i < components.size(); ++i)
    if (components[i].size() > components[best].size()) best = i;
  const auto& keep = components[best];

  std::vector<vertex_t> relabel(g.num_vertices(), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) relabel[keep[i]] = static_cast<vertex_t>(i);
  std::vector<Edge> edges;
  for (const Edge& e : g.edges())
    if (relabel[e.u] != -1 && relabel[e.v] != -1) edges.push_back({relabel[e.u], relabel[e.v]});
  return DiGraph(static_cast<vertex_t>(keep.size()), edges);
}

void require_square(const SparsePattern& p, const char* who) {
  if (p.rows != p.cols) throw validation_error(std::string(who) + ": pattern is not square");
}

void require_edges(const DiGraph& g, const char* who) {
  if (g.num_edges() == 0) throw validation_error(std::string(who) + ": conversion yields an empty graph");
}

} // namespace

DiGraph acyclic_convert_partition_rule(const SparsePattern& p) {
  require_square(p, "acyclic_convert_partition_rule");
  DiGraph upper = triangular_part(p, true);
  DiGraph lower = triangular_part(p, false);
  const bool upper_conn = upper.num_edges() > 0 && is_weakly_connected(upper);
  const bool lower_conn = lower.num_edges() > 0 && is_weakly_connected(lower);

  DiGraph chosen;
  if (upper_conn != lower_conn) {
    chosen = upper_conn ? std::move(upper) : std::move(lower);
  } else if (upper_conn && lower_conn) {
    chosen = edge_density(upper) >= edge_density(lower) ? std::move(upper) : std::move(lower);
  } else {
    DiGraph denser = edge_density(upper) >= edge_density(lower) ? std::move(upper) : std::move(lower);
    require_edges(denser, "acyclic_convert_partition_rule");
    chosen = largest_component_subgraph(denser);
  }
  require_edges(chosen, "acyclic_convert_partition_rule");
  return chosen;
}

DiGraph acyclic_convert_toporder_rule(const SparsePattern& p) {
  require_square(p, "acyclic_convert_toporder_rule");
  DiGraph upper = triangular_part(p, true);
  DiGraph lower = triangular_part(p, false);
  DiGraph chosen = edge_density(upper) >= edge_density(lower) ? std::move(upper) : std::move(lower);
  require_edges(chosen, "acyclic_convert_toporder_rule");
  return chosen;
}

void write_edge_list(std::ostream& out, const DiGraph& g) {
  out << "# n=" << g.num_vertices() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

DiGraph read_edge_list(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw io_error("edge list: empty stream");
  std::int64_t n = -1;
  {
    std::istringstream header(line);
    std::string hash, decl;
    header >> hash >> decl;
    if (hash == "#" && decl.rfind("n=", 0) == 0) n = std::stoll(decl.substr(2));
    if (n < 0) throw io_error("edge list: expected '# n=<count>' header, got '" + line + "'");
  }
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream entry(line);
    std::int64_t u = 0, v = 0;
    if (!(entry >> u >> v)) throw io_error("edge list: malformed line '" + line + "'");
    edges.push_back({static_cast<vertex_t>(u), static_cast<vertex_t>(v)});
  }
  return DiGraph(static_cast<vertex_t>(n), edges);
}

void write_edge_list_file(const std::string& path, const DiGraph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  write_edge_list(out, g);
  if (!out) throw io_error("write failed for '" + path + "'");
}

DiGraph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open '" + path + "'");
  return read_edge_list(in);
}

} // namespace dagorder
