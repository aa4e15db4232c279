#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dagorder/graph.hpp"

namespace dagorder {

/// Sparsity pattern of a Matrix Market coordinate file. Entries are 0-based,
/// deduplicated and sorted; symmetric storage is already expanded to both
/// (i,j) and (j,i).
struct SparsePattern {
  std::int64_t rows = 0;
  std::int64_t cols = 0;
  std::vector<Edge> entries;
  bool symmetric_header = false;
};

/// Parses a coordinate-format Matrix Market stream (pattern, real or integer
/// field; general or symmetric). Numeric values are discarded. Throws
/// io_error on malformed headers, out-of-bounds indices, or unsupported
/// formats (array storage, complex fields, skew symmetry).
SparsePattern parse_matrix_market(std::istream& in);
SparsePattern parse_matrix_market_file(const std::string& path);

/// Writes the pattern in coordinate/pattern/general form, entries sorted.
void write_matrix_market(std::ostream& out, const SparsePattern& p);

struct PatternGraph {
  DiGraph graph;
  /// Percentage (0..100) of edges whose reverse edge also exists.
  double symmetric_edge_percent = 0.0;
};

/// Edge (i,j) per off-diagonal entry. Requires a square pattern.
PatternGraph to_digraph(const SparsePattern& p);

/// Acyclic conversion used for bi-partition benchmarks: pick between the
/// strict upper (A_U) and strict lower (A_L) triangular parts by weak
/// connectivity, then edge density (ties to A_U); if neither part is weakly
/// connected, take the largest weakly connected component of the denser part
/// (relabelled to dense ids).
DiGraph acyclic_convert_partition_rule(const SparsePattern& p);

/// Acyclic conversion used for ordering benchmarks: the denser of A_U and
/// A_L, ties resolved in favour of A_U. No connectivity screening.
DiGraph acyclic_convert_toporder_rule(const SparsePattern& p);

/// Plain-text graph dump: a "# n=<count>" header line followed by one
/// "u v" line per edge in sorted order. Read/write is bit-exact.
void write_edge_list(std::ostream& out, const DiGraph& g);
DiGraph read_edge_list(std::istream& in);
void write_edge_list_file(const std::string& path, const DiGraph& g);
DiGraph read_edge_list_file(const std::string& path);

} // namespace dagorder
