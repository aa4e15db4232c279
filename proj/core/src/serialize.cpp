#include "dagorder/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "dagorder/errors.hpp"

namespace dagorder {

namespace {

std::string format_metric(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

} // namespace

void write_order(std::ostream& out, const TopologicalOrder& ord) {
  for (vertex_t v : ord.sequence()) out << v << '\n';
}

TopologicalOrder read_order(std::istream& in) {
  std::vector<vertex_t> sequence;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      sequence.push_back(static_cast<vertex_t>(std::stol(line)));
    } catch (const std::exception&) {
      throw io_error("order file: malformed line '" + line + "'");
    }
  }
  return TopologicalOrder::from_sequence(std::move(sequence));
}

void write_order_file(const std::string& path, const TopologicalOrder& ord) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  write_order(out, ord);
  if (!out) throw io_error("write failed for '" + path + "'");
}

TopologicalOrder read_order_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open '" + path + "'");
  return read_order(in);
}

void write_partition_csv(std::ostream& out, const BiPartition& p) {
  out << "vertex,label\n";
  for (vertex_t v = 0; v < p.num_vertices(); ++v)
    out << v << ',' << (p.in_t(v) ? 'T' : 'S') << '\n';
}

BiPartition read_partition_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("vertex,label", 0) != 0)
    throw io_error("partition csv: expected 'vertex,label' header");
  std::vector<std::pair<vertex_t, std::uint8_t>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos)
      throw io_error("partition csv: malformed row '" + line + "'");
    vertex_t v = 0;
    try {
      v = static_cast<vertex_t>(std::stol(line.substr(0, comma)));
    } catch (const std::exception&) {
      throw io_error("partition csv: malformed vertex in '" + line + "'");
    }
    const std::string label = line.substr(comma + 1);
    if (label != "S" && label != "T")
      throw io_error("partition csv: label must be S or T in '" + line + "'");
    rows.emplace_back(v, label == "T" ? 1 : 0);
  }
  std::vector<std::uint8_t> in_t(rows.size(), 2);
  for (const auto& [v, side] : rows) {
    if (v < 0 || static_cast<std::size_t>(v) >= rows.size() || in_t[v] != 2)
      throw io_error("partition csv: vertex ids must cover 0..n-1 exactly once");
    in_t[v] = side;
  }
  return BiPartition(std::move(in_t));
}

void write_partition_csv_file(const std::string& path, const BiPartition& p) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  write_partition_csv(out, p);
  if (!out) throw io_error("write failed for '" + path + "'");
}

BiPartition read_partition_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open '" + path + "'");
  return read_partition_csv(in);
}

std::string partition_metrics_csv_header() { return "graph,algo,seed,con,rce,wi,rmce"; }

std::string partition_metrics_csv_row(const std::string& graph_id, const std::string& algo,
                                      std::uint64_t seed, const PartitionMetrics& m) {
  std::ostringstream row;
  row << graph_id << ',' << algo << ',' << seed << ',' << format_metric(m.con) << ','
      << format_metric(m.rce) << ',' << format_metric(m.wi) << ',' << format_metric(m.rmce);
  return row.str();
}

std::string locality_summary_json(const LocalitySummary& s) {
  nlohmann::json j;
  j["bandwidth"] = s.bandwidth;
  j["mla"] = s.mla;
  j["cutwidth"] = s.cutwidth;
  j["median_edge_length"] = s.median_edge_length;
  j["median_edge_cut"] = s.median_edge_cut;
  j["total_reuse"] = s.total_reuse;
  j["max_reuse"] = s.max_reuse;
  j["median_reuse"] = s.median_reuse;
  return j.dump(2) + "\n";
}

void write_distribution_csv(std::ostream& out, const std::string& metric,
                            const Distribution& dist) {
  out << "metric,value\n";
  for (std::int64_t v : dist.values()) out << metric << ',' << v << '\n';
}

} // namespace dagorder
