#pragma once

#include <iosfwd>
#include <string>

#include "dagorder/bipartition.hpp"
#include "dagorder/graph.hpp"
#include "dagorder/locality.hpp"

namespace dagorder {

/// Order file: one vertex id per line; the position is the line number.
void write_order(std::ostream& out, const TopologicalOrder& ord);
TopologicalOrder read_order(std::istream& in);
void write_order_file(const std::string& path, const TopologicalOrder& ord);
TopologicalOrder read_order_file(const std::string& path);

/// Partition CSV: header "vertex,label", then one "v,S" or "v,T" row per
/// vertex in id order.
void write_partition_csv(std::ostream& out, const BiPartition& p);
BiPartition read_partition_csv(std::istream& in);
void write_partition_csv_file(const std::string& path, const BiPartition& p);
BiPartition read_partition_csv_file(const std::string& path);

/// One row of the partition-metrics table: graph,algo,seed,con,rce,wi,rmce.
std::string partition_metrics_csv_header();
std::string partition_metrics_csv_row(const std::string& graph_id, const std::string& algo,
                                      std::uint64_t seed, const PartitionMetrics& m);

/// Locality summary as a JSON object with the eight scalar keys.
std::string locality_summary_json(const LocalitySummary& s);

/// Distribution CSV: header "metric,value", a row per element.
void write_distribution_csv(std::ostream& out, const std::string& metric,
                            const Distribution& dist);

} // namespace dagorder
