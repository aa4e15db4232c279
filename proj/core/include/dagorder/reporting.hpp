#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dagorder/locality.hpp"

namespace dagorder {

/// One benchmark run: a (graph, algorithm, seed) tuple with its wall time
/// and named scalar metrics.
struct RunRecord {
  std::string graph;
  std::string algo;
  std::uint64_t seed = 0;
  double wall_time_s = 0.0;
  std::vector<std::pair<std::string, double>> metrics;

  const double* metric(const std::string& name) const;
};

std::string run_record_csv_header();
std::string run_record_csv_row(const RunRecord& r);
RunRecord make_run_record(std::string graph, std::string algo, std::uint64_t seed,
                          double wall_time_s, const LocalitySummary& s);

/// Reads a header-driven CSV with at least graph,algo,seed columns; every
/// other numeric column becomes a named metric.
std::vector<RunRecord> read_run_records_csv(std::istream& in);
std::vector<RunRecord> read_run_records_csv_file(const std::string& path);

struct ProfileCurve {
  std::string algo;
  std::vector<double> fraction;  ///< one entry per tau grid point
};

struct ProfileTable {
  std::vector<double> tau;       ///< log-spaced thresholds, tau[0] = 1
  std::vector<ProfileCurve> curves;
  std::vector<std::string> warnings;
};

/// Performance profile of one metric: for each algorithm and threshold tau,
/// the fraction of graphs on which the algorithm is within tau times the
/// best value for that graph. Values are aggregated over seeds by median.
/// Graphs with a non-positive best value are excluded (with a warning);
/// algorithms missing a graph count as never within threshold there.
ProfileTable performance_profile(std::span<const RunRecord> records, const std::string& metric,
                                 int grid_points = 64);

void write_profile_csv(std::ostream& out, const ProfileTable& table);

} // namespace dagorder
