#include "dagorder/reporting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "dagorder/errors.hpp"

namespace dagorder {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string format_value(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

} // namespace

const double* RunRecord::metric(const std::string& name) const {
  for (const auto& [key, value] : metrics)
    if (key == name) return &value;
  return nullptr;
}

std::string run_record_csv_header() {
  return "graph,algo,seed,wall_time_s,bandwidth,mla,cutwidth,median_edge_length,"
         "median_edge_cut,total_reuse,max_reuse,median_reuse";
}

std::string run_record_csv_row(const RunRecord& r) {
  std::ostringstream row;
  row << r.graph << ',' << r.algo << ',' << r.seed << ',' << format_value(r.wall_time_s);
  for (const auto& [name, value] : r.metrics) row << ',' << format_value(value);
  return row.str();
}

RunRecord make_run_record(std::string graph, std::string algo, std::uint64_t seed,
                          double wall_time_s, const LocalitySummary& s) {
  RunRecord r;
  r.graph = std::move(graph);
  r.algo = std::move(algo);
  r.seed = seed;
  r.wall_time_s = wall_time_s;
  r.metrics = {
      {"bandwidth", static_cast<double>(s.bandwidth)},
      {"mla", static_cast<double>(s.mla)},
      {"cutwidth", static_cast<double>(s.cutwidth)},
      {"median_edge_length", static_cast<double>(s.median_edge_length)},
      {"median_edge_cut", static_cast<double>(s.median_edge_cut)},
      {"total_reuse", static_cast<double>(s.total_reuse)},
      {"max_reuse", static_cast<double>(s.max_reuse)},
      {"median_reuse", static_cast<double>(s.median_reuse)},
  };
  return r;
}

std::vector<RunRecord> read_run_records_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw io_error("run records: empty stream");
  const std::vector<std::string> header = split_csv_line(line);
  auto column = [&](const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return static_cast<std::ptrdiff_t>(i);
    return static_cast<std::ptrdiff_t>(-1);
  };
  const std::ptrdiff_t graph_col = column("graph");
  const std::ptrdiff_t algo_col = column("algo");
  const std::ptrdiff_t seed_col = column("seed");
  const std::ptrdiff_t wall_col = column("wall_time_s");
  if (graph_col < 0 || algo_col < 0 || seed_col < 0)
    throw io_error("run records: header must contain graph,algo,seed");

  std::vector<RunRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != header.size())
      throw io_error("run records: row width mismatch in '" + line + "'");
    RunRecord r;
    r.graph = fields[graph_col];
    r.algo = fields[algo_col];
    try {
      r.seed = std::stoull(fields[seed_col]);
      if (wall_col >= 0) r.wall_time_s = std::stod(fields[wall_col]);
      for (std::size_t i = 0; i < fields.size(); ++i) {
        const auto idx = static_cast<std::ptrdiff_t>(i);
        if (idx == graph_col || idx == algo_col || idx == seed_col || idx == wall_col) continue;
        r.metrics.emplace_back(header[i], std::stod(fields[i]));
      }
    } catch (const std::exception&) {
      throw io_error("run records: malformed numeric field in '" + line + "'");
    }
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<RunRecord> read_run_records_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open '" + path + "'");
  return read_run_records_csv(in);
}

ProfileTable performance_profile(std::span<const RunRecord> records, const std::string& metric,
                                 int grid_points) {
  if (grid_points < 2) throw validation_error("performance_profile: need >= 2 grid points");

  // (graph, algo) -> seed values; aggregate by median.
  std::map<std::pair<std::string, std::string>, std::vector<double>> cells;
  std::set<std::string> graphs, algos;
  for (const RunRecord& r : records) {
    const double* value = r.metric(metric);
    if (value == nullptr)
      throw validation_error("performance_profile: record lacks metric '" + metric + "'");
    cells[{r.graph, r.algo}].push_back(*value);
    graphs.insert(r.graph);
    algos.insert(r.algo);
  }
  if (graphs.empty() || algos.empty())
    throw validation_error("performance_profile: need >= 1 algorithm and >= 1 graph");

  auto median_of = [](std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    return v[(v.size() - 1) / 2];
  };

  ProfileTable table;
  std::vector<std::string> kept_graphs;
  std::map<std::pair<std::string, std::string>, double> value_of;
  for (auto& [key, values] : cells) value_of[key] = median_of(values);

  std::map<std::string, double> best;
  for (const std::string& g : graphs) {
    double b = std::numeric_limits<double>::infinity();
    for (const std::string& a : algos) {
      auto it = value_of.find({g, a});
      if (it != value_of.end()) b = std::min(b, it->second);
    }
    if (!(b > 0.0) || !std::isfinite(b)) {
      table.warnings.push_back("graph '" + g + "' excluded: non-positive best value for '" +
                               metric + "'");
      continue;
    }
    best[g] = b;
    kept_graphs.push_back(g);
  }
  if (kept_graphs.empty())
    throw validation_error("performance_profile: no graph with positive best value");

  double max_ratio = 1.0;
  std::map<std::pair<std::string, std::string>, double> ratio;
  for (const std::string& g : kept_graphs) {
    for (const std::string& a : algos) {
      auto it = value_of.find({g, a});
      if (it == value_of.end()) {
        ratio[{g, a}] = std::numeric_limits<double>::infinity();
        table.warnings.push_back("algo '" + a + "' has no record for graph '" + g + "'");
      } else {
        const double rr = it->second / best[g];
        ratio[{g, a}] = rr;
        max_ratio = std::max(max_ratio, rr);
      }
    }
  }

  table.tau.resize(grid_points);
  const double log_max = std::log(max_ratio);
  for (int i = 0; i < grid_points; ++i) {
    table.tau[i] = max_ratio == 1.0
                       ? 1.0
                       : std::exp(log_max * static_cast<double>(i) /
                                  static_cast<double>(grid_points - 1));
  }
  table.tau.front() = 1.0;
  table.tau.back() = max_ratio;

  const double denom = static_cast<double>(kept_graphs.size());
  for (const std::string& a : algos) {
    ProfileCurve curve;
    curve.algo = a;
    curve.fraction.resize(grid_points, 0.0);
    for (int i = 0; i < grid_points; ++i) {
      std::int64_t within = 0;
      for (const std::string& g : kept_graphs)
        if (ratio[{g, a}] <= table.tau[i] * (1.0 + 1e-12)) ++within;
      curve.fraction[i] = static_cast<double>(within) / denom;
    }
    table.curves.push_back(std::move(curve));
  }
  return table;
}

void write_profile_csv(std::ostream& out, const ProfileTable& table) {
  out << "algo,tau,fraction\n";
  for (const ProfileCurve& curve : table.curves)
    for (std::size_t i = 0; i < table.tau.size(); ++i)
      out << curve.algo << ',' << format_value(table.tau[i]) << ','
          << format_value(curve.fraction[i]) << '\n';
}

} // namespace dagorder
