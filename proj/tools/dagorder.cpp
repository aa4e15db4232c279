// dagorder: generate, convert, partition, order and measure directed graphs.
//
// Exit codes: 0 success, 1 usage, 2 I/O, 3 validation failure. Errors are
// printed to stderr as one JSON object per failure.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dagorder/acyclic.hpp"
#include "dagorder/bipartition.hpp"
#include "dagorder/errors.hpp"
#include "dagorder/graph.hpp"
#include "dagorder/ingest.hpp"
#include "dagorder/locality.hpp"
#include "dagorder/reporting.hpp"
#include "dagorder/serialize.hpp"
#include "dagorder/spectral.hpp"
#include "dagorder/synthgen.hpp"
#include "dagorder/toporder.hpp"

namespace {

using namespace dagorder;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitValidation = 3;

std::uint64_t env_seed_default() {
  if (const char* env = std::getenv("DAGORDER_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw validation_error("DAGORDER_SEED is not a valid unsigned integer");
    }
  }
  return 0;
}

int env_threads_default() {
  if (const char* env = std::getenv("DAGORDER_THREADS")) {
    try {
      const int t = std::stoi(env);
      if (t < 1) throw validation_error("DAGORDER_THREADS must be >= 1");
      return t;
    } catch (const validation_error&) {
      throw;
    } catch (const std::exception&) {
      throw validation_error("DAGORDER_THREADS is not a valid integer");
    }
  }
  return 1;
}

std::string stem_of(const std::string& path) { return fs::path(path).stem().string(); }

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw io_error("write failed for '" + path + "'");
}

// Appends a CSV row, emitting the header when the file is new or empty.
void append_csv_row(const std::string& path, const std::string& header, const std::string& row) {
  const bool need_header = !fs::exists(path) || fs::file_size(path) == 0;
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  if (need_header) out << header << '\n';
  out << row << '\n';
  if (!out) throw io_error("write failed for '" + path + "'");
}

SpectralConfig spectral_config_for(const std::string& algo, const DiGraph& g,
                                   std::uint64_t seed) {
  SpectralConfig cfg;
  cfg.seed = seed;
  if (algo == "spectral-dir")
    cfg.c = default_direction_coefficient(g.num_edges());
  else
    cfg.c = 0.0;
  return cfg;
}

// ---------------------------------------------------------------- gen

struct GenArgs {
  std::string family = "er";
  vertex_t n = 1000;
  double p = 0.2;
  vertex_t k = 50;
  double p_int = 0.25;
  double p_ext = 0.2;
  double alpha = 0.05;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string out;
};

int run_gen(const GenArgs& a) {
  SynthConfig cfg;
  cfg.family = synth_family_from_string(a.family);
  cfg.n = a.n;
  cfg.p = a.p;
  cfg.k = a.k;
  cfg.p_int = a.p_int;
  cfg.p_ext = a.p_ext;
  cfg.alpha = a.alpha;
  cfg.seed = a.seed_set ? a.seed : env_seed_default();

  const SynthResult result = generate(cfg);
  write_edge_list_file(a.out, result.graph);

  nlohmann::json sidecar;
  sidecar["family"] = to_string(cfg.family);
  sidecar["n"] = cfg.n;
  sidecar["p"] = cfg.p;
  sidecar["k"] = cfg.k;
  sidecar["p_int"] = cfg.p_int;
  sidecar["p_ext"] = cfg.p_ext;
  sidecar["alpha"] = cfg.alpha;
  sidecar["seed"] = cfg.seed;
  std::vector<int> planted(result.planted.num_vertices());
  for (vertex_t v = 0; v < result.planted.num_vertices(); ++v)
    planted[v] = result.planted.in_t(v) ? 1 : 0;
  sidecar["planted"] = planted;
  write_text_file(a.out + ".json", sidecar.dump(2) + "\n");

  std::cout << "{\"vertices\":" << result.graph.num_vertices()
            << ",\"edges\":" << result.graph.num_edges() << "}\n";
  return kExitOk;
}

// ------------------------------------------------------------ convert

int run_convert(const std::string& in, const std::string& rule, const std::string& out) {
  const SparsePattern pattern = parse_matrix_market_file(in);
  nlohmann::json stats;
  stats["rule"] = rule;
  DiGraph g;
  if (rule == "raw") {
    PatternGraph pg = to_digraph(pattern);
    stats["symmetric_percent"] = pg.symmetric_edge_percent;
    g = std::move(pg.graph);
  } else if (rule == "partition") {
    g = acyclic_convert_partition_rule(pattern);
  } else {
    g = acyclic_convert_toporder_rule(pattern);
  }
  if (rule != "raw" && !is_acyclic(g))
    throw validation_error("convert: conversion produced a cyclic graph");
  stats["vertices"] = g.num_vertices();
  stats["edges"] = g.num_edges();
  write_edge_list_file(out, g);
  std::cout << stats.dump() << "\n";
  return kExitOk;
}

// ---------------------------------------------------------- partition

struct PartitionArgs {
  std::string in;
  std::string algo = "spectral-dir";
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string out;
  std::string metrics_out;
  std::string graph_id;
};

int run_partition(const PartitionArgs& a) {
  const DiGraph g = read_edge_list_file(a.in);
  const std::uint64_t seed = a.seed_set ? a.seed : env_seed_default();
  const SpectralConfig cfg = spectral_config_for(a.algo, g, seed);
  const BiPartition p =
      a.algo == "spectral-classic" ? classic_bipartition(g, cfg) : spectral_bipartition(g, cfg);

  const auto [fwd, bwd] = directed_cut_sizes(g, p);
  if (fwd < bwd) throw validation_error("partition: output failed the orientation validator");
  write_partition_csv_file(a.out, p);

  const PartitionMetrics m = partition_metrics(g, p);
  const std::string graph_id = a.graph_id.empty() ? stem_of(a.in) : a.graph_id;
  if (!a.metrics_out.empty())
    append_csv_row(a.metrics_out, partition_metrics_csv_header(),
                   partition_metrics_csv_row(graph_id, a.algo, seed, m));
  nlohmann::json j;
  j["con"] = m.con;
  j["rce"] = m.rce;
  j["wi"] = m.wi;
  j["rmce"] = m.rmce;
  j["s_size"] = p.s_size();
  j["t_size"] = p.t_size();
  std::cout << j.dump() << "\n";
  return kExitOk;
}

// ------------------------------------------------------------ acyclic

struct AcyclicArgs {
  std::string in;
  std::string part;
  double beta = 0.1;
  std::string out;
};

int run_acyclic(const AcyclicArgs& a) {
  const DiGraph g = read_edge_list_file(a.in);
  const BiPartition original = read_partition_csv_file(a.part);
  AcyclicFixConfig cfg;
  cfg.beta = a.beta;
  const BiPartition fixed = acyclic_fix(g, original, cfg);

  for (const Edge& e : g.edges())
    if (fixed.in_t(e.u) && !fixed.in_t(e.v))
      throw validation_error("acyclic: output failed the acyclicity validator");
  write_partition_csv_file(a.out, fixed);

  nlohmann::json j;
  j["npl"] = npl(original, fixed);
  if (g.num_edges() > 0) {
    const PartitionMetrics m = partition_metrics(g, fixed);
    j["con"] = m.con;
    j["rce"] = m.rce;
    j["wi"] = m.wi;
    j["rmce"] = m.rmce;
  }
  std::cout << j.dump() << "\n";
  return kExitOk;
}

// ----------------------------------------------------------- toporder

struct ToporderArgs {
  std::string in;
  std::string algo = "spectral-dir";
  std::uint64_t seed = 0;
  bool seed_set = false;
  int window = 5;
  std::string out;
  std::string record;
  std::string graph_id;
};

int run_toporder(const ToporderArgs& a) {
  const DiGraph g = read_edge_list_file(a.in);
  const std::uint64_t seed = a.seed_set ? a.seed : env_seed_default();

  const auto started = std::chrono::steady_clock::now();
  TopologicalOrder ord;
  if (a.algo == "spectral-dir" || a.algo == "spectral-classic") {
    const SpectralConfig cfg = spectral_config_for(a.algo, g, seed);
    ord = spectral_toporder(g, cfg).order;
  } else if (a.algo == "dfs") {
    ord = dfs_order(g);
  } else if (a.algo == "bfs") {
    ord = bfs_min_outdeg_order(g);
  } else if (a.algo == "cm") {
    ord = cuthill_mckee_acyclic(g);
  } else {
    ord = gorder_acyclic(g, a.window);
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  if (!validate_toporder(g, ord))
    throw validation_error("toporder: output failed the topological-order validator");
  write_order_file(a.out, ord);

  if (!a.record.empty()) {
    const std::string graph_id = a.graph_id.empty() ? stem_of(a.in) : a.graph_id;
    const RunRecord rec = make_run_record(graph_id, a.algo, seed, wall, locality_summary(g, ord));
    append_csv_row(a.record, run_record_csv_header(), run_record_csv_row(rec));
  }
  std::cout << "{\"vertices\":" << g.num_vertices() << ",\"wall_time_s\":" << wall << "}\n";
  return kExitOk;
}

// ------------------------------------------------------------ metrics

struct MetricsArgs {
  std::string graph;
  std::vector<std::string> orders;
  std::string out;
  std::string out_dir;
  std::string dist_out;
  int threads = 1;
  bool threads_set = false;
};

int run_metrics(const MetricsArgs& a) {
  const DiGraph g = read_edge_list_file(a.graph);
  if (a.orders.size() > 1 && a.out_dir.empty())
    throw validation_error("metrics: multiple --order inputs require --out-dir");
  if (a.orders.size() == 1 && a.out.empty() && a.out_dir.empty())
    throw validation_error("metrics: provide --out or --out-dir");

  const int threads = a.threads_set ? a.threads : env_threads_default();
  if (threads < 1) throw validation_error("metrics: threads must be >= 1");

  struct Task {
    std::string order_path;
    std::string out_path;
  };
  std::vector<Task> tasks;
  for (const std::string& order_path : a.orders) {
    std::string out_path;
    if (!a.out_dir.empty()) {
      fs::create_directories(a.out_dir);
      out_path = (fs::path(a.out_dir) / (stem_of(order_path) + ".metrics.json")).string();
    } else {
      out_path = a.out;
    }
    tasks.push_back({order_path, out_path});
  }

  // Tasks are independent; each writes only its own output file, so the
  // result does not depend on the worker count.
  std::vector<std::exception_ptr> failures(tasks.size());
  auto worker = [&](std::size_t begin, std::size_t step) {
    for (std::size_t i = begin; i < tasks.size(); i += step) {
      try {
        const TopologicalOrder ord = read_order_file(tasks[i].order_path);
        if (!validate_toporder(g, ord))
          throw validation_error("metrics: '" + tasks[i].order_path +
                                 "' is not a topological order of the graph");
        const LocalitySummary s = locality_summary(g, ord);
        write_text_file(tasks[i].out_path, locality_summary_json(s));
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  if (threads == 1 || tasks.size() <= 1) {
    worker(0, 1);
  } else {
    std::vector<std::thread> pool;
    const auto workers = static_cast<std::size_t>(std::min<int>(threads, tasks.size()));
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker, t, workers);
    for (std::thread& t : pool) t.join();
  }
  for (const std::exception_ptr& failure : failures)
    if (failure) std::rethrow_exception(failure);

  if (!a.dist_out.empty()) {
    if (tasks.size() != 1)
      throw validation_error("metrics: --dist-out needs exactly one --order");
    const TopologicalOrder ord = read_order_file(tasks[0].order_path);
    const auto write_dist = [&](const std::string& name, const Distribution& d) {
      std::ofstream out(a.dist_out + "." + name + ".csv", std::ios::binary);
      if (!out) throw io_error("cannot open distribution output for '" + name + "'");
      write_distribution_csv(out, name, d);
    };
    write_dist("edge_length", edge_length_distribution(g, ord));
    write_dist("edge_cut", edge_cut_distribution(g, ord));
    write_dist("reuse_distance", reuse_distance_distribution(access_pattern(g, ord)));
  }
  return kExitOk;
}

// ------------------------------------------------------------ profile

int run_profile(const std::string& records_path, const std::string& metric, int points,
                const std::string& out) {
  const std::vector<RunRecord> records = read_run_records_csv_file(records_path);
  const ProfileTable table = performance_profile(records, metric, points);
  for (const std::string& warning : table.warnings)
    std::cerr << "{\"warning\":" << nlohmann::json(warning).dump() << "}\n";
  std::ofstream file(out, std::ios::binary);
  if (!file) throw io_error("cannot open '" + out + "' for writing");
  write_profile_csv(file, table);
  return kExitOk;
}

// ------------------------------------------------------------ spyplot

int run_spyplot(const std::string& graph_path, const std::string& order_path,
                const std::string& out, int size) {
  const DiGraph g = read_edge_list_file(graph_path);
  const TopologicalOrder ord = read_order_file(order_path);
  if (ord.num_vertices() != g.num_vertices() || !validate_toporder(g, ord))
    throw validation_error("spyplot: order is not a topological order of the graph");
  if (g.num_vertices() == 0) throw validation_error("spyplot: empty graph");
  if (size < 1) throw validation_error("spyplot: size must be >= 1");

  const auto n = static_cast<std::int64_t>(g.num_vertices());
  const auto px = [&](vertex_t pos) {
    return static_cast<std::size_t>(static_cast<std::int64_t>(pos) * size / n);
  };
  std::vector<std::uint8_t> image(static_cast<std::size_t>(size) * size, 255);
  for (const Edge& e : g.edges()) {
    const std::size_t row = px(ord.position_of(e.u));
    const std::size_t col = px(ord.position_of(e.v));
    image[row * static_cast<std::size_t>(size) + col] = 0;
  }

  std::ofstream file(out, std::ios::binary);
  if (!file) throw io_error("cannot open '" + out + "' for writing");
  file << "P5\n" << size << ' ' << size << "\n255\n";
  file.write(reinterpret_cast<const char*>(image.data()), static_cast<std::streamsize>(image.size()));
  if (!file) throw io_error("write failed for '" + out + "'");
  return kExitOk;
}

void print_error(const char* kind, const std::string& message) {
  nlohmann::json j;
  j["kind"] = kind;
  j["error"] = message;
  std::cerr << j.dump() << "\n";
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"direction-incentivised spectral DAG ordering toolkit"};
  app.require_subcommand(1);

  GenArgs gen;
  CLI::App* cmd_gen = app.add_subcommand("gen", "generate a synthetic directed graph");
  cmd_gen->add_option("--family", gen.family, "er | ws | sbm")
      ->check(CLI::IsMember({"er", "ws", "sbm"}));
  cmd_gen->add_option("--n", gen.n, "vertex count (even)");
  cmd_gen->add_option("--p", gen.p, "ER edge probability / WS rewiring probability");
  cmd_gen->add_option("--k", gen.k, "WS ring degree (even)");
  cmd_gen->add_option("--p-int", gen.p_int, "SBM intra-part probability");
  cmd_gen->add_option("--p-ext", gen.p_ext, "SBM cross-part probability");
  cmd_gen->add_option("--alpha", gen.alpha, "alignment probability");
  cmd_gen->add_option("--seed", gen.seed)->each([&](const std::string&) { gen.seed_set = true; });
  cmd_gen->add_option("--out", gen.out, "edge-list output path")->required();

  std::string convert_in, convert_rule = "toporder", convert_out;
  CLI::App* cmd_convert = app.add_subcommand("convert", "Matrix Market to edge-list conversion");
  cmd_convert->add_option("--in", convert_in, "Matrix Market file")->required();
  cmd_convert->add_option("--rule", convert_rule, "partition | toporder | raw")
      ->check(CLI::IsMember({"partition", "toporder", "raw"}));
  cmd_convert->add_option("--out", convert_out, "edge-list output path")->required();

  PartitionArgs part;
  CLI::App* cmd_partition = app.add_subcommand("partition", "spectral bi-partition");
  cmd_partition->add_option("--in", part.in, "edge-list input")->required();
  cmd_partition->add_option("--algo", part.algo, "spectral-dir | spectral-classic")
      ->check(CLI::IsMember({"spectral-dir", "spectral-classic"}));
  cmd_partition->add_option("--seed", part.seed)->each([&](const std::string&) {
    part.seed_set = true;
  });
  cmd_partition->add_option("--out", part.out, "partition CSV output")->required();
  cmd_partition->add_option("--metrics-out", part.metrics_out, "append metrics CSV row here");
  cmd_partition->add_option("--graph-id", part.graph_id, "graph id for metrics rows");

  AcyclicArgs acyc;
  CLI::App* cmd_acyclic = app.add_subcommand("acyclic", "repair a bi-partition to acyclic");
  cmd_acyclic->add_option("--in", acyc.in, "edge-list input")->required();
  cmd_acyclic->add_option("--part", acyc.part, "partition CSV input")->required();
  cmd_acyclic->add_option("--beta", acyc.beta, "minimum part-size fraction");
  cmd_acyclic->add_option("--out", acyc.out, "repaired partition CSV output")->required();

  ToporderArgs top;
  CLI::App* cmd_toporder = app.add_subcommand("toporder", "topological-order layout");
  cmd_toporder->add_option("--in", top.in, "edge-list input")->required();
  cmd_toporder
      ->add_option("--algo", top.algo,
                   "spectral-dir | spectral-classic | dfs | bfs | cm | gorder")
      ->check(CLI::IsMember({"spectral-dir", "spectral-classic", "dfs", "bfs", "cm", "gorder"}));
  cmd_toporder->add_option("--seed", top.seed)->each([&](const std::string&) {
    top.seed_set = true;
  });
  cmd_toporder->add_option("--window", top.window, "gorder window size");
  cmd_toporder->add_option("--out", top.out, "order output path")->required();
  cmd_toporder->add_option("--record", top.record, "append a run record CSV row here");
  cmd_toporder->add_option("--graph-id", top.graph_id, "graph id for run records");

  MetricsArgs met;
  CLI::App* cmd_metrics = app.add_subcommand("metrics", "locality metrics of an order");
  cmd_metrics->add_option("--graph", met.graph, "edge-list input")->required();
  cmd_metrics->add_option("--order", met.orders, "order file (repeatable)")->required();
  cmd_metrics->add_option("--out", met.out, "JSON output path (single order)");
  cmd_metrics->add_option("--out-dir", met.out_dir, "output directory (one JSON per order)");
  cmd_metrics->add_option("--dist-out", met.dist_out, "distribution CSV prefix (single order)");
  cmd_metrics->add_option("--threads", met.threads)->each([&](const std::string&) {
    met.threads_set = true;
  });

  std::string prof_records, prof_metric, prof_out;
  int prof_points = 64;
  CLI::App* cmd_profile = app.add_subcommand("profile", "performance profile over run records");
  cmd_profile->add_option("--records", prof_records, "run-record CSV")->required();
  cmd_profile->add_option("--metric", prof_metric, "metric column name")->required();
  cmd_profile->add_option("--points", prof_points, "grid points");
  cmd_profile->add_option("--out", prof_out, "profile CSV output")->required();

  std::string spy_graph, spy_order, spy_out;
  int spy_size = 512;
  CLI::App* cmd_spyplot = app.add_subcommand("spyplot", "adjacency spy plot of an ordered graph");
  cmd_spyplot->add_option("--graph", spy_graph, "edge-list input")->required();
  cmd_spyplot->add_option("--order", spy_order, "order file")->required();
  cmd_spyplot->add_option("--out", spy_out, "PGM output path")->required();
  cmd_spyplot->add_option("--size", spy_size, "image side length in pixels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    print_error("usage", e.what());
    return kExitUsage;
  }

  try {
    if (cmd_gen->parsed()) return run_gen(gen);
    if (cmd_convert->parsed()) return run_convert(convert_in, convert_rule, convert_out);
    if (cmd_partition->parsed()) return run_partition(part);
    if (cmd_acyclic->parsed()) return run_acyclic(acyc);
    if (cmd_toporder->parsed()) return run_toporder(top);
    if (cmd_metrics->parsed()) return run_metrics(met);
    if (cmd_profile->parsed()) return run_profile(prof_records, prof_metric, prof_points, prof_out);
    if (cmd_spyplot->parsed()) return run_spyplot(spy_graph, spy_order, spy_out, spy_size);
  } catch (const io_error& e) {
    print_error("io", e.what());
    return kExitIo;
  } catch (const validation_error& e) {
    print_error("validation", e.what());
    return kExitValidation;
  } catch (const std::exception& e) {
    print_error("internal", e.what());
    return kExitValidation;
  }
  print_error("usage", "no subcommand given");
  return kExitUsage;
}
