#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "dagorder/errors.hpp"
#include "dagorder/reporting.hpp"
#include "dagorder/serialize.hpp"

using namespace dagorder;

namespace {

RunRecord rec(const std::string& graph, const std::string& algo, double value) {
  RunRecord r;
  r.graph = graph;
  r.algo = algo;
  r.seed = 0;
  r.metrics = {{"mla", value}};
  return r;
}

const ProfileCurve& curve(const ProfileTable& t, const std::string& algo) {
  for (const ProfileCurve& c : t.curves)
    if (c.algo == algo) return c;
  throw std::logic_error("missing curve");
}

// fraction at the first grid point >= tau
double at_or_above(const ProfileTable& t, const std::string& algo, double tau) {
  const ProfileCurve& c = curve(t, algo);
  for (std::size_t i = 0; i < t.tau.size(); ++i)
    if (t.tau[i] >= tau * (1.0 - 1e-9)) return c.fraction[i];
  return c.fraction.back();
}

// fraction at the last grid point strictly below tau
double just_below(const ProfileTable& t, const std::string& algo, double tau) {
  const ProfileCurve& c = curve(t, algo);
  double out = c.fraction.front();
  for (std::size_t i = 0; i < t.tau.size(); ++i)
    if (t.tau[i] < tau * (1.0 - 1e-9)) out = c.fraction[i];
  return out;
}

} // namespace

TEST_CASE("run record CSV round trip") {
  LocalitySummary s;
  s.bandwidth = 3;
  s.mla = 17;
  s.cutwidth = 2;
  s.median_edge_length = 1;
  s.median_edge_cut = 2;
  s.total_reuse = 9;
  s.max_reuse = 4;
  s.median_reuse = 1;
  const RunRecord r = make_run_record("g1", "dfs", 7, 0.25, s);
  std::ostringstream out;
  out << run_record_csv_header() << '\n' << run_record_csv_row(r) << '\n';

  std::istringstream in(out.str());
  const auto records = read_run_records_csv(in);
  REQUIRE(records.size() == 1);
  CHECK(records[0].graph == "g1");
  CHECK(records[0].algo == "dfs");
  CHECK(records[0].seed == 7);
  CHECK(records[0].wall_time_s == doctest::Approx(0.25));
  REQUIRE(records[0].metric("mla") != nullptr);
  CHECK(*records[0].metric("mla") == 17.0);
  CHECK(records[0].metric("nonexistent") == nullptr);
}

TEST_CASE("run record CSV rejects malformed input") {
  std::istringstream missing("algo,seed\nx,1\n");
  CHECK_THROWS_AS(read_run_records_csv(missing), io_error);
  std::istringstream width("graph,algo,seed,mla\ng,a,1\n");
  CHECK_THROWS_AS(read_run_records_csv(width), io_error);
  std::istringstream numeric("graph,algo,seed,mla\ng,a,1,abc\n");
  CHECK_THROWS_AS(read_run_records_csv(numeric), io_error);
}

TEST_CASE("single-algorithm profile is identically one") {
  std::vector<RunRecord> records{rec("g1", "a", 3.0), rec("g2", "a", 5.0)};
  const ProfileTable t = performance_profile(records, "mla", 8);
  for (double f : curve(t, "a").fraction) CHECK(f == 1.0);
  CHECK(t.tau.front() == 1.0);
}

TEST_CASE("dominating algorithm starts at one") {
  std::vector<RunRecord> records{rec("g1", "a", 1.0), rec("g1", "b", 2.0),
                                 rec("g2", "a", 3.0), rec("g2", "b", 4.0)};
  const ProfileTable t = performance_profile(records, "mla", 16);
  CHECK(curve(t, "a").fraction.front() == 1.0);
  CHECK(curve(t, "b").fraction.front() == 0.0);
  CHECK(curve(t, "b").fraction.back() == 1.0);
}

TEST_CASE("three algorithms on four graphs match the hand computation") {
  std::vector<RunRecord> records{
      rec("g1", "a", 1.0), rec("g1", "b", 2.0),  rec("g1", "c", 4.0),
      rec("g2", "a", 2.0), rec("g2", "b", 1.0),  rec("g2", "c", 8.0),
      rec("g3", "a", 3.0), rec("g3", "b", 3.0),  rec("g3", "c", 3.0),
      rec("g4", "a", 5.0), rec("g4", "b", 10.0), rec("g4", "c", 1.0),
  };
  const ProfileTable t = performance_profile(records, "mla", 200);
  CHECK(t.tau.back() == doctest::Approx(10.0));

  CHECK(at_or_above(t, "a", 1.0) == doctest::Approx(0.5));
  CHECK(at_or_above(t, "b", 1.0) == doctest::Approx(0.5));
  CHECK(at_or_above(t, "c", 1.0) == doctest::Approx(0.5));

  CHECK(at_or_above(t, "a", 2.0) == doctest::Approx(0.75));
  CHECK(just_below(t, "a", 2.0) == doctest::Approx(0.5));
  CHECK(at_or_above(t, "b", 2.0) == doctest::Approx(0.75));
  CHECK(just_below(t, "c", 4.0) == doctest::Approx(0.5));
  CHECK(at_or_above(t, "c", 4.0) == doctest::Approx(0.75));

  CHECK(just_below(t, "a", 5.0) == doctest::Approx(0.75));
  CHECK(at_or_above(t, "a", 5.0) == doctest::Approx(1.0));
  CHECK(just_below(t, "b", 10.0) == doctest::Approx(0.75));
  CHECK(at_or_above(t, "b", 10.0) == doctest::Approx(1.0));
  CHECK(just_below(t, "c", 8.0) == doctest::Approx(0.75));
  CHECK(at_or_above(t, "c", 8.0) == doctest::Approx(1.0));

  for (const ProfileCurve& c : t.curves)
    for (std::size_t i = 1; i < c.fraction.size(); ++i)
      CHECK(c.fraction[i] >= c.fraction[i - 1]);
}

TEST_CASE("zero best values are excluded with a warning") {
  std::vector<RunRecord> records{rec("g1", "a", 0.0), rec("g1", "b", 2.0),
                                 rec("g2", "a", 1.0), rec("g2", "b", 2.0)};
  const ProfileTable t = performance_profile(records, "mla", 8);
  CHECK(t.warnings.size() == 1);
  CHECK(at_or_above(t, "a", 1.0) == 1.0);  // only g2 counts
  CHECK_THROWS_AS(
      performance_profile(std::vector<RunRecord>{rec("g1", "a", 0.0), rec("g1", "b", 1.0)},
                          "mla", 8),
      validation_error);
}

TEST_CASE("seeds aggregate by median") {
  std::vector<RunRecord> records{rec("g1", "a", 1.0), rec("g1", "a", 9.0), rec("g1", "a", 2.0),
                                 rec("g1", "b", 2.0)};
  // median of a on g1 is 2 -> both algorithms tie at ratio 1
  const ProfileTable t = performance_profile(records, "mla", 8);
  CHECK(at_or_above(t, "a", 1.0) == 1.0);
  CHECK(at_or_above(t, "b", 1.0) == 1.0);
}

TEST_CASE("profile csv output shape") {
  std::vector<RunRecord> records{rec("g1", "a", 1.0), rec("g1", "b", 2.0)};
  const ProfileTable t = performance_profile(records, "mla", 4);
  std::ostringstream out;
  write_profile_csv(out, t);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "algo,tau,fraction");
  int rows = 0;
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 8);  // 2 algos x 4 grid points
}

TEST_CASE("missing metric raises") {
  std::vector<RunRecord> records{rec("g1", "a", 1.0), rec("g1", "b", 2.0)};
  CHECK_THROWS_AS(performance_profile(records, "bandwidth", 8), validation_error);
}
