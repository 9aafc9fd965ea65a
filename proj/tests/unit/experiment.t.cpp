#include "dartlab/experiment.hpp"

#include <boost/test/unit_test.hpp>

#include <fstream>
#include <random>
#include <sstream>

using namespace dartlab;
namespace fs = std::filesystem;

namespace {

ExperimentConfig
parseText(const std::string& text)
{
  std::istringstream is(text);
  return ExperimentConfig::parse(is, "t.conf");
}

void
expectConfigError(const std::string& text, const std::string& what)
{
  try {
    parseText(text);
    BOOST_ERROR("accepted: " + text);
  }
  catch (const ConfigError& e) {
    BOOST_CHECK_MESSAGE(std::string(e.what()).find(what) != std::string::npos,
                        "'" << e.what() << "' lacks '" << what << "'");
  }
}

/// fresh directory removed on scope exit
struct TempDir
{
  TempDir()
  {
    std::random_device rd;
    path = fs::temp_directory_path() / ("dartlab-test-" + std::to_string(rd()));
    fs::create_directories(path);
  }

  ~TempDir()
  {
    std::error_code ec;
    fs::remove_all(path, ec);
  }

  fs::path path;
};

std::string
slurp(const fs::path& p)
{
  std::ifstream is(p);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

ExperimentConfig
twoNodeConfig(const fs::path& dir)
{
  {
    std::ofstream os(dir / "two.topo");
    os << "node 0 0 0\nnode 1 10 0\nlink 0 1 15\nanchor /p 1\n";
  }
  ExperimentConfig cfg;
  cfg.topologyFile = dir / "two.topo";
  cfg.rates = {5, 20};
  cfg.seeds = {1, 2};
  cfg.catalogSize = 50;
  cfg.durationSec = 4;
  cfg.out = dir / "out";
  return cfg;
}

} // namespace

BOOST_AUTO_TEST_SUITE(TestExperiment)

BOOST_AUTO_TEST_CASE(Defaults)
{
  auto cfg = parseText("# nothing set\n\n");
  BOOST_CHECK_EQUAL(cfg.geometry.nodeCount, 50);
  BOOST_CHECK_EQUAL(cfg.rates.size(), 4);
  BOOST_CHECK_EQUAL(expandCells(cfg).size(), 2 * 2 * 4 * 3);
}

BOOST_AUTO_TEST_CASE(ParseValues)
{
  auto cfg = parseText("nodes = 20\nschemes = [ndn]\ncaching = [none, edge]\n"
                       "rates = [1, 2.5]\nseeds = [7]\naudit = off  # trailing comment\n"
                       "cs_capacity = 100\nproducers = 3\n");
  BOOST_CHECK_EQUAL(cfg.geometry.nodeCount, 20);
  BOOST_CHECK(cfg.schemes == std::vector<Scheme>{Scheme::Ndn});
  BOOST_CHECK((cfg.caching == std::vector<CachingMode>{CachingMode::None, CachingMode::Edge}));
  BOOST_CHECK((cfg.rates == std::vector<double>{1, 2.5}));
  BOOST_CHECK(!cfg.audit);
  BOOST_CHECK_EQUAL(cfg.csCapacity, 100);
  BOOST_CHECK_EQUAL(cfg.producers, 3);

  auto cells = expandCells(cfg);
  BOOST_REQUIRE_EQUAL(cells.size(), 4);
  BOOST_CHECK_EQUAL(cells[0].id(), "ndn_none_r1_s7");
  BOOST_CHECK_EQUAL(cells[3].id(), "ndn_edge_r2.5_s7");
}

BOOST_AUTO_TEST_CASE(ParseErrors)
{
  expectConfigError("nodes = 10\nbogus = 1\n", "t.conf:2: unknown key 'bogus'");
  expectConfigError("nodes = 10\nnodes = 11\n", "t.conf:2: duplicate key");
  expectConfigError("rates = [10, x]\n", "t.conf:1:");
  expectConfigError("rates = [10, 10]\n", "listed twice");
  expectConfigError("rates = [0]\n", "positive");
  expectConfigError("schemes = [ccn]\n", "unknown scheme");
  expectConfigError("caching = [onpath, onpath]\n", "listed twice");
  expectConfigError("seeds = [1, 1]\n", "repeats");
  expectConfigError("\n\njust words\n", "t.conf:3: expected 'key = value'");
  expectConfigError("nodes =\n", "missing value");
  expectConfigError("nodes = [1, 2]\n", "single value");
  expectConfigError("audit = maybe\n", "on or off");
  expectConfigError("duration = 0\n", "positive");
  expectConfigError("nodes = -3\n", "non-negative integer");
  BOOST_CHECK_THROW(ExperimentConfig::load("/nonexistent/x.conf"), ConfigError);
}

BOOST_AUTO_TEST_CASE(CanonicalRoundTrip)
{
  auto cfg = parseText("nodes = 20\narea = 33.5\nschemes = [ndn, dart]\nrates = [3, 1]\n"
                       "topology_seed = 9\ncs_capacity = 10\nout = some/dir\n");
  std::string text = cfg.canonical();
  auto again = parseText(text);
  BOOST_CHECK_EQUAL(again.canonical(), text);
  BOOST_CHECK_EQUAL(parseText(ExperimentConfig{}.canonical()).canonical(),
                    ExperimentConfig{}.canonical());
}

BOOST_AUTO_TEST_CASE(BuildNetworkProducers)
{
  ExperimentConfig cfg;
  cfg.geometry.nodeCount = 20;
  cfg.geometry.areaSide = 30;
  cfg.catalogSize = 100;
  auto all = buildNetwork(cfg, 1);
  BOOST_CHECK_EQUAL(all.topology.anchors().size(), 20);
  BOOST_CHECK_EQUAL(all.consumers.size(), 20);
  BOOST_CHECK_EQUAL(all.catalog.size(), 100);
  BOOST_CHECK_EQUAL(all.fibs.size(), 20);

  cfg.producers = 3;
  cfg.consumersPerRouter = 2;
  auto few = buildNetwork(cfg, 1);
  BOOST_CHECK_EQUAL(few.topology.anchors().size(), 3);
  BOOST_CHECK_EQUAL(few.consumers.size(), 40);
  BOOST_CHECK(buildNetwork(cfg, 1).topology.anchors() == few.topology.anchors());
}

BOOST_AUTO_TEST_CASE(RunAndCompare)
{
  TempDir tmp;
  auto cfg = twoNodeConfig(tmp.path);
  auto files = runExperiment(cfg);
  BOOST_CHECK_EQUAL(files.size(), 16);
  BOOST_CHECK(fs::exists(cfg.out / "manifest.txt"));
  std::string manifest = slurp(cfg.out / "manifest.txt");
  BOOST_CHECK(manifest.rfind("# config-hash fnv1a64:", 0) == 0);
  BOOST_CHECK(manifest.find("# cells 16") != std::string::npos);

  // reruns are byte-identical
  std::vector<std::string> first;
  for (const auto& f : files)
    first.push_back(slurp(f));
  auto again = runExperiment(cfg);
  BOOST_REQUIRE_EQUAL(again.size(), files.size());
  for (size_t i = 0; i < again.size(); ++i)
    BOOST_CHECK_MESSAGE(slurp(again[i]) == first[i], again[i].string() << " differs");
  BOOST_CHECK(slurp(cfg.out / "manifest.txt") == manifest);

  // parallel runs produce the same bytes
  cfg.jobs = 3;
  auto parallel = runExperiment(cfg);
  for (size_t i = 0; i < parallel.size(); ++i)
    BOOST_CHECK(slurp(parallel[i]) == first[i]);

  auto cmp = compareDirectory(cfg.out);
  BOOST_CHECK_EQUAL(cmp.rows.size(), 4);
  for (const auto& row : cmp.rows) {
    BOOST_CHECK_EQUAL(row.dart.cells, 2);
    BOOST_CHECK_EQUAL(row.ndn.cells, 2);
    BOOST_CHECK_GT(row.dart.interestsReceived, 0);
  }
  BOOST_CHECK(cmp.rateInvariance(CachingMode::OnPath) != "insufficient data");

  writeComparison(cmp, cfg.out);
  for (const char* f : {"summary.csv", "table-sizes.dat", "interests.dat", "delays.dat"})
    BOOST_CHECK(fs::exists(cfg.out / f));
  // summary.csv does not count as a cell
  BOOST_CHECK_NO_THROW(compareDirectory(cfg.out));
  std::ostringstream table;
  printComparison(cmp, table);
  BOOST_CHECK(!table.str().empty());
}

BOOST_AUTO_TEST_CASE(CompareErrors)
{
  TempDir tmp;
  BOOST_CHECK_THROW(compareDirectory(tmp.path / "nope"), CompareError);
  BOOST_CHECK_THROW(compareDirectory(tmp.path), CompareError);

  auto cfg = twoNodeConfig(tmp.path);
  cfg.schemes = {Scheme::Ndn};
  cfg.rates = {5};
  runExperiment(cfg);
  try {
    compareDirectory(cfg.out);
    BOOST_ERROR("missing CCN-DART cells not reported");
  }
  catch (const CompareError& e) {
    std::string what = e.what();
    BOOST_CHECK(what.find("dart_onpath_r5_s1") != std::string::npos);
    BOOST_CHECK(what.find("dart_edge_r5_s2") != std::string::npos);
  }

  cfg.schemes = {Scheme::Dart};
  runExperiment(cfg);
  auto cmp = compareDirectory(cfg.out);
  BOOST_CHECK_EQUAL(cmp.rateInvariance(CachingMode::OnPath), "insufficient data");

  std::ofstream(cfg.out / "broken.csv") << "not,a,csv\n";
  BOOST_CHECK_THROW(compareDirectory(cfg.out), CompareError);
}

BOOST_AUTO_TEST_SUITE_END()
