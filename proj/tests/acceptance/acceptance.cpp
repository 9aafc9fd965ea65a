// Acceptance suite: one PASS/FAIL line per criterion, then a JSON summary.

#include "dartlab/experiment.hpp"
#include "dartlab/scenarios.hpp"

#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <thread>

using namespace dartlab;
namespace fs = std::filesystem;
using namespace std::chrono_literals;

namespace {

// pinned tolerances
constexpr double DART_SPREAD_MAX = 2.0;       // max/min mean DART size across rates
constexpr double PIT_GROWTH_MIN = 5.0;        // PIT at top rate / PIT at lowest rate
constexpr double PIT_DART_RATIO_MIN = 5.0;    // PIT / DART at the top rate
constexpr double INTEREST_PARITY_MAX = 0.15;  // |dart - ndn| / ndn
constexpr double DELAY_PARITY_MAX = 0.05;     // |dart - ndn| / ndn
constexpr double CACHING_RATE_MIN = 50;       // rates compared for the caching effect
constexpr int RANDOM_RUNS = 1000;
constexpr uint32_t RANDOM_MAX_ROUTERS = 12;
constexpr uint32_t ORACLE_MAX_ROUTERS = 6;

struct Outcome
{
  int id;
  std::string name;
  bool passed;
  std::string detail;
};

std::string
fmt(double v, int prec = 2)
{
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", prec, v);
  return buf;
}

double
relDiff(double a, double b)
{
  return b == 0 ? (a == 0 ? 0 : INFINITY) : std::abs(a - b) / b;
}

std::vector<const SummaryRow*>
rowsFor(const Comparison& cmp, CachingMode c)
{
  std::vector<const SummaryRow*> out;
  for (const auto& r : cmp.rows)
    if (r.caching == c)
      out.push_back(&r);
  std::sort(out.begin(), out.end(), [] (auto* a, auto* b) { return a->rate < b->rate; });
  return out;
}

std::vector<CachingMode>
cachingModes(const Comparison& cmp)
{
  std::vector<CachingMode> out;
  for (const auto& r : cmp.rows)
    if (std::find(out.begin(), out.end(), r.caching) == out.end())
      out.push_back(r.caching);
  return out;
}

Outcome
stateSizeTrend(const Comparison& cmp)
{
  bool ok = !cmp.rows.empty();
  std::ostringstream d;
  for (CachingMode c : cachingModes(cmp)) {
    auto rows = rowsFor(cmp, c);
    const auto& lo = *rows.front();
    const auto& hi = *rows.back();
    double spread = cmp.dartSpread.at(c).value_or(INFINITY);
    double growth = lo.ndn.tableMean > 0 ? hi.ndn.tableMean / lo.ndn.tableMean : INFINITY;
    double ratio = hi.ratio();
    ok = ok && rows.size() >= 2 && spread <= DART_SPREAD_MAX && growth >= PIT_GROWTH_MIN &&
         ratio >= PIT_DART_RATIO_MIN;
    d << toString(c) << ": dart spread " << fmt(spread) << " (<=" << fmt(DART_SPREAD_MAX)
      << "), pit growth " << fmt(growth) << " (>=" << fmt(PIT_GROWTH_MIN) << "), pit/dart at r"
      << hi.rate << ' ' << fmt(ratio) << " (>=" << fmt(PIT_DART_RATIO_MIN) << "); ";
  }
  return {1, "state size trend", ok, d.str()};
}

Outcome
lightLoadCrossover(const Comparison& cmp)
{
  bool ok = !cmp.rows.empty();
  std::ostringstream d;
  for (CachingMode c : cachingModes(cmp)) {
    const auto& lo = *rowsFor(cmp, c).front();
    ok = ok && lo.dart.tableMean >= lo.ndn.tableMean;
    d << toString(c) << " r" << lo.rate << ": dart " << fmt(lo.dart.tableMean) << " >= pit "
      << fmt(lo.ndn.tableMean) << "; ";
  }
  return {2, "light-load crossover", ok, d.str()};
}

Outcome
interestParity(const Comparison& cmp)
{
  bool ok = !cmp.rows.empty();
  double worst = 0;
  std::string worstAt;
  for (const auto& r : cmp.rows) {
    double diff = relDiff(r.dart.interestsReceived, r.ndn.interestsReceived);
    ok = ok && diff <= INTEREST_PARITY_MAX && r.dart.interestsReceived >= r.ndn.interestsReceived;
    if (diff >= worst) {
      worst = diff;
      worstAt = std::string(toString(r.caching)) + " r" + fmt(r.rate, 0);
    }
    if (r.dart.interestsReceived < r.ndn.interestsReceived)
      worstAt += " (dart below ndn at " + std::string(toString(r.caching)) + " r" +
                 fmt(r.rate, 0) + ")";
  }
  return {3, "interest parity", ok,
          "max rel diff " + fmt(100 * worst) + "% at " + worstAt + " (<=" +
            fmt(100 * INTEREST_PARITY_MAX, 0) + "%, dart >= ndn)"};
}

Outcome
delayParity(const Comparison& cmp)
{
  bool ok = !cmp.rows.empty();
  double worst = 0;
  std::string worstAt;
  for (const auto& r : cmp.rows) {
    double diff = relDiff(r.dart.delayMs, r.ndn.delayMs);
    ok = ok && diff <= DELAY_PARITY_MAX;
    if (diff >= worst) {
      worst = diff;
      worstAt = std::string(toString(r.caching)) + " r" + fmt(r.rate, 0);
    }
  }
  return {4, "delay parity", ok,
          "max rel diff " + fmt(100 * worst) + "% at " + worstAt + " (<=" +
            fmt(100 * DELAY_PARITY_MAX, 0) + "%)"};
}

Outcome
cachingEffect(const Comparison& cmp)
{
  auto onpath = rowsFor(cmp, CachingMode::OnPath);
  auto edge = rowsFor(cmp, CachingMode::Edge);
  bool ok = !onpath.empty() && onpath.size() == edge.size();
  std::ostringstream d;
  size_t compared = 0;
  for (size_t i = 0; ok && i < onpath.size(); ++i) {
    if (onpath[i]->rate < CACHING_RATE_MIN)
      continue;
    ++compared;
    const auto& o = *onpath[i];
    const auto& e = *edge[i];
    bool dart = o.dart.interestsReceived < e.dart.interestsReceived;
    bool ndn = o.ndn.interestsReceived < e.ndn.interestsReceived;
    ok = ok && dart && ndn;
    d << "r" << o.rate << " ndn " << fmt(o.ndn.interestsReceived, 0) << "<"
      << fmt(e.ndn.interestsReceived, 0) << " dart " << fmt(o.dart.interestsReceived, 0) << "<"
      << fmt(e.dart.interestsReceived, 0) << (dart && ndn ? "" : " VIOLATED") << "; ";
  }
  ok = ok && compared > 0;
  return {5, "on-path caching beats edge caching", ok, d.str()};
}

// random connected graph: random spanning tree plus extra edges
Topology
randomGraph(std::mt19937_64& rng, uint32_t n, double extra)
{
  Topology t;
  for (uint32_t i = 0; i < n; ++i)
    t.addRouter({double(i), 0});
  for (uint32_t i = 1; i < n; ++i)
    t.addLink(RouterId{i}, RouterId{uint32_t(rng() % i)}, 1 + double(rng() % 20));
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = i + 1; j < n; ++j)
      if (!t.linkDelay(RouterId{i}, RouterId{j}) && uniform01(rng) < extra)
        t.addLink(RouterId{i}, RouterId{j}, 1 + double(rng() % 20));
  return t;
}

struct RandomTrial
{
  Network net;
  std::vector<ScriptStep> script;
  std::vector<ScriptedRequest> requests;
};

RandomTrial
makeRandomTrial(uint64_t seed)
{
  std::mt19937_64 rng(seed);
  uint32_t n = 3 + uint32_t(rng() % (RANDOM_MAX_ROUTERS - 2));
  Topology topo = randomGraph(rng, n, 0.1 + 0.4 * uniform01(rng));
  const Prefix d = Prefix::parse("/d");
  const Prefix e = Prefix::parse("/e");
  topo.addAnchor(d, RouterId{uint32_t(rng() % n)});
  if (rng() % 2)
    topo.addAnchor(d, RouterId{uint32_t(rng() % n)});
  topo.addAnchor(e, RouterId{uint32_t(rng() % n)});
  FibSet fibs = computeFibs(topo);

  auto randomOrder = [&] (const Fib::Tuples& tuples) {
    std::vector<RouterId> order;
    for (const auto& t : tuples)
      order.push_back(t.nextHop);
    std::shuffle(order.begin(), order.end(), rng);
    return order;
  };

  // static perturbations applied before the run
  std::vector<DistanceEdit> edits;
  for (uint32_t r = 0; r < n; ++r) {
    for (const Prefix& p : {d, e}) {
      const Fib::Tuples* tuples = fibs[r].find(p);
      if (tuples == nullptr)
        continue;
      if (uniform01(rng) < 0.5)
        fibs = overrideRankings(std::move(fibs), RouterId{r}, p, randomOrder(*tuples));
      for (const auto& t : *fibs[r].find(p))
        if (uniform01(rng) < 0.3)
          edits.push_back({RouterId{r}, p, t.nextHop, 1 + uint32_t(rng() % (n + 2))});
    }
  }
  fibs = injectStaleDistances(std::move(fibs), edits);

  RandomTrial trial;
  // perturbations while traffic is in flight
  std::vector<Link> links = topo.links();
  // edits and overrides land in the first 300 ms, link failures after them so
  // that every edit still names an existing next hop
  for (int k = 0; k < 4; ++k) {
    SimTime at = std::chrono::milliseconds(rng() % 300);
    RouterId r{uint32_t(rng() % n)};
    const Prefix& p = rng() % 2 ? d : e;
    const Fib::Tuples* tuples = fibs[toUnderlying(r)].find(p);
    if (tuples == nullptr)
      continue;
    switch (rng() % 3) {
    case 0:
      trial.script.push_back({at, RankOverride{r, p, randomOrder(*tuples)}});
      break;
    case 1: {
      const auto& t = (*tuples)[rng() % tuples->size()];
      trial.script.push_back({at, DistanceEdit{r, p, t.nextHop, 1 + uint32_t(rng() % (n + 2))}});
      break;
    }
    default: {
      if (links.empty())
        break;
      size_t li = rng() % links.size();
      trial.script.push_back({at + 300ms, LinkDown{links[li].a, links[li].b}});
      links.erase(links.begin() + li);
    }
    }
  }

  std::vector<Name> catalog;
  for (const char* uri : {"/d/o1", "/d/o2", "/e/o1"})
    catalog.push_back(Name::parse(uri));
  std::vector<ConsumerSpec> consumers;
  for (uint32_t r = 0; r < n; ++r)
    consumers.push_back({ConsumerId{r}, RouterId{r}});
  for (int k = 0; k < 12; ++k)
    trial.requests.push_back({std::chrono::milliseconds(rng() % 400),
                              ConsumerId{uint32_t(rng() % n)}, catalog[rng() % catalog.size()]});
  trial.net = Network{std::move(topo), std::move(fibs), std::move(catalog), std::move(consumers)};
  return trial;
}

struct AuditTally
{
  uint64_t violations = 0;
  uint64_t checks = 0;
  int trialsWithViolations = 0;
  // breakdown of revisits: back at the originating router or at a transit router
  uint64_t originRevisits = 0;
  uint64_t transitRevisits = 0;
  // chains that crossed the same directed link twice, i.e. went around a cycle
  uint64_t repeatedLinks = 0;
  std::string firstTrace;
};

void
classifyChains(const TraceAuditor& auditor, AuditTally& tally)
{
  for (const auto& c : auditor.completed()) {
    std::set<std::pair<RouterId, RouterId>> crossed;
    bool repeated = false;
    for (size_t k = 1; k < c.interestPath.size(); ++k) {
      auto begin = c.interestPath.begin();
      if (std::find(begin, begin + k, c.interestPath[k]) != begin + k) {
        if (c.interestPath[k] == c.interestPath.front())
          ++tally.originRevisits;
        else
          ++tally.transitRevisits;
      }
      repeated = repeated || !crossed.insert({c.interestPath[k - 1], c.interestPath[k]}).second;
    }
    tally.repeatedLinks += repeated;
  }
}

// rerun a violating trial with an enforcing auditor to capture the offending chain
std::string
violationTrace(const RandomTrial& trial, bool enforceDear)
{
  SimConfig cfg;
  cfg.enforceDear = enforceDear;
  Simulator sim(trial.net, cfg);
  sim.addScript(trial.script);
  sim.addRequests(trial.requests);
  try {
    sim.run();
  }
  catch (const AuditViolation& e) {
    std::ostringstream os;
    trial.net.topology.write(os);
    dumpFibs(trial.net.fibs, os);
    return std::string(e.what()) + "\n" + e.trace() + "\n" + os.str();
  }
  return "violation not reproduced";
}

AuditTally
runRandomTrials(bool enforceDear)
{
  AuditTally tally;
  for (int i = 0; i < RANDOM_RUNS; ++i) {
    RandomTrial trial = makeRandomTrial(0x7e57 + uint64_t(i));
    SimConfig cfg;
    cfg.enforceDear = enforceDear;
    cfg.audit = false;       // count rather than abort
    cfg.keepChains = true;
    Simulator sim(trial.net, cfg);
    sim.addScript(trial.script);
    sim.addRequests(trial.requests);
    sim.run();
    uint64_t v = sim.auditor().cycleViolations() + sim.auditor().descentViolations();
    tally.violations += v;
    tally.checks += sim.auditor().checks();
    tally.trialsWithViolations += v > 0;
    classifyChains(sim.auditor(), tally);
    if (v > 0 && tally.firstTrace.empty())
      tally.firstTrace = "seed " + std::to_string(0x7e57 + i) + ": " +
                         violationTrace(trial, enforceDear);
  }
  return tally;
}

Outcome
loopFreedomProperty()
{
  AuditTally dear = runRandomTrials(true);
  AuditTally ablated = runRandomTrials(false);
  // the ablation shows the perturbations are strong enough to cause loops without DEAR
  bool ok = dear.violations == 0 && dear.checks > 0 && ablated.trialsWithViolations > 0;
  return {6, "loop freedom under perturbation", ok,
          std::to_string(RANDOM_RUNS) + " runs, " + std::to_string(dear.checks) +
            " checks, " + std::to_string(dear.violations) + " violations (0 allowed): " +
            std::to_string(dear.originRevisits) + " returns to the originating router, " +
            std::to_string(dear.transitRevisits) + " transit revisits, " +
            std::to_string(dear.repeatedLinks) + " chains crossing a link twice; without DEAR " +
            std::to_string(ablated.trialsWithViolations) + " runs violate" +
            (dear.firstTrace.empty() ? "" : "; first: " + dear.firstTrace)};
}

Outcome
scenarioCriterion(int id, const std::string& label, const std::vector<std::string>& names)
{
  bool ok = true;
  std::string detail;
  for (const auto& name : names) {
    try {
      auto result = runScenario(name);
      ok = ok && result.passed();
      detail += name + (result.passed() ? " pass" : " FAIL");
      for (const auto& f : result.failures)
        detail += " [" + f + "]";
    }
    catch (const std::exception& e) {
      ok = false;
      detail += name + " error: " + e.what();
    }
    detail += "; ";
  }
  return {id, label, ok, detail};
}

// all-pairs hop distances by Floyd-Warshall, independent of the library BFS
std::vector<std::vector<int>>
allPairs(const std::vector<std::vector<bool>>& adj)
{
  const int n = int(adj.size());
  const int INF = 1 << 20;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, INF));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i == j)
        d[i][j] = 0;
      else if (adj[i][j])
        d[i][j] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

struct OracleTally
{
  uint64_t graphs = 0;
  uint64_t fibMismatches = 0;
  uint64_t chains = 0;
  uint64_t pathMismatches = 0;
  std::string firstFailure;
};

void
checkFibs(const Topology& topo, const FibSet& fibs, const std::vector<std::vector<bool>>& adj,
          const std::vector<uint32_t>& anchors, OracleTally& tally)
{
  const uint32_t n = uint32_t(adj.size());
  auto d = allPairs(adj);
  const Prefix p = Prefix::parse("/d");
  for (uint32_t i = 0; i < n; ++i) {
    Fib::Tuples want;
    for (uint32_t q = 0; q < n; ++q) {
      if (!adj[i][q])
        continue;
      uint32_t nearest = anchors.front();
      for (uint32_t a : anchors)
        if (d[q][a] < d[q][nearest] || (d[q][a] == d[q][nearest] && a < nearest))
          nearest = a;
      want.push_back({RouterId{q}, uint32_t(d[q][nearest] + 1), RouterId{nearest}, 0});
    }
    std::sort(want.begin(), want.end(), [] (const FibTuple& x, const FibTuple& y) {
      return std::pair(x.distance, x.nextHop) < std::pair(y.distance, y.nextHop);
    });
    for (size_t r = 0; r < want.size(); ++r)
      want[r].rank = uint32_t(r + 1);
    const Fib::Tuples* got = fibs[i].find(p);
    if (got == nullptr || *got != want) {
      ++tally.fibMismatches;
      if (tally.firstFailure.empty()) {
        std::ostringstream os;
        topo.write(os);
        tally.firstFailure = "fib mismatch at router " + std::to_string(i) + " in\n" + os.str();
      }
    }
  }
}

void
checkPaths(const Network& net, const std::vector<std::vector<int>>& d, CachingMode caching,
           bool staggered, OracleTally& tally)
{
  const uint32_t n = uint32_t(net.topology.size());
  SimConfig cfg;
  cfg.caching = caching;
  cfg.keepChains = true;
  Simulator sim(net, cfg);
  std::vector<ScriptedRequest> reqs;
  for (uint32_t i = 1; i < n; ++i)
    reqs.push_back({staggered ? std::chrono::seconds(i) : SimTime(0), ConsumerId{i},
                    net.catalog.front()});
  sim.addRequests(reqs);
  sim.run();

  auto fail = [&] (const std::string& what) {
    ++tally.pathMismatches;
    if (tally.firstFailure.empty()) {
      std::ostringstream os;
      net.topology.write(os);
      tally.firstFailure = what + " in\n" + os.str();
    }
  };
  for (const auto& r : sim.requests())
    if (r.outcome != RequestOutcome::Satisfied)
      fail("request from router " + std::to_string(toUnderlying(r.router)) + " not satisfied");
  for (const auto& c : sim.auditor().completed()) {
    ++tally.chains;
    std::vector<RouterId> back(c.interestPath.rbegin(), c.interestPath.rend());
    if (c.responsePath != back)
      fail("response path is not the reverse of " + TraceAuditor::format(c));
    // without caches every Interest reaches the producer over a shortest path
    if (caching == CachingMode::None &&
        (c.interestPath.back() != RouterId{0} ||
         int(c.interestPath.size()) != d[toUnderlying(c.interestPath.front())][0] + 1))
      fail("not a shortest path to the producer: " + TraceAuditor::format(c));
  }
}

Outcome
oracleEquivalence()
{
  OracleTally tally;
  for (uint32_t n = 2; n <= ORACLE_MAX_ROUTERS; ++n) {
    std::vector<std::pair<uint32_t, uint32_t>> pairs;
    for (uint32_t i = 0; i < n; ++i)
      for (uint32_t j = i + 1; j < n; ++j)
        pairs.emplace_back(i, j);
    for (uint64_t mask = 0; mask < (uint64_t(1) << pairs.size()); ++mask) {
      std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
      for (size_t k = 0; k < pairs.size(); ++k)
        if (mask >> k & 1)
          adj[pairs[k].first][pairs[k].second] = adj[pairs[k].second][pairs[k].first] = true;
      auto d = allPairs(adj);
      bool connected = std::all_of(d[0].begin(), d[0].end(), [] (int x) { return x < (1 << 20); });
      if (!connected)
        continue;
      ++tally.graphs;

      Topology topo;
      for (uint32_t i = 0; i < n; ++i)
        topo.addRouter({double(i), 0});
      for (size_t k = 0; k < pairs.size(); ++k)
        if (mask >> k & 1)
          topo.addLink(RouterId{pairs[k].first}, RouterId{pairs[k].second}, 10);

      // two anchors exercise nearest-anchor selection and its tie rule
      Topology twoAnchors = topo;
      twoAnchors.addAnchor(Prefix::parse("/d"), RouterId{0});
      twoAnchors.addAnchor(Prefix::parse("/d"), RouterId{n - 1});
      checkFibs(twoAnchors, computeFibs(twoAnchors), adj, {0, n - 1}, tally);

      topo.addAnchor(Prefix::parse("/d"), RouterId{0});
      FibSet fibs = computeFibs(topo);
      checkFibs(topo, fibs, adj, {0}, tally);

      std::vector<ConsumerSpec> consumers;
      for (uint32_t i = 0; i < n; ++i)
        consumers.push_back({ConsumerId{i}, RouterId{i}});
      Network net{topo, fibs, {Name::parse("/d/o1")}, consumers};
      checkPaths(net, d, CachingMode::None, true, tally);
      checkPaths(net, d, CachingMode::OnPath, false, tally);
    }
  }
  bool ok = tally.graphs > 0 && tally.fibMismatches == 0 && tally.pathMismatches == 0;
  std::string detail = std::to_string(tally.graphs) + " connected graphs on 2.." +
                       std::to_string(ORACLE_MAX_ROUTERS) + " routers, " +
                       std::to_string(tally.chains) + " chains, " +
                       std::to_string(tally.fibMismatches) + " FIB and " +
                       std::to_string(tally.pathMismatches) + " path mismatches (0 allowed)";
  if (!tally.firstFailure.empty())
    detail += "; first: " + tally.firstFailure;
  return {9, "oracle equivalence", ok, detail};
}

std::map<std::string, std::string>
readDir(const fs::path& dir)
{
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    std::ifstream is(e.path(), std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    out[e.path().filename().string()] = os.str();
  }
  return out;
}

Outcome
determinism(const fs::path& cli, const fs::path& config, const fs::path& work)
{
  std::vector<std::map<std::string, std::string>> runs;
  std::string detail;
  fs::create_directories(work);
  // both runs write to the same directory, since the manifest records it
  fs::path out = work / "out";
  for (const char* name : {"a", "b"}) {
    fs::remove_all(out);
    std::string cmd = "\"" + cli.string() + "\" run \"" + config.string() + "\" --out \"" +
                      out.string() + "\" > \"" + (work / (std::string(name) + ".log")).string() +
                      "\" 2>&1";
    int rc = std::system(cmd.c_str());
    if (rc != 0)
      return {10, "determinism", false, "run exited with status " + std::to_string(rc)};
    runs.push_back(readDir(out));
  }
  size_t csvs = std::count_if(runs[0].begin(), runs[0].end(), [] (const auto& kv) {
    return kv.first.ends_with(".csv");
  });
  bool ok = csvs > 0 && runs[0] == runs[1];
  for (const auto& [file, bytes] : runs[0]) {
    auto it = runs[1].find(file);
    if (it == runs[1].end() || it->second != bytes)
      detail += file + " differs; ";
  }
  return {10, "determinism", ok,
          std::to_string(csvs) + " CSVs and manifest compared across two runs" +
            (detail.empty() ? ", all byte-identical" : ": " + detail)};
}

} // namespace

int
main(int argc, char** argv)
{
  if (argc < 4 || argc > 5) {
    std::cerr << "usage: " << argv[0]
              << " <dartlab binary> <configs dir> <work dir> [comma-separated criteria]\n";
    return 2;
  }
  std::set<int> only;
  if (argc == 5) {
    std::stringstream list(argv[4]);
    std::string item;
    while (std::getline(list, item, ','))
      only.insert(std::stoi(item));
  }
  auto wanted = [&only] (int id) { return only.empty() || only.count(id) > 0; };
  const fs::path cli = argv[1];
  const fs::path configs = argv[2];
  const fs::path work = argv[3];
  fs::create_directories(work);

  std::vector<Outcome> outcomes;
  auto report = [&outcomes] (Outcome o) {
    std::cout << (o.passed ? "PASS" : "FAIL") << " criterion " << o.id << " (" << o.name
              << "): " << o.detail << std::endl;
    outcomes.push_back(std::move(o));
  };

  // sweep shared by criteria 1 to 5
  std::optional<Comparison> cmp;
  std::string sweepError;
  bool sweep = false;
  for (int id = 1; id <= 5; ++id)
    sweep = sweep || wanted(id);
  auto started = std::chrono::steady_clock::now();
  if (sweep) {
    try {
      ExperimentConfig cfg = ExperimentConfig::load(configs / "desk-sweep.conf");
      cfg.out = work / "desk-sweep";
      cfg.jobs = std::max(1u, std::thread::hardware_concurrency());
      fs::remove_all(cfg.out);
      runExperiment(cfg);
      cmp = compareDirectory(cfg.out);
      writeComparison(*cmp, cfg.out);
      std::ofstream table(cfg.out / "comparison.txt");
      printComparison(*cmp, table);
      printComparison(*cmp, std::cout);
    }
    catch (const std::exception& e) {
      sweepError = e.what();
    }
    double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    std::cout << "sweep: " << fmt(sec, 1) << " s" << std::endl;
  }

  if (cmp) {
    std::function<Outcome(const Comparison&)> checks[] = {
      stateSizeTrend, lightLoadCrossover, interestParity, delayParity, cachingEffect};
    for (int i = 0; i < 5; ++i)
      if (wanted(i + 1))
        report(checks[i](*cmp));
  }
  else if (sweep) {
    const char* names[] = {"state size trend", "light-load crossover", "interest parity",
                           "delay parity", "on-path caching beats edge caching"};
    for (int i = 0; i < 5; ++i)
      if (wanted(i + 1))
        report({i + 1, names[i], false, "sweep failed: " + sweepError});
  }
  if (wanted(6))
    report(loopFreedomProperty());
  if (wanted(7))
    report(scenarioCriterion(7, "ranking-loop and stale-distance scenarios",
                             {"fig1-rankloop", "fig1-stale"}));
  if (wanted(8))
    report(scenarioCriterion(8, "shared-route scenario", {"fig2-sharing"}));
  if (wanted(9))
    report(oracleEquivalence());
  if (wanted(10))
    report(determinism(cli, configs / "determinism.conf", work / "determinism"));

  nlohmann::json results = nlohmann::json::array();
  int failed = 0;
  for (const auto& o : outcomes) {
    results.push_back({{"criterion", o.id}, {"name", o.name}, {"passed", o.passed},
                       {"detail", o.detail}});
    failed += !o.passed;
  }
  std::ofstream(work / "acceptance.json") << results.dump(2) << '\n';
  std::cout << (outcomes.size() - failed) << "/" << outcomes.size() << " criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
