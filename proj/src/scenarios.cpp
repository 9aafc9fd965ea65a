#include "dartlab/scenarios.hpp"

#include <algorithm>
#include <sstream>

namespace dartlab {

namespace {

constexpr double LINK_DELAY_MS = 15;

class FixtureBuilder
{
public:
  RouterId
  router(const std::string& name)
  {
    RouterId id = m_fixture.topology.addRouter();
    m_fixture.routers.emplace(name, id);
    return id;
  }

  void
  link(const std::string& a, const std::string& b)
  {
    m_fixture.topology.addLink(m_fixture[a], m_fixture[b], LINK_DELAY_MS);
  }

  Fixture
  finish(const std::string& anchor, const Prefix& prefix)
  {
    m_fixture.topology.addAnchor(prefix, m_fixture[anchor]);
    m_fixture.fibs = computeFibs(m_fixture.topology);
    return std::move(m_fixture);
  }

private:
  Fixture m_fixture;
};

const Prefix&
prefixD()
{
  static const Prefix p = Prefix::parse("/d");
  return p;
}

class Checker
{
public:
  explicit
  Checker(ScenarioResult& result)
    : m_result(result)
  {
  }

  void
  expect(bool ok, const std::string& what)
  {
    if (!ok)
      m_result.failures.push_back(what);
  }

private:
  ScenarioResult& m_result;
};

std::string
pathString(const Fixture& f, const std::vector<RouterId>& path)
{
  std::string s;
  for (RouterId r : path)
    s += (s.empty() ? "" : "->") + f.nameOf(r);
  return s;
}

void
writeLegend(const Fixture& f, std::ostream& os)
{
  os << "# routers:";
  for (uint32_t i = 0; i < f.topology.size(); ++i)
    os << ' ' << f.nameOf(RouterId{i}) << '=' << i;
  os << '\n';
}

std::vector<ScriptStep>
staleScript(const Fixture& f)
{
  return {
    {SimTime(0), LinkDown{f["b"], f["q"]}},
    {SimTime(0), LinkDown{f["a"], f["p"]}},
  };
}

const char*
outcomeString(RequestOutcome o)
{
  switch (o) {
  case RequestOutcome::Pending:
    return "pending";
  case RequestOutcome::Satisfied:
    return "satisfied";
  case RequestOutcome::Nacked:
    return "nacked";
  case RequestOutcome::TimedOut:
    return "timed-out";
  }
  return "?";
}

void
writeRequests(const Simulator& sim, std::ostream& os)
{
  for (const auto& r : sim.requests()) {
    os << "# request " << r.consumer << " at router " << r.router << ' ' << r.name << ": "
       << outcomeString(r.outcome);
    if (r.nack)
      os << ' ' << toString(*r.nack);
    os << " tries=" << r.tries << '\n';
  }
}

std::vector<ChainRecord>
chainsFrom(const Simulator& sim, RouterId origin)
{
  std::vector<ChainRecord> out;
  for (const auto& c : sim.auditor().completed())
    if (!c.interestPath.empty() && c.interestPath.front() == origin)
      out.push_back(c);
  return out;
}

ScenarioResult
rankLoop(bool audit)
{
  ScenarioResult result{"fig1-rankloop", {}, {}};
  Checker check(result);
  std::ostringstream trace;
  Fixture f = makeRankLoopFixture();
  writeLegend(f, trace);
  dumpFibs(f.fibs, trace);
  const Name name = Name::parse("/d/o1");

  // CCN-DART: the Interest must follow a simple path with decreasing hop counts
  {
    trace << "# scheme dart\n";
    SimConfig cfg;
    cfg.audit = audit;
    cfg.keepChains = true;
    cfg.trace = &trace;
    Network net{f.topology, f.fibs, {name}, {{ConsumerId{0}, f["y"]}}};
    Simulator sim(net, cfg);
    sim.addRequests({{SimTime(0), ConsumerId{0}, name}});
    auto report = sim.run();
    writeRequests(sim, trace);

    check.expect(sim.requests().size() == 1 &&
                   sim.requests()[0].outcome == RequestOutcome::Satisfied,
                 "dart: request from y not satisfied");
    check.expect(report.totalLoopNacks() == 0, "dart: unexpected Loop NACK");
    auto chains = chainsFrom(sim, f["y"]);
    check.expect(chains.size() == 1, "dart: expected exactly one Interest chain from y");
    if (chains.size() == 1) {
      const auto& c = chains[0];
      std::vector<RouterId> want{f["y"], f["a"], f["b"], f["q"], f["m1"], f["d"]};
      check.expect(c.interestPath == want,
                   "dart: Interest path " + pathString(f, c.interestPath) + ", want " +
                     pathString(f, want));
      std::vector<uint32_t> hops{5, 4, 3, 2, 1};
      check.expect(c.hopCounts == hops, "dart: hop counts do not descend 5,4,3,2,1");
      std::vector<RouterId> back(want.rbegin(), want.rend());
      check.expect(c.responsePath == back,
                   "dart: Data path " + pathString(f, c.responsePath) + ", want " +
                     pathString(f, back));
      trace << "# " << TraceAuditor::format(c) << '\n';
    }
    check.expect(sim.auditor().cycleViolations() == 0 && sim.auditor().descentViolations() == 0,
                 "dart: audit violations");
  }

  // NDN on the same FIBs: the Interest runs around b->x->a before the nonce catches it
  {
    trace << "# scheme ndn\n";
    SimConfig cfg;
    cfg.scheme = Scheme::Ndn;
    cfg.trace = &trace;
    Network net{f.topology, f.fibs, {name}, {{ConsumerId{0}, f["y"]}}};
    Simulator sim(net, cfg);
    sim.addRequests({{SimTime(0), ConsumerId{0}, name}});
    sim.run();
    writeRequests(sim, trace);
    check.expect(sim.ndnNode(f["a"]).counters().duplicateNonce >= 1,
                 "ndn: the Interest did not loop back to a");
  }

  result.trace = trace.str();
  return result;
}

ScenarioResult
stale(bool audit)
{
  ScenarioResult result{"fig1-stale", {}, {}};
  Checker check(result);
  std::ostringstream trace;
  Fixture f = makeRankLoopFixture();
  writeLegend(f, trace);
  const Name name = Name::parse("/d/o1");
  const std::vector<ConsumerSpec> consumers{{ConsumerId{0}, f["y"]}, {ConsumerId{1}, f["x"]}};
  const std::vector<ScriptedRequest> requests{
    {std::chrono::milliseconds(1), ConsumerId{0}, name},
    {std::chrono::milliseconds(1), ConsumerId{1}, name},
  };

  // CCN-DART: b cannot satisfy DEAR for either Interest and answers both with Loop NACKs
  {
    trace << "# scheme dart\n";
    SimConfig cfg;
    cfg.audit = audit;
    cfg.keepChains = true;
    cfg.trace = &trace;
    Simulator sim(Network{f.topology, f.fibs, {name}, consumers}, cfg);
    sim.addScript(staleScript(f));
    sim.addRequests(requests);
    sim.run();
    writeRequests(sim, trace);
    for (const auto& r : sim.requests()) {
      std::string who = f.nameOf(r.router);
      check.expect(r.outcome == RequestOutcome::Nacked && r.nack == NackCode::Loop,
                   "dart: request at " + who + " did not end with a Loop NACK");
    }
    check.expect(sim.dartNode(f["b"]).counters().loopNacksSent == 2,
                 "dart: b should send exactly two Loop NACKs");
    for (const char* r : {"a", "x", "y"})
      check.expect(sim.dartNode(f[r]).counters().loopNacksSent == 0,
                   std::string("dart: ") + r + " sent a Loop NACK");

    auto fromY = chainsFrom(sim, f["y"]);
    auto fromX = chainsFrom(sim, f["x"]);
    check.expect(fromY.size() == 1 && fromX.size() == 1, "dart: expected one chain from y and x");
    if (fromY.size() == 1) {
      std::vector<RouterId> want{f["y"], f["a"], f["b"]};
      std::vector<RouterId> back{f["b"], f["a"], f["y"]};
      check.expect(fromY[0].interestPath == want && fromY[0].responsePath == back,
                   "dart: chain from y " + TraceAuditor::format(fromY[0]));
      trace << "# " << TraceAuditor::format(fromY[0]) << '\n';
    }
    if (fromX.size() == 1) {
      std::vector<RouterId> want{f["x"], f["b"]};
      std::vector<RouterId> back{f["b"], f["x"]};
      check.expect(fromX[0].interestPath == want && fromX[0].responsePath == back,
                   "dart: chain from x " + TraceAuditor::format(fromX[0]));
      trace << "# " << TraceAuditor::format(fromX[0]) << '\n';
    }
    for (const char* r : {"a", "b", "x", "y"})
      sim.dartNode(f[r]).dump(trace);
  }

  // NDN: the two Interests meet in a and b, aggregate and wait there until the PIT expires
  {
    trace << "# scheme ndn\n";
    SimConfig cfg;
    cfg.scheme = Scheme::Ndn;
    cfg.trace = &trace;
    Simulator sim(Network{f.topology, f.fibs, {name}, consumers}, cfg);
    sim.addScript(staleScript(f));
    sim.addRequests(requests);
    sim.setDuration(std::chrono::seconds(10));
    auto report = sim.run();
    writeRequests(sim, trace);
    for (const auto& r : sim.requests())
      check.expect(r.outcome == RequestOutcome::TimedOut,
                   "ndn: request at " + f.nameOf(r.router) + " was answered");
    for (const char* r : {"a", "b"}) {
      const auto& c = sim.ndnNode(f[r]).counters();
      check.expect(c.aggregated >= 1, std::string("ndn: no aggregation at ") + r);
      check.expect(c.expired >= 1, std::string("ndn: no PIT expiry at ") + r);
      check.expect(sim.ndnNode(f[r]).pitSize() == 0,
                   std::string("ndn: PIT at ") + r + " still holds the Interest");
    }
    check.expect(report.totalSatisfied() == 0, "ndn: Data reached a consumer");
  }

  result.trace = trace.str();
  return result;
}

struct ExpectedEntry
{
  std::string router;
  std::string predecessor;  // "self" for the origin
  std::string predecessorDart;
  std::string successor;
  std::string successorDart;
};

/// binds dart labels to values so that every expected entry has a distinct actual match
bool
matchEntries(const Fixture& f, const std::vector<ExpectedEntry>& expected, size_t next,
             std::map<std::string, std::vector<DartEntry>>& remaining,
             std::map<std::string, uint32_t>& labels)
{
  if (next == expected.size())
    return true;
  const ExpectedEntry& want = expected[next];
  auto& pool = remaining[want.router];
  for (size_t i = 0; i < pool.size(); ++i) {
    const DartEntry e = pool[i];
    std::string pred = e.predecessor ? f.nameOf(*e.predecessor) : "self";
    if (pred != want.predecessor || f.nameOf(e.successor) != want.successor)
      continue;
    std::map<std::string, uint32_t> saved = labels;
    auto bind = [&] (const std::string& label, Dart d) {
      auto [it, fresh] = labels.emplace(label, toUnderlying(d));
      if (!fresh)
        return it->second == toUnderlying(d);
      // distinct labels carried on one link must stay distinct values
      for (const auto& [other, value] : labels)
        if (other != label && value == toUnderlying(d) && other[0] == label[0])
          return false;
      return true;
    };
    if (bind(want.predecessorDart, e.predecessorDart) && bind(want.successorDart, e.successorDart)) {
      pool.erase(pool.begin() + i);
      if (matchEntries(f, expected, next + 1, remaining, labels))
        return true;
      pool.insert(pool.begin() + i, e);
    }
    labels = saved;
  }
  return false;
}

ScenarioResult
sharing(bool audit)
{
  ScenarioResult result{"fig2-sharing", {}, {}};
  Checker check(result);
  std::ostringstream trace;
  Fixture f = makeSharingFixture();
  writeLegend(f, trace);

  const Name fromA = Name::parse("/d/o1");
  const Name fromX = Name::parse("/d/o2");
  const Name fromB = Name::parse("/d/o3");
  // consumers A, C, N and P share router a
  std::vector<ConsumerSpec> consumers{
    {ConsumerId{0}, f["a"]}, {ConsumerId{1}, f["a"]}, {ConsumerId{2}, f["a"]},
    {ConsumerId{3}, f["a"]}, {ConsumerId{4}, f["x"]}, {ConsumerId{5}, f["b"]},
  };
  std::vector<ScriptedRequest> requests;
  for (uint32_t i = 0; i < 4; ++i)
    requests.push_back({std::chrono::milliseconds(i), ConsumerId{i}, fromA});
  requests.push_back({SimTime(0), ConsumerId{4}, fromX});
  requests.push_back({SimTime(0), ConsumerId{5}, fromB});

  SimConfig cfg;
  cfg.audit = audit;
  cfg.trace = &trace;
  Simulator sim(Network{f.topology, f.fibs, {fromA, fromX, fromB}, consumers}, cfg);
  sim.addRequests(requests);
  auto report = sim.run();
  writeRequests(sim, trace);
  for (const auto& name : {"a", "r", "s", "d", "x", "b", "c"})
    sim.dartNode(f[name]).dump(trace);

  for (const auto& r : sim.requests())
    check.expect(r.outcome == RequestOutcome::Satisfied,
                 "request " + r.name.toUri() + " at " + f.nameOf(r.router) + " not satisfied");
  check.expect(report.routers[toUnderlying(f["r"])].interestsReceived == 1,
               "the four consumers at a should cause exactly one Interest to r");

  const std::vector<ExpectedEntry> expected{
    {"a", "self", "a1", "r", "a1"},
    {"r", "a", "a1", "s", "r1"},
    {"s", "r", "r1", "d", "s1"},
    {"x", "self", "x1", "b", "x1"},
    {"b", "x", "x1", "c", "b1"},
    {"b", "self", "b2", "c", "b2"},
    {"c", "b", "b1", "d", "c1"},
    {"c", "b", "b2", "d", "c2"},
  };
  std::map<std::string, std::vector<DartEntry>> actual;
  size_t actualCount = 0;
  for (const auto& [name, id] : f.routers) {
    actual[name] = sim.dartNode(id).dartTable().entries();
    actualCount += actual[name].size();
  }
  check.expect(actualCount == expected.size(),
               "expected " + std::to_string(expected.size()) + " dart entries, found " +
                 std::to_string(actualCount));
  std::map<std::string, uint32_t> labels;
  bool iso = matchEntries(f, expected, 0, actual, labels);
  check.expect(iso, "dart mappings are not isomorphic to the expected table");
  if (iso) {
    for (const auto& e : expected)
      trace << "# " << e.router << ": [" << e.predecessor << "; " << e.predecessorDart << "="
            << labels[e.predecessorDart] << "] <-> [" << e.successor << "; " << e.successorDart
            << "=" << labels[e.successorDart] << "]\n";
  }

  result.trace = trace.str();
  return result;
}

} // namespace

std::string
Fixture::nameOf(RouterId id) const
{
  for (const auto& [name, r] : routers)
    if (r == id)
      return name;
  return std::to_string(toUnderlying(id));
}

Fixture
makeRankLoopFixture()
{
  FixtureBuilder fb;
  // b before p and x before y so that distance ties rank them first
  for (const char* n : {"d", "m1", "q", "b", "a", "x", "p", "m2", "y"})
    fb.router(n);
  for (auto [u, v] : std::initializer_list<std::pair<const char*, const char*>>{
         {"d", "m1"}, {"m1", "q"}, {"q", "b"}, {"m1", "m2"}, {"m2", "p"},
         {"a", "b"}, {"a", "p"}, {"a", "x"}, {"a", "y"}, {"b", "x"}})
    fb.link(u, v);
  Fixture f = fb.finish("d", prefixD());

  // a and b hold x's old distance, x holds b's old distance
  const std::vector<DistanceEdit> stale{
    {f["a"], prefixD(), f["x"], 6},
    {f["b"], prefixD(), f["x"], 6},
    {f["x"], prefixD(), f["b"], 5},
  };
  f.fibs = injectStaleDistances(std::move(f.fibs), stale);
  f.fibs = overrideRankings(std::move(f.fibs), f["b"], prefixD(), {f["x"], f["a"], f["q"]});
  f.fibs = overrideRankings(std::move(f.fibs), f["x"], prefixD(), {f["b"], f["a"]});
  return f;
}

Fixture
makeSharingFixture()
{
  FixtureBuilder fb;
  for (const char* n : {"a", "r", "s", "d", "x", "b", "c"})
    fb.router(n);
  for (auto [u, v] : std::initializer_list<std::pair<const char*, const char*>>{
         {"a", "r"}, {"r", "s"}, {"s", "d"}, {"x", "b"}, {"b", "c"}, {"c", "d"}})
    fb.link(u, v);
  return fb.finish("d", prefixD());
}

const std::vector<std::string>&
scenarioNames()
{
  static const std::vector<std::string> names{"fig1-rankloop", "fig1-stale", "fig2-sharing"};
  return names;
}

ScenarioResult
runScenario(const std::string& name, bool audit)
{
  if (name == "fig1-rankloop")
    return rankLoop(audit);
  if (name == "fig1-stale")
    return stale(audit);
  if (name == "fig2-sharing")
    return sharing(audit);
  throw std::invalid_argument("unknown scenario '" + name + "'");
}

} // namespace dartlab
