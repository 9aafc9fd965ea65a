#include "dartlab/simulator.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <unordered_map>

namespace dartlab {

namespace {

struct Deliver
{
  Packet packet;
  RouterId from;
  RouterId to;
  uint64_t chain;
};

struct WorkloadArrival
{
  size_t consumer; // index into the generator's consumer list
  size_t object;
};

struct ScriptedArrival
{
  size_t index;
};

struct RetryTimer
{
  size_t request;
};

struct SweepTimer
{
};

struct SampleTimer
{
};

struct ScriptFire
{
  size_t index;
};

using EventKind = std::variant<Deliver, WorkloadArrival, ScriptedArrival, RetryTimer, SweepTimer,
                               SampleTimer, ScriptFire>;

struct Event
{
  SimTime time;
  uint64_t seq;
  EventKind kind;
};

struct EventLater
{
  bool
  operator()(const Event& a, const Event& b) const
  {
    if (a.time != b.time)
      return a.time > b.time;
    return a.seq > b.seq;
  }
};

struct ConsumerState
{
  ConsumerSpec spec;
  std::unordered_map<Name, std::vector<size_t>, NameHash> outstanding;
};

struct SampleAccumulator
{
  double table = 0;
  double pending = 0;
  uint64_t count = 0;
};

const char*
packetKind(const Packet& p)
{
  if (std::holds_alternative<Interest>(p) || std::holds_alternative<NdnInterest>(p))
    return "INT";
  if (std::holds_alternative<DataPacket>(p))
    return "DATA";
  return "NACK";
}

} // namespace

class Simulator::Impl
{
public:
  Impl(Network network, SimConfig config)
    : m_net(std::move(network))
    , m_config(config)
    , m_auditor(config.audit, config.keepChains)
    , m_nonceRng(config.seed ^ 0x6e6f6e6365ULL)
  {
    const auto& topo = m_net.topology;
    topo.validate();
    if (m_net.fibs.size() != topo.size())
      throw std::invalid_argument("need one FIB per router");

    for (size_t i = 0; i < topo.size(); ++i) {
      RouterId id{static_cast<uint32_t>(i)};
      if (m_config.scheme == Scheme::Dart) {
        DartNodeConfig nc;
        nc.caching = m_config.caching;
        nc.dartTtl = m_config.dartTtl;
        nc.csCapacity = m_config.csCapacity;
        nc.enforceDear = m_config.enforceDear;
        m_dart.emplace_back(id, m_net.fibs[i], nc);
      }
      else {
        NdnNodeConfig nc;
        nc.caching = m_config.caching;
        nc.pitLifetime = m_config.pitLifetime;
        nc.csCapacity = m_config.csCapacity;
        m_ndn.emplace_back(id, m_net.fibs[i], nc);
      }
    }

    PrefixSet anchoredPrefixes;
    for (const auto& [prefix, routers] : topo.anchors()) {
      anchoredPrefixes.insert(prefix);
      for (RouterId r : routers) {
        if (isDart())
          m_dart[toUnderlying(r)].anchor(prefix);
        else
          m_ndn[toUnderlying(r)].anchor(prefix);
      }
    }
    for (const auto& name : m_net.catalog) {
      auto prefix = longestPrefixMatch(name, anchoredPrefixes);
      if (!prefix)
        throw std::invalid_argument(name.toUri() + " has no anchor");
      for (RouterId r : topo.anchors().at(*prefix)) {
        if (isDart())
          m_dart[toUnderlying(r)].publish(name);
        else
          m_ndn[toUnderlying(r)].publish(name);
      }
    }

    for (const auto& c : m_net.consumers) {
      if (!topo.contains(c.router))
        throw std::invalid_argument("consumer attached to unknown router");
      if (!m_consumerIndex.emplace(toUnderlying(c.id), m_consumers.size()).second)
        throw std::invalid_argument("duplicate consumer id");
      m_consumers.push_back({c, {}});
    }
    m_samples.resize(topo.size());
    m_metrics.resize(topo.size());
    for (size_t i = 0; i < topo.size(); ++i)
      m_metrics[i].router = RouterId{static_cast<uint32_t>(i)};
  }

  bool
  isDart() const noexcept
  {
    return m_config.scheme == Scheme::Dart;
  }

  void
  setWorkload(const WorkloadSpec& spec)
  {
    if (spec.catalogSize > m_net.catalog.size())
      throw std::invalid_argument("workload catalog larger than the published catalog");
    m_workload.emplace(spec, m_net.consumers);
    m_duration = fromSeconds(spec.durationSec);
  }

  void
  addRequests(std::vector<ScriptedRequest> requests)
  {
    for (auto& r : requests) {
      if (!m_consumerIndex.count(toUnderlying(r.consumer)))
        throw std::invalid_argument("scripted request from unknown consumer");
      m_scripted.push_back(std::move(r));
    }
  }

  void
  addScript(std::vector<ScriptStep> steps)
  {
    for (auto& s : steps)
      m_script.push_back(std::move(s));
  }

  MetricsReport
  run();

  void
  schedule(SimTime at, EventKind kind)
  {
    m_queue.push_back(Event{at, m_seq++, std::move(kind)});
    std::push_heap(m_queue.begin(), m_queue.end(), EventLater{});
  }

  void
  traceLine(SimTime now, RouterId router, const char* dir, const Packet& packet, const Face& peer)
  {
    if (m_config.trace == nullptr)
      return;
    std::string h = "-";
    std::string dart = "-";
    if (auto* i = std::get_if<Interest>(&packet)) {
      if (i->hopCount())
        h = std::to_string(*i->hopCount());
      if (i->dart())
        dart = std::to_string(toUnderlying(*i->dart()));
    }
    else if (auto* d = std::get_if<DataPacket>(&packet)) {
      if (d->dart())
        dart = std::to_string(toUnderlying(*d->dart()));
    }
    else if (auto* n = std::get_if<Nack>(&packet)) {
      if (n->dart())
        dart = std::to_string(toUnderlying(*n->dart()));
    }
    char ts[32];
    std::snprintf(ts, sizeof(ts), "%.3f", toMillis(now));
    *m_config.trace << "t=" << ts << ' ' << router << ' ' << dir << ' ' << packetKind(packet)
                    << " name=" << packetName(packet) << " h=" << h << " dart=" << dart
                    << " peer=" << toString(peer) << '\n';
  }

  // sends what `router` emitted; `chain` tags the Interest chain that the
  // triggering packet belongs to, `receivedHops` is set when that packet was
  // a neighbor's Interest and unset for a consumer request
  void
  emit(SimTime now, RouterId router, Emissions emissions, uint64_t chain,
       std::optional<uint32_t> receivedHops, bool fromConsumer)
  {
    for (auto& e : emissions) {
      traceLine(now, router, "TX", e.packet, e.to);
      if (auto* c = std::get_if<ConsumerId>(&e.to)) {
        deliverToConsumer(now, *c, e.packet);
        continue;
      }
      RouterId to = std::get<RouterId>(e.to);
      uint64_t tag = chain;
      if (trackChains()) {
        if (auto* i = std::get_if<Interest>(&e.packet)) {
          if (fromConsumer)
            tag = m_auditor.begin(router, i->name(), *i->hopCount());
          else if (receivedHops)
            m_auditor.forward(chain, router, *receivedHops, *i->hopCount());
        }
        else if (receivedHops) {
          m_auditor.respond(chain, router);
        }
      }
      auto delay = m_net.topology.linkDelay(router, to);
      if (!delay) {
        ++m_linkDrops;
        traceLine(now, router, "DROP", e.packet, to);
        if (trackChains())
          m_auditor.finish(tag);
        continue;
      }
      schedule(now + *delay, Deliver{std::move(e.packet), router, to, tag});
    }
  }

  bool
  trackChains() const noexcept
  {
    return isDart() && (m_config.audit || m_config.keepChains);
  }

  void
  deliverToConsumer(SimTime now, ConsumerId consumer, const Packet& packet)
  {
    auto it = m_consumerIndex.find(toUnderlying(consumer));
    if (it == m_consumerIndex.end())
      return;
    ConsumerState& state = m_consumers[it->second];
    const Name& name = packetName(packet);
    auto out = state.outstanding.find(name);
    if (out == state.outstanding.end())
      return;
    for (size_t idx : out->second) {
      RequestRecord& req = m_requests[idx];
      if (req.outcome != RequestOutcome::Pending)
        continue;
      req.completed = now;
      auto& m = m_metrics[toUnderlying(req.router)];
      if (std::holds_alternative<DataPacket>(packet)) {
        req.outcome = RequestOutcome::Satisfied;
        double d = toMillis(now - req.issued);
        m_delays.push_back(d);
        m.delaySumMs += d;
        ++m.delayCount;
        ++m.satisfied;
      }
      else {
        req.outcome = RequestOutcome::Nacked;
        req.nack = std::get<Nack>(packet).code();
        ++m.nacked;
      }
    }
    state.outstanding.erase(out);
  }

  void
  sendLocal(SimTime now, const ConsumerState& consumer, const Name& name)
  {
    RouterId router = consumer.spec.router;
    auto& m = m_metrics[toUnderlying(router)];
    ++m.interestsReceived;
    ++m.interestsFromConsumers;
    if (isDart()) {
      Interest interest(name);
      traceLine(now, router, "RX", interest, consumer.spec.id);
      auto em = m_dart[toUnderlying(router)].onLocalInterest(consumer.spec.id, name, now);
      emit(now, router, std::move(em), 0, std::nullopt, true);
    }
    else {
      NdnInterest interest(name, m_nonceRng());
      traceLine(now, router, "RX", interest, consumer.spec.id);
      auto em = m_ndn[toUnderlying(router)].onInterest(consumer.spec.id, interest, now);
      emit(now, router, std::move(em), 0, std::nullopt, false);
    }
  }

  void
  issueRequest(SimTime now, ConsumerId consumer, const Name& name)
  {
    ConsumerState& state = m_consumers[m_consumerIndex.at(toUnderlying(consumer))];
    size_t idx = m_requests.size();
    RequestRecord rec{consumer, state.spec.router, name, now, 1, RequestOutcome::Pending,
                      SimTime(0), std::nullopt};
    m_requests.push_back(std::move(rec));
    ++m_metrics[toUnderlying(state.spec.router)].requests;
    state.outstanding[name].push_back(idx);
    schedule(now + m_config.retryTimeout, RetryTimer{idx});
    sendLocal(now, state, name);
  }

  void
  onRetry(SimTime now, size_t idx)
  {
    RequestRecord& req = m_requests[idx];
    if (req.outcome != RequestOutcome::Pending)
      return;
    ConsumerState& state = m_consumers[m_consumerIndex.at(toUnderlying(req.consumer))];
    if (req.tries >= m_config.maxTries) {
      req.outcome = RequestOutcome::TimedOut;
      req.completed = now;
      ++m_metrics[toUnderlying(req.router)].timedOut;
      auto out = state.outstanding.find(req.name);
      if (out != state.outstanding.end()) {
        std::erase(out->second, idx);
        if (out->second.empty())
          state.outstanding.erase(out);
      }
      return;
    }
    ++m_requests[idx].tries;
    schedule(now + m_config.retryTimeout, RetryTimer{idx});
    Name name = req.name; // sendLocal may grow m_requests
    sendLocal(now, state, name);
  }

  void
  onDeliver(SimTime now, Deliver& ev)
  {
    if (!m_net.topology.linkDelay(ev.from, ev.to)) {
      ++m_linkDrops;
      traceLine(now, ev.to, "DROP", ev.packet, ev.from);
      if (trackChains())
        m_auditor.finish(ev.chain);
      return;
    }
    traceLine(now, ev.to, "RX", ev.packet, ev.from);
    auto& m = m_metrics[toUnderlying(ev.to)];

    if (isDart()) {
      DartNode& node = m_dart[toUnderlying(ev.to)];
      if (auto* interest = std::get_if<Interest>(&ev.packet)) {
        ++m.interestsReceived;
        if (trackChains())
          m_auditor.arrive(ev.chain, ev.to);
        auto em = node.onNeighborInterest(ev.from, *interest, now);
        emit(now, ev.to, std::move(em), ev.chain, interest->hopCount(), false);
        return;
      }
      Emissions em;
      uint64_t orphansBefore = node.counters().orphanData + node.counters().orphanNack;
      if (trackChains())
        m_auditor.respond(ev.chain, ev.to);
      if (auto* data = std::get_if<DataPacket>(&ev.packet))
        em = node.onData(ev.from, *data, now);
      else
        em = node.onNack(ev.from, std::get<Nack>(ev.packet), now);
      if (node.counters().orphanData + node.counters().orphanNack != orphansBefore)
        traceLine(now, ev.to, "DROP", ev.packet, ev.from);
      bool forwarded = std::any_of(em.begin(), em.end(), [] (const Emission& e) {
        return std::holds_alternative<RouterId>(e.to);
      });
      emit(now, ev.to, std::move(em), ev.chain, std::nullopt, false);
      if (!forwarded && trackChains())
        m_auditor.finish(ev.chain);
      return;
    }

    NdnNode& node = m_ndn[toUnderlying(ev.to)];
    Emissions em;
    if (auto* interest = std::get_if<NdnInterest>(&ev.packet)) {
      ++m.interestsReceived;
      em = node.onInterest(ev.from, *interest, now);
    }
    else if (auto* data = std::get_if<DataPacket>(&ev.packet)) {
      uint64_t before = node.counters().unsolicitedData;
      em = node.onData(ev.from, *data, now);
      if (node.counters().unsolicitedData != before)
        traceLine(now, ev.to, "DROP", ev.packet, ev.from);
    }
    else {
      em = node.onNack(ev.from, std::get<Nack>(ev.packet), now);
    }
    emit(now, ev.to, std::move(em), 0, std::nullopt, false);
  }

  void
  onSweep(SimTime now)
  {
    if (isDart()) {
      for (auto& node : m_dart)
        node.evictDarts(now);
    }
    else {
      for (auto& node : m_ndn)
        node.expirePit(now);
    }
  }

  void
  onSample(SimTime now)
  {
    if (now < fromSeconds(toMillis(m_duration) / 1e3 * m_config.warmupFraction) || now >= m_duration)
      return;
    for (size_t i = 0; i < m_samples.size(); ++i) {
      auto& s = m_samples[i];
      if (isDart()) {
        s.table += m_dart[i].dartTable().size();
        s.pending += m_dart[i].pendingCount();
      }
      else {
        s.table += m_ndn[i].pitSize();
      }
      ++s.count;
    }
  }

  void
  applyFib(RouterId router, const std::function<void(Fib&)>& f)
  {
    if (isDart())
      f(m_dart.at(toUnderlying(router)).fib());
    else
      f(m_ndn.at(toUnderlying(router)).fib());
  }

  void
  onScript(const ScriptStep& step)
  {
    std::visit([this] (const auto& action) { applyAction(action); }, step.action);
  }

  void
  applyAction(const DistanceEdit& e)
  {
    applyFib(e.router, [&] (Fib& fib) { fib.setDistance(e.prefix, e.nextHop, e.distance); });
  }

  void
  applyAction(const RankOverride& r)
  {
    applyFib(r.router, [&] (Fib& fib) { fib.reorder(r.prefix, r.order); });
  }

  void
  applyAction(const LinkDown& l)
  {
    m_net.topology.removeLink(l.a, l.b);
    for (auto [x, y] : {std::pair{l.a, l.b}, std::pair{l.b, l.a}}) {
      applyFib(x, [y] (Fib& fib) { fib.removeNextHop(y); });
      if (isDart())
        m_dart[toUnderlying(x)].onLinkDown(y);
    }
  }

  MetricsReport
  finishReport();

public:
  Network m_net;
  SimConfig m_config;
  std::vector<DartNode> m_dart;
  std::vector<NdnNode> m_ndn;
  TraceAuditor m_auditor;
  std::mt19937_64 m_nonceRng;

  std::vector<ConsumerState> m_consumers;
  std::unordered_map<uint32_t, size_t> m_consumerIndex;
  std::vector<RequestRecord> m_requests;
  std::vector<double> m_delays;
  std::vector<SampleAccumulator> m_samples;
  std::vector<RouterMetrics> m_metrics;

  std::optional<WorkloadGenerator> m_workload;
  std::vector<ScriptedRequest> m_scripted;
  std::vector<ScriptStep> m_script;
  SimTime m_duration{0};

  std::vector<Event> m_queue;
  uint64_t m_seq = 0;
  uint64_t m_events = 0;
  uint64_t m_linkDrops = 0;
  bool m_ran = false;
};

MetricsReport
Simulator::Impl::run()
{
  if (m_ran)
    throw std::logic_error("a Simulator runs once");
  m_ran = true;

  for (const auto& r : m_scripted)
    m_duration = std::max(m_duration, r.at + SimTime(1));
  for (const auto& s : m_script)
    m_duration = std::max(m_duration, s.at + SimTime(1));
  const SimTime end = m_duration + m_config.drain;

  if (m_workload) {
    for (size_t i = 0; i < m_workload->consumers().size(); ++i) {
      if (auto r = m_workload->next(i))
        schedule(r->time, WorkloadArrival{i, r->object});
    }
  }
  for (size_t i = 0; i < m_scripted.size(); ++i)
    schedule(m_scripted[i].at, ScriptedArrival{i});
  for (size_t i = 0; i < m_script.size(); ++i)
    schedule(m_script[i].at, ScriptFire{i});
  schedule(m_config.sweepInterval, SweepTimer{});
  schedule(SimTime(0), SampleTimer{});

  while (!m_queue.empty()) {
    std::pop_heap(m_queue.begin(), m_queue.end(), EventLater{});
    Event ev = std::move(m_queue.back());
    m_queue.pop_back();
    if (ev.time > end)
      break;
    ++m_events;
    const SimTime now = ev.time;

    std::visit([&] (auto& kind) {
      using K = std::decay_t<decltype(kind)>;
      if constexpr (std::is_same_v<K, Deliver>) {
        onDeliver(now, kind);
      }
      else if constexpr (std::is_same_v<K, WorkloadArrival>) {
        const auto& consumer = m_workload->consumers()[kind.consumer];
        issueRequest(now, consumer.id, m_net.catalog[kind.object]);
        if (auto r = m_workload->next(kind.consumer))
          schedule(r->time, WorkloadArrival{kind.consumer, r->object});
      }
      else if constexpr (std::is_same_v<K, ScriptedArrival>) {
        const auto& r = m_scripted[kind.index];
        issueRequest(now, r.consumer, r.name);
      }
      else if constexpr (std::is_same_v<K, RetryTimer>) {
        onRetry(now, kind.request);
      }
      else if constexpr (std::is_same_v<K, SweepTimer>) {
        onSweep(now);
        if (now + m_config.sweepInterval <= end)
          schedule(now + m_config.sweepInterval, SweepTimer{});
      }
      else if constexpr (std::is_same_v<K, SampleTimer>) {
        onSample(now);
        if (now + m_config.sampleInterval < m_duration)
          schedule(now + m_config.sampleInterval, SampleTimer{});
      }
      else {
        onScript(m_script[kind.index]);
      }
    }, ev.kind);
  }
  return finishReport();
}

MetricsReport
Simulator::Impl::finishReport()
{
  MetricsReport report;
  report.scheme = m_config.scheme;
  report.caching = m_config.caching;
  report.seed = m_config.seed;
  report.events = m_events;
  report.auditChecks = m_auditor.checks();
  report.linkDrops = m_linkDrops;
  report.delaysMs = m_delays;
  for (size_t i = 0; i < m_metrics.size(); ++i) {
    RouterMetrics& m = m_metrics[i];
    const auto& s = m_samples[i];
    m.samples = s.count;
    if (s.count) {
      m.tableMean = s.table / s.count;
      m.rctPendingMean = s.pending / s.count;
    }
    if (isDart()) {
      const auto& c = m_dart[i].counters();
      m.orphanData = c.orphanData;
      m.orphanNack = c.orphanNack;
      m.loopNacks = c.loopNacksSent;
      m.aggregated = c.aggregated;
      m.dartEvicted = c.evicted;
    }
    else {
      const auto& c = m_ndn[i].counters();
      m.loopNacks = c.duplicateNonce;
      m.aggregated = c.aggregated;
      m.pitExpired = c.expired;
      m.unsolicited = c.unsolicitedData + c.unsolicitedNack;
    }
  }
  report.routers = m_metrics;
  return report;
}

Simulator::Simulator(Network network, SimConfig config)
  : m_impl(std::make_unique<Impl>(std::move(network), config))
{
}

Simulator::~Simulator() = default;

void
Simulator::setWorkload(const WorkloadSpec& spec)
{
  m_impl->setWorkload(spec);
}

void
Simulator::addRequests(std::vector<ScriptedRequest> requests)
{
  m_impl->addRequests(std::move(requests));
}

void
Simulator::addScript(std::vector<ScriptStep> steps)
{
  m_impl->addScript(std::move(steps));
}

void
Simulator::setDuration(SimTime duration)
{
  m_impl->m_duration = duration;
}

MetricsReport
Simulator::run()
{
  return m_impl->run();
}

const DartNode&
Simulator::dartNode(RouterId id) const
{
  return m_impl->m_dart.at(toUnderlying(id));
}

const NdnNode&
Simulator::ndnNode(RouterId id) const
{
  return m_impl->m_ndn.at(toUnderlying(id));
}

const std::vector<RequestRecord>&
Simulator::requests() const noexcept
{
  return m_impl->m_requests;
}

const TraceAuditor&
Simulator::auditor() const noexcept
{
  return m_impl->m_auditor;
}

const Topology&
Simulator::topology() const noexcept
{
  return m_impl->m_net.topology;
}

MetricsReport
runSimulation(const Network& network, const SimConfig& config, const WorkloadSpec& workload)
{
  Simulator sim(network, config);
  sim.setWorkload(workload);
  auto report = sim.run();
  report.rate = workload.perRouterRate;
  return report;
}

} // namespace dartlab
