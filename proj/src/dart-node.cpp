#include "dartlab/dart-node.hpp"

#include <algorithm>
#include <ostream>

namespace dartlab {

DataPacket
makeContentObject(const Name& name)
{
  static const auto signature = std::make_shared<const Bytes>(Bytes{0x73, 0x70});
  auto uri = name.toUri();
  return DataPacket(name, signature, std::nullopt,
                    std::make_shared<const Bytes>(uri.begin(), uri.end()));
}

DartNode::DartNode(RouterId id, Fib fib, DartNodeConfig config)
  : m_id(id)
  , m_fib(std::move(fib))
  , m_config(config)
  , m_store(config.csCapacity)
{
}

void
DartNode::anchor(const Prefix& prefix)
{
  m_anchored.insert(prefix);
}

void
DartNode::publish(const Name& name)
{
  if (!isAnchoredName(name))
    throw std::invalid_argument(name.toUri() + " is not under an anchored prefix");
  m_published.insert(name);
}

bool
DartNode::isAnchoredName(const Name& name) const
{
  return findLongestMatch(m_anchored, name) != m_anchored.end();
}

std::optional<DataPacket>
DartNode::findLocalContent(const Name& name)
{
  if (m_published.count(name))
    return makeContentObject(name);
  return m_store.find(name);
}

void
DartNode::cache(const DataPacket& data)
{
  m_store.insert(data);
}

std::optional<FibTuple>
DartNode::dearCheck(uint32_t receivedHops, const Prefix& prefix,
                    std::optional<RouterId> excluded) const
{
  const Fib::Tuples* tuples = m_fib.find(prefix);
  if (tuples == nullptr)
    return std::nullopt;
  for (const FibTuple& t : *tuples) {
    if (excluded && t.nextHop == *excluded)
      continue;
    if (!m_config.enforceDear || receivedHops > t.distance)
      return t;
  }
  return std::nullopt;
}

Dart
DartNode::freshDart()
{
  if (m_dart.size() >= 0xffffffffULL)
    throw DartTableError("dart space exhausted");
  // 0 is never issued so that a zeroed dart stands out in traces
  while (m_nextDart == 0 || m_dart.containsSuccessorDart(Dart{m_nextDart}))
    ++m_nextDart;
  return Dart{m_nextDart++};
}

Emissions
DartNode::onLocalInterest(ConsumerId consumer, const Name& name, SimTime now)
{
  if (auto data = findLocalContent(name))
    return {{consumer, std::move(*data)}};

  if (auto it = m_pending.find(name); it != m_pending.end()) {
    it->second.insert(consumer);
    ++m_counters.aggregated;
    return {};
  }

  if (isAnchoredName(name)) {
    ++m_counters.noContentNacksSent;
    return {{consumer, Nack(name, NackCode::NoContent)}};
  }

  auto match = m_fib.longestMatch(name);
  if (!match) {
    ++m_counters.noRouteNacksSent;
    return {{consumer, Nack(name, NackCode::NoRoute)}};
  }

  m_pending[name].insert(consumer);

  // only the highest-ranked next hop is considered; it always yields a route
  const FibTuple& best = match->tuples->front();
  const DartEntry* entry = m_dart.findOrigin(best.anchor, best.nextHop);
  if (entry != nullptr) {
    m_dart.touch(entry->successorDart, now);
  }
  else {
    Dart sd = freshDart();
    entry = &m_dart.insert(DartEntry{best.anchor, std::nullopt, sd, best.nextHop, sd,
                                     best.distance, now});
  }
  return {{entry->successor, Interest(name, entry->hopCount, entry->successorDart)}};
}

Emissions
DartNode::onNeighborInterest(RouterId from, const Interest& interest, SimTime now)
{
  if (interest.isLocal())
    throw std::invalid_argument("Interest from a neighbor must carry hop count and dart");
  const Name& name = interest.name();
  const Dart dart = *interest.dart();

  if (auto data = findLocalContent(name))
    return {{from, data->withDart(dart)}};

  if (isAnchoredName(name)) {
    ++m_counters.noContentNacksSent;
    return {{from, Nack(name, NackCode::NoContent, dart)}};
  }

  auto match = m_fib.longestMatch(name);
  if (!match) {
    ++m_counters.noRouteNacksSent;
    return {{from, Nack(name, NackCode::NoRoute, dart)}};
  }

  if (const DartEntry* entry = m_dart.findByPredecessor(from, dart)) {
    m_dart.touch(entry->successorDart, now);
    ++m_counters.fastPathForwards;
    return {{entry->successor, Interest(name, entry->hopCount, entry->successorDart)}};
  }

  auto choice = dearCheck(*interest.hopCount(), *match->prefix, from);
  if (!choice) {
    ++m_counters.loopNacksSent;
    return {{from, Nack(name, NackCode::Loop, dart)}};
  }

  Dart sd = freshDart();
  const DartEntry& entry = m_dart.insert(DartEntry{choice->anchor, from, dart, choice->nextHop, sd,
                                                   choice->distance, now});
  ++m_counters.dearForwards;
  return {{entry.successor, Interest(name, entry.hopCount, entry.successorDart)}};
}

Emissions
DartNode::onData(RouterId, const DataPacket& data, SimTime)
{
  if (!data.dart())
    throw std::invalid_argument("Data from a neighbor must carry a dart");
  if (!verifySecurityPayload(data))
    return {};

  const DartEntry* entry = m_dart.findBySuccessorDart(*data.dart());
  if (entry == nullptr) {
    ++m_counters.orphanData;
    return {};
  }

  Emissions out;
  if (entry->isOrigin()) {
    if (auto it = m_pending.find(data.name()); it != m_pending.end()) {
      DataPacket plain = data.withDart(std::nullopt);
      for (ConsumerId c : it->second)
        out.push_back({c, plain});
      m_pending.erase(it);
    }
    if (m_config.caching != CachingMode::None)
      cache(data);
  }
  else {
    out.push_back({*entry->predecessor, data.withDart(entry->predecessorDart)});
    if (m_config.caching == CachingMode::OnPath)
      cache(data);
  }
  return out;
}

Emissions
DartNode::onNack(RouterId, const Nack& nack, SimTime)
{
  if (!nack.dart())
    throw std::invalid_argument("NACK from a neighbor must carry a dart");

  const DartEntry* entry = m_dart.findBySuccessorDart(*nack.dart());
  if (entry == nullptr) {
    ++m_counters.orphanNack;
    return {};
  }

  Emissions out;
  if (entry->isOrigin()) {
    if (auto it = m_pending.find(nack.name()); it != m_pending.end()) {
      Nack plain = nack.withDart(std::nullopt);
      for (ConsumerId c : it->second)
        out.push_back({c, plain});
      m_pending.erase(it);
    }
  }
  else {
    out.push_back({*entry->predecessor, nack.withDart(entry->predecessorDart)});
  }
  return out;
}

size_t
DartNode::evictDarts(SimTime now)
{
  size_t n = m_dart.evictIdle(now, m_config.dartTtl);
  m_counters.evicted += n;
  return n;
}

size_t
DartNode::onLinkDown(RouterId neighbor)
{
  return m_dart.removeNeighbor(neighbor);
}

std::optional<RctEntry>
DartNode::rct(const Name& name) const
{
  bool cached = m_published.count(name) > 0 || m_store.contains(name);
  auto it = m_pending.find(name);
  if (!cached && it == m_pending.end())
    return std::nullopt;
  RctEntry e{name, cached, {}};
  if (it != m_pending.end())
    e.consumers.assign(it->second.begin(), it->second.end());
  return e;
}

void
DartNode::dump(std::ostream& os) const
{
  for (const auto& e : m_dart.entries()) {
    os << "dart " << m_id << ' ' << e.anchor << ' ';
    if (e.predecessor)
      os << *e.predecessor;
    else
      os << "self";
    os << ' ' << e.predecessorDart << ' ' << e.successor << ' ' << e.successorDart << ' '
       << e.hopCount << '\n';
  }

  std::vector<Name> names;
  for (const auto& [name, consumers] : m_pending)
    names.push_back(name);
  for (const auto& name : m_store.names()) {
    if (!m_pending.count(name))
      names.push_back(name);
  }
  std::sort(names.begin(), names.end());
  for (const auto& name : names) {
    auto e = rct(name);
    os << "rct " << m_id << ' ' << name << ' ' << (e->consumers.empty() ? "cached" : "pending");
    for (ConsumerId c : e->consumers)
      os << ' ' << c;
    os << '\n';
  }
}

} // namespace dartlab
