#include "dartlab/ndn-node.hpp"
#include "dartlab/dart-node.hpp" // makeContentObject

#include <algorithm>
#include <ostream>

namespace dartlab {

NdnNode::NdnNode(RouterId id, Fib fib, NdnNodeConfig config)
  : m_id(id)
  , m_fib(std::move(fib))
  , m_config(config)
  , m_store(config.csCapacity)
{
}

void
NdnNode::anchor(const Prefix& prefix)
{
  m_anchored.insert(prefix);
}

void
NdnNode::publish(const Name& name)
{
  if (!isAnchoredName(name))
    throw std::invalid_argument(name.toUri() + " is not under an anchored prefix");
  m_published.insert(name);
}

bool
NdnNode::isAnchoredName(const Name& name) const
{
  return findLongestMatch(m_anchored, name) != m_anchored.end();
}

Emissions
NdnNode::onInterest(Face from, const NdnInterest& interest, SimTime now)
{
  const Name& name = interest.name();

  if (m_published.count(name))
    return {{from, makeContentObject(name)}};
  if (auto data = m_store.find(name))
    return {{from, std::move(*data)}};

  if (auto it = m_pit.find(name); it != m_pit.end()) {
    PitEntry& entry = it->second;
    bool seen = std::any_of(entry.inRecords.begin(), entry.inRecords.end(),
                            [&] (const InRecord& r) { return r.nonce == interest.nonce(); });
    if (seen) {
      ++m_counters.duplicateNonce;
      return {{from, Nack(name, NackCode::Loop)}};
    }
    entry.inRecords.push_back({interest.nonce(), from});
    entry.expiry = std::max(entry.expiry, now + m_config.pitLifetime);
    ++m_counters.aggregated;
    return {};
  }

  if (isAnchoredName(name)) {
    ++m_counters.noContentNacksSent;
    return {{from, Nack(name, NackCode::NoContent)}};
  }

  auto match = m_fib.longestMatch(name);
  const FibTuple* out = nullptr;
  if (match) {
    for (const FibTuple& t : *match->tuples) {
      if (Face(t.nextHop) != from) {
        out = &t;
        break;
      }
    }
  }
  if (out == nullptr) {
    ++m_counters.noRouteNacksSent;
    return {{from, Nack(name, NackCode::NoRoute)}};
  }

  m_pit.emplace(name, PitEntry{name, {{interest.nonce(), from}}, {out->nextHop}, now,
                               now + m_config.pitLifetime});
  return {{out->nextHop, interest}};
}

Emissions
NdnNode::onData(Face, const DataPacket& data, SimTime)
{
  auto it = m_pit.find(data.name());
  if (it == m_pit.end()) {
    ++m_counters.unsolicitedData;
    return {};
  }

  Emissions out;
  std::vector<Face> sent;
  bool hasConsumer = false;
  for (const InRecord& r : it->second.inRecords) {
    if (std::find(sent.begin(), sent.end(), r.face) != sent.end())
      continue;
    sent.push_back(r.face);
    hasConsumer = hasConsumer || std::holds_alternative<ConsumerId>(r.face);
    out.push_back({r.face, data.withDart(std::nullopt)});
  }
  m_pit.erase(it);

  if (m_config.caching == CachingMode::OnPath ||
      (m_config.caching == CachingMode::Edge && hasConsumer))
    m_store.insert(data);
  return out;
}

Emissions
NdnNode::onNack(RouterId from, const Nack& nack, SimTime)
{
  auto it = m_pit.find(nack.name());
  if (it == m_pit.end() ||
      std::find(it->second.outFaces.begin(), it->second.outFaces.end(), from) ==
        it->second.outFaces.end()) {
    ++m_counters.unsolicitedNack;
    return {};
  }

  Emissions out;
  std::vector<Face> sent;
  for (const InRecord& r : it->second.inRecords) {
    if (std::find(sent.begin(), sent.end(), r.face) != sent.end())
      continue;
    sent.push_back(r.face);
    out.push_back({r.face, nack.withDart(std::nullopt)});
  }
  m_pit.erase(it);
  return out;
}

size_t
NdnNode::expirePit(SimTime now)
{
  size_t n = std::erase_if(m_pit, [now] (const auto& kv) { return kv.second.expiry <= now; });
  m_counters.expired += n;
  return n;
}

const PitEntry*
NdnNode::findPit(const Name& name) const
{
  auto it = m_pit.find(name);
  return it == m_pit.end() ? nullptr : &it->second;
}

void
NdnNode::dump(std::ostream& os) const
{
  std::vector<const PitEntry*> entries;
  for (const auto& [name, entry] : m_pit)
    entries.push_back(&entry);
  std::sort(entries.begin(), entries.end(),
            [] (const PitEntry* a, const PitEntry* b) { return a->name < b->name; });
  for (const PitEntry* e : entries) {
    os << "pit " << m_id << ' ' << e->name;
    for (const auto& r : e->inRecords)
      os << ' ' << r.nonce << ',' << toString(r.face);
    for (RouterId o : e->outFaces)
      os << ' ' << o;
    os << '\n';
  }
}

} // namespace dartlab
