#ifndef DARTLAB_NDN_NODE_HPP
#define DARTLAB_NDN_NODE_HPP

#include "dartlab/content-store.hpp"
#include "dartlab/fib.hpp"
#include "dartlab/message.hpp"

#include <iosfwd>
#include <unordered_map>
#include <unordered_set>

namespace dartlab {

struct InRecord
{
  uint64_t nonce;
  Face face;

  friend bool
  operator==(const InRecord&, const InRecord&) = default;
};

struct PitEntry
{
  Name name;
  std::vector<InRecord> inRecords;   // arrival order
  std::vector<RouterId> outFaces;
  SimTime created;
  SimTime expiry;
};

struct NdnNodeConfig
{
  CachingMode caching = CachingMode::OnPath;
  SimTime pitLifetime = std::chrono::seconds(4);
  std::optional<size_t> csCapacity;
};

struct NdnCounters
{
  uint64_t aggregated = 0;
  uint64_t duplicateNonce = 0;
  uint64_t noRouteNacksSent = 0;
  uint64_t noContentNacksSent = 0;
  uint64_t unsolicitedData = 0;
  uint64_t unsolicitedNack = 0;
  uint64_t expired = 0;
};

/** \brief Baseline NDN router: content store, nonce-based PIT, ranked FIB.
 *
 *  Interests go out the single best-ranked face other than the one they
 *  came from. FIB distances are ignored.
 */
class NdnNode
{
public:
  NdnNode(RouterId id, Fib fib, NdnNodeConfig config = {});

  RouterId
  id() const noexcept
  {
    return m_id;
  }

  void
  anchor(const Prefix& prefix);

  void
  publish(const Name& name);

  Emissions
  onInterest(Face from, const NdnInterest& interest, SimTime now);

  Emissions
  onData(Face from, const DataPacket& data, SimTime now);

  /// NACKs fan out to the in-records like Data, without caching
  Emissions
  onNack(RouterId from, const Nack& nack, SimTime now);

  size_t
  expirePit(SimTime now);

  const PitEntry*
  findPit(const Name& name) const;

  size_t
  pitSize() const noexcept
  {
    return m_pit.size();
  }

  const Fib&
  fib() const noexcept
  {
    return m_fib;
  }

  Fib&
  fib() noexcept
  {
    return m_fib;
  }

  const ContentStore&
  contentStore() const noexcept
  {
    return m_store;
  }

  const NdnCounters&
  counters() const noexcept
  {
    return m_counters;
  }

  /// "pit <router> <name> <nonce,in>... <out>..." lines, sorted by name
  void
  dump(std::ostream& os) const;

private:
  bool
  isAnchoredName(const Name& name) const;

private:
  RouterId m_id;
  Fib m_fib;
  NdnNodeConfig m_config;
  std::unordered_map<Name, PitEntry, NameHash> m_pit;
  std::unordered_set<Name, NameHash> m_published;
  PrefixSet m_anchored;
  ContentStore m_store;
  NdnCounters m_counters;
};

} // namespace dartlab

#endif // DARTLAB_NDN_NODE_HPP
