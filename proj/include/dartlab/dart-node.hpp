#ifndef DARTLAB_DART_NODE_HPP
#define DARTLAB_DART_NODE_HPP

#include "dartlab/content-store.hpp"
#include "dartlab/dart-table.hpp"
#include "dartlab/fib.hpp"
#include "dartlab/message.hpp"

#include <iosfwd>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace dartlab {

struct DartNodeConfig
{
  CachingMode caching = CachingMode::OnPath;
  SimTime dartTtl = std::chrono::seconds(10);
  std::optional<size_t> csCapacity;
  /// Ablation switch: when false, DEAR is skipped and the best-ranked next
  /// hop other than the predecessor is taken regardless of distance.
  bool enforceDear = true;
};

struct DartCounters
{
  uint64_t orphanData = 0;
  uint64_t orphanNack = 0;
  uint64_t loopNacksSent = 0;
  uint64_t noRouteNacksSent = 0;
  uint64_t noContentNacksSent = 0;
  uint64_t aggregated = 0;
  uint64_t fastPathForwards = 0;
  uint64_t dearForwards = 0;
  uint64_t evicted = 0;
};

/// Requested-content table view of one name.
struct RctEntry
{
  Name name;
  bool cached = false;                 // content location present
  std::vector<ConsumerId> consumers;   // local consumers waiting, sorted
};

/** \brief CCN-DART router: FIB, DART, RCT and content store.
 *
 *  Operations return the packets to send; the caller delivers them. The
 *  RCT is kept as two indexes: pending local requests and local content
 *  (content store plus objects published under anchored prefixes).
 */
class DartNode
{
public:
  DartNode(RouterId id, Fib fib, DartNodeConfig config = {});

  RouterId
  id() const noexcept
  {
    return m_id;
  }

  /// declare this router an anchor of \p prefix
  void
  anchor(const Prefix& prefix);

  /// make \p name available locally; it must fall under an anchored prefix
  void
  publish(const Name& name);

  /** \brief DEAR: highest-ranked tuple whose distance is strictly below
   *         \p receivedHops, skipping \p excluded (the predecessor).
   */
  std::optional<FibTuple>
  dearCheck(uint32_t receivedHops, const Prefix& prefix,
            std::optional<RouterId> excluded = std::nullopt) const;

  /// Interest I[n, nil, nil] from a local consumer
  Emissions
  onLocalInterest(ConsumerId consumer, const Name& name, SimTime now);

  /// \pre interest carries a dart
  Emissions
  onNeighborInterest(RouterId from, const Interest& interest, SimTime now);

  Emissions
  onData(RouterId from, const DataPacket& data, SimTime now);

  Emissions
  onNack(RouterId from, const Nack& nack, SimTime now);

  /// successor dart distinct from every live one
  Dart
  freshDart();

  size_t
  evictDarts(SimTime now);

  size_t
  onLinkDown(RouterId neighbor);

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

  const DartTable&
  dartTable() const noexcept
  {
    return m_dart;
  }

  /// test seam: install an entry directly
  DartTable&
  dartTable() noexcept
  {
    return m_dart;
  }

  /// number of names with pending local requests
  size_t
  pendingCount() const noexcept
  {
    return m_pending.size();
  }

  std::optional<RctEntry>
  rct(const Name& name) const;

  const ContentStore&
  contentStore() const noexcept
  {
    return m_store;
  }

  const PrefixSet&
  anchoredPrefixes() const noexcept
  {
    return m_anchored;
  }

  const DartCounters&
  counters() const noexcept
  {
    return m_counters;
  }

  const DartNodeConfig&
  config() const noexcept
  {
    return m_config;
  }

  /// "dart <router> <anchor> <pred> <pd> <succ> <sd> <h>" and
  /// "rct <router> <name> <cached|pending> <consumers...>" lines
  void
  dump(std::ostream& os) const;

private:
  std::optional<DataPacket>
  findLocalContent(const Name& name);

  bool
  isAnchoredName(const Name& name) const;

  void
  cache(const DataPacket& data);

private:
  RouterId m_id;
  Fib m_fib;
  DartNodeConfig m_config;
  DartTable m_dart;
  std::unordered_map<Name, std::set<ConsumerId>, NameHash> m_pending;
  std::unordered_set<Name, NameHash> m_published;
  PrefixSet m_anchored;
  ContentStore m_store;
  uint32_t m_nextDart = 1;
  DartCounters m_counters;
};

/// Producer-side content object for \p name.
DataPacket
makeContentObject(const Name& name);

} // namespace dartlab

#endif // DARTLAB_DART_NODE_HPP
