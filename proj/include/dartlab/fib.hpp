#ifndef DARTLAB_FIB_HPP
#define DARTLAB_FIB_HPP

#include "dartlab/name.hpp"
#include "dartlab/topology.hpp"

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

namespace dartlab {

class RoutingError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// One next hop toward a prefix. rank 1 is the most preferred.
struct FibTuple
{
  RouterId nextHop;
  uint32_t distance; // hops to the prefix through nextHop
  RouterId anchor;   // nearest anchor of the prefix through nextHop
  uint32_t rank;

  friend bool
  operator==(const FibTuple&, const FibTuple&) = default;
};

/** \brief Per-router forwarding table: prefix -> tuples ordered by rank.
 *
 *  Invariants: tuple lists are non-empty, next hops are distinct and ranks
 *  are exactly 1..k in list order.
 */
class Fib
{
public:
  using Tuples = std::vector<FibTuple>;

  struct Match
  {
    const Prefix* prefix;
    const Tuples* tuples;
  };

  /// \throw RoutingError if \p tuples breaks the invariants
  void
  set(const Prefix& prefix, Tuples tuples);

  void
  erase(const Prefix& prefix);

  const Tuples*
  find(const Prefix& prefix) const;

  std::optional<Match>
  longestMatch(const Name& name) const;

  /// \throw RoutingError unless \p order is a permutation of the tuple next hops
  void
  reorder(const Prefix& prefix, const std::vector<RouterId>& order);

  /// overwrite one tuple's distance, rank untouched. \throw RoutingError on unknown tuples
  void
  setDistance(const Prefix& prefix, RouterId nextHop, uint32_t distance);

  /// drop every tuple through \p neighbor; prefixes left without tuples are removed
  void
  removeNextHop(RouterId neighbor);

  /// prefixes in sorted order
  std::vector<Prefix>
  prefixes() const;

  size_t
  size() const noexcept
  {
    return m_entries.size();
  }

  bool
  empty() const noexcept
  {
    return m_entries.empty();
  }

  friend bool
  operator==(const Fib& a, const Fib& b)
  {
    return a.m_entries == b.m_entries;
  }

private:
  PrefixMap<Tuples> m_entries;
};

/// FIBs of all routers, indexed by router id
using FibSet = std::vector<Fib>;

/** \brief Omniscient control plane.
 *
 *  For router i, prefix p and neighbor q the tuple distance is
 *  1 + (hops from q to the nearest anchor of p). Unreachable neighbors are
 *  omitted. Nearest-anchor ties go to the lowest anchor id; default ranking
 *  is by (distance, neighbor id).
 */
FibSet
computeFibs(const Topology& topology);

/// \throw RoutingError unless \p order is a permutation of the tuple next hops
FibSet
overrideRankings(FibSet fibs, RouterId router, const Prefix& prefix,
                 const std::vector<RouterId>& order);

struct DistanceEdit
{
  RouterId router;
  Prefix prefix;
  RouterId nextHop;
  uint32_t distance;
};

/// Overwrite tuple distances, ranks untouched. \throw RoutingError on unknown tuples
FibSet
injectStaleDistances(FibSet fibs, std::span<const DistanceEdit> edits);

/// "fib <router> <prefix> <rank> <next_hop> <distance> <anchor>" lines, sorted
void
dumpFibs(const FibSet& fibs, std::ostream& os);

} // namespace dartlab

#endif // DARTLAB_FIB_HPP
