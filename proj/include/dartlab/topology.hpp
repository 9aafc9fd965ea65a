#ifndef DARTLAB_TOPOLOGY_HPP
#define DARTLAB_TOPOLOGY_HPP

#include "dartlab/name.hpp"
#include "dartlab/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

namespace dartlab {

class TopologyError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct Position
{
  double x = 0;
  double y = 0;
};

struct Link
{
  RouterId a;
  RouterId b;
  double delayMs;
};

struct Adjacency
{
  RouterId neighbor;
  SimTime delay;
};

/** \brief Routers 0..n-1, undirected delay links, and the anchors of each prefix.
 */
class Topology
{
public:
  RouterId
  addRouter(Position position = {});

  /// \throw TopologyError on self-links, duplicates, unknown routers or delay <= 0
  void
  addLink(RouterId a, RouterId b, double delayMs);

  void
  removeLink(RouterId a, RouterId b);

  void
  addAnchor(const Prefix& prefix, RouterId router);

  size_t
  size() const noexcept
  {
    return m_positions.size();
  }

  bool
  contains(RouterId id) const noexcept
  {
    return toUnderlying(id) < size();
  }

  Position
  position(RouterId id) const
  {
    return m_positions.at(toUnderlying(id));
  }

  /// neighbors of \p id ordered by router id
  const std::vector<Adjacency>&
  neighbors(RouterId id) const
  {
    return m_adjacency.at(toUnderlying(id));
  }

  std::optional<SimTime>
  linkDelay(RouterId a, RouterId b) const;

  /// every link once, ordered by (a, b) with a < b
  std::vector<Link>
  links() const;

  const std::map<Prefix, std::set<RouterId>>&
  anchors() const noexcept
  {
    return m_anchors;
  }

  /// prefixes for which \p id is an anchor
  std::vector<Prefix>
  anchoredBy(RouterId id) const;

  bool
  isConnected() const;

  /// \throw TopologyError unless connected with at least one router
  void
  validate() const;

  /** \brief Parse the line-oriented topology format.
   *
   *    node <id> <x> <y>
   *    link <id1> <id2> <delay_ms>
   *    anchor <prefix> <router id>
   *
   *  Node ids must be 0..n-1 (any order). '#' starts a comment.
   *  \throw TopologyError with the offending line number
   */
  static Topology
  read(std::istream& is);

  void
  write(std::ostream& os) const;

private:
  std::vector<Position> m_positions;
  std::vector<std::vector<Adjacency>> m_adjacency;
  std::map<Prefix, std::set<RouterId>> m_anchors;
};

struct GeometricParams
{
  size_t nodeCount = 200;
  double areaSide = 100;   // meters
  double linkRadius = 12;  // meters
  double linkDelayMs = 15;
  size_t maxRetries = 1000;
};

/** \brief Random geometric graph: uniform placement, links between nodes
 *         within linkRadius, placement resampled until connected.
 *  \throw TopologyError after maxRetries disconnected placements
 */
Topology
generateTopology(const GeometricParams& params, uint64_t seed);

/// hop distance from every router to \p source; -1 when unreachable
std::vector<int>
bfsDistances(const Topology& topology, RouterId source);

} // namespace dartlab

#endif // DARTLAB_TOPOLOGY_HPP
