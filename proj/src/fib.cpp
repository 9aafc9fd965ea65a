#include "dartlab/fib.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <set>
#include <tuple>

namespace dartlab {

void
Fib::set(const Prefix& prefix, Tuples tuples)
{
  if (tuples.empty())
    throw RoutingError("empty tuple list for " + prefix.toUri());
  std::set<RouterId> hops;
  for (size_t i = 0; i < tuples.size(); ++i) {
    if (tuples[i].rank != i + 1)
      throw RoutingError("ranks for " + prefix.toUri() + " are not 1..k in order");
    if (tuples[i].distance < 1)
      throw RoutingError("tuple distance must be at least 1");
    if (!hops.insert(tuples[i].nextHop).second)
      throw RoutingError("duplicate next hop for " + prefix.toUri());
  }
  m_entries.insert_or_assign(prefix, std::move(tuples));
}

void
Fib::erase(const Prefix& prefix)
{
  m_entries.erase(prefix);
}

const Fib::Tuples*
Fib::find(const Prefix& prefix) const
{
  auto it = m_entries.find(prefix);
  return it == m_entries.end() ? nullptr : &it->second;
}

std::optional<Fib::Match>
Fib::longestMatch(const Name& name) const
{
  auto it = findLongestMatch(m_entries, name);
  if (it == m_entries.end())
    return std::nullopt;
  return Match{&it->first, &it->second};
}

void
Fib::removeNextHop(RouterId neighbor)
{
  for (auto it = m_entries.begin(); it != m_entries.end();) {
    auto& tuples = it->second;
    std::erase_if(tuples, [neighbor] (const FibTuple& t) { return t.nextHop == neighbor; });
    if (tuples.empty()) {
      it = m_entries.erase(it);
      continue;
    }
    for (size_t i = 0; i < tuples.size(); ++i)
      tuples[i].rank = static_cast<uint32_t>(i + 1);
    ++it;
  }
}

std::vector<Prefix>
Fib::prefixes() const
{
  std::vector<Prefix> out;
  out.reserve(m_entries.size());
  for (const auto& [prefix, tuples] : m_entries)
    out.push_back(prefix);
  std::sort(out.begin(), out.end());
  return out;
}

FibSet
computeFibs(const Topology& topology)
{
  topology.validate();
  FibSet fibs(topology.size());
  constexpr int INF = std::numeric_limits<int>::max();

  for (const auto& [prefix, anchors] : topology.anchors()) {
    // nearest anchor per router; std::set iterates anchors by ascending id,
    // so strict '<' keeps the lowest id on ties
    std::vector<int> best(topology.size(), INF);
    std::vector<RouterId> nearest(topology.size(), RouterId{0});
    for (RouterId anchor : anchors) {
      auto dist = bfsDistances(topology, anchor);
      for (size_t v = 0; v < dist.size(); ++v) {
        if (dist[v] >= 0 && dist[v] < best[v]) {
          best[v] = dist[v];
          nearest[v] = anchor;
        }
      }
    }

    for (size_t i = 0; i < topology.size(); ++i) {
      Fib::Tuples tuples;
      for (const auto& adj : topology.neighbors(RouterId{static_cast<uint32_t>(i)})) {
        auto q = toUnderlying(adj.neighbor);
        if (best[q] == INF)
          continue;
        tuples.push_back({adj.neighbor, static_cast<uint32_t>(best[q] + 1), nearest[q], 0});
      }
      if (tuples.empty())
        continue;
      std::stable_sort(tuples.begin(), tuples.end(), [] (const FibTuple& x, const FibTuple& y) {
        return std::tie(x.distance, x.nextHop) < std::tie(y.distance, y.nextHop);
      });
      for (size_t r = 0; r < tuples.size(); ++r)
        tuples[r].rank = static_cast<uint32_t>(r + 1);
      fibs[i].set(prefix, std::move(tuples));
    }
  }
  return fibs;
}

void
Fib::reorder(const Prefix& prefix, const std::vector<RouterId>& order)
{
  const Tuples* current = find(prefix);
  if (current == nullptr)
    throw RoutingError("no FIB entry for " + prefix.toUri());
  if (order.size() != current->size())
    throw RoutingError("rank order must list every next hop exactly once");

  Tuples reordered;
  for (RouterId hop : order) {
    auto it = std::find_if(current->begin(), current->end(),
                           [hop] (const FibTuple& t) { return t.nextHop == hop; });
    if (it == current->end())
      throw RoutingError("unknown next hop " + std::to_string(toUnderlying(hop)) + " for " +
                         prefix.toUri());
    reordered.push_back(*it);
    reordered.back().rank = static_cast<uint32_t>(reordered.size());
  }
  set(prefix, std::move(reordered)); // rejects repeated hops
}

void
Fib::setDistance(const Prefix& prefix, RouterId nextHop, uint32_t distance)
{
  const Tuples* current = find(prefix);
  if (current == nullptr)
    throw RoutingError("no FIB entry for " + prefix.toUri());
  Tuples tuples = *current;
  auto it = std::find_if(tuples.begin(), tuples.end(),
                         [nextHop] (const FibTuple& t) { return t.nextHop == nextHop; });
  if (it == tuples.end())
    throw RoutingError("no tuple through " + std::to_string(toUnderlying(nextHop)) + " for " +
                       prefix.toUri());
  it->distance = distance;
  set(prefix, std::move(tuples));
}

static Fib&
fibOf(FibSet& fibs, RouterId router)
{
  if (toUnderlying(router) >= fibs.size())
    throw RoutingError("unknown router " + std::to_string(toUnderlying(router)));
  return fibs[toUnderlying(router)];
}

FibSet
overrideRankings(FibSet fibs, RouterId router, const Prefix& prefix,
                 const std::vector<RouterId>& order)
{
  fibOf(fibs, router).reorder(prefix, order);
  return fibs;
}

FibSet
injectStaleDistances(FibSet fibs, std::span<const DistanceEdit> edits)
{
  for (const auto& edit : edits)
    fibOf(fibs, edit.router).setDistance(edit.prefix, edit.nextHop, edit.distance);
  return fibs;
}

void
dumpFibs(const FibSet& fibs, std::ostream& os)
{
  for (size_t i = 0; i < fibs.size(); ++i) {
    for (const auto& prefix : fibs[i].prefixes()) {
      for (const auto& t : *fibs[i].find(prefix)) {
        os << "fib " << i << ' ' << prefix << ' ' << t.rank << ' ' << t.nextHop << ' '
           << t.distance << ' ' << t.anchor << '\n';
      }
    }
  }
}

} // namespace dartlab
