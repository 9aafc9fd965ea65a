#include "dartlab/topology.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

namespace dartlab {

RouterId
Topology::addRouter(Position position)
{
  m_positions.push_back(position);
  m_adjacency.emplace_back();
  return RouterId{static_cast<uint32_t>(m_positions.size() - 1)};
}

void
Topology::addLink(RouterId a, RouterId b, double delayMs)
{
  if (!contains(a) || !contains(b))
    throw TopologyError("link references an unknown router");
  if (a == b)
    throw TopologyError("self-link at router " + std::to_string(toUnderlying(a)));
  if (!(delayMs > 0))
    throw TopologyError("link delay must be positive");
  if (linkDelay(a, b))
    throw TopologyError("duplicate link " + std::to_string(toUnderlying(a)) + "-" +
                        std::to_string(toUnderlying(b)));
  auto insert = [this] (RouterId from, RouterId to, SimTime delay) {
    auto& adj = m_adjacency[toUnderlying(from)];
    auto pos = std::lower_bound(adj.begin(), adj.end(), to,
                                [] (const Adjacency& x, RouterId id) { return x.neighbor < id; });
    adj.insert(pos, Adjacency{to, delay});
  };
  insert(a, b, fromMillis(delayMs));
  insert(b, a, fromMillis(delayMs));
}

void
Topology::removeLink(RouterId a, RouterId b)
{
  if (!linkDelay(a, b))
    throw TopologyError("no such link");
  auto erase = [this] (RouterId from, RouterId to) {
    std::erase_if(m_adjacency[toUnderlying(from)],
                  [to] (const Adjacency& x) { return x.neighbor == to; });
  };
  erase(a, b);
  erase(b, a);
}

void
Topology::addAnchor(const Prefix& prefix, RouterId router)
{
  if (!contains(router))
    throw TopologyError("anchor " + prefix.toUri() + " at unknown router");
  m_anchors[prefix].insert(router);
}

std::optional<SimTime>
Topology::linkDelay(RouterId a, RouterId b) const
{
  if (!contains(a))
    return std::nullopt;
  for (const auto& adj : neighbors(a)) {
    if (adj.neighbor == b)
      return adj.delay;
  }
  return std::nullopt;
}

std::vector<Link>
Topology::links() const
{
  std::vector<Link> out;
  for (size_t i = 0; i < size(); ++i) {
    for (const auto& adj : m_adjacency[i]) {
      if (toUnderlying(adj.neighbor) > i)
        out.push_back({RouterId{static_cast<uint32_t>(i)}, adj.neighbor, toMillis(adj.delay)});
    }
  }
  return out;
}

std::vector<Prefix>
Topology::anchoredBy(RouterId id) const
{
  std::vector<Prefix> out;
  for (const auto& [prefix, routers] : m_anchors) {
    if (routers.count(id))
      out.push_back(prefix);
  }
  return out;
}

std::vector<int>
bfsDistances(const Topology& topology, RouterId source)
{
  std::vector<int> dist(topology.size(), -1);
  std::deque<RouterId> queue{source};
  dist[toUnderlying(source)] = 0;
  while (!queue.empty()) {
    RouterId u = queue.front();
    queue.pop_front();
    for (const auto& adj : topology.neighbors(u)) {
      auto& d = dist[toUnderlying(adj.neighbor)];
      if (d < 0) {
        d = dist[toUnderlying(u)] + 1;
        queue.push_back(adj.neighbor);
      }
    }
  }
  return dist;
}

bool
Topology::isConnected() const
{
  if (size() == 0)
    return false;
  auto dist = bfsDistances(*this, RouterId{0});
  return std::none_of(dist.begin(), dist.end(), [] (int d) { return d < 0; });
}

void
Topology::validate() const
{
  if (size() == 0)
    throw TopologyError("topology has no routers");
  if (!isConnected())
    throw TopologyError("topology is not connected");
}

Topology
Topology::read(std::istream& is)
{
  struct NodeLine { uint32_t id; Position pos; };
  std::vector<NodeLine> nodes;
  struct LinkLine { uint32_t a, b; double delay; size_t line; };
  std::vector<LinkLine> links;
  struct AnchorLine { std::string prefix; uint32_t router; size_t line; };
  std::vector<AnchorLine> anchors;

  std::string raw;
  size_t lineNo = 0;
  auto fail = [&lineNo] (const std::string& msg) {
    throw TopologyError("line " + std::to_string(lineNo) + ": " + msg);
  };
  while (std::getline(is, raw)) {
    ++lineNo;
    if (auto hash = raw.find('#'); hash != std::string::npos)
      raw.erase(hash);
    std::istringstream ls(raw);
    std::string kind;
    if (!(ls >> kind))
      continue;
    std::string extra;
    if (kind == "node") {
      NodeLine n{};
      if (!(ls >> n.id >> n.pos.x >> n.pos.y) || (ls >> extra))
        fail("expected 'node <id> <x> <y>'");
      nodes.push_back(n);
    }
    else if (kind == "link") {
      LinkLine l{0, 0, 0, lineNo};
      if (!(ls >> l.a >> l.b >> l.delay) || (ls >> extra))
        fail("expected 'link <id1> <id2> <delay_ms>'");
      links.push_back(l);
    }
    else if (kind == "anchor") {
      AnchorLine a{{}, 0, lineNo};
      if (!(ls >> a.prefix >> a.router) || (ls >> extra))
        fail("expected 'anchor <prefix> <router id>'");
      anchors.push_back(a);
    }
    else {
      fail("unknown record '" + kind + "'");
    }
  }

  std::sort(nodes.begin(), nodes.end(), [] (auto& x, auto& y) { return x.id < y.id; });
  Topology topo;
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].id != i)
      throw TopologyError("node ids must be exactly 0.." + std::to_string(nodes.size() - 1));
    topo.addRouter(nodes[i].pos);
  }
  for (const auto& l : links) {
    lineNo = l.line;
    try {
      topo.addLink(RouterId{l.a}, RouterId{l.b}, l.delay);
    }
    catch (const TopologyError& e) {
      fail(e.what());
    }
  }
  for (const auto& a : anchors) {
    lineNo = a.line;
    try {
      topo.addAnchor(Prefix::parse(a.prefix), RouterId{a.router});
    }
    catch (const TopologyError& e) {
      fail(e.what());
    }
    catch (const Name::Error& e) {
      fail(e.what());
    }
  }
  return topo;
}

void
Topology::write(std::ostream& os) const
{
  for (size_t i = 0; i < size(); ++i)
    os << "node " << i << ' ' << m_positions[i].x << ' ' << m_positions[i].y << '\n';
  for (const auto& l : links())
    os << "link " << l.a << ' ' << l.b << ' ' << l.delayMs << '\n';
  for (const auto& [prefix, routers] : m_anchors) {
    for (RouterId r : routers)
      os << "anchor " << prefix << ' ' << r << '\n';
  }
}

Topology
generateTopology(const GeometricParams& params, uint64_t seed)
{
  if (params.nodeCount < 2)
    throw TopologyError("need at least two nodes");
  std::mt19937_64 rng(seed);
  auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  const double r2 = params.linkRadius * params.linkRadius;

  for (size_t attempt = 0; attempt < params.maxRetries; ++attempt) {
    Topology topo;
    for (size_t i = 0; i < params.nodeCount; ++i) {
      double x = uniform() * params.areaSide;
      double y = uniform() * params.areaSide;
      topo.addRouter({x, y});
    }
    for (size_t i = 0; i < params.nodeCount; ++i) {
      for (size_t j = i + 1; j < params.nodeCount; ++j) {
        auto p = topo.position(RouterId{static_cast<uint32_t>(i)});
        auto q = topo.position(RouterId{static_cast<uint32_t>(j)});
        double dx = p.x - q.x;
        double dy = p.y - q.y;
        if (dx * dx + dy * dy <= r2)
          topo.addLink(RouterId{static_cast<uint32_t>(i)}, RouterId{static_cast<uint32_t>(j)},
                       params.linkDelayMs);
      }
    }
    if (topo.isConnected())
      return topo;
  }
  throw TopologyError("no connected placement after " + std::to_string(params.maxRetries) +
                      " attempts");
}

} // namespace dartlab
