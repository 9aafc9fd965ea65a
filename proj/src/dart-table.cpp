#include "dartlab/dart-table.hpp"

#include <algorithm>

namespace dartlab {

const DartEntry*
DartTable::findByPredecessor(std::optional<RouterId> predecessor, Dart predecessorDart) const
{
  auto it = m_byPred.find(predKey(predecessor, predecessorDart));
  if (it == m_byPred.end())
    return nullptr;
  return &m_bySucc.at(it->second);
}

const DartEntry*
DartTable::findBySuccessorDart(Dart successorDart) const
{
  auto it = m_bySucc.find(successorDart);
  return it == m_bySucc.end() ? nullptr : &it->second;
}

const DartEntry*
DartTable::findOrigin(RouterId anchor, RouterId successor) const
{
  auto it = m_origins.find(originKey(anchor, successor));
  if (it == m_origins.end())
    return nullptr;
  return &m_bySucc.at(it->second);
}

const DartEntry&
DartTable::insert(const DartEntry& entry)
{
  if (entry.predecessor && *entry.predecessor == entry.successor)
    throw DartTableError("successor equals predecessor");
  if (entry.isOrigin() && entry.predecessorDart != entry.successorDart)
    throw DartTableError("origin entry must reuse its successor dart as predecessor dart");
  if (m_bySucc.count(entry.successorDart))
    throw DartTableError("successor dart already in use");
  auto pk = predKey(entry.predecessor, entry.predecessorDart);
  if (m_byPred.count(pk))
    throw DartTableError("duplicate (predecessor, predecessor dart)");
  if (entry.isOrigin() && m_origins.count(originKey(entry.anchor, entry.successor)))
    throw DartTableError("duplicate origin entry for (anchor, successor)");

  auto [it, ok] = m_bySucc.emplace(entry.successorDart, entry);
  m_byPred.emplace(pk, entry.successorDart);
  if (entry.isOrigin())
    m_origins.emplace(originKey(entry.anchor, entry.successor), entry.successorDart);
  return it->second;
}

void
DartTable::touch(Dart successorDart, SimTime now)
{
  auto it = m_bySucc.find(successorDart);
  if (it != m_bySucc.end())
    it->second.lastUsed = now;
}

void
DartTable::eraseEntry(std::unordered_map<Dart, DartEntry>::iterator it)
{
  const DartEntry& e = it->second;
  m_byPred.erase(predKey(e.predecessor, e.predecessorDart));
  if (e.isOrigin())
    m_origins.erase(originKey(e.anchor, e.successor));
  m_bySucc.erase(it);
}

size_t
DartTable::evictIdle(SimTime now, SimTime ttl)
{
  size_t n = 0;
  for (auto it = m_bySucc.begin(); it != m_bySucc.end();) {
    auto next = std::next(it);
    if (now - it->second.lastUsed > ttl) {
      eraseEntry(it);
      ++n;
    }
    it = next;
  }
  return n;
}

size_t
DartTable::removeNeighbor(RouterId neighbor)
{
  size_t n = 0;
  for (auto it = m_bySucc.begin(); it != m_bySucc.end();) {
    auto next = std::next(it);
    const DartEntry& e = it->second;
    if (e.successor == neighbor || (e.predecessor && *e.predecessor == neighbor)) {
      eraseEntry(it);
      ++n;
    }
    it = next;
  }
  return n;
}

std::vector<DartEntry>
DartTable::entries() const
{
  std::vector<DartEntry> out;
  out.reserve(m_bySucc.size());
  for (const auto& [sd, e] : m_bySucc)
    out.push_back(e);
  std::sort(out.begin(), out.end(), [] (const DartEntry& a, const DartEntry& b) {
    return toUnderlying(a.successorDart) < toUnderlying(b.successorDart);
  });
  return out;
}

bool
DartTable::isConsistent() const
{
  if (m_byPred.size() != m_bySucc.size())
    return false;
  size_t origins = 0;
  for (const auto& [sd, e] : m_bySucc) {
    if (e.successorDart != sd)
      return false;
    auto it = m_byPred.find(predKey(e.predecessor, e.predecessorDart));
    if (it == m_byPred.end() || it->second != sd)
      return false;
    if (e.isOrigin()) {
      ++origins;
      auto o = m_origins.find(originKey(e.anchor, e.successor));
      if (o == m_origins.end() || o->second != sd)
        return false;
    }
  }
  return origins == m_origins.size();
}

} // namespace dartlab
