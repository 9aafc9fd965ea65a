#include "dartlab/content-store.hpp"

#include <algorithm>

namespace dartlab {

std::string_view
toString(CachingMode mode)
{
  switch (mode) {
    case CachingMode::OnPath:
      return "onpath";
    case CachingMode::Edge:
      return "edge";
    case CachingMode::None:
      return "none";
  }
  return "?";
}

std::optional<CachingMode>
parseCachingMode(std::string_view s)
{
  if (s == "onpath")
    return CachingMode::OnPath;
  if (s == "edge")
    return CachingMode::Edge;
  if (s == "none")
    return CachingMode::None;
  return std::nullopt;
}

ContentStore::ContentStore(std::optional<size_t> capacity)
  : m_capacity(capacity)
{
  if (m_capacity && *m_capacity == 0)
    m_capacity.reset();
}

void
ContentStore::insert(const DataPacket& data)
{
  auto it = m_index.find(data.name());
  if (it != m_index.end()) {
    m_lru.splice(m_lru.begin(), m_lru, it->second.lruPos);
    return;
  }
  m_lru.push_front(data.name());
  m_index.emplace(data.name(), Slot{data.withDart(std::nullopt), m_lru.begin()});
  if (m_capacity && m_index.size() > *m_capacity) {
    m_index.erase(m_lru.back());
    m_lru.pop_back();
  }
}

std::optional<DataPacket>
ContentStore::find(const Name& name)
{
  auto it = m_index.find(name);
  if (it == m_index.end())
    return std::nullopt;
  m_lru.splice(m_lru.begin(), m_lru, it->second.lruPos);
  return it->second.data;
}

std::vector<Name>
ContentStore::names() const
{
  std::vector<Name> out(m_lru.begin(), m_lru.end());
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace dartlab
