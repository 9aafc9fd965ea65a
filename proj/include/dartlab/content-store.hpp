#ifndef DARTLAB_CONTENT_STORE_HPP
#define DARTLAB_CONTENT_STORE_HPP

#include "dartlab/message.hpp"

#include <list>
#include <optional>
#include <unordered_map>

namespace dartlab {

enum class CachingMode {
  OnPath,
  Edge,
  None,
};

std::string_view
toString(CachingMode mode);

std::optional<CachingMode>
parseCachingMode(std::string_view s);

/** \brief Cache of content objects indexed by exact name.
 *
 *  Unbounded unless a capacity is given, in which case the least recently
 *  used object is dropped on overflow.
 */
class ContentStore
{
public:
  explicit
  ContentStore(std::optional<size_t> capacity = std::nullopt);

  /// stores \p data without its dart; refreshes recency if already present
  void
  insert(const DataPacket& data);

  /// dart-less copy of the cached object, marking it recently used
  std::optional<DataPacket>
  find(const Name& name);

  bool
  contains(const Name& name) const
  {
    return m_index.count(name) > 0;
  }

  size_t
  size() const noexcept
  {
    return m_index.size();
  }

  std::optional<size_t>
  capacity() const noexcept
  {
    return m_capacity;
  }

  /// cached names, sorted
  std::vector<Name>
  names() const;

private:
  struct Slot
  {
    DataPacket data;
    std::list<Name>::iterator lruPos;
  };

  std::optional<size_t> m_capacity;
  std::list<Name> m_lru; // front = most recent
  std::unordered_map<Name, Slot, NameHash> m_index;
};

} // namespace dartlab

#endif // DARTLAB_CONTENT_STORE_HPP
