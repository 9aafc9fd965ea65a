#ifndef DARTLAB_DART_TABLE_HPP
#define DARTLAB_DART_TABLE_HPP

#include "dartlab/types.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace dartlab {

/** \brief One route segment through a router.
 *
 *  Maps Interests arriving from predecessor with predecessorDart onto the
 *  successor with successorDart. An absent predecessor means this router is
 *  the origin; then predecessorDart == successorDart.
 */
struct DartEntry
{
  RouterId anchor;
  std::optional<RouterId> predecessor;
  Dart predecessorDart;
  RouterId successor;
  Dart successorDart;
  uint32_t hopCount;
  SimTime lastUsed;

  bool
  isOrigin() const noexcept
  {
    return !predecessor.has_value();
  }

  friend bool
  operator==(const DartEntry&, const DartEntry&) = default;
};

class DartTableError : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

/** \brief DART with two views over the same entries: by (predecessor,
 *         predecessor dart) and by successor dart.
 *
 *  Successor darts are unique among live entries, so lookups by successor
 *  dart are unambiguous. Origin entries are additionally indexed by
 *  (anchor, successor) for reuse by local requests.
 */
class DartTable
{
public:
  const DartEntry*
  findByPredecessor(std::optional<RouterId> predecessor, Dart predecessorDart) const;

  const DartEntry*
  findBySuccessorDart(Dart successorDart) const;

  const DartEntry*
  findOrigin(RouterId anchor, RouterId successor) const;

  bool
  containsSuccessorDart(Dart d) const
  {
    return m_bySucc.count(d) > 0;
  }

  /// \throw DartTableError on a duplicate key, a reused successor dart or successor == predecessor
  const DartEntry&
  insert(const DartEntry& entry);

  void
  touch(Dart successorDart, SimTime now);

  /// remove entries idle for longer than \p ttl
  size_t
  evictIdle(SimTime now, SimTime ttl);

  /// remove entries whose predecessor or successor is \p neighbor
  size_t
  removeNeighbor(RouterId neighbor);

  size_t
  size() const noexcept
  {
    return m_bySucc.size();
  }

  /// all entries ordered by successor dart
  std::vector<DartEntry>
  entries() const;

  /// true iff every index agrees with the entry set
  bool
  isConsistent() const;

private:
  static uint64_t
  predKey(std::optional<RouterId> predecessor, Dart d)
  {
    uint64_t p = predecessor ? uint64_t(toUnderlying(*predecessor)) + 1 : 0;
    return p << 32 | toUnderlying(d);
  }

  static uint64_t
  originKey(RouterId anchor, RouterId successor)
  {
    return uint64_t(toUnderlying(anchor)) << 32 | toUnderlying(successor);
  }

  void
  eraseEntry(std::unordered_map<Dart, DartEntry>::iterator it);

private:
  std::unordered_map<Dart, DartEntry> m_bySucc;
  std::unordered_map<uint64_t, Dart> m_byPred;
  std::unordered_map<uint64_t, Dart> m_origins;
};

} // namespace dartlab

#endif // DARTLAB_DART_TABLE_HPP
