#ifndef DARTLAB_NAME_HPP
#define DARTLAB_NAME_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace dartlab {

class Prefix;

namespace detail {

/** \brief Immutable, shared component list with per-length hashes.
 *
 *  Copies share storage, so names can be passed around by value in
 *  packets without reallocating their components.
 */
class Components
{
public:
  explicit
  Components(std::vector<std::string> components);

  size_t
  size() const noexcept
  {
    return m_rep->components.size();
  }

  const std::string&
  operator[](size_t i) const
  {
    return m_rep->components[i];
  }

  const std::vector<std::string>&
  list() const noexcept
  {
    return m_rep->components;
  }

  /// hash of the first \p len components
  size_t
  hashOfLeading(size_t len) const
  {
    return m_rep->hashes[len];
  }

  bool
  leadingEquals(const Components& other, size_t len) const;

  std::string
  toUri() const;

private:
  struct Rep
  {
    std::vector<std::string> components;
    std::vector<size_t> hashes; // hashes[k] covers components [0, k)
  };
  std::shared_ptr<const Rep> m_rep;
};

} // namespace detail

/** \brief Content object name: one or more non-empty components.
 *
 *  Textual form is '/'-separated ("/edu/ucsc/video/seg7"). Comparison is
 *  componentwise and case-sensitive.
 */
class Name
{
public:
  class Error : public std::invalid_argument
  {
  public:
    using std::invalid_argument::invalid_argument;
  };

  explicit
  Name(std::vector<std::string> components);

  static Name
  parse(std::string_view uri);

  size_t
  size() const noexcept
  {
    return m_comps.size();
  }

  const std::string&
  operator[](size_t i) const
  {
    return m_comps[i];
  }

  const std::vector<std::string>&
  components() const noexcept
  {
    return m_comps.list();
  }

  /// leading \p len components as a Prefix; len may equal size()
  Prefix
  getPrefix(size_t len) const;

  std::string
  toUri() const
  {
    return m_comps.toUri();
  }

  size_t
  hash() const
  {
    return m_comps.hashOfLeading(size());
  }

  size_t
  leadingHash(size_t len) const
  {
    return m_comps.hashOfLeading(len);
  }

  friend bool
  operator==(const Name& a, const Name& b)
  {
    return a.size() == b.size() && a.m_comps.leadingEquals(b.m_comps, a.size());
  }

  friend bool
  operator<(const Name& a, const Name& b)
  {
    return a.components() < b.components();
  }

private:
  friend class Prefix;
  detail::Components m_comps;
};

/** \brief Name prefix used to index FIBs. May be empty (the root prefix "/").
 */
class Prefix
{
public:
  explicit
  Prefix(std::vector<std::string> components = {});

  static Prefix
  parse(std::string_view uri);

  size_t
  size() const noexcept
  {
    return m_comps.size();
  }

  const std::vector<std::string>&
  components() const noexcept
  {
    return m_comps.list();
  }

  /// true iff this prefix's components lead \p name's components
  bool
  isPrefixOf(const Name& name) const;

  std::string
  toUri() const
  {
    return m_comps.toUri();
  }

  size_t
  hash() const
  {
    return m_comps.hashOfLeading(size());
  }

  /// append one component to form a Name
  Name
  append(std::string component) const;

  friend bool
  operator==(const Prefix& a, const Prefix& b)
  {
    return a.size() == b.size() && a.m_comps.leadingEquals(b.m_comps, a.size());
  }

  friend bool
  operator<(const Prefix& a, const Prefix& b)
  {
    return a.components() < b.components();
  }

private:
  friend class Name;
  friend struct PrefixEqual;
  detail::Components m_comps;
};

std::ostream&
operator<<(std::ostream& os, const Name& name);

std::ostream&
operator<<(std::ostream& os, const Prefix& prefix);

/// Leading part of a Name, usable as a heterogeneous key into prefix maps.
struct PrefixView
{
  const Name* name;
  size_t length;
};

struct NameHash
{
  size_t
  operator()(const Name& n) const
  {
    return n.hash();
  }
};

struct PrefixHash
{
  using is_transparent = void;

  size_t
  operator()(const Prefix& p) const
  {
    return p.hash();
  }

  size_t
  operator()(const PrefixView& v) const
  {
    return v.name->leadingHash(v.length);
  }
};

struct PrefixEqual
{
  using is_transparent = void;

  bool
  operator()(const Prefix& a, const Prefix& b) const
  {
    return a == b;
  }

  bool
  operator()(const Prefix& a, const PrefixView& v) const;

  bool
  operator()(const PrefixView& v, const Prefix& a) const
  {
    return (*this)(a, v);
  }
};

template<typename T>
using PrefixMap = std::unordered_map<Prefix, T, PrefixHash, PrefixEqual>;

using PrefixSet = std::unordered_set<Prefix, PrefixHash, PrefixEqual>;

/** \brief Longest-prefix match.
 *  \return the member of \p prefixes with the most components that leads
 *          \p name, or nullopt when none does.
 */
std::optional<Prefix>
longestPrefixMatch(const Name& name, const PrefixSet& prefixes);

/// Exact (componentwise, case-sensitive) match.
bool
exactMatch(const Name& name, const Name& other);

/** \brief Longest-prefix match against the keys of any PrefixMap.
 *  \return iterator to the best entry or end()
 */
template<typename Map>
auto
findLongestMatch(Map& map, const Name& name) -> decltype(map.begin())
{
  for (size_t len = name.size() + 1; len-- > 0;) {
    auto it = map.find(PrefixView{&name, len});
    if (it != map.end())
      return it;
  }
  return map.end();
}

} // namespace dartlab

template<>
struct std::hash<dartlab::Name>
{
  size_t
  operator()(const dartlab::Name& n) const
  {
    return n.hash();
  }
};

#endif // DARTLAB_NAME_HPP
