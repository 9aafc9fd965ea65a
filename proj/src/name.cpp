#include "dartlab/name.hpp"
#include "dartlab/types.hpp"

#include <sstream>

namespace dartlab {

std::string
toString(const Face& face)
{
  std::ostringstream os;
  std::visit([&os] (auto id) { os << id; }, face);
  return os.str();
}

namespace detail {

Components::Components(std::vector<std::string> components)
{
  auto rep = std::make_shared<Rep>();
  rep->hashes.reserve(components.size() + 1);
  size_t seed = 0x84222325cbf29ce4ULL;
  rep->hashes.push_back(seed);
  for (const auto& c : components) {
    seed ^= std::hash<std::string>{}(c) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
    rep->hashes.push_back(seed);
  }
  rep->components = std::move(components);
  m_rep = std::move(rep);
}

bool
Components::leadingEquals(const Components& other, size_t len) const
{
  if (m_rep == other.m_rep)
    return true;
  if (hashOfLeading(len) != other.hashOfLeading(len))
    return false;
  for (size_t i = 0; i < len; ++i) {
    if ((*this)[i] != other[i])
      return false;
  }
  return true;
}

std::string
Components::toUri() const
{
  if (size() == 0)
    return "/";
  std::string uri;
  for (const auto& c : list()) {
    uri += '/';
    uri += c;
  }
  return uri;
}

} // namespace detail

static std::vector<std::string>
splitUri(std::string_view uri)
{
  std::vector<std::string> out;
  size_t pos = 0;
  if (!uri.empty() && uri.front() == '/')
    pos = 1;
  while (pos < uri.size()) {
    size_t next = uri.find('/', pos);
    if (next == std::string_view::npos)
      next = uri.size();
    if (next == pos)
      throw Name::Error("empty name component in '" + std::string(uri) + "'");
    out.emplace_back(uri.substr(pos, next - pos));
    pos = next + 1;
  }
  // a trailing '/' is tolerated ("/a/b/")
  return out;
}

static void
validateComponents(const std::vector<std::string>& components)
{
  for (const auto& c : components) {
    if (c.empty())
      throw Name::Error("name components must be non-empty");
    if (c.find('/') != std::string::npos)
      throw Name::Error("name component '" + c + "' contains '/'");
    if (c.find_first_of(" \t\r\n") != std::string::npos)
      throw Name::Error("name component '" + c + "' contains whitespace");
  }
}

static std::vector<std::string>
checkedName(std::vector<std::string> components)
{
  if (components.empty())
    throw Name::Error("a name needs at least one component");
  validateComponents(components);
  return components;
}

static std::vector<std::string>
checkedPrefix(std::vector<std::string> components)
{
  validateComponents(components);
  return components;
}

Name::Name(std::vector<std::string> components)
  : m_comps(checkedName(std::move(components)))
{
}

Name
Name::parse(std::string_view uri)
{
  return Name(splitUri(uri));
}

Prefix
Name::getPrefix(size_t len) const
{
  if (len > size())
    throw Error("prefix length exceeds name length");
  return Prefix(std::vector<std::string>(components().begin(), components().begin() + len));
}

Prefix::Prefix(std::vector<std::string> components)
  : m_comps(checkedPrefix(std::move(components)))
{
}

Prefix
Prefix::parse(std::string_view uri)
{
  return Prefix(splitUri(uri));
}

bool
Prefix::isPrefixOf(const Name& name) const
{
  return size() <= name.size() && m_comps.leadingEquals(name.m_comps, size());
}

Name
Prefix::append(std::string component) const
{
  auto comps = components();
  comps.push_back(std::move(component));
  return Name(std::move(comps));
}

bool
PrefixEqual::operator()(const Prefix& a, const PrefixView& v) const
{
  return a.size() == v.length && a.isPrefixOf(*v.name);
}

std::ostream&
operator<<(std::ostream& os, const Name& name)
{
  return os << name.toUri();
}

std::ostream&
operator<<(std::ostream& os, const Prefix& prefix)
{
  return os << prefix.toUri();
}

std::optional<Prefix>
longestPrefixMatch(const Name& name, const PrefixSet& prefixes)
{
  auto it = findLongestMatch(prefixes, name);
  if (it == prefixes.end())
    return std::nullopt;
  return *it;
}

bool
exactMatch(const Name& name, const Name& other)
{
  return name == other;
}

} // namespace dartlab
