#ifndef DARTLAB_TYPES_HPP
#define DARTLAB_TYPES_HPP

#include <chrono>
#include <cstdint>
#include <ostream>
#include <string>
#include <variant>

namespace dartlab {

/// Router identifier; topologies number routers 0..n-1.
enum class RouterId : uint32_t {};

/// Locally attached consumer identifier, unique across the whole network.
enum class ConsumerId : uint32_t {};

/// Destination-and-return token. Opaque outside the router that issued it.
enum class Dart : uint32_t {};

/// Simulated time since the start of a run.
using SimTime = std::chrono::nanoseconds;

/// An interface is either a neighbor router or a local consumer.
using Face = std::variant<RouterId, ConsumerId>;

constexpr uint32_t
toUnderlying(RouterId id) noexcept
{
  return static_cast<uint32_t>(id);
}

constexpr uint32_t
toUnderlying(ConsumerId id) noexcept
{
  return static_cast<uint32_t>(id);
}

constexpr uint32_t
toUnderlying(Dart d) noexcept
{
  return static_cast<uint32_t>(d);
}

inline SimTime
fromMillis(double ms)
{
  return SimTime(static_cast<int64_t>(ms * 1e6 + (ms >= 0 ? 0.5 : -0.5)));
}

inline double
toMillis(SimTime t)
{
  return static_cast<double>(t.count()) / 1e6;
}

inline SimTime
fromSeconds(double s)
{
  return fromMillis(s * 1e3);
}

inline std::ostream&
operator<<(std::ostream& os, RouterId id)
{
  return os << toUnderlying(id);
}

inline std::ostream&
operator<<(std::ostream& os, ConsumerId id)
{
  return os << 'c' << toUnderlying(id);
}

inline std::ostream&
operator<<(std::ostream& os, Dart d)
{
  return os << toUnderlying(d);
}

std::string
toString(const Face& face);

} // namespace dartlab

#endif // DARTLAB_TYPES_HPP
