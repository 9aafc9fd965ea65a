#ifndef DARTLAB_MESSAGE_HPP
#define DARTLAB_MESSAGE_HPP

#include "dartlab/name.hpp"
#include "dartlab/types.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace dartlab {

using Bytes = std::vector<uint8_t>;

/** \brief CCN-DART Interest: I[name, hop count, dart].
 *
 *  A request from a consumer to its access router carries neither hop count
 *  nor dart; Interests between routers carry both.
 */
class Interest
{
public:
  /// consumer-to-router form, I[n, nil, nil]
  explicit
  Interest(Name name)
    : m_name(std::move(name))
  {
  }

  Interest(Name name, uint32_t hopCount, Dart dart)
    : m_name(std::move(name))
    , m_hopCount(hopCount)
    , m_dart(dart)
  {
  }

  const Name&
  name() const noexcept
  {
    return m_name;
  }

  std::optional<uint32_t>
  hopCount() const noexcept
  {
    return m_hopCount;
  }

  std::optional<Dart>
  dart() const noexcept
  {
    return m_dart;
  }

  bool
  isLocal() const noexcept
  {
    return !m_dart.has_value();
  }

  friend bool
  operator==(const Interest&, const Interest&) = default;

private:
  Name m_name;
  std::optional<uint32_t> m_hopCount;
  std::optional<Dart> m_dart;
};

/// NDN Interest, identified by name and nonce.
class NdnInterest
{
public:
  NdnInterest(Name name, uint64_t nonce)
    : m_name(std::move(name))
    , m_nonce(nonce)
  {
  }

  const Name&
  name() const noexcept
  {
    return m_name;
  }

  uint64_t
  nonce() const noexcept
  {
    return m_nonce;
  }

  friend bool
  operator==(const NdnInterest&, const NdnInterest&) = default;

private:
  Name m_name;
  uint64_t m_nonce;
};

/** \brief Data packet DP[name, security payload, dart] plus the content object.
 *
 *  Payload bytes are shared between copies.
 */
class DataPacket
{
public:
  DataPacket(Name name, Bytes securityPayload, std::optional<Dart> dart, Bytes payload);

  DataPacket(Name name, std::shared_ptr<const Bytes> securityPayload, std::optional<Dart> dart,
             std::shared_ptr<const Bytes> payload);

  const Name&
  name() const noexcept
  {
    return m_name;
  }

  std::span<const uint8_t>
  securityPayload() const noexcept
  {
    return *m_securityPayload;
  }

  std::span<const uint8_t>
  payload() const noexcept
  {
    return *m_payload;
  }

  std::optional<Dart>
  dart() const noexcept
  {
    return m_dart;
  }

  /// same packet carrying a different (or no) dart
  DataPacket
  withDart(std::optional<Dart> dart) const;

  friend bool
  operator==(const DataPacket& a, const DataPacket& b);

private:
  Name m_name;
  std::shared_ptr<const Bytes> m_securityPayload;
  std::optional<Dart> m_dart;
  std::shared_ptr<const Bytes> m_payload;
};

enum class NackCode {
  NoContent,
  NoRoute,
  Loop,
};

std::string_view
toString(NackCode code);

std::optional<NackCode>
parseNackCode(std::string_view s);

/// Negative acknowledgment NA[name, code, dart].
class Nack
{
public:
  Nack(Name name, NackCode code, std::optional<Dart> dart = std::nullopt)
    : m_name(std::move(name))
    , m_code(code)
    , m_dart(dart)
  {
  }

  const Name&
  name() const noexcept
  {
    return m_name;
  }

  NackCode
  code() const noexcept
  {
    return m_code;
  }

  std::optional<Dart>
  dart() const noexcept
  {
    return m_dart;
  }

  Nack
  withDart(std::optional<Dart> dart) const
  {
    return Nack(m_name, m_code, dart);
  }

  friend bool
  operator==(const Nack&, const Nack&) = default;

private:
  Name m_name;
  NackCode m_code;
  std::optional<Dart> m_dart;
};

using Packet = std::variant<Interest, NdnInterest, DataPacket, Nack>;

const Name&
packetName(const Packet& packet);

/// what a router hands to the network: a packet and the face it leaves on
struct Emission
{
  Face to;
  Packet packet;
};

using Emissions = std::vector<Emission>;

/// Security payload check. Signatures are out of scope; every payload passes.
bool
verifySecurityPayload(const DataPacket& data);

class RecordError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/** \brief Canonical single-line record form used in trace files.
 *
 *  INT name=/a/b h=3 dart=7            (h and dart are '-' when absent)
 *  NDNINT name=/a/b nonce=42
 *  DATA name=/a/b dart=7 sp=<hex> payload=<hex>
 *  NACK name=/a/b code=Loop dart=-
 */
std::string
encodeRecord(const Packet& packet);

Packet
decodeRecord(std::string_view record);

} // namespace dartlab

#endif // DARTLAB_MESSAGE_HPP
