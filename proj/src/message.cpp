#include "dartlab/message.hpp"

#include <charconv>
#include <map>
#include <sstream>

namespace dartlab {

DataPacket::DataPacket(Name name, Bytes securityPayload, std::optional<Dart> dart, Bytes payload)
  : DataPacket(std::move(name),
               std::make_shared<const Bytes>(std::move(securityPayload)),
               dart,
               std::make_shared<const Bytes>(std::move(payload)))
{
}

DataPacket::DataPacket(Name name, std::shared_ptr<const Bytes> securityPayload,
                       std::optional<Dart> dart, std::shared_ptr<const Bytes> payload)
  : m_name(std::move(name))
  , m_securityPayload(securityPayload ? std::move(securityPayload) : std::make_shared<const Bytes>())
  , m_dart(dart)
  , m_payload(payload ? std::move(payload) : std::make_shared<const Bytes>())
{
}

DataPacket
DataPacket::withDart(std::optional<Dart> dart) const
{
  DataPacket copy = *this;
  copy.m_dart = dart;
  return copy;
}

bool
operator==(const DataPacket& a, const DataPacket& b)
{
  return a.m_name == b.m_name && a.m_dart == b.m_dart &&
         *a.m_securityPayload == *b.m_securityPayload && *a.m_payload == *b.m_payload;
}

std::string_view
toString(NackCode code)
{
  switch (code) {
    case NackCode::NoContent:
      return "NoContent";
    case NackCode::NoRoute:
      return "NoRoute";
    case NackCode::Loop:
      return "Loop";
  }
  return "?";
}

std::optional<NackCode>
parseNackCode(std::string_view s)
{
  if (s == "NoContent")
    return NackCode::NoContent;
  if (s == "NoRoute")
    return NackCode::NoRoute;
  if (s == "Loop")
    return NackCode::Loop;
  return std::nullopt;
}

const Name&
packetName(const Packet& packet)
{
  return std::visit([] (const auto& p) -> const Name& { return p.name(); }, packet);
}

bool
verifySecurityPayload(const DataPacket&)
{
  return true;
}

namespace {

constexpr char HEX[] = "0123456789abcdef";

std::string
toHex(std::span<const uint8_t> bytes)
{
  if (bytes.empty())
    return "-";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (uint8_t b : bytes) {
    out += HEX[b >> 4];
    out += HEX[b & 0xf];
  }
  return out;
}

Bytes
fromHex(std::string_view s)
{
  if (s == "-")
    return {};
  if (s.size() % 2 != 0)
    throw RecordError("odd-length hex field");
  auto nibble = [] (char c) -> int {
    if (c >= '0' && c <= '9')
      return c - '0';
    if (c >= 'a' && c <= 'f')
      return c - 'a' + 10;
    if (c >= 'A' && c <= 'F')
      return c - 'A' + 10;
    throw RecordError(std::string("bad hex digit '") + c + "'");
  };
  Bytes out;
  out.reserve(s.size() / 2);
  for (size_t i = 0; i < s.size(); i += 2)
    out.push_back(static_cast<uint8_t>(nibble(s[i]) << 4 | nibble(s[i + 1])));
  return out;
}

template<typename T>
std::string
optionalField(const std::optional<T>& v)
{
  if (!v)
    return "-";
  std::ostringstream os;
  os << *v;
  return os.str();
}

template<typename Int>
Int
parseInt(std::string_view s, const char* what)
{
  Int value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw RecordError(std::string("bad ") + what + " '" + std::string(s) + "'");
  return value;
}

std::optional<uint32_t>
parseOptionalU32(std::string_view s, const char* what)
{
  if (s == "-")
    return std::nullopt;
  return parseInt<uint32_t>(s, what);
}

} // namespace

std::string
encodeRecord(const Packet& packet)
{
  std::ostringstream os;
  if (auto* i = std::get_if<Interest>(&packet)) {
    os << "INT name=" << i->name() << " h=" << optionalField(i->hopCount())
       << " dart=" << optionalField(i->dart());
  }
  else if (auto* n = std::get_if<NdnInterest>(&packet)) {
    os << "NDNINT name=" << n->name() << " nonce=" << n->nonce();
  }
  else if (auto* d = std::get_if<DataPacket>(&packet)) {
    os << "DATA name=" << d->name() << " dart=" << optionalField(d->dart())
       << " sp=" << toHex(d->securityPayload()) << " payload=" << toHex(d->payload());
  }
  else {
    const auto& k = std::get<Nack>(packet);
    os << "NACK name=" << k.name() << " code=" << toString(k.code())
       << " dart=" << optionalField(k.dart());
  }
  return os.str();
}

Packet
decodeRecord(std::string_view record)
{
  std::istringstream is{std::string(record)};
  std::string kind;
  is >> kind;
  std::map<std::string, std::string, std::less<>> fields;
  std::string token;
  while (is >> token) {
    auto eq = token.find('=');
    if (eq == std::string::npos)
      throw RecordError("field without '=': '" + token + "'");
    if (!fields.emplace(token.substr(0, eq), token.substr(eq + 1)).second)
      throw RecordError("duplicate field '" + token.substr(0, eq) + "'");
  }
  auto field = [&] (const char* key) -> const std::string& {
    auto it = fields.find(key);
    if (it == fields.end())
      throw RecordError(std::string("missing field '") + key + "' in " + kind + " record");
    return it->second;
  };
  auto expectFields = [&] (size_t n) {
    if (fields.size() != n)
      throw RecordError("unexpected field count in " + kind + " record");
  };

  try {
    if (kind == "INT") {
      expectFields(3);
      Name name = Name::parse(field("name"));
      auto h = parseOptionalU32(field("h"), "hop count");
      auto dart = parseOptionalU32(field("dart"), "dart");
      if (h.has_value() != dart.has_value())
        throw RecordError("hop count and dart must be both present or both absent");
      if (!h)
        return Interest(std::move(name));
      return Interest(std::move(name), *h, Dart{*dart});
    }
    if (kind == "NDNINT") {
      expectFields(2);
      return NdnInterest(Name::parse(field("name")), parseInt<uint64_t>(field("nonce"), "nonce"));
    }
    if (kind == "DATA") {
      expectFields(4);
      auto dart = parseOptionalU32(field("dart"), "dart");
      return DataPacket(Name::parse(field("name")), fromHex(field("sp")),
                        dart ? std::optional<Dart>(Dart{*dart}) : std::nullopt,
                        fromHex(field("payload")));
    }
    if (kind == "NACK") {
      expectFields(3);
      auto code = parseNackCode(field("code"));
      if (!code)
        throw RecordError("unknown NACK code '" + field("code") + "'");
      auto dart = parseOptionalU32(field("dart"), "dart");
      return Nack(Name::parse(field("name")), *code,
                  dart ? std::optional<Dart>(Dart{*dart}) : std::nullopt);
    }
  }
  catch (const Name::Error& e) {
    throw RecordError(std::string("bad name: ") + e.what());
  }
  throw RecordError("unknown record kind '" + kind + "'");
}

} // namespace dartlab
