#include "dartlab/message.hpp"

#include <boost/test/unit_test.hpp>

#include <random>

using namespace dartlab;

BOOST_AUTO_TEST_SUITE(TestMessage)

BOOST_AUTO_TEST_CASE(InterestForms)
{
  Interest local(Name::parse("/p/1"));
  BOOST_CHECK(local.isLocal());
  BOOST_CHECK(!local.hopCount());
  BOOST_CHECK(!local.dart());

  Interest fwd(Name::parse("/p/1"), 3, Dart{9});
  BOOST_CHECK(!fwd.isLocal());
  BOOST_CHECK_EQUAL(*fwd.hopCount(), 3);
  BOOST_CHECK(*fwd.dart() == Dart{9});
}

BOOST_AUTO_TEST_CASE(DataDartSwap)
{
  DataPacket d(Name::parse("/p/1"), Bytes{1, 2}, Dart{4}, Bytes{7, 7, 7});
  DataPacket swapped = d.withDart(Dart{5});
  BOOST_CHECK(swapped.dart() == Dart{5});
  BOOST_CHECK(swapped.name() == d.name());
  BOOST_CHECK(std::equal(swapped.payload().begin(), swapped.payload().end(), d.payload().begin()));
  BOOST_CHECK(!(swapped == d));
  BOOST_CHECK(swapped.withDart(Dart{4}) == d);
  BOOST_CHECK(verifySecurityPayload(d));
}

BOOST_AUTO_TEST_CASE(NackCodes)
{
  for (auto code : {NackCode::NoContent, NackCode::NoRoute, NackCode::Loop})
    BOOST_CHECK(parseNackCode(toString(code)) == code);
  BOOST_CHECK(!parseNackCode("Duplicate"));
}

BOOST_AUTO_TEST_CASE(RecordExamples)
{
  BOOST_CHECK_EQUAL(encodeRecord(Interest(Name::parse("/a/b"), 3, Dart{7})),
                    "INT name=/a/b h=3 dart=7");
  BOOST_CHECK_EQUAL(encodeRecord(Interest(Name::parse("/a/b"))), "INT name=/a/b h=- dart=-");
  BOOST_CHECK_EQUAL(encodeRecord(Nack(Name::parse("/a/b"), NackCode::Loop)),
                    "NACK name=/a/b code=Loop dart=-");
  BOOST_CHECK_EQUAL(encodeRecord(NdnInterest(Name::parse("/a"), 42)), "NDNINT name=/a nonce=42");
}

BOOST_AUTO_TEST_CASE(RecordErrors)
{
  BOOST_CHECK_THROW(decodeRecord("INT name=/a h=3 dart=-"), RecordError);
  BOOST_CHECK_THROW(decodeRecord("INT name=/a h=3"), RecordError);
  BOOST_CHECK_THROW(decodeRecord("INT name=/a h=x dart=1"), RecordError);
  BOOST_CHECK_THROW(decodeRecord("INT name=// h=- dart=-"), RecordError);
  BOOST_CHECK_THROW(decodeRecord("DATA name=/a dart=- sp=0g payload=-"), RecordError);
  BOOST_CHECK_THROW(decodeRecord("NACK name=/a code=Busy dart=-"), RecordError);
  BOOST_CHECK_THROW(decodeRecord("PING name=/a"), RecordError);
  BOOST_CHECK_THROW(decodeRecord("INT name=/a name=/b h=- dart=-"), RecordError);
}

BOOST_AUTO_TEST_CASE(RecordRoundTrip)
{
  std::mt19937_64 rng(11);
  auto name = [&] {
    std::vector<std::string> comps;
    size_t len = 1 + rng() % 4;
    for (size_t i = 0; i < len; ++i)
      comps.push_back("c" + std::to_string(rng() % 50));
    return Name(comps);
  };
  auto bytes = [&] {
    Bytes b(rng() % 6);
    for (auto& x : b)
      x = static_cast<uint8_t>(rng());
    return b;
  };
  auto dart = [&] () -> std::optional<Dart> {
    if (rng() % 3 == 0)
      return std::nullopt;
    return Dart{static_cast<uint32_t>(rng())};
  };

  for (int i = 0; i < 5000; ++i) {
    Packet p = [&] () -> Packet {
      switch (rng() % 4) {
      case 0: {
        auto d = dart();
        if (!d)
          return Interest(name());
        return Interest(name(), static_cast<uint32_t>(rng()), *d);
      }
      case 1:
        return NdnInterest(name(), rng());
      case 2:
        return DataPacket(name(), bytes(), dart(), bytes());
      default:
        return Nack(name(), static_cast<NackCode>(rng() % 3), dart());
      }
    }();
    std::string rec = encodeRecord(p);
    Packet back = decodeRecord(rec);
    BOOST_REQUIRE_MESSAGE(back == p, rec);
    BOOST_CHECK_EQUAL(encodeRecord(back), rec);
  }
}

BOOST_AUTO_TEST_SUITE_END()
