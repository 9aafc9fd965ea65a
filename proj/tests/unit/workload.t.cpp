#include "dartlab/workload.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/test/unit_test.hpp>

#include <cmath>

using namespace dartlab;

BOOST_AUTO_TEST_SUITE(TestWorkload)

BOOST_AUTO_TEST_CASE(ZipfProbabilities)
{
  ZipfSampler z(3, 1.0);
  double h = 1 + 0.5 + 1.0 / 3;
  BOOST_CHECK_CLOSE(z.probability(0), 1 / h, 1e-9);
  BOOST_CHECK_CLOSE(z.probability(2), 1 / (3 * h), 1e-9);
  BOOST_CHECK_THROW(ZipfSampler(0, 0.7), std::invalid_argument);
  BOOST_CHECK_THROW(ZipfSampler(10, -1), std::invalid_argument);
}

BOOST_AUTO_TEST_CASE(ZipfZeroIsUniform)
{
  const size_t n = 20;
  const size_t draws = 200000;
  ZipfSampler z(n, 0);
  std::mt19937_64 rng(7);
  std::vector<double> counts(n);
  for (size_t i = 0; i < draws; ++i)
    ++counts.at(z(rng));
  double expected = double(draws) / n;
  double chi2 = 0;
  for (double c : counts)
    chi2 += (c - expected) * (c - expected) / expected;
  boost::math::chi_squared dist(n - 1);
  BOOST_CHECK_LT(chi2, boost::math::quantile(dist, 0.999));
}

BOOST_AUTO_TEST_CASE(ZipfRankFrequencySlope)
{
  const size_t n = 10000;
  ZipfSampler z(n, 0.7);
  std::mt19937_64 rng(11);
  std::vector<double> counts(n);
  for (int i = 0; i < 1000000; ++i)
    ++counts[z(rng)];
  // least squares of log count on log rank over the well-populated head
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const size_t m = 1000;
  for (size_t k = 0; k < m; ++k) {
    double x = std::log(double(k + 1));
    double y = std::log(counts[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  BOOST_CHECK_CLOSE_FRACTION(slope, -0.7, 0.05 / 0.7);
}

BOOST_AUTO_TEST_CASE(PoissonCount)
{
  WorkloadSpec spec;
  spec.perRouterRate = 50;
  spec.durationSec = 100;
  spec.catalogSize = 100;
  auto reqs = generateWorkload(spec, {{ConsumerId{0}, RouterId{0}}});
  double mean = spec.perRouterRate * spec.durationSec;
  BOOST_CHECK_LT(std::abs(double(reqs.size()) - mean), 4 * std::sqrt(mean));
  for (const auto& r : reqs) {
    BOOST_CHECK(r.time < fromSeconds(spec.durationSec));
    BOOST_CHECK_LT(r.object, spec.catalogSize);
  }
}

BOOST_AUTO_TEST_CASE(RateSplitAmongConsumers)
{
  WorkloadSpec spec;
  spec.perRouterRate = 100;
  spec.durationSec = 50;
  std::vector<ConsumerSpec> cs{{ConsumerId{0}, RouterId{0}}, {ConsumerId{1}, RouterId{0}},
                               {ConsumerId{2}, RouterId{1}}};
  auto reqs = generateWorkload(spec, cs);
  std::array<double, 3> perConsumer{};
  for (const auto& r : reqs)
    ++perConsumer.at(toUnderlying(r.consumer));
  BOOST_CHECK_LT(std::abs(perConsumer[0] - 2500), 4 * std::sqrt(2500));
  BOOST_CHECK_LT(std::abs(perConsumer[1] - 2500), 4 * std::sqrt(2500));
  BOOST_CHECK_LT(std::abs(perConsumer[2] - 5000), 4 * std::sqrt(5000));
}

BOOST_AUTO_TEST_CASE(Deterministic)
{
  WorkloadSpec spec;
  spec.durationSec = 5;
  std::vector<ConsumerSpec> cs{{ConsumerId{0}, RouterId{0}}, {ConsumerId{1}, RouterId{1}}};
  auto a = generateWorkload(spec, cs);
  auto b = generateWorkload(spec, cs);
  BOOST_REQUIRE_EQUAL(a.size(), b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    BOOST_CHECK(a[i].time == b[i].time);
    BOOST_CHECK(a[i].object == b[i].object);
  }
  BOOST_CHECK(std::is_sorted(a.begin(), a.end(), [] (const Request& x, const Request& y) {
    return x.time < y.time;
  }));

  // a consumer's stream does not depend on who else is present
  auto alone = generateWorkload(spec, {cs[1]});
  std::vector<Request> filtered;
  for (const auto& r : a)
    if (r.consumer == ConsumerId{1})
      filtered.push_back(r);
  BOOST_REQUIRE_EQUAL(alone.size(), filtered.size());
  for (size_t i = 0; i < alone.size(); ++i)
    BOOST_CHECK(alone[i].time == filtered[i].time);

  spec.seed = 2;
  auto c = generateWorkload(spec, cs);
  BOOST_CHECK(c.size() != a.size() || c.front().time != a.front().time);
}

BOOST_AUTO_TEST_CASE(Catalog)
{
  auto names = buildCatalog({Prefix::parse("/a"), Prefix::parse("/b")}, 3);
  BOOST_REQUIRE_EQUAL(names.size(), 3);
  BOOST_CHECK_EQUAL(names[0].toUri(), "/a/o0");
  BOOST_CHECK_EQUAL(names[1].toUri(), "/b/o1");
  BOOST_CHECK_EQUAL(names[2].toUri(), "/a/o2");
  BOOST_CHECK_THROW(buildCatalog({}, 3), std::invalid_argument);
}

BOOST_AUTO_TEST_SUITE_END()
