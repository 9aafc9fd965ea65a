#ifndef DARTLAB_WORKLOAD_HPP
#define DARTLAB_WORKLOAD_HPP

#include "dartlab/name.hpp"
#include "dartlab/topology.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace dartlab {

/** \brief Uniform double in [0, 1) from the top 53 bits of one draw.
 *
 *  Bit-exact across standard libraries, unlike std::uniform_real_distribution.
 */
inline double
uniform01(std::mt19937_64& rng)
{
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Rank-frequency sampler: P(k) proportional to 1 / k^alpha, k = 1..n.
class ZipfSampler
{
public:
  ZipfSampler(size_t n, double alpha);

  /// 0-based object index (0 is the most popular)
  size_t
  operator()(std::mt19937_64& rng) const;

  size_t
  size() const noexcept
  {
    return m_cdf.size();
  }

  double
  probability(size_t index) const;

private:
  std::vector<double> m_cdf;
};

struct WorkloadSpec
{
  double zipfAlpha = 0.7;
  size_t catalogSize = 10000;
  double perRouterRate = 100;  // Interests per router per second
  double durationSec = 60;
  uint64_t seed = 1;
};

struct ConsumerSpec
{
  ConsumerId id;
  RouterId router;
};

struct Request
{
  SimTime time;
  ConsumerId consumer;
  size_t object;
};

/** \brief Per-consumer Poisson arrivals with Zipf-distributed objects.
 *
 *  Each consumer draws from its own stream seeded by (seed, consumer id),
 *  so a consumer's requests do not depend on the rest of the population or
 *  on the order in which consumers are polled. A router's rate is split
 *  evenly among its consumers.
 */
class WorkloadGenerator
{
public:
  WorkloadGenerator(const WorkloadSpec& spec, std::vector<ConsumerSpec> consumers);

  const std::vector<ConsumerSpec>&
  consumers() const noexcept
  {
    return m_consumers;
  }

  /// next request of consumer at position \p index, or nullopt past the duration
  std::optional<Request>
  next(size_t index);

private:
  struct Stream
  {
    std::mt19937_64 rng;
    double rate;
    SimTime clock{0};
  };

  WorkloadSpec m_spec;
  std::vector<ConsumerSpec> m_consumers;
  std::vector<Stream> m_streams;
  ZipfSampler m_zipf;
  SimTime m_end;
};

/// Whole request stream, sorted by (time, consumer).
std::vector<Request>
generateWorkload(const WorkloadSpec& spec, const std::vector<ConsumerSpec>& consumers);

/** \brief Catalog of object names. Object k is published under
 *         prefixes[k % prefixes.size()] as "<prefix>/o<k>".
 */
std::vector<Name>
buildCatalog(const std::vector<Prefix>& prefixes, size_t catalogSize);

} // namespace dartlab

#endif // DARTLAB_WORKLOAD_HPP
