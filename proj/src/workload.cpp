#include "dartlab/workload.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>

namespace dartlab {

ZipfSampler::ZipfSampler(size_t n, double alpha)
{
  if (n == 0)
    throw std::invalid_argument("catalog must hold at least one object");
  if (alpha < 0)
    throw std::invalid_argument("zipf alpha must be non-negative");
  m_cdf.resize(n);
  double sum = 0;
  for (size_t k = 0; k < n; ++k) {
    sum += std::pow(static_cast<double>(k + 1), -alpha);
    m_cdf[k] = sum;
  }
  for (auto& c : m_cdf)
    c /= sum;
  m_cdf.back() = 1.0;
}

size_t
ZipfSampler::operator()(std::mt19937_64& rng) const
{
  double u = uniform01(rng);
  auto it = std::upper_bound(m_cdf.begin(), m_cdf.end(), u);
  return std::min<size_t>(it - m_cdf.begin(), m_cdf.size() - 1);
}

double
ZipfSampler::probability(size_t index) const
{
  return index == 0 ? m_cdf[0] : m_cdf[index] - m_cdf[index - 1];
}

static uint64_t
splitmix64(uint64_t x)
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

WorkloadGenerator::WorkloadGenerator(const WorkloadSpec& spec, std::vector<ConsumerSpec> consumers)
  : m_spec(spec)
  , m_consumers(std::move(consumers))
  , m_zipf(spec.catalogSize, spec.zipfAlpha)
  , m_end(fromSeconds(spec.durationSec))
{
  if (!(spec.perRouterRate > 0))
    throw std::invalid_argument("request rate must be positive");

  std::map<RouterId, size_t> perRouter;
  for (const auto& c : m_consumers)
    ++perRouter[c.router];

  m_streams.reserve(m_consumers.size());
  for (const auto& c : m_consumers) {
    uint64_t s = splitmix64(spec.seed ^ splitmix64(toUnderlying(c.id) + 0x5bd1e995ULL));
    m_streams.push_back({std::mt19937_64(s), spec.perRouterRate / perRouter[c.router]});
  }
}

std::optional<Request>
WorkloadGenerator::next(size_t index)
{
  Stream& s = m_streams.at(index);
  double gap = -std::log1p(-uniform01(s.rng)) / s.rate;
  s.clock += fromSeconds(gap);
  if (s.clock >= m_end)
    return std::nullopt;
  return Request{s.clock, m_consumers[index].id, m_zipf(s.rng)};
}

std::vector<Request>
generateWorkload(const WorkloadSpec& spec, const std::vector<ConsumerSpec>& consumers)
{
  WorkloadGenerator gen(spec, consumers);
  std::vector<Request> out;
  for (size_t i = 0; i < consumers.size(); ++i) {
    while (auto r = gen.next(i))
      out.push_back(*r);
  }
  std::sort(out.begin(), out.end(), [] (const Request& a, const Request& b) {
    return std::tie(a.time, a.consumer) < std::tie(b.time, b.consumer);
  });
  return out;
}

std::vector<Name>
buildCatalog(const std::vector<Prefix>& prefixes, size_t catalogSize)
{
  if (prefixes.empty())
    throw std::invalid_argument("catalog needs at least one producer prefix");
  std::vector<Name> out;
  out.reserve(catalogSize);
  for (size_t k = 0; k < catalogSize; ++k)
    out.push_back(prefixes[k % prefixes.size()].append("o" + std::to_string(k)));
  return out;
}

} // namespace dartlab
