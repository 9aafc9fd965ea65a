#ifndef DARTLAB_METRICS_HPP
#define DARTLAB_METRICS_HPP

#include "dartlab/content-store.hpp"
#include "dartlab/types.hpp"

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dartlab {

enum class Scheme {
  Dart,
  Ndn,
};

std::string_view
toString(Scheme scheme);

std::optional<Scheme>
parseScheme(std::string_view s);

struct RouterMetrics
{
  RouterId router{0};
  double tableMean = 0;        ///< PIT entries (NDN) or DART entries (CCN-DART)
  double rctPendingMean = 0;   ///< names with pending local requests (CCN-DART)
  uint64_t samples = 0;
  uint64_t interestsReceived = 0;       ///< from neighbors and local consumers
  uint64_t interestsFromConsumers = 0;
  uint64_t requests = 0;
  uint64_t satisfied = 0;
  uint64_t nacked = 0;
  uint64_t timedOut = 0;
  double delaySumMs = 0;
  uint64_t delayCount = 0;
  uint64_t orphanData = 0;
  uint64_t orphanNack = 0;
  uint64_t loopNacks = 0;      ///< Loop NACKs originated here
  uint64_t aggregated = 0;
  uint64_t pitExpired = 0;
  uint64_t dartEvicted = 0;
  uint64_t unsolicited = 0;
};

struct MetricsReport
{
  Scheme scheme = Scheme::Dart;
  CachingMode caching = CachingMode::OnPath;
  double rate = 0;
  uint64_t seed = 0;
  std::vector<RouterMetrics> routers;
  std::vector<double> delaysMs;  ///< one sample per satisfied request
  uint64_t events = 0;
  uint64_t auditChecks = 0;
  uint64_t linkDrops = 0;

  double
  meanTableSize() const;

  /// standard deviation of the per-router mean table sizes
  double
  stdTableSize() const;

  double
  meanRctPending() const;

  double
  meanInterestsReceived() const;

  double
  meanDelayMs() const;

  uint64_t
  totalRequests() const;

  uint64_t
  totalSatisfied() const;

  uint64_t
  totalLoopNacks() const;

  uint64_t
  totalOrphans() const;
};

class CsvError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

constexpr std::string_view CSV_HEADER = "scheme,caching,rate,router,metric,value";

/// One row of the metrics CSV. router is a router id or "all".
struct CsvRow
{
  std::string scheme;
  std::string caching;
  std::string rate;
  std::string router;
  std::string metric;
  double value = 0;
};

/** \brief Tidy CSV with columns scheme,caching,rate,router,metric,value.
 *
 *  Per-router rows come first, then network-wide rows with router "all"
 *  (including the seed). Number formatting is fixed so reruns are
 *  byte-identical.
 */
void
writeCsv(const MetricsReport& report, std::ostream& os);

/// \throw CsvError with the line number on any row that breaks the column contract
std::vector<CsvRow>
readCsv(std::istream& is);

std::string
formatNumber(double v);

} // namespace dartlab

#endif // DARTLAB_METRICS_HPP
