#include "dartlab/metrics.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace dartlab {

std::string_view
toString(Scheme scheme)
{
  return scheme == Scheme::Dart ? "dart" : "ndn";
}

std::optional<Scheme>
parseScheme(std::string_view s)
{
  if (s == "dart")
    return Scheme::Dart;
  if (s == "ndn")
    return Scheme::Ndn;
  return std::nullopt;
}

template<typename F>
static double
meanOver(const std::vector<RouterMetrics>& routers, F f)
{
  if (routers.empty())
    return 0;
  double sum = 0;
  for (const auto& r : routers)
    sum += f(r);
  return sum / routers.size();
}

double
MetricsReport::meanTableSize() const
{
  return meanOver(routers, [] (const RouterMetrics& r) { return r.tableMean; });
}

double
MetricsReport::stdTableSize() const
{
  if (routers.empty())
    return 0;
  double mean = meanTableSize();
  double ss = 0;
  for (const auto& r : routers)
    ss += (r.tableMean - mean) * (r.tableMean - mean);
  return std::sqrt(ss / routers.size());
}

double
MetricsReport::meanRctPending() const
{
  return meanOver(routers, [] (const RouterMetrics& r) { return r.rctPendingMean; });
}

double
MetricsReport::meanInterestsReceived() const
{
  return meanOver(routers, [] (const RouterMetrics& r) { return double(r.interestsReceived); });
}

double
MetricsReport::meanDelayMs() const
{
  if (delaysMs.empty())
    return 0;
  return std::accumulate(delaysMs.begin(), delaysMs.end(), 0.0) / delaysMs.size();
}

uint64_t
MetricsReport::totalRequests() const
{
  uint64_t n = 0;
  for (const auto& r : routers)
    n += r.requests;
  return n;
}

uint64_t
MetricsReport::totalSatisfied() const
{
  uint64_t n = 0;
  for (const auto& r : routers)
    n += r.satisfied;
  return n;
}

uint64_t
MetricsReport::totalLoopNacks() const
{
  uint64_t n = 0;
  for (const auto& r : routers)
    n += r.loopNacks;
  return n;
}

uint64_t
MetricsReport::totalOrphans() const
{
  uint64_t n = 0;
  for (const auto& r : routers)
    n += r.orphanData + r.orphanNack;
  return n;
}

std::string
formatNumber(double v)
{
  if (std::isfinite(v) && v == std::floor(v) && std::fabs(v) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.0f", v);
    return buf;
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

void
writeCsv(const MetricsReport& report, std::ostream& os)
{
  const std::string prefix = std::string(toString(report.scheme)) + ',' +
                             std::string(toString(report.caching)) + ',' +
                             formatNumber(report.rate) + ',';
  auto row = [&] (const std::string& router, std::string_view metric, double value) {
    os << prefix << router << ',' << metric << ',' << formatNumber(value) << '\n';
  };
  const bool dart = report.scheme == Scheme::Dart;

  os << CSV_HEADER << '\n';
  for (const auto& r : report.routers) {
    std::string id = std::to_string(toUnderlying(r.router));
    row(id, dart ? "dart_size" : "pit_size", r.tableMean);
    if (dart)
      row(id, "rct_pending", r.rctPendingMean);
    row(id, "interests_received", r.interestsReceived);
    row(id, "interests_from_consumers", r.interestsFromConsumers);
    row(id, "requests", r.requests);
    row(id, "satisfied", r.satisfied);
    row(id, "nacked", r.nacked);
    row(id, "timed_out", r.timedOut);
    row(id, "delay_mean_ms", r.delayCount ? r.delaySumMs / r.delayCount : 0);
    row(id, "delay_count", r.delayCount);
    row(id, "loop_nacks", r.loopNacks);
    row(id, "aggregated", r.aggregated);
    if (dart) {
      row(id, "orphan_data", r.orphanData);
      row(id, "orphan_nack", r.orphanNack);
      row(id, "dart_evicted", r.dartEvicted);
    }
    else {
      row(id, "pit_expired", r.pitExpired);
      row(id, "unsolicited", r.unsolicited);
    }
  }

  row("all", "seed", static_cast<double>(report.seed));
  row("all", dart ? "dart_size_mean" : "pit_size_mean", report.meanTableSize());
  row("all", dart ? "dart_size_std" : "pit_size_std", report.stdTableSize());
  if (dart)
    row("all", "rct_pending_mean", report.meanRctPending());
  row("all", "interests_received_mean", report.meanInterestsReceived());
  row("all", "requests", report.totalRequests());
  row("all", "satisfied", report.totalSatisfied());
  row("all", "delay_mean_ms", report.meanDelayMs());
  row("all", "delay_count", report.delaysMs.size());
  row("all", "loop_nacks", report.totalLoopNacks());
  if (dart)
    row("all", "orphans", report.totalOrphans());
  row("all", "link_drops", report.linkDrops);
  row("all", "audit_checks", report.auditChecks);
}

std::vector<CsvRow>
readCsv(std::istream& is)
{
  std::vector<CsvRow> rows;
  std::string line;
  size_t lineNo = 0;
  auto fail = [&lineNo] (const std::string& msg) {
    throw CsvError("line " + std::to_string(lineNo) + ": " + msg);
  };
  while (std::getline(is, line)) {
    ++lineNo;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (lineNo == 1) {
      if (line != CSV_HEADER)
        fail("expected header '" + std::string(CSV_HEADER) + "'");
      continue;
    }
    if (line.empty())
      continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, ','))
      cols.push_back(col);
    if (cols.size() != 6)
      fail("expected 6 columns, got " + std::to_string(cols.size()));
    if (!parseScheme(cols[0]))
      fail("unknown scheme '" + cols[0] + "'");
    if (!parseCachingMode(cols[1]))
      fail("unknown caching mode '" + cols[1] + "'");
    CsvRow row{cols[0], cols[1], cols[2], cols[3], cols[4], 0};
    const std::string& v = cols[5];
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), row.value);
    if (ec != std::errc() || ptr != v.data() + v.size())
      fail("bad value '" + v + "'");
    double rate = 0;
    auto [rp, rec] = std::from_chars(row.rate.data(), row.rate.data() + row.rate.size(), rate);
    if (rec != std::errc() || rp != row.rate.data() + row.rate.size())
      fail("bad rate '" + row.rate + "'");
    rows.push_back(std::move(row));
  }
  if (lineNo == 0)
    throw CsvError("empty CSV");
  return rows;
}

} // namespace dartlab
