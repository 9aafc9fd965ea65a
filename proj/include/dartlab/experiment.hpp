#ifndef DARTLAB_EXPERIMENT_HPP
#define DARTLAB_EXPERIMENT_HPP

#include "dartlab/simulator.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dartlab {

class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/** \brief Parameter sweep read from a flat "key = value" file.
 *
 *  Lists are written as "key = [a, b, c]"; '#' starts a comment.
 *  Every key has a default, so an empty file is a valid config.
 */
struct ExperimentConfig
{
  /// read from a file when set, generated otherwise
  std::optional<std::filesystem::path> topologyFile;
  GeometricParams geometry{50, 50, 12, 15, 1000};
  /// fixed topology seed; when unset each cell uses its own seed
  std::optional<uint64_t> topologySeed;

  std::vector<Scheme> schemes{Scheme::Dart, Scheme::Ndn};
  std::vector<CachingMode> caching{CachingMode::OnPath, CachingMode::Edge};
  std::vector<double> rates{10, 50, 100, 200};
  std::vector<uint64_t> seeds{1, 2, 3};

  double zipfAlpha = 0.7;
  size_t catalogSize = 10000;
  double durationSec = 60;
  unsigned consumersPerRouter = 1;
  /// routers hosting a producer prefix; 0 means every router
  size_t producers = 0;
  /// content store capacity per router; 0 means unbounded
  size_t csCapacity = 0;
  double dartTtlSec = 10;
  double pitLifetimeSec = 4;
  bool audit = true;
  unsigned jobs = 1;
  std::filesystem::path out = "results";

  /// \throw ConfigError naming the offending line
  static ExperimentConfig
  parse(std::istream& is, const std::string& source = "config");

  static ExperimentConfig
  load(const std::filesystem::path& path);

  /// canonical form that parses back to an equal config
  std::string
  canonical() const;
};

struct Cell
{
  Scheme scheme;
  CachingMode caching;
  double rate;
  uint64_t seed;

  /// "<scheme>_<caching>_r<rate>_s<seed>"
  std::string
  id() const;
};

std::vector<Cell>
expandCells(const ExperimentConfig& config);

/// topology, FIBs, catalog and consumers for one seed
Network
buildNetwork(const ExperimentConfig& config, uint64_t seed);

MetricsReport
runCell(const ExperimentConfig& config, const Cell& cell, std::ostream* trace = nullptr);

/** \brief Runs every cell and writes one CSV per cell plus manifest.txt.
 *
 *  Each CSV is written to a temporary file and renamed into place.
 *  \return the written CSV paths in cell order
 *  \throw AuditViolation from the first cell that fails its audit
 */
std::vector<std::filesystem::path>
runExperiment(const ExperimentConfig& config, std::ostream* log = nullptr,
              std::ostream* trace = nullptr);

class CompareError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct SchemeSummary
{
  double tableMean = 0;
  double interestsReceived = 0;
  double delayMs = 0;
  size_t cells = 0;
};

/// Per (caching, rate) averages over seeds.
struct SummaryRow
{
  CachingMode caching;
  double rate;
  SchemeSummary dart;
  SchemeSummary ndn;

  /// mean PIT size / mean DART size
  double
  ratio() const;
};

struct Comparison
{
  std::vector<SummaryRow> rows;
  /// per caching mode: max/min of mean DART size across rates, when two or more rates exist
  std::map<CachingMode, std::optional<double>> dartSpread;
  double threshold = 2;

  /// "yes", "no" or "insufficient data"
  std::string
  rateInvariance(CachingMode caching) const;
};

/** \brief Summarizes a directory of cell CSVs.
 *  \throw CompareError listing every missing cell of the (scheme, caching, rate, seed) grid
 */
Comparison
compareDirectory(const std::filesystem::path& dir, double threshold = 2);

/// writes summary.csv and one gnuplot data file per figure analogue
void
writeComparison(const Comparison& comparison, const std::filesystem::path& dir);

void
printComparison(const Comparison& comparison, std::ostream& os);

} // namespace dartlab

#endif // DARTLAB_EXPERIMENT_HPP
