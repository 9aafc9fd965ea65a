#include "dartlab/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace dartlab {

namespace fs = std::filesystem;

namespace {

std::string
trim(std::string_view s)
{
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos)
    return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

class LineParser
{
public:
  LineParser(std::string source, size_t line)
    : m_where(std::move(source) + ":" + std::to_string(line) + ": ")
  {
  }

  [[noreturn]] void
  fail(const std::string& what) const
  {
    throw ConfigError(m_where + what);
  }

  std::vector<std::string>
  list(const std::string& key, const std::string& value) const
  {
    if (value.size() < 2 || value.front() != '[' || value.back() != ']')
      return {value};
    std::vector<std::string> items;
    std::string inner = value.substr(1, value.size() - 2);
    if (trim(inner).empty())
      fail("'" + key + "' must not be empty");
    std::stringstream ss(inner);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty())
        fail("empty item in list for '" + key + "'");
      items.push_back(item);
    }
    return items;
  }

  double
  number(const std::string& key, const std::string& value, double min) const
  {
    size_t used = 0;
    double v = 0;
    try {
      v = std::stod(value, &used);
    }
    catch (const std::exception&) {
      used = 0;
    }
    if (used != value.size() || !std::isfinite(v))
      fail("'" + key + "' expects a number, got '" + value + "'");
    if (v < min)
      fail("'" + key + "' must be at least " + formatNumber(min));
    return v;
  }

  uint64_t
  integer(const std::string& key, const std::string& value, uint64_t min = 0) const
  {
    if (value.empty() || !std::all_of(value.begin(), value.end(), ::isdigit))
      fail("'" + key + "' expects a non-negative integer, got '" + value + "'");
    uint64_t v = 0;
    try {
      v = std::stoull(value);
    }
    catch (const std::exception&) {
      fail("'" + key + "' is out of range");
    }
    if (v < min)
      fail("'" + key + "' must be at least " + std::to_string(min));
    return v;
  }

  bool
  flag(const std::string& key, const std::string& value) const
  {
    if (value == "on" || value == "true")
      return true;
    if (value == "off" || value == "false")
      return false;
    fail("'" + key + "' expects on or off, got '" + value + "'");
  }

private:
  std::string m_where;
};

std::string
joinList(const std::vector<std::string>& items)
{
  std::string s = "[";
  for (size_t i = 0; i < items.size(); ++i)
    s += (i ? ", " : "") + items[i];
  return s + "]";
}

template<typename T, typename F>
std::vector<std::string>
mapStrings(const std::vector<T>& v, F f)
{
  std::vector<std::string> out;
  for (const auto& x : v)
    out.push_back(f(x));
  return out;
}

uint64_t
fnv1a(std::string_view s)
{
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void
writeAtomically(const fs::path& path, const std::string& content)
{
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os)
      throw std::runtime_error("cannot write " + tmp.string());
    os << content;
    if (!os.flush())
      throw std::runtime_error("cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

} // namespace

ExperimentConfig
ExperimentConfig::parse(std::istream& is, const std::string& source)
{
  ExperimentConfig c;
  std::set<std::string> seen;
  std::string raw;
  size_t lineNo = 0;
  while (std::getline(is, raw)) {
    ++lineNo;
    LineParser p(source, lineNo);
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty())
      continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      p.fail("expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      p.fail("missing key");
    if (value.empty())
      p.fail("missing value for '" + key + "'");
    if (!seen.insert(key).second)
      p.fail("duplicate key '" + key + "'");
    auto items = p.list(key, value);
    auto single = [&] {
      if (items.size() != 1 || value.front() == '[')
        p.fail("'" + key + "' takes a single value");
      return items.front();
    };

    if (key == "topology") {
      c.topologyFile = fs::path(single());
    }
    else if (key == "nodes") {
      c.geometry.nodeCount = p.integer(key, single(), 1);
    }
    else if (key == "area") {
      c.geometry.areaSide = p.number(key, single(), 0);
    }
    else if (key == "radius") {
      c.geometry.linkRadius = p.number(key, single(), 0);
    }
    else if (key == "link_delay_ms") {
      c.geometry.linkDelayMs = p.number(key, single(), 0);
    }
    else if (key == "topology_seed") {
      c.topologySeed = p.integer(key, single());
    }
    else if (key == "schemes") {
      c.schemes.clear();
      for (const auto& s : items) {
        auto scheme = parseScheme(s);
        if (!scheme)
          p.fail("unknown scheme '" + s + "' (expected dart or ndn)");
        if (std::find(c.schemes.begin(), c.schemes.end(), *scheme) != c.schemes.end())
          p.fail("scheme '" + s + "' listed twice");
        c.schemes.push_back(*scheme);
      }
    }
    else if (key == "caching") {
      c.caching.clear();
      for (const auto& s : items) {
        auto mode = parseCachingMode(s);
        if (!mode)
          p.fail("unknown caching mode '" + s + "' (expected onpath, edge or none)");
        if (std::find(c.caching.begin(), c.caching.end(), *mode) != c.caching.end())
          p.fail("caching mode '" + s + "' listed twice");
        c.caching.push_back(*mode);
      }
    }
    else if (key == "rates") {
      c.rates.clear();
      for (const auto& s : items) {
        double r = p.number(key, s, 0);
        if (r <= 0)
          p.fail("rates must be positive");
        if (std::find(c.rates.begin(), c.rates.end(), r) != c.rates.end())
          p.fail("rate " + s + " listed twice");
        c.rates.push_back(r);
      }
    }
    else if (key == "seeds") {
      c.seeds.clear();
      for (const auto& s : items) {
        uint64_t seed = p.integer(key, s);
        if (std::find(c.seeds.begin(), c.seeds.end(), seed) != c.seeds.end())
          p.fail("seeds must be distinct, " + s + " repeats");
        c.seeds.push_back(seed);
      }
    }
    else if (key == "zipf_alpha") {
      c.zipfAlpha = p.number(key, single(), 0);
    }
    else if (key == "catalog") {
      c.catalogSize = p.integer(key, single(), 1);
    }
    else if (key == "duration") {
      c.durationSec = p.number(key, single(), 0);
      if (c.durationSec <= 0)
        p.fail("'duration' must be positive");
    }
    else if (key == "consumers_per_router") {
      c.consumersPerRouter = p.integer(key, single(), 1);
    }
    else if (key == "producers") {
      c.producers = p.integer(key, single());
    }
    else if (key == "cs_capacity") {
      c.csCapacity = p.integer(key, single());
    }
    else if (key == "dart_ttl") {
      c.dartTtlSec = p.number(key, single(), 0);
    }
    else if (key == "pit_lifetime") {
      c.pitLifetimeSec = p.number(key, single(), 0);
    }
    else if (key == "audit") {
      c.audit = p.flag(key, single());
    }
    else if (key == "jobs") {
      c.jobs = p.integer(key, single(), 1);
    }
    else if (key == "out") {
      c.out = fs::path(single());
    }
    else {
      p.fail("unknown key '" + key + "'");
    }
  }
  return c;
}

ExperimentConfig
ExperimentConfig::load(const fs::path& path)
{
  std::ifstream is(path);
  if (!is)
    throw ConfigError(path.string() + ": cannot open");
  auto c = parse(is, path.string());
  if (c.topologyFile && c.topologyFile->is_relative())
    c.topologyFile = path.parent_path() / *c.topologyFile;
  return c;
}

std::string
ExperimentConfig::canonical() const
{
  std::ostringstream os;
  if (topologyFile) {
    os << "topology = " << topologyFile->string() << '\n';
  }
  else {
    os << "nodes = " << geometry.nodeCount << '\n'
       << "area = " << formatNumber(geometry.areaSide) << '\n'
       << "radius = " << formatNumber(geometry.linkRadius) << '\n'
       << "link_delay_ms = " << formatNumber(geometry.linkDelayMs) << '\n';
    if (topologySeed)
      os << "topology_seed = " << *topologySeed << '\n';
  }
  os << "schemes = "
     << joinList(mapStrings(schemes, [] (Scheme s) { return std::string(toString(s)); })) << '\n'
     << "caching = "
     << joinList(mapStrings(caching, [] (CachingMode m) { return std::string(toString(m)); }))
     << '\n'
     << "rates = " << joinList(mapStrings(rates, [] (double r) { return formatNumber(r); })) << '\n'
     << "seeds = "
     << joinList(mapStrings(seeds, [] (uint64_t s) { return std::to_string(s); })) << '\n'
     << "zipf_alpha = " << formatNumber(zipfAlpha) << '\n'
     << "catalog = " << catalogSize << '\n'
     << "duration = " << formatNumber(durationSec) << '\n'
     << "consumers_per_router = " << consumersPerRouter << '\n'
     << "producers = " << producers << '\n'
     << "cs_capacity = " << csCapacity << '\n'
     << "dart_ttl = " << formatNumber(dartTtlSec) << '\n'
     << "pit_lifetime = " << formatNumber(pitLifetimeSec) << '\n'
     << "audit = " << (audit ? "on" : "off") << '\n'
     << "jobs = " << jobs << '\n'
     << "out = " << out.string() << '\n';
  return os.str();
}

std::string
Cell::id() const
{
  // shortest round-trip form keeps file names free of padding zeros
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), rate);
  return std::string(toString(scheme)) + '_' + std::string(toString(caching)) + "_r" +
         std::string(buf, res.ptr) + "_s" + std::to_string(seed);
}

std::vector<Cell>
expandCells(const ExperimentConfig& config)
{
  std::vector<Cell> cells;
  for (uint64_t seed : config.seeds)
    for (double rate : config.rates)
      for (CachingMode caching : config.caching)
        for (Scheme scheme : config.schemes)
          cells.push_back({scheme, caching, rate, seed});
  return cells;
}

Network
buildNetwork(const ExperimentConfig& config, uint64_t seed)
{
  Network net;
  const uint64_t topoSeed = config.topologySeed.value_or(seed);
  if (config.topologyFile) {
    std::ifstream is(*config.topologyFile);
    if (!is)
      throw ConfigError(config.topologyFile->string() + ": cannot open");
    net.topology = Topology::read(is);
  }
  else {
    net.topology = generateTopology(config.geometry, topoSeed);
  }

  const size_t n = net.topology.size();
  std::vector<RouterId> producers;
  if (!net.topology.anchors().empty()) {
    // a topology file that declares anchors fixes the producers
  }
  else if (config.producers == 0 || config.producers >= n) {
    for (size_t i = 0; i < n; ++i)
      producers.push_back(RouterId{static_cast<uint32_t>(i)});
  }
  else {
    std::vector<uint32_t> ids(n);
    for (size_t i = 0; i < n; ++i)
      ids[i] = static_cast<uint32_t>(i);
    std::mt19937_64 rng(topoSeed ^ 0x70726f64ULL);
    for (size_t i = 0; i < config.producers; ++i) {
      size_t j = i + static_cast<size_t>(uniform01(rng) * (n - i));
      std::swap(ids[i], ids[j]);
    }
    ids.resize(config.producers);
    std::sort(ids.begin(), ids.end());
    for (uint32_t id : ids)
      producers.push_back(RouterId{id});
  }
  for (RouterId r : producers)
    net.topology.addAnchor(Prefix::parse("/p" + std::to_string(toUnderlying(r))), r);

  std::vector<Prefix> prefixes;
  for (const auto& [prefix, routers] : net.topology.anchors())
    prefixes.push_back(prefix);
  net.fibs = computeFibs(net.topology);
  net.catalog = buildCatalog(prefixes, config.catalogSize);

  uint32_t next = 0;
  for (size_t i = 0; i < n; ++i)
    for (unsigned j = 0; j < config.consumersPerRouter; ++j)
      net.consumers.push_back({ConsumerId{next++}, RouterId{static_cast<uint32_t>(i)}});
  return net;
}

MetricsReport
runCell(const ExperimentConfig& config, const Cell& cell, std::ostream* trace)
{
  Network net = buildNetwork(config, cell.seed);
  SimConfig sc;
  sc.scheme = cell.scheme;
  sc.caching = cell.caching;
  if (config.csCapacity)
    sc.csCapacity = config.csCapacity;
  sc.dartTtl = fromSeconds(config.dartTtlSec);
  sc.pitLifetime = fromSeconds(config.pitLifetimeSec);
  sc.audit = config.audit;
  sc.seed = cell.seed;
  sc.trace = trace;

  WorkloadSpec ws;
  ws.zipfAlpha = config.zipfAlpha;
  ws.catalogSize = config.catalogSize;
  ws.perRouterRate = cell.rate;
  ws.durationSec = config.durationSec;
  ws.seed = cell.seed;
  return runSimulation(net, sc, ws);
}

std::vector<fs::path>
runExperiment(const ExperimentConfig& config, std::ostream* log, std::ostream* trace)
{
  fs::create_directories(config.out);
  const auto cells = expandCells(config);

  std::string canonical = config.canonical();
  char hash[32];
  std::snprintf(hash, sizeof(hash), "%016llx",
                static_cast<unsigned long long>(fnv1a(canonical)));
  writeAtomically(config.out / "manifest.txt",
                  "# config-hash fnv1a64:" + std::string(hash) + "\n# version " DARTLAB_VERSION "\n# cells " +
                    std::to_string(cells.size()) + "\n" + canonical);

  std::vector<fs::path> paths(cells.size());
  std::vector<std::exception_ptr> errors(cells.size());
  std::atomic<size_t> nextCell{0};
  std::mutex logMutex;

  auto worker = [&] {
    for (size_t i = nextCell++; i < cells.size(); i = nextCell++) {
      try {
        // traces interleave across workers, so only one worker writes them
        std::ostringstream cellTrace;
        auto report = runCell(config, cells[i], trace ? &cellTrace : nullptr);
        std::ostringstream csv;
        writeCsv(report, csv);
        paths[i] = config.out / (cells[i].id() + ".csv");
        writeAtomically(paths[i], csv.str());
        std::lock_guard<std::mutex> lock(logMutex);
        if (trace)
          *trace << "# cell " << cells[i].id() << '\n' << cellTrace.str();
        if (log)
          *log << cells[i].id() << ": dart/pit mean " << formatNumber(report.meanTableSize())
               << ", interests " << formatNumber(report.meanInterestsReceived()) << ", delay "
               << formatNumber(report.meanDelayMs()) << " ms\n";
      }
      catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  unsigned jobs = std::max(1u, std::min<unsigned>(config.jobs, cells.size()));
  if (jobs == 1) {
    worker();
  }
  else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j)
      pool.emplace_back(worker);
    for (auto& t : pool)
      t.join();
  }
  for (auto& e : errors)
    if (e)
      std::rethrow_exception(e);
  return paths;
}

double
SummaryRow::ratio() const
{
  return dart.tableMean > 0 ? ndn.tableMean / dart.tableMean : 0;
}

std::string
Comparison::rateInvariance(CachingMode caching) const
{
  auto it = dartSpread.find(caching);
  if (it == dartSpread.end() || !it->second)
    return "insufficient data";
  return *it->second <= threshold ? "yes" : "no";
}

Comparison
compareDirectory(const fs::path& dir, double threshold)
{
  if (!fs::is_directory(dir))
    throw CompareError(dir.string() + ": not a directory");

  struct Key
  {
    Scheme scheme;
    CachingMode caching;
    double rate;
    uint64_t seed;
    auto operator<=>(const Key&) const = default;
  };
  struct Values
  {
    double table = 0;
    double interests = 0;
    double delay = 0;
  };
  std::map<Key, Values> cells;
  std::set<CachingMode> cachings;
  std::set<double> rates;
  std::set<uint64_t> seeds;

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".csv" &&
        entry.path().filename() != "summary.csv")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty())
    throw CompareError(dir.string() + ": no cell CSVs");

  for (const auto& file : files) {
    std::ifstream is(file);
    std::vector<CsvRow> rows;
    try {
      rows = readCsv(is);
    }
    catch (const CsvError& e) {
      throw CompareError(file.filename().string() + ": " + e.what());
    }
    if (rows.empty())
      throw CompareError(file.filename().string() + ": no rows");
    auto scheme = parseScheme(rows.front().scheme);
    auto caching = parseCachingMode(rows.front().caching);
    double rate = std::stod(rows.front().rate);
    std::optional<uint64_t> seed;
    Values v;
    for (const auto& r : rows) {
      if (r.scheme != rows.front().scheme || r.caching != rows.front().caching ||
          r.rate != rows.front().rate)
        throw CompareError(file.filename().string() + ": rows from more than one cell");
      if (r.router != "all")
        continue;
      if (r.metric == "seed")
        seed = static_cast<uint64_t>(r.value);
      else if (r.metric == "dart_size_mean" || r.metric == "pit_size_mean")
        v.table = r.value;
      else if (r.metric == "interests_received_mean")
        v.interests = r.value;
      else if (r.metric == "delay_mean_ms")
        v.delay = r.value;
    }
    if (!scheme || !caching || !seed)
      throw CompareError(file.filename().string() + ": missing scheme, caching or seed");
    Key key{*scheme, *caching, rate, *seed};
    if (!cells.emplace(key, v).second)
      throw CompareError(file.filename().string() + ": duplicate cell");
    cachings.insert(*caching);
    rates.insert(rate);
    seeds.insert(*seed);
  }

  std::vector<std::string> missing;
  for (CachingMode c : cachings)
    for (double r : rates)
      for (uint64_t s : seeds)
        for (Scheme sch : {Scheme::Dart, Scheme::Ndn})
          if (!cells.count(Key{sch, c, r, s}))
            missing.push_back(Cell{sch, c, r, s}.id());
  if (!missing.empty()) {
    std::string msg = "missing cells:";
    for (const auto& m : missing)
      msg += "\n  " + m;
    throw CompareError(msg);
  }

  Comparison cmp;
  cmp.threshold = threshold;
  for (CachingMode c : cachings) {
    double lo = 0;
    double hi = 0;
    for (double r : rates) {
      SummaryRow row{c, r, {}, {}};
      for (uint64_t s : seeds) {
        for (Scheme sch : {Scheme::Dart, Scheme::Ndn}) {
          const Values& v = cells.at(Key{sch, c, r, s});
          SchemeSummary& sum = sch == Scheme::Dart ? row.dart : row.ndn;
          sum.tableMean += v.table;
          sum.interestsReceived += v.interests;
          sum.delayMs += v.delay;
          ++sum.cells;
        }
      }
      for (SchemeSummary* sum : {&row.dart, &row.ndn}) {
        sum->tableMean /= sum->cells;
        sum->interestsReceived /= sum->cells;
        sum->delayMs /= sum->cells;
      }
      if (cmp.rows.empty() || cmp.rows.back().caching != c) {
        lo = hi = row.dart.tableMean;
      }
      else {
        lo = std::min(lo, row.dart.tableMean);
        hi = std::max(hi, row.dart.tableMean);
      }
      cmp.rows.push_back(row);
    }
    if (rates.size() >= 2)
      cmp.dartSpread[c] = lo > 0 ? hi / lo : std::numeric_limits<double>::infinity();
    else
      cmp.dartSpread[c] = std::nullopt;
  }
  return cmp;
}

void
writeComparison(const Comparison& cmp, const fs::path& dir)
{
  std::ostringstream summary;
  summary << "caching,rate,pit_mean,dart_mean,pit_dart_ratio,interests_ndn,interests_dart,"
             "delay_ndn_ms,delay_dart_ms,dart_rate_invariant\n";
  for (const auto& r : cmp.rows)
    summary << toString(r.caching) << ',' << formatNumber(r.rate) << ','
            << formatNumber(r.ndn.tableMean) << ',' << formatNumber(r.dart.tableMean) << ','
            << formatNumber(r.ratio()) << ',' << formatNumber(r.ndn.interestsReceived) << ','
            << formatNumber(r.dart.interestsReceived) << ',' << formatNumber(r.ndn.delayMs) << ','
            << formatNumber(r.dart.delayMs) << ',' << cmp.rateInvariance(r.caching) << '\n';
  writeAtomically(dir / "summary.csv", summary.str());

  // gnuplot data: one block per caching mode, separated by two blank lines
  auto figure = [&] (const std::string& file, const std::string& header, auto columns) {
    std::ostringstream os;
    os << "# " << header << '\n';
    std::optional<CachingMode> current;
    for (const auto& r : cmp.rows) {
      if (current != r.caching) {
        if (current)
          os << "\n\n";
        os << "# caching " << toString(r.caching) << '\n';
        current = r.caching;
      }
      os << formatNumber(r.rate) << ' ' << columns(r) << '\n';
    }
    writeAtomically(dir / file, os.str());
  };
  figure("table-sizes.dat", "rate pit_mean dart_mean", [] (const SummaryRow& r) {
    return formatNumber(r.ndn.tableMean) + ' ' + formatNumber(r.dart.tableMean);
  });
  figure("interests.dat", "rate interests_ndn interests_dart", [] (const SummaryRow& r) {
    return formatNumber(r.ndn.interestsReceived) + ' ' + formatNumber(r.dart.interestsReceived);
  });
  figure("delays.dat", "rate delay_ndn_ms delay_dart_ms", [] (const SummaryRow& r) {
    return formatNumber(r.ndn.delayMs) + ' ' + formatNumber(r.dart.delayMs);
  });
}

void
printComparison(const Comparison& cmp, std::ostream& os)
{
  char line[256];
  std::snprintf(line, sizeof(line), "%-8s %8s %10s %10s %7s %12s %12s %10s %10s\n", "caching",
                "rate", "pit", "dart", "ratio", "int_ndn", "int_dart", "delay_ndn", "delay_dart");
  os << line;
  for (const auto& r : cmp.rows) {
    std::snprintf(line, sizeof(line), "%-8s %8.0f %10.2f %10.2f %7.2f %12.1f %12.1f %10.2f %10.2f\n",
                  std::string(toString(r.caching)).c_str(), r.rate, r.ndn.tableMean,
                  r.dart.tableMean, r.ratio(), r.ndn.interestsReceived, r.dart.interestsReceived,
                  r.ndn.delayMs, r.dart.delayMs);
    os << line;
  }
  for (const auto& [caching, spread] : cmp.dartSpread) {
    os << "dart size rate-invariant (" << toString(caching) << "): " << cmp.rateInvariance(caching);
    if (spread)
      os << " (max/min " << formatNumber(*spread) << ", threshold " << formatNumber(cmp.threshold)
         << ')';
    os << '\n';
  }
}

} // namespace dartlab
