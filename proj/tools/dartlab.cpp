#include "dartlab/experiment.hpp"
#include "dartlab/scenarios.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

enum ExitCode {
  EXIT_OK = 0,
  EXIT_CONFIG = 1,
  EXIT_AUDIT = 2,
  EXIT_ASSERTION = 3,
};

struct Options
{
  std::optional<uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> audit;
  std::optional<std::string> trace;
  std::string configPath;
  std::string compareDir;
  double threshold = 2;
  std::string scenario;
};

std::unique_ptr<std::ofstream>
openTrace(const Options& opts)
{
  if (!opts.trace)
    return nullptr;
  auto os = std::make_unique<std::ofstream>(*opts.trace);
  if (!*os)
    throw dartlab::ConfigError(*opts.trace + ": cannot write trace");
  return os;
}

int
cmdRun(const Options& opts)
{
  auto config = dartlab::ExperimentConfig::load(opts.configPath);
  if (opts.seed)
    config.seeds = {*opts.seed};
  if (opts.out)
    config.out = *opts.out;
  if (opts.audit)
    config.audit = *opts.audit == "on";
  auto trace = openTrace(opts);
  auto paths = dartlab::runExperiment(config, &std::cerr, trace.get());
  std::cout << "wrote " << paths.size() << " cell CSVs and manifest.txt to "
            << config.out.string() << '\n';
  return EXIT_OK;
}

int
cmdCompare(const Options& opts)
{
  auto cmp = dartlab::compareDirectory(opts.compareDir, opts.threshold);
  dartlab::writeComparison(cmp, opts.compareDir);
  dartlab::printComparison(cmp, std::cout);
  return EXIT_OK;
}

int
cmdScenario(const Options& opts)
{
  bool audit = !opts.audit || *opts.audit == "on";
  auto result = dartlab::runScenario(opts.scenario, audit);
  if (auto trace = openTrace(opts))
    *trace << result.trace;
  if (!result.passed()) {
    if (!opts.trace)
      std::cerr << result.trace;
    for (const auto& f : result.failures)
      std::cerr << "FAIL " << result.name << ": " << f << '\n';
    std::cout << result.name << ": fail\n";
    return EXIT_ASSERTION;
  }
  std::cout << result.name << ": pass\n";
  return EXIT_OK;
}

} // namespace

int
main(int argc, char** argv)
{
  CLI::App app{"CCN-DART and NDN forwarding simulator"};
  app.set_version_flag("--version", DARTLAB_VERSION_STRING);
  app.require_subcommand(1);

  Options opts;
  auto addCommon = [&] (CLI::App* sub) {
    sub->add_option("--audit", opts.audit, "check every forwarded Interest for loops")
      ->check(CLI::IsMember({"on", "off"}));
    sub->add_option("--trace", opts.trace, "write one line per packet event to this file");
  };

  auto* run = app.add_subcommand("run", "run every cell of an experiment config");
  run->add_option("config", opts.configPath, "config file")->required();
  run->add_option("--seed", opts.seed, "run only this seed");
  run->add_option("--out", opts.out, "output directory");
  addCommon(run);

  auto* compare = app.add_subcommand("compare", "summarize a directory of cell CSVs");
  compare->add_option("dir", opts.compareDir, "directory written by run")->required();
  compare->add_option("--threshold", opts.threshold,
                      "largest max/min DART size across rates counted as rate-invariant");

  auto* scenario = app.add_subcommand("scenario", "replay a hand-built forwarding scenario");
  scenario->add_option("name", opts.scenario)
    ->required()
    ->check(CLI::IsMember(dartlab::scenarioNames()));
  addCommon(scenario);

  try {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? EXIT_OK : EXIT_CONFIG;
  }

  try {
    if (*run)
      return cmdRun(opts);
    if (*compare)
      return cmdCompare(opts);
    return cmdScenario(opts);
  }
  catch (const dartlab::AuditViolation& e) {
    std::cerr << "audit violation: " << e.what() << '\n' << e.trace() << '\n';
    return EXIT_AUDIT;
  }
  catch (const dartlab::CompareError& e) {
    std::cerr << "compare: " << e.what() << '\n';
    return EXIT_CONFIG;
  }
  catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return EXIT_CONFIG;
  }
}
