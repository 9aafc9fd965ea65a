#ifndef DARTLAB_SIMULATOR_HPP
#define DARTLAB_SIMULATOR_HPP

#include "dartlab/auditor.hpp"
#include "dartlab/dart-node.hpp"
#include "dartlab/fib.hpp"
#include "dartlab/metrics.hpp"
#include "dartlab/ndn-node.hpp"
#include "dartlab/topology.hpp"
#include "dartlab/workload.hpp"

#include <iosfwd>
#include <memory>
#include <random>
#include <variant>

namespace dartlab {

struct RankOverride
{
  RouterId router;
  Prefix prefix;
  std::vector<RouterId> order;
};

struct LinkDown
{
  RouterId a;
  RouterId b;
};

using ScriptAction = std::variant<DistanceEdit, RankOverride, LinkDown>;

/// Control-plane change applied at a fixed simulated time.
struct ScriptStep
{
  SimTime at;
  ScriptAction action;
};

struct ScriptedRequest
{
  SimTime at;
  ConsumerId consumer;
  Name name;
};

struct SimConfig
{
  Scheme scheme = Scheme::Dart;
  CachingMode caching = CachingMode::OnPath;
  std::optional<size_t> csCapacity;
  SimTime dartTtl = std::chrono::seconds(10);
  SimTime pitLifetime = std::chrono::seconds(4);
  SimTime sweepInterval = std::chrono::seconds(1);
  SimTime sampleInterval = std::chrono::milliseconds(100);
  double warmupFraction = 0.1;
  SimTime retryTimeout = std::chrono::seconds(1);
  unsigned maxTries = 3;
  /// time allowed after the last request for responses to drain
  SimTime drain = std::chrono::seconds(5);
  /// check every forwarded CCN-DART Interest and abort on a violation
  bool audit = true;
  /// keep finished Interest chains for inspection (tests)
  bool keepChains = false;
  bool enforceDear = true;
  /// seeds NDN nonces
  uint64_t seed = 1;
  /// one line per packet event when set
  std::ostream* trace = nullptr;
};

/// Static description of what is simulated.
struct Network
{
  Topology topology;
  FibSet fibs;
  /// objects published by every anchor of their longest matching prefix
  std::vector<Name> catalog;
  std::vector<ConsumerSpec> consumers;
};

enum class RequestOutcome {
  Pending,
  Satisfied,
  Nacked,
  TimedOut,
};

struct RequestRecord
{
  ConsumerId consumer;
  RouterId router;
  Name name;
  SimTime issued;
  unsigned tries = 1;
  RequestOutcome outcome = RequestOutcome::Pending;
  SimTime completed{0};
  std::optional<NackCode> nack;
};

/** \brief Deterministic discrete-event simulator over pure-delay links.
 *
 *  Events are ordered by (time, insertion sequence). Router processing
 *  takes no time; consumers are attached to their router with zero delay.
 */
class Simulator
{
public:
  Simulator(Network network, SimConfig config);
  ~Simulator();

  Simulator(const Simulator&) = delete;
  Simulator& operator=(const Simulator&) = delete;

  /// draw requests from the catalog; also fixes the run duration
  void
  setWorkload(const WorkloadSpec& spec);

  void
  addRequests(std::vector<ScriptedRequest> requests);

  void
  addScript(std::vector<ScriptStep> steps);

  /// request window for scripted runs; the run continues for config.drain afterwards
  void
  setDuration(SimTime duration);

  /// \throw AuditViolation when auditing finds a loop or a non-decreasing hop count
  MetricsReport
  run();

  const DartNode&
  dartNode(RouterId id) const;

  const NdnNode&
  ndnNode(RouterId id) const;

  const std::vector<RequestRecord>&
  requests() const noexcept;

  const TraceAuditor&
  auditor() const noexcept;

  const Topology&
  topology() const noexcept;

private:
  class Impl;
  std::unique_ptr<Impl> m_impl;
};

/// One-shot run over a generated workload.
MetricsReport
runSimulation(const Network& network, const SimConfig& config, const WorkloadSpec& workload);

} // namespace dartlab

#endif // DARTLAB_SIMULATOR_HPP
