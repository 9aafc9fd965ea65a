#ifndef DARTLAB_SCENARIOS_HPP
#define DARTLAB_SCENARIOS_HPP

#include "dartlab/simulator.hpp"

#include <map>
#include <string>
#include <vector>

namespace dartlab {

/// Small hand-built topology whose routers are referred to by letter.
struct Fixture
{
  Topology topology;
  FibSet fibs;
  std::map<std::string, RouterId> routers;

  RouterId
  operator[](const std::string& name) const
  {
    return routers.at(name);
  }

  std::string
  nameOf(RouterId id) const;
};

/** \brief Ranking-loop fixture: b and x prefer each other for prefix /d
 *         while their advertised distances are stale.
 *
 *  Routers d, m1, q, m2, p, a, b, x, y; d anchors /d.
 */
Fixture
makeRankLoopFixture();

/// Six routers on routes (a, r, s, d) and (x, b, c, d); d anchors /d.
Fixture
makeSharingFixture();

struct ScenarioResult
{
  std::string name;
  std::vector<std::string> failures;
  /// router legend, per-packet trace and final tables
  std::string trace;

  bool
  passed() const noexcept
  {
    return failures.empty();
  }
};

const std::vector<std::string>&
scenarioNames();

/// \throw std::invalid_argument for an unknown name
/// \throw AuditViolation when auditing is on and a forwarding chain loops
ScenarioResult
runScenario(const std::string& name, bool audit = true);

} // namespace dartlab

#endif // DARTLAB_SCENARIOS_HPP
