#include "dartlab/auditor.hpp"

#include <algorithm>
#include <sstream>

namespace dartlab {

AuditViolation::AuditViolation(Kind kind, std::string trace)
  : std::runtime_error(kind == Kind::Cycle ? "Interest revisited a router"
                                           : "forwarded hop count did not decrease")
  , m_kind(kind)
  , m_trace(std::move(trace))
{
}

TraceAuditor::TraceAuditor(bool enforce, bool keepCompleted)
  : m_enforce(enforce)
  , m_keepCompleted(keepCompleted)
{
}

uint64_t
TraceAuditor::begin(RouterId origin, const Name& name, uint32_t emittedHops)
{
  uint64_t id = m_nextId++;
  ChainRecord rec{id, name, {origin}, {emittedHops}, {}, false};
  m_active.emplace(id, std::move(rec));
  return id;
}

ChainRecord*
TraceAuditor::find(uint64_t chain)
{
  auto it = m_active.find(chain);
  return it == m_active.end() ? nullptr : &it->second;
}

void
TraceAuditor::arrive(uint64_t chain, RouterId router)
{
  ChainRecord* rec = find(chain);
  if (rec == nullptr)
    return;
  ++m_checks;
  bool revisit = std::find(rec->interestPath.begin(), rec->interestPath.end(), router) !=
                 rec->interestPath.end();
  rec->interestPath.push_back(router);
  if (revisit) {
    ++m_cycles;
    violation(AuditViolation::Kind::Cycle, *rec,
              "router " + std::to_string(toUnderlying(router)) + " visited twice");
  }
}

void
TraceAuditor::forward(uint64_t chain, RouterId router, uint32_t receivedHops, uint32_t emittedHops)
{
  ChainRecord* rec = find(chain);
  if (rec == nullptr)
    return;
  ++m_checks;
  rec->hopCounts.push_back(emittedHops);
  if (!(emittedHops < receivedHops)) {
    ++m_descents;
    violation(AuditViolation::Kind::NoDescent, *rec,
              "router " + std::to_string(toUnderlying(router)) + " received h=" +
                std::to_string(receivedHops) + " and forwarded h=" + std::to_string(emittedHops));
  }
}

void
TraceAuditor::respond(uint64_t chain, RouterId router)
{
  ChainRecord* rec = find(chain);
  if (rec == nullptr)
    return;
  rec->answered = true;
  rec->responsePath.push_back(router);
}

void
TraceAuditor::finish(uint64_t chain)
{
  auto it = m_active.find(chain);
  if (it == m_active.end())
    return;
  if (m_keepCompleted)
    m_completed.push_back(std::move(it->second));
  m_active.erase(it);
}

std::string
TraceAuditor::format(const ChainRecord& chain)
{
  std::ostringstream os;
  os << "chain " << chain.id << ' ' << chain.name << ":";
  for (size_t i = 0; i < chain.interestPath.size(); ++i) {
    os << (i == 0 ? " " : " -> ") << chain.interestPath[i];
    if (i < chain.hopCounts.size())
      os << "(h=" << chain.hopCounts[i] << ')';
  }
  if (!chain.responsePath.empty()) {
    os << " | response:";
    for (size_t i = 0; i < chain.responsePath.size(); ++i)
      os << (i == 0 ? " " : " -> ") << chain.responsePath[i];
  }
  return os.str();
}

void
TraceAuditor::violation(AuditViolation::Kind kind, const ChainRecord& chain, const std::string& what)
{
  if (m_enforce)
    throw AuditViolation(kind, what + "\n" + format(chain));
}

} // namespace dartlab
