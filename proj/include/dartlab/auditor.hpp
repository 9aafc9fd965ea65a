#ifndef DARTLAB_AUDITOR_HPP
#define DARTLAB_AUDITOR_HPP

#include "dartlab/name.hpp"
#include "dartlab/types.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace dartlab {

/// One forwarded Interest and the response that answered it.
struct ChainRecord
{
  uint64_t id = 0;
  Name name;
  std::vector<RouterId> interestPath;  // origin first, responder last
  std::vector<uint32_t> hopCounts;     // hop count carried out of interestPath[i]
  std::vector<RouterId> responsePath;  // responder first
  bool answered = false;
};

class AuditViolation : public std::runtime_error
{
public:
  enum class Kind {
    Cycle,
    NoDescent,
  };

  AuditViolation(Kind kind, std::string trace);

  Kind
  kind() const noexcept
  {
    return m_kind;
  }

  /// full per-Interest trace of the offending chain
  const std::string&
  trace() const noexcept
  {
    return m_trace;
  }

private:
  Kind m_kind;
  std::string m_trace;
};

/** \brief Live checker for Interest forwarding chains.
 *
 *  Every forwarded Interest must carry a strictly smaller hop count than
 *  the one it was forwarded from, and no chain may visit a router twice.
 *  Checks raise AuditViolation when enabled and are only counted otherwise.
 */
class TraceAuditor
{
public:
  explicit
  TraceAuditor(bool enforce = true, bool keepCompleted = false);

  uint64_t
  begin(RouterId origin, const Name& name, uint32_t emittedHops);

  /// the chain's Interest was delivered to \p router
  void
  arrive(uint64_t chain, RouterId router);

  /// \p router forwarded the chain's Interest with \p emittedHops after receiving \p receivedHops
  void
  forward(uint64_t chain, RouterId router, uint32_t receivedHops, uint32_t emittedHops);

  /// a response for the chain left or passed through \p router
  void
  respond(uint64_t chain, RouterId router);

  void
  finish(uint64_t chain);

  uint64_t
  checks() const noexcept
  {
    return m_checks;
  }

  uint64_t
  cycleViolations() const noexcept
  {
    return m_cycles;
  }

  uint64_t
  descentViolations() const noexcept
  {
    return m_descents;
  }

  size_t
  activeChains() const noexcept
  {
    return m_active.size();
  }

  /// finished chains in completion order, when kept
  const std::vector<ChainRecord>&
  completed() const noexcept
  {
    return m_completed;
  }

  static std::string
  format(const ChainRecord& chain);

private:
  ChainRecord*
  find(uint64_t chain);

  void
  violation(AuditViolation::Kind kind, const ChainRecord& chain, const std::string& what);

private:
  bool m_enforce;
  bool m_keepCompleted;
  uint64_t m_nextId = 1;
  uint64_t m_checks = 0;
  uint64_t m_cycles = 0;
  uint64_t m_descents = 0;
  std::unordered_map<uint64_t, ChainRecord> m_active;
  std::vector<ChainRecord> m_completed;
};

} // namespace dartlab

#endif // DARTLAB_AUDITOR_HPP
