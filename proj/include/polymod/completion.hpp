#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polymod/branching.hpp"
#include "polymod/eclass.hpp"
#include "polymod/order.hpp"
#include "polymod/polygraph.hpp"

namespace polymod {

  enum class CompletionVariant { er, ere, plain };
  char const*                      to_string(CompletionVariant v);
  std::optional<CompletionVariant> completion_variant_from_string(std::string const& s);

  struct CompletionLimits {
    /// rules the completion may add
    std::size_t max_rules      = 64;
    std::size_t max_iterations = 10000;
    Bounds      bounds;
  };

  enum class TraceTag {
    BranchingProcessed,
    AddConsequence,
    SimplifyEquation,
    DeleteEquation,
    SimplifyRHS,
    SimplifyLHS,
    Orient,
    NewRule,
  };
  char const* to_string(TraceTag t);

  /// One inference. `lhs`/`rhs` carry the equation, `source` the branching
  /// source, `rule_id` the name of a new rule.
  struct TraceEvent {
    TraceTag    tag;
    std::string rule_id;
    Word        lhs;
    Word        rhs;
    Word        source;

    friend bool operator==(TraceEvent const&, TraceEvent const&) = default;
  };

  enum class CompletionStatus { success, limit_reached, unorientable };
  char const* to_string(CompletionStatus s);

  struct CompletionResult {
    Polygraph                            completed;
    std::vector<Rule>                    added;
    CompletionStatus                     status = CompletionStatus::success;
    std::optional<std::pair<Word, Word>> unorientable;
    std::vector<TraceEvent>              trace;
    std::size_t                          iterations = 0;
  };

  class PreconditionViolated : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
  };

  /// Completion modulo E: processes the critical branchings of S against R
  /// in FIFO order, normalizes both targets and adds an oriented rule
  /// whenever the normal forms are not E-equivalent. The ERE variant uses
  /// the E-normal form of the smaller side as the new right-hand side.
  /// The plain variant runs complete_plain_kb. Throws PreconditionViolated
  /// unless the order is compatible with R modulo E.
  CompletionResult complete(Polygraph const&        p,
                            OrderSpec const&        order,
                            CompletionVariant       variant,
                            CompletionLimits const& limits = {});

  /// Classical Knuth-Bendix: the oriented modulo rules become primary rules
  /// and E is dropped. A cdeglex order is replaced by deglex on the same
  /// precedence since it cannot orient commutations.
  CompletionResult complete_plain_kb(Polygraph const&        p,
                                     OrderSpec const&        order,
                                     CompletionLimits const& limits = {});

  /// The polygraph with every modulo rule turned into a primary rule and
  /// no modulo rules, mode R.
  Polygraph merge_modulo_rules(Polygraph const& p);

  /// Rebuilds the rule set by applying the NewRule events of `trace`.
  Polygraph replay(Polygraph const& initial, std::vector<TraceEvent> const& trace);

}  // namespace polymod
