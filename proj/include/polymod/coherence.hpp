#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "polymod/branching.hpp"
#include "polymod/eclass.hpp"
#include "polymod/order.hpp"
#include "polymod/polygraph.hpp"
#include "polymod/square.hpp"

namespace polymod {

  /// Γ: one A-cell per critical branching (f, g) and one B-cell per
  /// critical branching (f, e), each filled with the chosen confluence.
  struct CoherentCompletion {
    std::vector<SquareCell>        a_cells;
    std::vector<SquareCell>        b_cells;
    std::vector<CriticalBranching> a_branchings;
    std::vector<CriticalBranching> b_branchings;
  };

  class NonConfluentSystem : public std::runtime_error {
   public:
    NonConfluentSystem(std::string const& msg, std::vector<CriticalBranching> unresolved)
        : std::runtime_error(msg), unresolved_(std::move(unresolved)) {}
    std::vector<CriticalBranching> const& unresolved() const noexcept {
      return unresolved_;
    }

   private:
    std::vector<CriticalBranching> unresolved_;
  };

  /// Throws NonConfluentSystem when a critical branching does not close.
  CoherentCompletion coherent_completion(Polygraph const& p,
                                         EEngine const&   e,
                                         Bounds const&    bounds);

  /// The squares conf(E) of the oriented modulo rules.
  std::vector<SquareCell> conf_e(EEngine const& e);

  enum class WeakCommutation { commuting, weakly_commuting, counterexample, unknown };
  char const* to_string(WeakCommutation w);

  struct WeakCommutationReport {
    WeakCommutation         verdict = WeakCommutation::commuting;
    std::vector<SquareCell> n_cells;
    std::optional<Word>     counterexample;
    std::size_t             words_checked = 0;
  };

  /// For each word u, with σ_u : u → û the S-strategy and ρ_u : u → ũ the
  /// E-normalization, looks for η_u : ũ → ρ(û) and packages the square
  /// (top σ_u, left ρ_u, bottom η_u, right ρ_û).
  WeakCommutationReport check_weak_commutation(Polygraph const&         p,
                                               EEngine const&           e,
                                               std::vector<Word> const& words,
                                               Bounds const&            bounds);

  struct HypothesisChecklist {
    Tri terminating      = Tri::unknown;
    Tri gamma_confluent  = Tri::unknown;
    Tri e_convergent     = Tri::unknown;
    Tri irr_e_normalizing = Tri::unknown;
    /// unknown when weak commutation was not requested
    Tri                 weak_commutation = Tri::unknown;
    std::optional<Word> failing_word;
  };

  struct ExtensionOptions {
    /// Irr(E) words up to this degree form the test set
    std::size_t test_degree = 5;
    bool        weak_commutation = false;
  };

  /// Γ, conf(E), the Peiffer schema and optionally N(σ, ρ), with the
  /// hypotheses under which the union is acyclic.
  struct AcyclicExtension {
    std::vector<SquareCell> gamma;
    std::vector<SquareCell> conf_e;
    PeifferSchema           peiffer;
    std::vector<SquareCell> n_cells;
    HypothesisChecklist     checklist;
    /// some hypothesis is not established
    bool conditional = true;
  };

  AcyclicExtension assemble_acyclic_extension(Polygraph const&          p,
                                              EEngine const&            e,
                                              OrderSpec const&          order,
                                              CoherentCompletion const& gamma,
                                              std::vector<SquareCell>   conf,
                                              ExtensionOptions const&   options,
                                              Bounds const&             bounds);

  struct FuzzOptions {
    std::size_t   samples    = 1000;
    std::size_t   max_degree = 8;
    std::uint64_t seed       = 42;
  };

  struct FuzzReport {
    std::size_t         samples          = 0;
    std::size_t         local_branchings = 0;
    std::size_t         local_failures   = 0;
    std::size_t         nf_failures      = 0;
    std::size_t         depth_exceeded   = 0;
    std::optional<Word> first_failure;
    std::string         first_failure_reason;
  };

  /// Random words; at each, every local branching (S-step against R-step
  /// or single E-step) must join, and all reachable S-normal forms must be
  /// E-equivalent.
  FuzzReport newman_fuzz(Polygraph const&   p,
                         EEngine const&     e,
                         FuzzOptions const& options,
                         Bounds const&      bounds);

  /// One primary rule application over E-classes.
  struct QuotientStep {
    std::string rule_id;
    /// E-normal forms of the whiskers and of the endpoints
    Word left;
    Word right;
    Word source;
    Word target;

    friend bool operator==(QuotientStep const&, QuotientStep const&) = default;
  };

  /// A 3-cell between two parallel 2-paths of the quotient.
  struct GlobularCell {
    std::string               label;
    std::vector<QuotientStep> source_path;
    std::vector<QuotientStep> target_path;
    Word                      source;
    Word                      target;

    bool same_boundary(GlobularCell const& o) const {
      return source_path == o.source_path && target_path == o.target_path && source == o.source
             && target == o.target;
    }
  };

  struct ClassRule {
    std::string id;
    Word        lhs;
    Word        rhs;
  };

  struct GlobularPresentation {
    std::vector<Generator>    generators;
    std::vector<Rule>         e_rules;
    std::vector<ClassRule>    rules;
    std::vector<GlobularCell> cells3;
  };

  /// Drops the modulo steps and maps every primary step to its class-level
  /// application.
  std::vector<QuotientStep> quotient_path(Polygraph const& p, EEngine const& e, Path const& path);

  /// A-cells become 3-cells [top] ⟹ [bottom]; B and conf(E) cells map to
  /// identities and are left out; equal 3-cells are merged. Throws
  /// NotConvergent unless the oriented E is convergent.
  GlobularPresentation quotient_globular(Polygraph const&               p,
                                         EEngine const&                 e,
                                         std::vector<SquareCell> const& cells);

}  // namespace polymod
