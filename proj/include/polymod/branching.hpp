#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "polymod/eclass.hpp"
#include "polymod/path.hpp"
#include "polymod/polygraph.hpp"
#include "polymod/rewrite.hpp"

namespace polymod {

  /// A branching modulo (f, e, g): f starts at source(e), g at target(e).
  struct Branching {
    Path f;
    Path e;
    Path g;

    Word const& source_f() const {
      return f.source();
    }
    Word const& source_g() const {
      return e.target();
    }
  };

  class NotLocal : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
  };

  /// Checks the chaining invariants; throws std::invalid_argument otherwise.
  Branching make_branching(Path f, Path e, Path g);

  enum class BranchingKind { Aspherical, Peiffer, PeifferModulo, Overlap, OverlapModulo };
  char const* to_string(BranchingKind k);

  /// For each letter of path.target(), the positions of path.source() it
  /// comes from. Permutation steps move letters one to one; any other step
  /// sends every new letter to all letters it replaced.
  std::vector<std::vector<std::size_t>> transport(Polygraph const& p, Path const& path);

  /// Positions of f.source() consumed by the first primary step of f.
  std::vector<std::size_t> primary_support(Polygraph const& p, Path const& f);

  BranchingKind classify_local(Polygraph const& p, EEngine const& e, Branching const& b);

  enum class PairKind { s_vs_r, s_vs_e };

  struct CriticalBranching {
    Branching     branching;
    BranchingKind kind = BranchingKind::Overlap;
    /// deglex-least member of the source class
    Word canonical;
    /// rule of f's primary step
    RuleRef first;
    /// rule of g (S-vs-R) or of the single modulo step e (S-vs-E)
    RuleRef second;
    /// e runs backward through `second` (S-vs-E only)
    bool reversed = false;
    /// sorted letters shared by both redexes
    std::vector<Letter> shared;
    /// f reaches its redex through a non-empty E-path
    bool mediated = false;
  };

  struct CriticalSet {
    std::vector<CriticalBranching> items;
    /// E does not preserve degree, so the candidate degree bound may cut
    /// some branchings
    bool incomplete = false;
  };

  /// Critical branchings up to E-orbit. S-vs-R: plain string overlaps
  /// plus overlaps reached through the E-class in modes with leading E,
  /// where the transported supports must meet and together cover the
  /// source. S-vs-E: an R-redex overlapping a single modulo redex.
  /// With `involving`, only pairs using that primary rule are returned.
  CriticalSet critical_branchings(Polygraph const&           p,
                                  EEngine const&             e,
                                  PairKind                   kind,
                                  Bounds const&              bounds,
                                  std::optional<std::size_t> involving = std::nullopt);

  enum class ConfluenceVariant { huet, jk_confluence, jk_coherence };
  enum class Verdict { confluent, not_confluent, unknown };
  char const* to_string(ConfluenceVariant v);
  char const* to_string(Verdict v);

  struct ConfluenceWitness {
    Verdict verdict = Verdict::unknown;
    Path    f_prime;
    Path    g_prime;
    /// E-path from target(f·f′) to target(g·g′)
    Path e_prime;
    /// S-normal forms reached on both sides when not confluent
    std::optional<std::pair<Word, Word>> normal_forms;
  };

  ConfluenceWitness check_confluence_modulo(Polygraph const&  p,
                                            EEngine const&    e,
                                            Branching const&  b,
                                            ConfluenceVariant variant,
                                            Bounds const&     bounds);

}  // namespace polymod
