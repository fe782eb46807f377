#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "polymod/eclass.hpp"
#include "polymod/path.hpp"
#include "polymod/polygraph.hpp"

namespace polymod {

  /// Every S-step out of `w` for the polygraph's mode, ordered by
  /// (class member deglex, position, rule index). Leading E parts are the
  /// witness paths of the E-class; trailing E parts stay implicit.
  std::vector<SStep> enumerate_steps(Polygraph const& p, EEngine const& e, Word const& w);

  /// The first element of enumerate_steps, without building the others.
  std::optional<SStep> first_step(Polygraph const& p, EEngine const& e, Word const& w);

  enum class NormalizeStatus { complete, depth_exceeded };
  char const* to_string(NormalizeStatus s);

  struct NormalizeResult {
    Word            normal_form;
    Path            path;
    NormalizeStatus status = NormalizeStatus::complete;
    /// number of S-steps taken
    std::size_t steps = 0;
  };

  /// Leftmost-lowest-rule strategy over the deglex-least class member:
  /// applies first_step until none applies or `max_depth` steps were taken.
  NormalizeResult normalize(Polygraph const& p,
                            EEngine const&   e,
                            Word const&      w,
                            std::size_t      max_depth = 64);

  /// The E-normalization strategy σ: normalize, then, when at least one
  /// step was taken and the mode allows a trailing E part, continue with
  /// the E-normal form path so that the result lies in Irr(E).
  NormalizeResult normalize_sigma(Polygraph const& p,
                                  EEngine const&   e,
                                  Word const&      w,
                                  std::size_t      max_depth = 64);

  struct Irreducibility {
    Tri                  verdict = Tri::yes;
    std::optional<SStep> step;
  };

  Irreducibility is_irreducible(Polygraph const& p, EEngine const& e, Word const& w);

  /// A normal form reached from some word, with the S-path that reaches it.
  struct ReachableForm {
    Word word;
    Path path;
  };

  struct ReachableNormalForms {
    std::vector<ReachableForm> forms;
    /// false when a node, depth or class bound cut the search
    bool complete = true;
  };

  /// Exhaustive search over all step choices. Nodes are words, or E-classes
  /// once an R-step was taken in a mode with trailing E.
  ReachableNormalForms reachable_normal_forms(Polygraph const& p,
                                              EEngine const&   e,
                                              Word const&      w,
                                              Bounds const&    bounds);

  struct ENormalizingEntry {
    Word                word;
    Tri                 verdict = Tri::yes;
    std::optional<Word> normal_form;
  };

  struct ENormalizingReport {
    std::vector<ENormalizingEntry> entries;
    Tri                            verdict = Tri::yes;
    std::optional<Word>            failing_word;
  };

  /// For each word, looks for a reachable S-normal form lying in Irr(E).
  ENormalizingReport check_e_normalizing(Polygraph const&         p,
                                         EEngine const&           e,
                                         std::vector<Word> const& words,
                                         Bounds const&            bounds);

  /// Every word of degree at most `max_degree` over `generators` letters,
  /// by degree then lexicographically on letter indices.
  std::vector<Word> all_words(std::size_t generators, std::size_t max_degree);

  /// The E-irreducible words among all_words.
  std::vector<Word> e_irreducible_words(Polygraph const& p,
                                        EEngine const&   e,
                                        std::size_t      max_degree);

}  // namespace polymod
