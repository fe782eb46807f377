#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "polymod/path.hpp"
#include "polymod/polygraph.hpp"
#include "polymod/square.hpp"

namespace polymod {

  struct Bounds {
    std::size_t max_class_size   = 100000;
    std::size_t max_degree_delta = 0;
    std::size_t max_depth        = 64;
    std::size_t max_candidates   = 200000;
  };

  enum class Tri { yes, no, unknown };
  char const* to_string(Tri t);

  /// The E-class of a word: breadth-first closure under all modulo rules in
  /// both directions, members sorted deglex ascending. A spanning tree
  /// gives an E-path between any two members.
  struct EClass {
    Word                                  representative;
    std::vector<Word>                     members;
    std::unordered_map<Word, std::size_t> index;
    std::size_t                           root = 0;
    std::vector<std::size_t>              parent;
    std::vector<std::size_t>              depth;
    /// step from members[parent[i]] to members[i]; unused for the root
    std::vector<RewriteStep> parent_step;
    /// more than max_class_size members were reachable
    bool overflow = false;
    /// some neighbour was dropped by the degree bound
    bool degree_truncated = false;

    bool complete() const noexcept {
      return !overflow && !degree_truncated;
    }
    bool contains(Word const& w) const {
      return index.count(w) != 0;
    }
    std::size_t index_of(Word const& w) const {
      return index.at(w);
    }
    /// E-path from members[from] to members[to].
    Path path(std::size_t from, std::size_t to) const;
    /// E-path from the representative to `member`.
    Path witness(Word const& member) const;
  };

  class NotConvergent : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  struct EquivalenceResult {
    Tri  verdict = Tri::unknown;
    Path path;
  };

  struct ENormalForm {
    Word normal_form;
    Path path;
  };

  /// A critical branching of the oriented E with its chosen confluence.
  struct ECriticalBranching {
    Word        source;
    RewriteStep first;
    RewriteStep second;
    SquareCell  cell;
  };

  /// Everything about the modulo rules alone. Holds a memo of E-classes;
  /// safe for concurrent use.
  class EEngine {
   public:
    EEngine(Polygraph const& p, Bounds bounds = {});

    Polygraph const& polygraph() const noexcept {
      return p_;
    }
    Bounds const& bounds() const noexcept {
      return bounds_;
    }

    std::shared_ptr<EClass const> e_class(Word const& w) const;

    /// Deglex-least member of the class of `w`.
    Word canonical(Word const& w) const {
      return e_class(w)->representative;
    }

    EquivalenceResult e_equivalent(Word const& u, Word const& v) const;

    /// Normal form for the oriented modulo rules, by leftmost steps with the
    /// lowest rule index. Throws NotConvergent when the step bound is hit.
    ENormalForm e_normal_form(Word const& w) const;

    bool is_e_irreducible(Word const& w) const;

    /// Oriented E terminates (every rule decreases in deglex) and all its
    /// critical branchings join.
    bool e_convergent() const;

    /// Every single modulo step out of `w`, both directions.
    std::vector<RewriteStep> neighbours(Word const& w) const;

    /// All critical branchings of the oriented E, each with the
    /// leftmost-normalizing confluence packaged as a confE square.
    std::vector<ECriticalBranching> e_critical_branchings() const;

    void clear_cache() const;

   private:
    std::shared_ptr<EClass> compute_class(Word const& w) const;
    std::shared_ptr<EClass> build_tree(std::vector<Word> members, Word const& root) const;

    Polygraph                   p_;
    Bounds                      bounds_;
    OrderSpec                   deglex_;
    bool                        degree_preserving_;
    mutable std::optional<bool> convergent_;
    mutable std::shared_mutex   mutex_;
    mutable std::unordered_map<Word, std::shared_ptr<EClass const>> memo_;
  };

  /// Sorts words in deglex ascending order for `order`'s precedence.
  void sort_deglex(std::vector<Word>& words, OrderSpec const& order);

}  // namespace polymod
