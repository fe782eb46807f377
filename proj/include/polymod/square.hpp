#pragma once

#include <stdexcept>
#include <string>

#include "polymod/path.hpp"

namespace polymod {

  /// Where a square cell comes from.
  enum class SquareOrigin {
    /// confluence of a critical branching (f, g), f an S-step, g an R-step
    A_fg,
    /// confluence of a critical branching (f, e), e a modulo step
    B_fe,
    /// chosen confluence of a critical branching of the oriented E
    confE,
    /// weak commutation square between an S-strategy and an E-strategy
    Nsigma_rho,
    /// built by composition or by hand
    other
  };

  char const* to_string(SquareOrigin o);

  ///     top
  ///   u ----> u'
  ///   |       |
  /// left    right
  ///   v       v
  ///   v ----> v'
  ///    bottom
  ///
  /// top and bottom are S-paths (E-paths for confE cells), left and right
  /// are E-paths.
  struct SquareCell {
    Path         top;
    Path         left;
    Path         bottom;
    Path         right;
    std::string  label;
    SquareOrigin origin = SquareOrigin::other;

    /// Boundary equality, labels and origin ignored.
    bool same_boundary(SquareCell const& other) const {
      return top == other.top && left == other.left && bottom == other.bottom
             && right == other.right;
    }
  };

  /// source(top) = source(left), target(top) = source(right),
  /// target(left) = source(bottom), target(bottom) = target(right).
  bool corners_chain(SquareCell const& a);

  /// Corner chaining plus validity of all four paths and their rule
  /// families.
  bool validate_square(Polygraph const& p, SquareCell const& a);

  class BiactionError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
  };

  /// Glues `b` to the right of `a` along a.right == b.left.
  SquareCell compose_side(Polygraph const& p, SquareCell const& a, SquareCell const& b);
  /// Glues `b` below `a` along a.bottom == b.top.
  SquareCell compose_stack(Polygraph const& p, SquareCell const& a, SquareCell const& b);

  /// The square with top e1·top, left e1·left·e2, bottom e2⁻·bottom and
  /// the same right edge. Preconditions: e1 ends at the top-left corner,
  /// e2 starts at the bottom-left corner, and the two prefixed legs are
  /// still S-paths in `mode`. Throws BiactionError naming the condition.
  SquareCell biaction(Polygraph const& p,
                      Mode             mode,
                      Path const&      e1,
                      Path const&      e2,
                      SquareCell const& a);

  /// Describes the Peiffer squares between E-cells and S-cells: the
  /// family is closed under all contexts and is never enumerated.
  struct PeifferSchema {
    std::size_t modulo_rules  = 0;
    std::size_t primary_rules = 0;
    bool        empty() const noexcept {
      return modulo_rules == 0 || primary_rules == 0;
    }
    std::string describe() const;
  };

}  // namespace polymod
