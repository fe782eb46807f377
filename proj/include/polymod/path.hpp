#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "polymod/polygraph.hpp"
#include "polymod/word.hpp"

namespace polymod {

  enum class Direction { forward, backward };

  /// One rule applied in a context: left · (lhs|rhs) · right.
  /// Backward steps are only legal for modulo rules.
  struct RewriteStep {
    Word      left;
    RuleRef   rule;
    Word      right;
    Direction direction = Direction::forward;

    bool is_primary() const noexcept {
      return rule.kind == RuleKind::primary;
    }
    std::size_t position() const noexcept {
      return left.size();
    }
    Word source(Polygraph const& p) const;
    Word target(Polygraph const& p) const;
    /// Same rule and context, opposite direction.
    RewriteStep inverse() const;

    friend bool operator==(RewriteStep const&, RewriteStep const&) = default;
  };

  class StepMismatch : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
  };

  /// Builds the step applying `rule` at `pos` of `w` in `dir`.
  RewriteStep make_step(Polygraph const& p,
                        Word const&      w,
                        RuleRef          rule,
                        std::size_t      pos,
                        Direction        dir = Direction::forward);

  /// Applies `s` to `w`; throws StepMismatch unless w is the step's source.
  Word apply_step(Polygraph const& p, Word const& w, RewriteStep const& s);

  /// Composable sequence of steps with explicit endpoints, so that the
  /// identity on u is the empty sequence with source = target = u.
  class Path {
   public:
    Path() = default;
    explicit Path(Word source) : source_(source), target_(std::move(source)) {}

    Word const& source() const noexcept {
      return source_;
    }
    Word const& target() const noexcept {
      return target_;
    }
    std::vector<RewriteStep> const& steps() const noexcept {
      return steps_;
    }
    bool empty() const noexcept {
      return steps_.empty();
    }
    std::size_t length() const noexcept {
      return steps_.size();
    }
    /// Number of primary steps.
    std::size_t size() const noexcept;

    bool only_modulo() const noexcept;

    /// Appends a step; throws StepMismatch when it does not apply to target().
    Path& push(Polygraph const& p, RewriteStep s);
    /// Appends a composable path; throws StepMismatch otherwise.
    Path& append(Polygraph const& p, Path const& q);

    /// Reverse path. Only defined when every step is a modulo step.
    Path inverse() const;

    /// Identical boundary and steps.
    friend bool operator==(Path const&, Path const&) = default;

    /// Builds a path from raw parts without checking; use validate_path.
    static Path unchecked(Word source, std::vector<RewriteStep> steps, Word target);

   private:
    Word                     source_;
    std::vector<RewriteStep> steps_;
    Word                     target_;
  };

  /// Concatenation p · q; throws StepMismatch if not composable.
  Path compose(Polygraph const& p, Path const& a, Path const& b);

  struct PathValidation {
    bool                       ok = true;
    std::optional<std::size_t> first_violation;
    std::string                reason;
  };

  /// Checks that each step applies to the previous target, backward steps
  /// use modulo rules only, and the recorded target is reached.
  PathValidation validate_path(Polygraph const& p, Path const& path);

  /// One S-step e1 · r · e2 (mode decides which of e1, e2 may be non-empty).
  struct SStep {
    std::vector<RewriteStep> e1;
    RewriteStep              r;
    std::vector<RewriteStep> e2;
    Word                     source;
    Word                     target;
    /// The trailing E part is left implicit: any E-continuation is legal.
    bool e2_free = false;

    Path to_path(Polygraph const& p) const;
    /// Target of the R step, before e2.
    Word r_target(Polygraph const& p) const {
      return r.target(p);
    }
  };

  /// Checks the mode-shape and chaining invariants of an S-step.
  bool valid_sstep(Polygraph const& p, SStep const& s, Mode mode);

  /// `rule_id` or `rule_id^-`, with the left whisker length: `beta@0`.
  std::string format_step(Polygraph const& p, RewriteStep const& s);
  /// Space-separated format_step of each step; `id` for the empty path.
  std::string format_path(Polygraph const& p, Path const& path);

}  // namespace polymod
