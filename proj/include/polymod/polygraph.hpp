#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "polymod/order.hpp"
#include "polymod/word.hpp"

namespace polymod {

  /// Shape of one rewriting step: which sides may carry modulo steps.
  enum class Mode { R, ER, RE, ERE };

  char const* to_string(Mode m);
  std::optional<Mode> mode_from_string(std::string_view s);

  inline bool has_leading_e(Mode m) {
    return m == Mode::ER || m == Mode::ERE;
  }
  inline bool has_trailing_e(Mode m) {
    return m == Mode::RE || m == Mode::ERE;
  }

  enum class RuleKind { primary, modulo };

  struct Generator {
    std::string name;
    std::size_t index = 0;
    friend bool operator==(Generator const&, Generator const&) = default;
  };

  struct Rule {
    std::string id;
    RuleKind kind = RuleKind::primary;
    Word lhs;
    Word rhs;
    friend bool operator==(Rule const&, Rule const&) = default;
  };

  struct RuleRef {
    RuleKind kind = RuleKind::primary;
    std::size_t index = 0;
    friend bool operator==(RuleRef const&, RuleRef const&) = default;
    friend auto operator<=>(RuleRef const&, RuleRef const&) = default;
  };

  /// Presentation-level validation failure.
  class PresentationError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
  };

  class ParseError : public std::runtime_error {
   public:
    ParseError(std::size_t line, std::size_t column, std::string const& msg);
    std::size_t line() const noexcept {
      return line_;
    }
    std::size_t column() const noexcept {
      return column_;
    }
    std::string const& detail() const noexcept {
      return detail_;
    }

   private:
    std::size_t line_;
    std::size_t column_;
    std::string detail_;
  };

  /// A 2-polygraph modulo: primary rules R, modulo rules E over the same
  /// generators, and the mode selecting the rewriting relation S between R
  /// and ERE. Immutable after construction.
  class Polygraph {
   public:
    Polygraph() = default;
    /// Validates every invariant; throws PresentationError otherwise.
    Polygraph(std::vector<Generator> generators,
              std::vector<Rule>      r_rules,
              std::vector<Rule>      e_rules,
              Mode                   mode,
              OrderSpec              order,
              bool                   modulo_commutation = false);

    std::vector<Generator> const& generators() const noexcept {
      return generators_;
    }
    std::size_t num_generators() const noexcept {
      return generators_.size();
    }
    std::vector<Rule> const& r_rules() const noexcept {
      return r_rules_;
    }
    std::vector<Rule> const& e_rules() const noexcept {
      return e_rules_;
    }
    Mode mode() const noexcept {
      return mode_;
    }
    /// The order as declared in the source (`order:` line).
    OrderSpec const& declared_order() const noexcept {
      return order_;
    }
    /// True when E was produced by `modulo commutation`.
    bool modulo_commutation() const noexcept {
      return commutation_;
    }

    Rule const& rule(RuleRef ref) const {
      return ref.kind == RuleKind::primary ? r_rules_.at(ref.index)
                                           : e_rules_.at(ref.index);
    }
    std::string const& rule_id(RuleRef ref) const {
      return rule(ref).id;
    }
    std::optional<RuleRef> find_rule(std::string_view id) const;
    std::optional<Letter>  find_generator(std::string_view name) const;

    /// Every modulo rule has the form ab == ba with a != b.
    bool e_is_commutation() const;
    /// Every modulo rule has |lhs| == |rhs|.
    bool e_degree_preserving() const;

    Polygraph with_r_rules(std::vector<Rule> rules) const;
    Polygraph with_mode(Mode m) const;
    Polygraph with_order(OrderSpec o) const;
    /// Same generators and R, E = empty, commutation flag cleared.
    Polygraph without_e() const;

    /// Space-separated generator names; `1` for the empty word.
    std::string format(Word const& w) const;
    /// Inverse of format(); throws PresentationError on unknown names.
    Word parse_word(std::string_view text) const;
    Word parse_word(std::vector<std::string> const& tokens) const;

    /// Fresh primary-rule id of the form `<prefix><n>`.
    std::string fresh_id(std::string_view prefix) const;

    friend bool operator==(Polygraph const&, Polygraph const&) = default;

   private:
    std::vector<Generator> generators_;
    std::vector<Rule>      r_rules_;
    std::vector<Rule>      e_rules_;
    Mode                   mode_ = Mode::R;
    OrderSpec              order_;
    bool                   commutation_ = false;
  };

  /// The order used when none is forced: cdeglex over the declared
  /// precedence when E comes from `modulo commutation`, the declared one
  /// otherwise.
  OrderSpec default_order(Polygraph const& p);

  /// Rules x_i x_j => x_j x_i for every x_i > x_j in `precedence`.
  std::vector<Rule> commutation_rules(std::vector<Generator> const& gens,
                                      std::vector<Letter> const&    precedence);

  /// Parses the line-oriented presentation format. Throws ParseError.
  Polygraph parse_presentation(std::string_view text);

  /// Emits the presentation format deterministically, in declaration order.
  std::string serialize(Polygraph const& p);

}  // namespace polymod
