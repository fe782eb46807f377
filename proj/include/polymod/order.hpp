#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polymod/word.hpp"

namespace polymod {

  enum class OrderKind {
    /// degree, then left-to-right by precedence
    deglex,
    /// deglex on the commutative canonical form (letters sorted greatest
    /// first); only meaningful when every modulo rule is a commutation
    cdeglex
  };

  enum class Cmp { LT, EQ, GT };

  /// Termination order on words. `precedence[0]` is the greatest generator.
  class OrderSpec {
   public:
    OrderSpec() = default;
    OrderSpec(OrderKind kind, std::vector<Letter> precedence);

    OrderKind kind() const noexcept {
      return kind_;
    }
    std::vector<Letter> const& precedence() const noexcept {
      return precedence_;
    }
    /// 0 for the greatest generator
    std::size_t rank(Letter x) const {
      return rank_[x];
    }

    OrderSpec with_kind(OrderKind kind) const {
      return OrderSpec(kind, precedence_);
    }

    Cmp compare(Word const& u, Word const& v) const;

    /// Letters of `w` sorted greatest first.
    Word canonical(Word const& w) const;

    friend bool operator==(OrderSpec const& a, OrderSpec const& b) {
      return a.kind_ == b.kind_ && a.precedence_ == b.precedence_;
    }

   private:
    Cmp compare_deglex(Word const& u, Word const& v) const;

    OrderKind kind_ = OrderKind::deglex;
    std::vector<Letter> precedence_;
    std::vector<std::size_t> rank_;
  };

  char const* to_string(OrderKind k);
  std::optional<OrderKind> order_kind_from_string(std::string const& s);
  char const* to_string(Cmp c);

  class Polygraph;
  class EEngine;

  enum class Compatibility { compatible, incompatible, inconclusive };

  struct CompatibilityReport {
    Compatibility verdict = Compatibility::compatible;
    std::optional<std::string> rule_id;
    /// (l', r') with l' in the class of the lhs, r' in the class of the rhs
    /// and compare(l', r') != GT
    std::optional<std::pair<Word, Word>> witness;
    std::size_t comparisons = 0;
  };

  char const* to_string(Compatibility c);

  /// Checks that every primary rule decreases for `order` modulo E: every
  /// member of the lhs class must exceed every member of the rhs class.
  /// For cdeglex the order is E-invariant and one comparison per rule
  /// suffices. Throws std::invalid_argument for cdeglex with a modulo rule
  /// that is not a commutation.
  CompatibilityReport check_compatibility(OrderSpec const& order,
                                          Polygraph const& p,
                                          EEngine const& e);

}  // namespace polymod
