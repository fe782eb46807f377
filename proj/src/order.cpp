#include "polymod/order.hpp"

#include <algorithm>
#include <stdexcept>

#include "polymod/eclass.hpp"
#include "polymod/polygraph.hpp"

namespace polymod {

  OrderSpec::OrderSpec(OrderKind kind, std::vector<Letter> precedence)
      : kind_(kind), precedence_(std::move(precedence)) {
    std::size_t n = precedence_.size();
    rank_.assign(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      Letter x = precedence_[i];
      if (x >= n || rank_[x] != n) {
        throw std::invalid_argument("precedence is not a permutation of the generators");
      }
      rank_[x] = i;
    }
  }

  Cmp OrderSpec::compare_deglex(Word const& u, Word const& v) const {
    if (u.size() != v.size()) {
      return u.size() < v.size() ? Cmp::LT : Cmp::GT;
    }
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (u[i] != v[i]) {
        return rank_[u[i]] < rank_[v[i]] ? Cmp::GT : Cmp::LT;
      }
    }
    return Cmp::EQ;
  }

  Word OrderSpec::canonical(Word const& w) const {
    std::vector<Letter> xs(w.begin(), w.end());
    std::sort(xs.begin(), xs.end(), [this](Letter a, Letter b) { return rank_[a] < rank_[b]; });
    return Word(std::move(xs));
  }

  Cmp OrderSpec::compare(Word const& u, Word const& v) const {
    if (kind_ == OrderKind::cdeglex) {
      return compare_deglex(canonical(u), canonical(v));
    }
    return compare_deglex(u, v);
  }

  char const* to_string(OrderKind k) {
    return k == OrderKind::deglex ? "deglex" : "cdeglex";
  }

  std::optional<OrderKind> order_kind_from_string(std::string const& s) {
    if (s == "deglex") {
      return OrderKind::deglex;
    } else if (s == "cdeglex") {
      return OrderKind::cdeglex;
    }
    return std::nullopt;
  }

  char const* to_string(Cmp c) {
    switch (c) {
      case Cmp::LT:
        return "LT";
      case Cmp::EQ:
        return "EQ";
      case Cmp::GT:
        return "GT";
    }
    return "?";
  }

  char const* to_string(Compatibility c) {
    switch (c) {
      case Compatibility::compatible:
        return "compatible";
      case Compatibility::incompatible:
        return "incompatible";
      case Compatibility::inconclusive:
        return "inconclusive";
    }
    return "?";
  }

  CompatibilityReport check_compatibility(OrderSpec const& order,
                                          Polygraph const& p,
                                          EEngine const&   e) {
    CompatibilityReport report;
    if (order.kind() == OrderKind::cdeglex) {
      if (!p.e_is_commutation()) {
        throw std::invalid_argument("cdeglex requires every modulo rule to be a commutation");
      }
      for (auto const& r : p.r_rules()) {
        ++report.comparisons;
        if (order.compare(r.lhs, r.rhs) != Cmp::GT) {
          report.verdict = Compatibility::incompatible;
          report.rule_id = r.id;
          report.witness = {r.lhs, r.rhs};
          return report;
        }
      }
      return report;
    }
    bool truncated = false;
    for (auto const& r : p.r_rules()) {
      auto lc = e.e_class(r.lhs);
      auto rc = e.e_class(r.rhs);
      truncated |= lc->overflow || rc->overflow;
      for (auto const& l : lc->members) {
        for (auto const& rr : rc->members) {
          ++report.comparisons;
          if (order.compare(l, rr) != Cmp::GT) {
            report.verdict = Compatibility::incompatible;
            report.rule_id = r.id;
            report.witness = {l, rr};
            return report;
          }
        }
      }
    }
    if (truncated) {
      report.verdict = Compatibility::inconclusive;
    }
    return report;
  }

}  // namespace polymod
