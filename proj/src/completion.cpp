#include "polymod/completion.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <tuple>

#include "polymod/rewrite.hpp"

namespace polymod {

  char const* to_string(CompletionVariant v) {
    switch (v) {
      case CompletionVariant::er:
        return "er";
      case CompletionVariant::ere:
        return "ere";
      case CompletionVariant::plain:
        return "plain";
    }
    return "?";
  }

  std::optional<CompletionVariant> completion_variant_from_string(std::string const& s) {
    if (s == "er") {
      return CompletionVariant::er;
    } else if (s == "ere") {
      return CompletionVariant::ere;
    } else if (s == "plain") {
      return CompletionVariant::plain;
    }
    return std::nullopt;
  }

  char const* to_string(TraceTag t) {
    switch (t) {
      case TraceTag::BranchingProcessed:
        return "branching-processed";
      case TraceTag::AddConsequence:
        return "add-consequence";
      case TraceTag::SimplifyEquation:
        return "simplify-equation";
      case TraceTag::DeleteEquation:
        return "delete-equation";
      case TraceTag::SimplifyRHS:
        return "simplify-rhs";
      case TraceTag::SimplifyLHS:
        return "simplify-lhs";
      case TraceTag::Orient:
        return "orient";
      case TraceTag::NewRule:
        return "new-rule";
    }
    return "?";
  }

  char const* to_string(CompletionStatus s) {
    switch (s) {
      case CompletionStatus::success:
        return "success";
      case CompletionStatus::limit_reached:
        return "limit-reached";
      case CompletionStatus::unorientable:
        return "unorientable";
    }
    return "?";
  }

  Polygraph merge_modulo_rules(Polygraph const& p) {
    std::vector<Rule> rules = p.r_rules();
    for (auto r : p.e_rules()) {
      r.kind = RuleKind::primary;
      rules.push_back(std::move(r));
    }
    return Polygraph(p.generators(), std::move(rules), {}, Mode::R, p.declared_order(), false);
  }

  Polygraph replay(Polygraph const& initial, std::vector<TraceEvent> const& trace) {
    std::vector<Rule> rules = initial.r_rules();
    for (auto const& ev : trace) {
      if (ev.tag == TraceTag::NewRule) {
        rules.push_back(Rule{ev.rule_id, RuleKind::primary, ev.lhs, ev.rhs});
      }
    }
    return initial.with_r_rules(std::move(rules));
  }

  namespace {
    using SeenKey = std::tuple<Word, std::size_t, std::size_t, std::vector<Letter>>;

    SeenKey key_of(CriticalBranching const& c) {
      return {c.canonical, std::min(c.first.index, c.second.index),
              std::max(c.first.index, c.second.index), c.shared};
    }

    CompletionResult run(Polygraph const&        start,
                         OrderSpec const&        order,
                         bool                    e_normal_rhs,
                         CompletionLimits const& limits) {
      CompletionResult res;
      res.completed = start;
      EEngine e(start, limits.bounds);
      OrderSpec deglex = start.declared_order().with_kind(OrderKind::deglex);

      std::deque<CriticalBranching> queue;
      std::set<SeenKey>             seen;
      auto enqueue = [&](std::vector<CriticalBranching> batch) {
        std::stable_sort(batch.begin(), batch.end(), [&](auto const& a, auto const& b) {
          Cmp c = deglex.compare(a.canonical, b.canonical);
          if (c != Cmp::EQ) {
            return c == Cmp::LT;
          }
          return std::tie(a.first, a.second) < std::tie(b.first, b.second);
        });
        for (auto& c : batch) {
          if (seen.insert(key_of(c)).second) {
            queue.push_back(std::move(c));
          }
        }
      };
      enqueue(critical_branchings(res.completed, e, PairKind::s_vs_r, limits.bounds).items);

      while (!queue.empty()) {
        if (res.iterations >= limits.max_iterations) {
          res.status = CompletionStatus::limit_reached;
          return res;
        }
        CriticalBranching c = std::move(queue.front());
        queue.pop_front();
        ++res.iterations;
        Polygraph const& cur = res.completed;
        Word const&      src = c.branching.f.source();
        res.trace.push_back({TraceTag::BranchingProcessed, {}, {}, {}, src});
        Word v = c.branching.f.target();
        Word w = c.branching.g.target();
        res.trace.push_back({TraceTag::AddConsequence, {}, v, w, src});
        auto nv = normalize(cur, e, v, limits.bounds.max_depth);
        auto nw = normalize(cur, e, w, limits.bounds.max_depth);
        if (nv.status != NormalizeStatus::complete || nw.status != NormalizeStatus::complete) {
          res.status = CompletionStatus::limit_reached;
          return res;
        }
        if (!nv.path.empty() || !nw.path.empty()) {
          res.trace.push_back(
              {TraceTag::SimplifyEquation, {}, nv.normal_form, nw.normal_form, src});
        }
        auto eq = e.e_equivalent(nv.normal_form, nw.normal_form);
        if (eq.verdict == Tri::yes) {
          res.trace.push_back(
              {TraceTag::DeleteEquation, {}, nv.normal_form, nw.normal_form, src});
          continue;
        }
        if (eq.verdict == Tri::unknown) {
          res.status = CompletionStatus::limit_reached;
          return res;
        }
        Word lhs;
        Word rhs;
        switch (order.compare(nv.normal_form, nw.normal_form)) {
          case Cmp::GT:
            lhs = nv.normal_form;
            rhs = nw.normal_form;
            break;
          case Cmp::LT:
            lhs = nw.normal_form;
            rhs = nv.normal_form;
            break;
          case Cmp::EQ:
            res.status       = CompletionStatus::unorientable;
            res.unorientable = std::make_pair(nv.normal_form, nw.normal_form);
            return res;
        }
        if (e_normal_rhs && !cur.e_rules().empty()) {
          rhs = e.e_normal_form(rhs).normal_form;
        }
        if (res.added.size() >= limits.max_rules) {
          res.status = CompletionStatus::limit_reached;
          return res;
        }
        res.trace.push_back({TraceTag::Orient, {}, lhs, rhs, src});
        std::string id = cur.fresh_id("d");
        res.trace.push_back({TraceTag::NewRule, id, lhs, rhs, src});
        Rule rule{id, RuleKind::primary, lhs, rhs};
        res.added.push_back(rule);
        std::vector<Rule> rules = cur.r_rules();
        rules.push_back(rule);
        res.completed = cur.with_r_rules(std::move(rules));
        enqueue(critical_branchings(res.completed, e, PairKind::s_vs_r, limits.bounds,
                                    res.completed.r_rules().size() - 1)
                    .items);
      }
      return res;
    }
  }  // namespace

  CompletionResult complete(Polygraph const&        p,
                            OrderSpec const&        order,
                            CompletionVariant       variant,
                            CompletionLimits const& limits) {
    if (variant == CompletionVariant::plain) {
      return complete_plain_kb(p, order, limits);
    }
    Mode      mode  = variant == CompletionVariant::er ? Mode::ER : Mode::ERE;
    Polygraph start = p.e_rules().empty() ? p.with_mode(Mode::R) : p.with_mode(mode);
    EEngine   e(start, limits.bounds);
    auto      report = check_compatibility(order, start, e);
    if (report.verdict != Compatibility::compatible) {
      throw PreconditionViolated(std::string("order is ") + to_string(report.verdict)
                                 + " with the primary rules modulo E"
                                 + (report.rule_id ? " (rule " + *report.rule_id + ")" : ""));
    }
    return run(start, order, variant == CompletionVariant::ere, limits);
  }

  CompletionResult complete_plain_kb(Polygraph const&        p,
                                     OrderSpec const&        order,
                                     CompletionLimits const& limits) {
    Polygraph merged = merge_modulo_rules(p);
    OrderSpec o      = order.kind() == OrderKind::cdeglex ? order.with_kind(OrderKind::deglex)
                                                          : order;
    EEngine   e(merged, limits.bounds);
    auto      report = check_compatibility(o, merged, e);
    if (report.verdict != Compatibility::compatible) {
      throw PreconditionViolated(std::string("order is ") + to_string(report.verdict)
                                 + " with the merged rules"
                                 + (report.rule_id ? " (rule " + *report.rule_id + ")" : ""));
    }
    return run(merged, o, false, limits);
  }

}  // namespace polymod
