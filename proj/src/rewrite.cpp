#include "polymod/rewrite.hpp"

#include <deque>
#include <unordered_map>

namespace polymod {

  char const* to_string(NormalizeStatus s) {
    return s == NormalizeStatus::complete ? "complete" : "depth-exceeded";
  }

  namespace {
    /// Calls `visit(member_index, position, rule_index)` in enumeration order
    /// until it returns false.
    template <typename F>
    void for_each_redex(Polygraph const& p, EClass const* cls, Word const& w, F&& visit) {
      auto const& rules = p.r_rules();
      auto scan = [&](Word const& m, std::size_t member) {
        for (std::size_t pos = 0; pos <= m.size(); ++pos) {
          for (std::size_t i = 0; i < rules.size(); ++i) {
            Word const& lhs = rules[i].lhs;
            if (pos + lhs.size() <= m.size() && m.has_factor_at(lhs, pos)) {
              if (!visit(member, pos, i)) {
                return false;
              }
            }
          }
        }
        return true;
      };
      if (cls == nullptr) {
        scan(w, 0);
        return;
      }
      for (std::size_t k = 0; k < cls->members.size(); ++k) {
        if (!scan(cls->members[k], k)) {
          return;
        }
      }
    }

    SStep build_step(Polygraph const& p,
                     EClass const*    cls,
                     Word const&      w,
                     std::size_t      member,
                     std::size_t      pos,
                     std::size_t      rule) {
      SStep s;
      s.source = w;
      Word at  = w;
      if (cls != nullptr) {
        Path e1 = cls->path(cls->index_of(w), member);
        s.e1    = e1.steps();
        at      = e1.target();
      }
      s.r       = make_step(p, at, RuleRef{RuleKind::primary, rule}, pos);
      s.target  = s.r.target(p);
      s.e2_free = has_trailing_e(p.mode());
      return s;
    }

    std::shared_ptr<EClass const> class_for_mode(Polygraph const& p,
                                                 EEngine const&   e,
                                                 Word const&      w) {
      if (has_leading_e(p.mode()) && !p.e_rules().empty()) {
        return e.e_class(w);
      }
      return nullptr;
    }
  }  // namespace

  std::vector<SStep> enumerate_steps(Polygraph const& p, EEngine const& e, Word const& w) {
    auto               cls = class_for_mode(p, e, w);
    std::vector<SStep> out;
    for_each_redex(p, cls.get(), w, [&](std::size_t m, std::size_t pos, std::size_t i) {
      out.push_back(build_step(p, cls.get(), w, m, pos, i));
      return true;
    });
    return out;
  }

  std::optional<SStep> first_step(Polygraph const& p, EEngine const& e, Word const& w) {
    auto                 cls = class_for_mode(p, e, w);
    std::optional<SStep> out;
    for_each_redex(p, cls.get(), w, [&](std::size_t m, std::size_t pos, std::size_t i) {
      out = build_step(p, cls.get(), w, m, pos, i);
      return false;
    });
    return out;
  }

  NormalizeResult normalize(Polygraph const& p,
                            EEngine const&   e,
                            Word const&      w,
                            std::size_t      max_depth) {
    NormalizeResult res{w, Path(w), NormalizeStatus::complete, 0};
    while (auto s = first_step(p, e, res.normal_form)) {
      if (res.steps == max_depth) {
        res.status = NormalizeStatus::depth_exceeded;
        break;
      }
      for (auto const& x : s->e1) {
        res.path.push(p, x);
      }
      res.path.push(p, s->r);
      res.normal_form = res.path.target();
      ++res.steps;
    }
    return res;
  }

  NormalizeResult normalize_sigma(Polygraph const& p,
                                  EEngine const&   e,
                                  Word const&      w,
                                  std::size_t      max_depth) {
    NormalizeResult res = normalize(p, e, w, max_depth);
    if (res.steps > 0 && has_trailing_e(p.mode()) && !p.e_rules().empty()) {
      auto nf = e.e_normal_form(res.normal_form);
      res.path.append(p, nf.path);
      res.normal_form = nf.normal_form;
    }
    return res;
  }

  Irreducibility is_irreducible(Polygraph const& p, EEngine const& e, Word const& w) {
    if (auto s = first_step(p, e, w)) {
      return {Tri::no, std::move(s)};
    }
    auto cls = class_for_mode(p, e, w);
    if (cls && !cls->complete()) {
      return {Tri::unknown, std::nullopt};
    }
    return {Tri::yes, std::nullopt};
  }

  ReachableNormalForms reachable_normal_forms(Polygraph const& p,
                                              EEngine const&   e,
                                              Word const&      w,
                                              Bounds const&    bounds) {
    struct Node {
      Path        path;
      std::size_t depth;
    };
    bool lazy_tail = has_trailing_e(p.mode()) && !p.e_rules().empty();
    auto key_of    = [&](Word const& x, std::size_t depth) {
      return lazy_tail && depth > 0 ? e.canonical(x) : x;
    };

    ReachableNormalForms           out;
    std::unordered_map<Word, char> seen;
    std::deque<Node>               queue;
    queue.push_back(Node{Path(w), 0});
    while (!queue.empty()) {
      Node node = std::move(queue.front());
      queue.pop_front();
      Word const& at    = node.path.target();
      auto        steps = enumerate_steps(p, e, at);
      auto        cls   = class_for_mode(p, e, at);
      if (cls && !cls->complete()) {
        out.complete = false;
      }
      if (steps.empty()) {
        out.forms.push_back(ReachableForm{at, node.path});
        continue;
      }
      if (node.depth >= bounds.max_depth) {
        out.complete = false;
        continue;
      }
      for (auto const& s : steps) {
        Word key = key_of(s.target, node.depth + 1);
        if (!seen.emplace(key, 1).second) {
          continue;
        }
        if (seen.size() > bounds.max_candidates) {
          out.complete = false;
          return out;
        }
        Path next = node.path;
        for (auto const& x : s.e1) {
          next.push(p, x);
        }
        next.push(p, s.r);
        queue.push_back(Node{std::move(next), node.depth + 1});
      }
    }
    return out;
  }

  ENormalizingReport check_e_normalizing(Polygraph const&         p,
                                         EEngine const&           e,
                                         std::vector<Word> const& words,
                                         Bounds const&            bounds) {
    ENormalizingReport report;
    bool               lazy_tail = has_trailing_e(p.mode()) && !p.e_rules().empty();
    for (auto const& u : words) {
      ENormalizingEntry entry{u, Tri::no, std::nullopt};
      if (p.e_rules().empty()) {
        entry.verdict     = Tri::yes;
        entry.normal_form = normalize(p, e, u, bounds.max_depth).normal_form;
      } else {
        auto reach = reachable_normal_forms(p, e, u, bounds);
        for (auto const& f : reach.forms) {
          if (lazy_tail && !f.path.empty()) {
            // the trailing E part may continue to the E-normal form
            entry.verdict     = Tri::yes;
            entry.normal_form = e.e_normal_form(f.word).normal_form;
            break;
          }
          if (e.is_e_irreducible(f.word)) {
            entry.verdict     = Tri::yes;
            entry.normal_form = f.word;
            break;
          }
        }
        if (entry.verdict == Tri::no && !reach.complete) {
          entry.verdict = Tri::unknown;
        }
        if (entry.verdict == Tri::no && !reach.forms.empty()) {
          entry.normal_form = reach.forms.front().word;
        }
      }
      if (entry.verdict == Tri::no && report.verdict != Tri::no) {
        report.verdict      = Tri::no;
        report.failing_word = u;
      } else if (entry.verdict == Tri::unknown && report.verdict == Tri::yes) {
        report.verdict = Tri::unknown;
      }
      report.entries.push_back(std::move(entry));
    }
    return report;
  }

  std::vector<Word> all_words(std::size_t generators, std::size_t max_degree) {
    std::vector<Word> out{Word{}};
    std::size_t       begin = 0;
    for (std::size_t d = 1; d <= max_degree && generators > 0; ++d) {
      std::size_t end = out.size();
      for (std::size_t i = begin; i < end; ++i) {
        for (std::size_t x = 0; x < generators; ++x) {
          Word w = out[i];
          w.push_back(static_cast<Letter>(x));
          out.push_back(std::move(w));
        }
      }
      begin = end;
    }
    return out;
  }

  std::vector<Word> e_irreducible_words(Polygraph const& p,
                                        EEngine const&   e,
                                        std::size_t      max_degree) {
    std::vector<Word> out;
    for (auto& w : all_words(p.num_generators(), max_degree)) {
      if (e.is_e_irreducible(w)) {
        out.push_back(std::move(w));
      }
    }
    return out;
  }

}  // namespace polymod
