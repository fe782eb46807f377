#include "polymod/coherence.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <unordered_map>

#include "polymod/rewrite.hpp"

namespace polymod {

  char const* to_string(WeakCommutation w) {
    switch (w) {
      case WeakCommutation::commuting:
        return "commuting";
      case WeakCommutation::weakly_commuting:
        return "weakly-commuting";
      case WeakCommutation::counterexample:
        return "counterexample";
      case WeakCommutation::unknown:
        return "unknown";
    }
    return "?";
  }

  namespace {
    std::string cell_label(Polygraph const& p, char prefix, CriticalBranching const& c) {
      return std::string(1, prefix) + "(" + p.rule_id(c.first) + "," + p.rule_id(c.second) + ")";
    }
  }  // namespace

  CoherentCompletion coherent_completion(Polygraph const& p,
                                         EEngine const&   e,
                                         Bounds const&    bounds) {
    CoherentCompletion             out;
    std::vector<CriticalBranching> unresolved;
    for (auto& c : critical_branchings(p, e, PairKind::s_vs_r, bounds).items) {
      auto w = check_confluence_modulo(p, e, c.branching, ConfluenceVariant::huet, bounds);
      if (w.verdict != Verdict::confluent) {
        unresolved.push_back(c);
        continue;
      }
      Branching const& b = c.branching;
      out.a_cells.push_back(SquareCell{compose(p, b.f, w.f_prime), b.e,
                                       compose(p, b.g, w.g_prime), w.e_prime,
                                       cell_label(p, 'A', c), SquareOrigin::A_fg});
      out.a_branchings.push_back(std::move(c));
    }
    for (auto& c : critical_branchings(p, e, PairKind::s_vs_e, bounds).items) {
      auto w = check_confluence_modulo(p, e, c.branching, ConfluenceVariant::huet, bounds);
      if (w.verdict != Verdict::confluent) {
        unresolved.push_back(c);
        continue;
      }
      Branching const& b = c.branching;
      out.b_cells.push_back(SquareCell{compose(p, b.f, w.f_prime), b.e,
                                       compose(p, b.g, w.g_prime), w.e_prime,
                                       cell_label(p, 'B', c), SquareOrigin::B_fe});
      out.b_branchings.push_back(std::move(c));
    }
    if (!unresolved.empty()) {
      std::string msg = std::to_string(unresolved.size())
                        + " critical branchings are not confluent modulo E, first at "
                        + p.format(unresolved.front().branching.f.source());
      throw NonConfluentSystem(msg, std::move(unresolved));
    }
    return out;
  }

  std::vector<SquareCell> conf_e(EEngine const& e) {
    std::vector<SquareCell> out;
    for (auto& c : e.e_critical_branchings()) {
      out.push_back(std::move(c.cell));
    }
    return out;
  }

  WeakCommutationReport check_weak_commutation(Polygraph const&         p,
                                               EEngine const&           e,
                                               std::vector<Word> const& words,
                                               Bounds const&            bounds) {
    WeakCommutationReport report;
    bool                  commuting = true;
    bool                  lazy_tail = has_trailing_e(p.mode()) && !p.e_rules().empty();
    for (auto const& u : words) {
      ++report.words_checked;
      auto sigma_u = normalize_sigma(p, e, u, bounds.max_depth);
      auto rho_u   = e.e_normal_form(u);
      auto rho_hat = e.e_normal_form(sigma_u.normal_form);
      auto sigma_t = normalize_sigma(p, e, rho_u.normal_form, bounds.max_depth);
      if (sigma_u.status != NormalizeStatus::complete
          || sigma_t.status != NormalizeStatus::complete) {
        report.verdict = WeakCommutation::unknown;
        return report;
      }
      std::optional<Path> eta;
      if (sigma_t.normal_form == rho_hat.normal_form) {
        eta = sigma_t.path;
      } else {
        commuting  = false;
        auto reach = reachable_normal_forms(p, e, rho_u.normal_form, bounds);
        for (auto const& f : reach.forms) {
          if (f.word == rho_hat.normal_form) {
            eta = f.path;
            break;
          }
          if (lazy_tail && !f.path.empty()
              && e.e_normal_form(f.word).normal_form == rho_hat.normal_form) {
            eta = compose(p, f.path, e.e_normal_form(f.word).path);
            break;
          }
        }
        if (!eta) {
          report.verdict        = reach.complete ? WeakCommutation::counterexample
                                                 : WeakCommutation::unknown;
          report.counterexample = u;
          return report;
        }
      }
      report.n_cells.push_back(SquareCell{sigma_u.path, rho_u.path, *eta, rho_hat.path,
                                          "N(" + p.format(u) + ")", SquareOrigin::Nsigma_rho});
    }
    report.verdict = commuting ? WeakCommutation::commuting : WeakCommutation::weakly_commuting;
    return report;
  }

  AcyclicExtension assemble_acyclic_extension(Polygraph const&          p,
                                              EEngine const&            e,
                                              OrderSpec const&          order,
                                              CoherentCompletion const& gamma,
                                              std::vector<SquareCell>   conf,
                                              ExtensionOptions const&   options,
                                              Bounds const&             bounds) {
    AcyclicExtension out;
    out.gamma = gamma.a_cells;
    out.gamma.insert(out.gamma.end(), gamma.b_cells.begin(), gamma.b_cells.end());
    out.peiffer = PeifferSchema{p.e_rules().size(), p.r_rules().size()};
    if (!p.e_rules().empty()) {
      out.conf_e = std::move(conf);
    }
    auto& ck = out.checklist;
    switch (check_compatibility(order, p, e).verdict) {
      case Compatibility::compatible:
        ck.terminating = Tri::yes;
        break;
      case Compatibility::incompatible:
        ck.terminating = Tri::no;
        break;
      case Compatibility::inconclusive:
        ck.terminating = Tri::unknown;
        break;
    }
    // Γ is only built when every critical branching closed
    ck.gamma_confluent = Tri::yes;
    ck.e_convergent    = e.e_convergent() ? Tri::yes : Tri::no;
    if (ck.e_convergent == Tri::yes) {
      auto words            = e_irreducible_words(p, e, options.test_degree);
      auto rep              = check_e_normalizing(p, e, words, bounds);
      ck.irr_e_normalizing  = rep.verdict;
      ck.failing_word       = rep.failing_word;
      if (options.weak_commutation) {
        auto wc = check_weak_commutation(p, e, all_words(p.num_generators(), options.test_degree),
                                         bounds);
        switch (wc.verdict) {
          case WeakCommutation::commuting:
          case WeakCommutation::weakly_commuting:
            ck.weak_commutation = Tri::yes;
            out.n_cells         = std::move(wc.n_cells);
            break;
          case WeakCommutation::counterexample:
            ck.weak_commutation = Tri::no;
            if (!ck.failing_word) {
              ck.failing_word = wc.counterexample;
            }
            break;
          case WeakCommutation::unknown:
            ck.weak_commutation = Tri::unknown;
            break;
        }
      }
    }
    bool normalizing = ck.irr_e_normalizing == Tri::yes || ck.weak_commutation == Tri::yes;
    out.conditional  = !(ck.terminating == Tri::yes && ck.gamma_confluent == Tri::yes
                        && ck.e_convergent == Tri::yes && normalizing);
    return out;
  }

  namespace {
    /// Reachable S-normal forms by E-class, without building paths.
    class NormalFormSearch {
     public:
      NormalFormSearch(Polygraph const& p, EEngine const& e, std::size_t max_depth)
          : p_(p),
            e_(e),
            max_depth_(max_depth),
            leading_(has_leading_e(p.mode()) && !p.e_rules().empty()),
            lazy_tail_(has_trailing_e(p.mode()) && !p.e_rules().empty()) {}

      /// Targets of every S-step out of the node.
      std::vector<Word> targets(Word const& w, bool class_level) const {
        std::vector<Word> out;
        auto scan = [&](Word const& m) {
          auto const& rules = p_.r_rules();
          for (std::size_t pos = 0; pos < m.size(); ++pos) {
            for (auto const& r : rules) {
              if (pos + r.lhs.size() <= m.size() && m.has_factor_at(r.lhs, pos)) {
                out.push_back(m.replaced(pos, r.lhs.size(), r.rhs));
              }
            }
          }
        };
        if (class_level) {
          for (auto const& m : e_.e_class(w)->members) {
            scan(m);
          }
        } else {
          scan(w);
        }
        return out;
      }

      bool start_class_level() const {
        return leading_;
      }
      bool after_step_class_level() const {
        return leading_ || lazy_tail_;
      }

      /// Sorted canonical representatives of the reachable normal forms.
      std::vector<Word> const& normal_forms(Word const& w, bool class_level, std::size_t depth) {
        Word key = class_level ? e_.canonical(w) : w;
        auto& memo = class_level ? class_memo_ : word_memo_;
        if (auto it = memo.find(key); it != memo.end()) {
          return it->second;
        }
        std::set<Word> out;
        auto           ts = targets(w, class_level);
        if (ts.empty()) {
          out.insert(e_.canonical(w));
        } else if (depth >= max_depth_) {
          depth_exceeded = true;
        } else {
          std::set<Word> visited;
          for (auto const& t : ts) {
            bool cl = after_step_class_level();
            if (!visited.insert(cl ? e_.canonical(t) : t).second) {
              continue;
            }
            auto const& sub = normal_forms(t, cl, depth + 1);
            out.insert(sub.begin(), sub.end());
          }
        }
        return memo.emplace(std::move(key), std::vector<Word>(out.begin(), out.end()))
            .first->second;
      }

      bool depth_exceeded = false;

     private:
      Polygraph const&                             p_;
      EEngine const&                               e_;
      std::size_t                                  max_depth_;
      bool                                         leading_;
      bool                                         lazy_tail_;
      std::unordered_map<Word, std::vector<Word>> class_memo_;
      std::unordered_map<Word, std::vector<Word>> word_memo_;
    };

    bool meet(std::vector<Word> const& a, std::vector<Word> const& b) {
      std::vector<Word> out;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
      return !out.empty();
    }
  }  // namespace

  FuzzReport newman_fuzz(Polygraph const&   p,
                         EEngine const&     e,
                         FuzzOptions const& options,
                         Bounds const&      bounds) {
    FuzzReport         report;
    std::mt19937_64    rng(options.seed);
    NormalFormSearch   search(p, e, bounds.max_depth);
    std::size_t        n = p.num_generators();
    auto fail = [&](Word const& w, std::string reason) {
      if (!report.first_failure) {
        report.first_failure        = w;
        report.first_failure_reason = std::move(reason);
      }
    };
    for (std::size_t s = 0; s < options.samples; ++s) {
      std::size_t degree = static_cast<std::size_t>(rng() % (options.max_degree + 1));
      Word        u;
      for (std::size_t i = 0; i < degree && n > 0; ++i) {
        u.push_back(static_cast<Letter>(rng() % n));
      }
      ++report.samples;
      search.depth_exceeded = false;

      bool              cl    = search.after_step_class_level();
      auto              fs    = search.targets(u, search.start_class_level());
      auto              gs    = search.targets(u, false);
      std::vector<Word> es;
      for (auto const& st : e.neighbours(u)) {
        es.push_back(st.target(p));
      }
      std::vector<std::vector<Word>> f_nf;
      for (auto const& t : fs) {
        f_nf.push_back(search.normal_forms(t, cl, 1));
      }
      std::vector<std::vector<Word>> other_nf;
      for (auto const& t : gs) {
        other_nf.push_back(search.normal_forms(t, cl, 1));
      }
      for (auto const& t : es) {
        other_nf.push_back(search.normal_forms(t, search.start_class_level(), 0));
      }
      std::size_t before = report.local_failures;
      for (auto const& a : f_nf) {
        for (auto const& b : other_nf) {
          ++report.local_branchings;
          if (!meet(a, b)) {
            ++report.local_failures;
          }
        }
      }
      if (report.local_failures != before) {
        fail(u, "local branching without E-equivalent normal forms");
      }
      auto const& all = search.normal_forms(u, search.start_class_level(), 0);
      if (all.size() > 1) {
        ++report.nf_failures;
        fail(u, std::to_string(all.size()) + " non-E-equivalent normal forms");
      }
      if (search.depth_exceeded) {
        ++report.depth_exceeded;
      }
    }
    return report;
  }

  std::vector<QuotientStep> quotient_path(Polygraph const& p, EEngine const& e, Path const& path) {
    std::vector<QuotientStep> out;
    for (auto const& s : path.steps()) {
      if (!s.is_primary()) {
        continue;
      }
      out.push_back(QuotientStep{p.rule_id(s.rule),
                                 e.e_normal_form(s.left).normal_form,
                                 e.e_normal_form(s.right).normal_form,
                                 e.e_normal_form(s.source(p)).normal_form,
                                 e.e_normal_form(s.target(p)).normal_form});
    }
    return out;
  }

  GlobularPresentation quotient_globular(Polygraph const&               p,
                                         EEngine const&                 e,
                                         std::vector<SquareCell> const& cells) {
    if (!e.e_convergent()) {
      throw NotConvergent("the oriented modulo rules are not convergent");
    }
    GlobularPresentation out;
    out.generators = p.generators();
    out.e_rules    = p.e_rules();
    for (auto const& r : p.r_rules()) {
      out.rules.push_back(
          ClassRule{r.id, e.e_normal_form(r.lhs).normal_form, e.e_normal_form(r.rhs).normal_form});
    }
    for (auto const& a : cells) {
      if (a.origin != SquareOrigin::A_fg) {
        continue;
      }
      GlobularCell g{a.label,
                     quotient_path(p, e, a.top),
                     quotient_path(p, e, a.bottom),
                     e.e_normal_form(a.top.source()).normal_form,
                     e.e_normal_form(a.top.target()).normal_form};
      bool dup = std::any_of(out.cells3.begin(), out.cells3.end(),
                             [&](GlobularCell const& x) { return x.same_boundary(g); });
      if (!dup) {
        out.cells3.push_back(std::move(g));
      }
    }
    return out;
  }

}  // namespace polymod
