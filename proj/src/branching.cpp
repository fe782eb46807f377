#include "polymod/branching.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace polymod {

  char const* to_string(BranchingKind k) {
    switch (k) {
      case BranchingKind::Aspherical:
        return "aspherical";
      case BranchingKind::Peiffer:
        return "peiffer";
      case BranchingKind::PeifferModulo:
        return "peiffer-modulo";
      case BranchingKind::Overlap:
        return "overlap";
      case BranchingKind::OverlapModulo:
        return "overlap-modulo";
    }
    return "?";
  }

  char const* to_string(ConfluenceVariant v) {
    switch (v) {
      case ConfluenceVariant::huet:
        return "huet";
      case ConfluenceVariant::jk_confluence:
        return "jk-confluence";
      case ConfluenceVariant::jk_coherence:
        return "jk-coherence";
    }
    return "?";
  }

  char const* to_string(Verdict v) {
    switch (v) {
      case Verdict::confluent:
        return "confluent";
      case Verdict::not_confluent:
        return "not-confluent";
      case Verdict::unknown:
        return "unknown";
    }
    return "?";
  }

  Branching make_branching(Path f, Path e, Path g) {
    if (f.source() != e.source()) {
      throw std::invalid_argument("branching: f and e have different sources");
    }
    if (g.source() != e.target()) {
      throw std::invalid_argument("branching: g does not start at the target of e");
    }
    if (!e.only_modulo()) {
      throw std::invalid_argument("branching: e must only use modulo rules");
    }
    return Branching{std::move(f), std::move(e), std::move(g)};
  }

  namespace {
    using Origins = std::vector<std::vector<std::size_t>>;

    Word const& from_side(Polygraph const& p, RewriteStep const& s) {
      auto const& r = p.rule(s.rule);
      return s.direction == Direction::forward ? r.lhs : r.rhs;
    }
    Word const& to_side(Polygraph const& p, RewriteStep const& s) {
      auto const& r = p.rule(s.rule);
      return s.direction == Direction::forward ? r.rhs : r.lhs;
    }

    void transport_step(Polygraph const& p, RewriteStep const& s, Origins& origins) {
      Word const& from = from_side(p, s);
      Word const& to   = to_side(p, s);
      std::size_t pos  = s.position();
      Origins     middle(to.size());
      if (letter_multiset(from) == letter_multiset(to)) {
        // match the k-th occurrence of each letter on both sides
        for (std::size_t t = 0; t < to.size(); ++t) {
          std::size_t k = static_cast<std::size_t>(
              std::count(to.begin(), to.begin() + static_cast<std::ptrdiff_t>(t), to[t]));
          for (std::size_t j = 0; j < from.size(); ++j) {
            if (from[j] == to[t] && k-- == 0) {
              middle[t] = origins[pos + j];
              break;
            }
          }
        }
      } else {
        std::vector<std::size_t> all;
        for (std::size_t j = 0; j < from.size(); ++j) {
          all.insert(all.end(), origins[pos + j].begin(), origins[pos + j].end());
        }
        std::sort(all.begin(), all.end());
        all.erase(std::unique(all.begin(), all.end()), all.end());
        std::fill(middle.begin(), middle.end(), all);
      }
      Origins out;
      out.reserve(origins.size() - from.size() + to.size());
      out.insert(out.end(), origins.begin(), origins.begin() + static_cast<std::ptrdiff_t>(pos));
      out.insert(out.end(), middle.begin(), middle.end());
      out.insert(out.end(), origins.begin() + static_cast<std::ptrdiff_t>(pos + from.size()),
                 origins.end());
      origins = std::move(out);
    }

    Origins identity_origins(std::size_t n) {
      Origins o(n);
      for (std::size_t i = 0; i < n; ++i) {
        o[i] = {i};
      }
      return o;
    }

    std::vector<std::size_t> union_over(Origins const& o, std::size_t pos, std::size_t len) {
      std::vector<std::size_t> out;
      for (std::size_t j = pos; j < pos + len; ++j) {
        out.insert(out.end(), o[j].begin(), o[j].end());
      }
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      return out;
    }

    std::vector<std::size_t> interval(std::size_t pos, std::size_t len) {
      std::vector<std::size_t> out(len);
      for (std::size_t j = 0; j < len; ++j) {
        out[j] = pos + j;
      }
      return out;
    }

    std::vector<std::size_t> intersect(std::vector<std::size_t> const& a,
                                       std::vector<std::size_t> const& b) {
      std::vector<std::size_t> out;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
      return out;
    }

    std::vector<std::size_t> unite(std::vector<std::size_t> const& a,
                                   std::vector<std::size_t> const& b) {
      std::vector<std::size_t> out;
      std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
      return out;
    }

    std::vector<Letter> letters_at(Word const& w, std::vector<std::size_t> const& positions) {
      std::vector<Letter> out;
      for (auto i : positions) {
        out.push_back(w[i]);
      }
      std::sort(out.begin(), out.end());
      return out;
    }

    /// f has the shape e1 · r · e2 with exactly one primary step.
    bool is_single_sstep(Path const& f) {
      return f.size() == 1;
    }

    std::size_t first_primary(Path const& f) {
      auto const& st = f.steps();
      for (std::size_t i = 0; i < st.size(); ++i) {
        if (st[i].is_primary()) {
          return i;
        }
      }
      return st.size();
    }

    bool mediated(Path const& f) {
      return first_primary(f) > 0;
    }
  }  // namespace

  std::vector<std::vector<std::size_t>> transport(Polygraph const& p, Path const& path) {
    Origins o = identity_origins(path.source().size());
    for (auto const& s : path.steps()) {
      transport_step(p, s, o);
    }
    return o;
  }

  std::vector<std::size_t> primary_support(Polygraph const& p, Path const& f) {
    Origins o = identity_origins(f.source().size());
    for (auto const& s : f.steps()) {
      if (s.is_primary()) {
        return union_over(o, s.position(), from_side(p, s).size());
      }
      transport_step(p, s, o);
    }
    return {};
  }

  BranchingKind classify_local(Polygraph const& p, EEngine const& e, Branching const& b) {
    if (!is_single_sstep(b.f)) {
      throw NotLocal("f must consist of exactly one S-step");
    }
    bool with_e = b.e.length() == 1 && b.g.empty();
    bool with_g = b.e.empty() && is_single_sstep(b.g);
    if (!with_e && !with_g) {
      throw NotLocal("need exactly one of e, g to be a single step");
    }
    auto supp_f = primary_support(p, b.f);
    if (with_e) {
      RewriteStep const& s = b.e.steps().front();
      auto supp_e = interval(s.position(), from_side(p, s).size());
      return intersect(supp_f, supp_e).empty() ? BranchingKind::PeifferModulo
                                               : BranchingKind::OverlapModulo;
    }
    if (b.f == b.g) {
      return BranchingKind::Aspherical;
    }
    RewriteStep const& rf = b.f.steps()[first_primary(b.f)];
    RewriteStep const& rg = b.g.steps()[first_primary(b.g)];
    if (rf.rule == rg.rule && (mediated(b.f) || mediated(b.g))
        && e.e_equivalent(b.f.target(), b.g.target()).verdict == Tri::yes) {
      return BranchingKind::Aspherical;
    }
    auto supp_g = primary_support(p, b.g);
    return intersect(supp_f, supp_g).empty() ? BranchingKind::Peiffer : BranchingKind::Overlap;
  }

  namespace {
    struct Candidate {
      CriticalBranching c;
      // ranking: smaller is preferred
      bool        mediated;
      Word        source;
      bool        f_after_g;
      std::size_t f_pos;
      std::size_t g_pos;
      Word        member;
    };

    using Key = std::tuple<Word, std::size_t, std::size_t, bool, std::vector<Letter>>;

    bool better(Candidate const& a, Candidate const& b, OrderSpec const& deglex) {
      if (a.mediated != b.mediated) {
        return !a.mediated;
      }
      Cmp c = deglex.compare(a.source, b.source);
      if (c != Cmp::EQ) {
        return c == Cmp::GT;
      }
      if (a.f_after_g != b.f_after_g) {
        return !a.f_after_g;
      }
      if (a.f_pos != b.f_pos) {
        return a.f_pos < b.f_pos;
      }
      if (a.g_pos != b.g_pos) {
        return a.g_pos < b.g_pos;
      }
      return deglex.compare(a.member, b.member) == Cmp::GT;
    }

    /// Every word on which `x` at px and `y` at py overlap in at least one
    /// position, with min(px, py) = 0; calls visit(word, px, py).
    template <typename F>
    void for_each_overlap(Word const& x, Word const& y, F&& visit) {
      if (x.empty() || y.empty()) {
        return;
      }
      auto nx = static_cast<std::ptrdiff_t>(x.size());
      auto ny = static_cast<std::ptrdiff_t>(y.size());
      for (std::ptrdiff_t d = -(ny - 1); d <= nx - 1; ++d) {
        std::size_t px  = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, -d));
        std::size_t py  = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, d));
        std::size_t len = std::max(px + x.size(), py + y.size());
        std::vector<Letter> w(len);
        std::vector<bool>   set(len, false);
        bool                ok = true;
        for (std::size_t i = 0; i < x.size(); ++i) {
          w[px + i]   = x[i];
          set[px + i] = true;
        }
        for (std::size_t i = 0; i < y.size() && ok; ++i) {
          if (set[py + i] && w[py + i] != y[i]) {
            ok = false;
          }
          w[py + i] = y[i];
        }
        if (ok) {
          visit(Word(std::move(w)), px, py);
        }
      }
    }

    /// Words over n letters of length exactly k, lexicographic.
    std::vector<Word> words_of_length(std::size_t n, std::size_t k) {
      std::vector<Word> out{Word{}};
      for (std::size_t d = 0; d < k; ++d) {
        std::vector<Word> next;
        for (auto const& w : out) {
          for (std::size_t x = 0; x < n; ++x) {
            Word v = w;
            v.push_back(static_cast<Letter>(x));
            next.push_back(std::move(v));
          }
        }
        out = std::move(next);
      }
      return out;
    }
  }  // namespace

  CriticalSet critical_branchings(Polygraph const&           p,
                                  EEngine const&             e,
                                  PairKind                   kind,
                                  Bounds const&              bounds,
                                  std::optional<std::size_t> involving) {
    CriticalSet             out;
    OrderSpec               deglex = p.declared_order().with_kind(OrderKind::deglex);
    std::map<Key, Candidate> best;
    auto offer = [&](Key key, Candidate cand) {
      auto it = best.find(key);
      if (it == best.end()) {
        best.emplace(std::move(key), std::move(cand));
      } else if (better(cand, it->second, deglex)) {
        it->second = std::move(cand);
      }
    };
    auto const& rules     = p.r_rules();
    bool        use_class = has_leading_e(p.mode()) && !p.e_rules().empty();
    out.incomplete        = !p.e_rules().empty() && !p.e_degree_preserving();

    if (kind == PairKind::s_vs_r) {
      for (std::size_t fi = 0; fi < rules.size(); ++fi) {
        for (std::size_t gi = 0; gi < rules.size(); ++gi) {
          if (involving && fi != *involving && gi != *involving) {
            continue;
          }
          Word const& lf = rules[fi].lhs;
          Word const& lg = rules[gi].lhs;
          RuleRef     rf{RuleKind::primary, fi};
          RuleRef     rg{RuleKind::primary, gi};
          // plain overlaps
          for_each_overlap(lf, lg, [&](Word const& w, std::size_t pf, std::size_t pg) {
            if (fi == gi && pf == pg) {
              return;
            }
            Path f = Path(w).push(p, make_step(p, w, rf, pf));
            Path g = Path(w).push(p, make_step(p, w, rg, pg));
            auto shared = letters_at(w, intersect(interval(pf, lf.size()), interval(pg, lg.size())));
            CriticalBranching c{Branching{f, Path(w), g}, BranchingKind::Overlap, e.canonical(w),
                                rf, rg, false, shared, false};
            Key key{c.canonical, std::min(fi, gi), std::max(fi, gi), false, shared};
            offer(std::move(key), Candidate{std::move(c), false, w, fi > gi, pf, pg, w});
          });
          if (!use_class || lf.empty() || lg.empty()) {
            continue;
          }
          // overlaps through the E-class of the source
          std::size_t extra = lf.size() + bounds.max_degree_delta
                              - (p.e_degree_preserving() ? 1 : 0);
          std::size_t examined = 0;
          for (std::size_t total = 0; total <= extra; ++total) {
            for (std::size_t la = 0; la <= total; ++la) {
              auto as = words_of_length(p.num_generators(), la);
              auto bs = words_of_length(p.num_generators(), total - la);
              for (auto const& a : as) {
                for (auto const& b : bs) {
                  if (++examined > bounds.max_candidates) {
                    out.incomplete = true;
                    goto next_pair;
                  }
                  Word w      = Word::concat(a, lg, b);
                  auto cls    = e.e_class(w);
                  auto supp_g = interval(a.size(), lg.size());
                  if (!cls->complete()) {
                    out.incomplete = true;
                  }
                  std::size_t wi = cls->index_of(w);
                  for (std::size_t mi = 0; mi < cls->members.size(); ++mi) {
                    Word const& m = cls->members[mi];
                    if (m == w) {
                      continue;
                    }
                    auto qs = m.occurrences(lf);
                    if (qs.empty()) {
                      continue;
                    }
                    Path    e1 = cls->path(wi, mi);
                    Origins o  = transport(p, e1);
                    for (auto q : qs) {
                      auto supp_f = union_over(o, q, lf.size());
                      auto common = intersect(supp_f, supp_g);
                      if (common.empty() || unite(supp_f, supp_g).size() != w.size()) {
                        continue;
                      }
                      Path f = e1;
                      f.push(p, make_step(p, m, rf, q));
                      Path g = Path(w).push(p, make_step(p, w, rg, a.size()));
                      if (fi == gi && e.e_equivalent(f.target(), g.target()).verdict == Tri::yes) {
                        continue;
                      }
                      auto shared = letters_at(w, common);
                      CriticalBranching c{Branching{f, Path(w), g}, BranchingKind::Overlap,
                                          cls->representative, rf, rg, false, shared, true};
                      Key key{c.canonical, std::min(fi, gi), std::max(fi, gi), false, shared};
                      offer(std::move(key),
                            Candidate{std::move(c), true, w, fi > gi, q, a.size(), m});
                    }
                  }
                }
              }
            }
          }
        next_pair:;
        }
      }
    } else {
      auto const& erules = p.e_rules();
      for (std::size_t ri = 0; ri < rules.size(); ++ri) {
        if (involving && ri != *involving) {
          continue;
        }
        RuleRef rr{RuleKind::primary, ri};
        for (std::size_t ei = 0; ei < erules.size(); ++ei) {
          RuleRef er{RuleKind::modulo, ei};
          for (Direction dir : {Direction::forward, Direction::backward}) {
            Word const& pattern = dir == Direction::forward ? erules[ei].lhs : erules[ei].rhs;
            for_each_overlap(rules[ri].lhs, pattern,
                             [&](Word const& w, std::size_t pr, std::size_t pe) {
                               Path f = Path(w).push(p, make_step(p, w, rr, pr));
                               Path ep = Path(w).push(p, make_step(p, w, er, pe, dir));
                               auto shared = letters_at(
                                   w, intersect(interval(pr, rules[ri].lhs.size()),
                                                interval(pe, pattern.size())));
                               Word target = ep.target();
                               CriticalBranching c{Branching{f, ep, Path(target)},
                                                   BranchingKind::OverlapModulo,
                                                   e.canonical(w),
                                                   rr,
                                                   er,
                                                   dir == Direction::backward,
                                                   shared,
                                                   false};
                               Key key{c.canonical, ri, ei, dir == Direction::backward, shared};
                               offer(std::move(key),
                                     Candidate{std::move(c), false, w, false, pr, pe, w});
                             });
          }
        }
      }
    }
    for (auto& [key, cand] : best) {
      out.items.push_back(std::move(cand.c));
    }
    return out;
  }

  namespace {
    /// f′, g′ for a plain Peiffer branching: each leg applies the other's
    /// rule at the shifted position.
    std::optional<ConfluenceWitness> peiffer_witness(Polygraph const& p, Branching const& b) {
      if (b.f.length() != 1 || b.g.length() != 1 || !b.e.empty()) {
        return std::nullopt;
      }
      RewriteStep const& sf = b.f.steps().front();
      RewriteStep const& sg = b.g.steps().front();
      std::size_t        mf = from_side(p, sf).size();
      std::size_t        mg = from_side(p, sg).size();
      std::size_t        pf = sf.position();
      std::size_t        pg = sg.position();
      if (!(pf + mf <= pg || pg + mg <= pf)) {
        return std::nullopt;
      }
      std::size_t nf = to_side(p, sf).size();
      std::size_t ng = to_side(p, sg).size();
      std::size_t g_after_f = pg >= pf + mf ? pg - mf + nf : pg;
      std::size_t f_after_g = pf >= pg + mg ? pf - mg + ng : pf;
      ConfluenceWitness w;
      w.verdict = Verdict::confluent;
      w.f_prime = Path(b.f.target()).push(p, make_step(p, b.f.target(), sg.rule, g_after_f));
      w.g_prime = Path(b.g.target()).push(p, make_step(p, b.g.target(), sf.rule, f_after_g));
      w.e_prime = Path(w.f_prime.target());
      return w;
    }
  }  // namespace

  ConfluenceWitness check_confluence_modulo(Polygraph const&  p,
                                            EEngine const&    e,
                                            Branching const&  b,
                                            ConfluenceVariant variant,
                                            Bounds const&     bounds) {
    if (variant == ConfluenceVariant::jk_confluence && !b.e.empty()) {
      throw std::invalid_argument("JK-confluence only applies to branchings with empty e");
    }
    if (variant == ConfluenceVariant::jk_coherence && !b.g.empty()) {
      throw std::invalid_argument("JK-coherence only applies to branchings with empty g");
    }
    Word const& left  = b.f.target();
    Word const& right = b.g.target();

    try {
      BranchingKind k = classify_local(p, e, b);
      if (k == BranchingKind::Aspherical) {
        auto eq = e.e_equivalent(left, right);
        if (eq.verdict == Tri::yes) {
          return ConfluenceWitness{Verdict::confluent, Path(left), Path(right), eq.path, {}};
        }
      }
      if (k == BranchingKind::Peiffer) {
        if (auto w = peiffer_witness(p, b)) {
          return *w;
        }
      }
    } catch (NotLocal const&) {
    }
    // (f, e) closes trivially by e⁻ · f when leading E steps are allowed
    if (b.g.empty() && !b.e.empty() && has_leading_e(p.mode()) && b.f.size() >= 1) {
      Path g_prime = compose(p, b.e.inverse(), b.f);
      return ConfluenceWitness{Verdict::confluent, Path(left), std::move(g_prime), Path(left), {}};
    }

    bool need_nontrivial_g = variant == ConfluenceVariant::jk_coherence;
    auto na                = normalize(p, e, left, bounds.max_depth);
    auto nb                = normalize(p, e, right, bounds.max_depth);
    if (na.status == NormalizeStatus::complete && nb.status == NormalizeStatus::complete
        && (!need_nontrivial_g || !nb.path.empty())) {
      auto eq = e.e_equivalent(na.normal_form, nb.normal_form);
      if (eq.verdict == Tri::yes) {
        return ConfluenceWitness{Verdict::confluent, na.path, nb.path, eq.path, {}};
      }
    }
    auto ra      = reachable_normal_forms(p, e, left, bounds);
    auto rb      = reachable_normal_forms(p, e, right, bounds);
    bool unknown = !ra.complete || !rb.complete;
    for (auto const& x : ra.forms) {
      for (auto const& y : rb.forms) {
        if (need_nontrivial_g && y.path.empty()) {
          continue;
        }
        auto eq = e.e_equivalent(x.word, y.word);
        if (eq.verdict == Tri::yes) {
          return ConfluenceWitness{Verdict::confluent, x.path, y.path, eq.path, {}};
        }
        if (eq.verdict == Tri::unknown) {
          unknown = true;
        }
      }
    }
    ConfluenceWitness w;
    w.verdict      = unknown ? Verdict::unknown : Verdict::not_confluent;
    w.normal_forms = std::make_pair(na.normal_form, nb.normal_form);
    return w;
  }

}  // namespace polymod
