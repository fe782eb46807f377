#include "polymod/eclass.hpp"

#include <algorithm>
#include <deque>
#include <mutex>

namespace polymod {

  char const* to_string(Tri t) {
    switch (t) {
      case Tri::yes:
        return "yes";
      case Tri::no:
        return "no";
      case Tri::unknown:
        return "unknown";
    }
    return "?";
  }

  void sort_deglex(std::vector<Word>& words, OrderSpec const& order) {
    OrderSpec d = order.with_kind(OrderKind::deglex);
    std::sort(words.begin(), words.end(),
              [&d](Word const& a, Word const& b) { return d.compare(a, b) == Cmp::LT; });
  }

  Path EClass::path(std::size_t from, std::size_t to) const {
    // climb both ends to their lowest common ancestor in the tree
    std::vector<RewriteStep> up;
    std::vector<RewriteStep> down;
    std::size_t              a = from;
    std::size_t              b = to;
    while (depth[a] > depth[b]) {
      up.push_back(parent_step[a].inverse());
      a = parent[a];
    }
    while (depth[b] > depth[a]) {
      down.push_back(parent_step[b]);
      b = parent[b];
    }
    while (a != b) {
      up.push_back(parent_step[a].inverse());
      a = parent[a];
      down.push_back(parent_step[b]);
      b = parent[b];
    }
    std::reverse(down.begin(), down.end());
    up.insert(up.end(), down.begin(), down.end());
    return Path::unchecked(members[from], std::move(up), members[to]);
  }

  Path EClass::witness(Word const& member) const {
    return path(index_of(representative), index_of(member));
  }

  EEngine::EEngine(Polygraph const& p, Bounds bounds)
      : p_(p),
        bounds_(bounds),
        deglex_(p.declared_order().with_kind(OrderKind::deglex)),
        degree_preserving_(p.e_degree_preserving()) {}

  std::vector<RewriteStep> EEngine::neighbours(Word const& w) const {
    std::vector<RewriteStep> out;
    auto const&              rules = p_.e_rules();
    for (std::size_t i = 0; i < rules.size(); ++i) {
      RuleRef ref{RuleKind::modulo, i};
      for (Direction dir : {Direction::forward, Direction::backward}) {
        Word const& side = dir == Direction::forward ? rules[i].lhs : rules[i].rhs;
        if (side.size() > w.size()) {
          continue;
        }
        for (std::size_t pos = 0; pos + side.size() <= w.size(); ++pos) {
          if (w.has_factor_at(side, pos)) {
            out.push_back(make_step(p_, w, ref, pos, dir));
          }
        }
      }
    }
    return out;
  }

  std::shared_ptr<EClass> EEngine::build_tree(std::vector<Word> members, Word const& root) const {
    auto c = std::make_shared<EClass>();
    sort_deglex(members, deglex_);
    c->members        = std::move(members);
    c->representative = c->members.front();
    for (std::size_t i = 0; i < c->members.size(); ++i) {
      c->index.emplace(c->members[i], i);
    }
    std::size_t n = c->members.size();
    c->root       = c->index.at(root);
    c->parent.assign(n, n);
    c->depth.assign(n, 0);
    c->parent_step.resize(n);
    c->parent[c->root] = c->root;
    std::deque<std::size_t> queue{c->root};
    while (!queue.empty()) {
      std::size_t cur = queue.front();
      queue.pop_front();
      for (auto& s : neighbours(c->members[cur])) {
        Word t  = s.target(p_);
        auto it = c->index.find(t);
        if (it == c->index.end() || c->parent[it->second] != n) {
          continue;
        }
        c->parent[it->second]      = cur;
        c->depth[it->second]       = c->depth[cur] + 1;
        c->parent_step[it->second] = std::move(s);
        queue.push_back(it->second);
      }
    }
    return c;
  }

  std::shared_ptr<EClass> EEngine::compute_class(Word const& w) const {
    std::size_t                    max_degree = w.size() + bounds_.max_degree_delta;
    std::unordered_map<Word, bool> seen{{w, true}};
    std::vector<Word>              members{w};
    std::deque<std::size_t>        queue{0};
    bool                           overflow  = false;
    bool                           truncated = false;
    while (!queue.empty() && !overflow) {
      Word cur = members[queue.front()];
      queue.pop_front();
      for (auto const& s : neighbours(cur)) {
        Word t = s.target(p_);
        if (t.size() > max_degree) {
          truncated = true;
          continue;
        }
        if (seen.emplace(t, true).second) {
          if (members.size() >= bounds_.max_class_size) {
            overflow = true;
            break;
          }
          members.push_back(t);
          queue.push_back(members.size() - 1);
        }
      }
    }
    std::shared_ptr<EClass> c;
    if (overflow || !degree_preserving_) {
      // partial closure: keep the tree rooted at w so paths stay valid
      c = build_tree(members, w);
    } else {
      OrderSpec const& d = deglex_;
      Word             least =
          *std::min_element(members.begin(), members.end(), [&d](Word const& a, Word const& b) {
            return d.compare(a, b) == Cmp::LT;
          });
      c = build_tree(std::move(members), least);
    }
    c->overflow         = overflow;
    c->degree_truncated = truncated && !degree_preserving_;
    return c;
  }

  std::shared_ptr<EClass const> EEngine::e_class(Word const& w) const {
    {
      std::shared_lock lock(mutex_);
      auto             it = memo_.find(w);
      if (it != memo_.end()) {
        return it->second;
      }
    }
    std::shared_ptr<EClass const> c = compute_class(w);
    std::unique_lock              lock(mutex_);
    if (c->complete() && degree_preserving_) {
      for (auto const& m : c->members) {
        memo_.emplace(m, c);
      }
      return memo_.at(w);
    }
    memo_.emplace(w, c);
    return memo_.at(w);
  }

  void EEngine::clear_cache() const {
    std::unique_lock lock(mutex_);
    memo_.clear();
  }

  EquivalenceResult EEngine::e_equivalent(Word const& u, Word const& v) const {
    if (u == v) {
      return {Tri::yes, Path(u)};
    }
    if (degree_preserving_ && u.size() != v.size()) {
      return {Tri::no, {}};
    }
    auto cu = e_class(u);
    if (cu->contains(v)) {
      return {Tri::yes, cu->path(cu->index_of(u), cu->index_of(v))};
    }
    auto cv = e_class(v);
    if (cu->complete() && cv->complete()) {
      return {Tri::no, {}};
    }
    for (std::size_t i = 0; i < cu->members.size(); ++i) {
      auto it = cv->index.find(cu->members[i]);
      if (it != cv->index.end()) {
        Path a = cu->path(cu->index_of(u), i);
        Path b = cv->path(cv->index_of(v), it->second).inverse();
        return {Tri::yes, compose(p_, a, b)};
      }
    }
    return {Tri::unknown, {}};
  }

  ENormalForm EEngine::e_normal_form(Word const& w) const {
    Path        path(w);
    Word        cur   = w;
    auto const& rules = p_.e_rules();
    std::size_t limit = std::max<std::size_t>(bounds_.max_class_size, 64);
    for (std::size_t steps = 0;; ++steps) {
      bool applied = false;
      for (std::size_t pos = 0; pos <= cur.size() && !applied; ++pos) {
        for (std::size_t i = 0; i < rules.size(); ++i) {
          if (pos + rules[i].lhs.size() <= cur.size() && cur.has_factor_at(rules[i].lhs, pos)) {
            if (steps >= limit) {
              throw NotConvergent("E-normalization of " + p_.format(w) + " exceeded "
                                  + std::to_string(limit) + " steps");
            }
            path.push(p_, make_step(p_, cur, RuleRef{RuleKind::modulo, i}, pos));
            cur     = path.target();
            applied = true;
            break;
          }
        }
      }
      if (!applied) {
        return {cur, path};
      }
    }
  }

  bool EEngine::is_e_irreducible(Word const& w) const {
    for (auto const& r : p_.e_rules()) {
      if (!w.occurrences(r.lhs).empty()) {
        return false;
      }
    }
    return true;
  }

  std::vector<ECriticalBranching> EEngine::e_critical_branchings() const {
    std::vector<ECriticalBranching> out;
    auto const&                     rules = p_.e_rules();
    auto add = [&](Word const& source, std::size_t i, std::size_t pi, std::size_t j,
                   std::size_t pj) {
      RewriteStep a  = make_step(p_, source, RuleRef{RuleKind::modulo, i}, pi);
      RewriteStep b  = make_step(p_, source, RuleRef{RuleKind::modulo, j}, pj);
      Path        pa = Path(source).push(p_, a);
      Path        pb = Path(source).push(p_, b);
      auto        na = e_normal_form(pa.target());
      auto        nb = e_normal_form(pb.target());
      if (na.normal_form != nb.normal_form) {
        throw NotConvergent("critical branching of E at " + p_.format(source)
                            + " does not join");
      }
      SquareCell cell{compose(p_, pa, na.path), Path(source), compose(p_, pb, nb.path),
                      Path(na.normal_form), rules[i].id + "/" + rules[j].id, SquareOrigin::confE};
      out.push_back(ECriticalBranching{source, a, b, std::move(cell)});
    };
    for (std::size_t i = 0; i < rules.size(); ++i) {
      Word const& li = rules[i].lhs;
      for (std::size_t j = 0; j < rules.size(); ++j) {
        Word const& lj = rules[j].lhs;
        if (li.empty() || lj.empty()) {
          continue;
        }
        // suffix of li equal to a proper prefix of lj
        for (std::size_t k = 1; k < std::min(li.size(), lj.size()) + 1; ++k) {
          if (k >= li.size() || k >= lj.size()) {
            break;
          }
          if (std::equal(li.end() - static_cast<std::ptrdiff_t>(k), li.end(), lj.begin())) {
            Word source = li + lj.factor(k, lj.size() - k);
            add(source, i, 0, j, li.size() - k);
          }
        }
        // lj strictly inside li
        if (lj.size() <= li.size()) {
          for (auto pos : li.occurrences(lj)) {
            if (i == j && pos == 0) {
              continue;
            }
            add(li, i, 0, j, pos);
          }
        }
      }
    }
    return out;
  }

  bool EEngine::e_convergent() const {
    {
      std::shared_lock lock(mutex_);
      if (convergent_) {
        return *convergent_;
      }
    }
    bool ok = true;
    for (auto const& r : p_.e_rules()) {
      if (deglex_.compare(r.lhs, r.rhs) != Cmp::GT) {
        ok = false;
      }
    }
    if (ok) {
      try {
        e_critical_branchings();
      } catch (NotConvergent const&) {
        ok = false;
      }
    }
    std::unique_lock lock(mutex_);
    convergent_ = ok;
    return ok;
  }

}  // namespace polymod
