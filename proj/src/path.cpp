#include "polymod/path.hpp"

#include <algorithm>

namespace polymod {

  namespace {
    Word const& from_side(Polygraph const& p, RewriteStep const& s) {
      auto const& r = p.rule(s.rule);
      return s.direction == Direction::forward ? r.lhs : r.rhs;
    }
    Word const& to_side(Polygraph const& p, RewriteStep const& s) {
      auto const& r = p.rule(s.rule);
      return s.direction == Direction::forward ? r.rhs : r.lhs;
    }
  }  // namespace

  Word RewriteStep::source(Polygraph const& p) const {
    return Word::concat(left, from_side(p, *this), right);
  }

  Word RewriteStep::target(Polygraph const& p) const {
    return Word::concat(left, to_side(p, *this), right);
  }

  RewriteStep RewriteStep::inverse() const {
    RewriteStep s = *this;
    s.direction   = direction == Direction::forward ? Direction::backward : Direction::forward;
    return s;
  }

  RewriteStep make_step(Polygraph const& p,
                        Word const&      w,
                        RuleRef          rule,
                        std::size_t      pos,
                        Direction        dir) {
    auto const& r = p.rule(rule);
    if (dir == Direction::backward && rule.kind == RuleKind::primary) {
      throw StepMismatch("primary rule " + r.id + " used backward");
    }
    Word const& side = dir == Direction::forward ? r.lhs : r.rhs;
    if (!w.has_factor_at(side, pos)) {
      throw StepMismatch("rule " + r.id + " does not apply at position "
                         + std::to_string(pos) + " of " + p.format(w));
    }
    return RewriteStep{w.factor(0, pos),
                       rule,
                       w.factor(pos + side.size(), w.size() - pos - side.size()),
                       dir};
  }

  Word apply_step(Polygraph const& p, Word const& w, RewriteStep const& s) {
    if (s.direction == Direction::backward && s.is_primary()) {
      throw StepMismatch("primary rule " + p.rule_id(s.rule) + " used backward");
    }
    Word const& side = from_side(p, s);
    if (w.size() != s.left.size() + side.size() + s.right.size()
        || !std::equal(s.left.begin(), s.left.end(), w.begin())
        || !w.has_factor_at(side, s.left.size())
        || !std::equal(s.right.begin(), s.right.end(), w.begin() + s.left.size() + side.size())) {
      throw StepMismatch("step " + p.rule_id(s.rule) + " does not match "
                         + p.format(w) + " at position " + std::to_string(s.left.size()));
    }
    return s.target(p);
  }

  std::size_t Path::size() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(steps_.begin(), steps_.end(), [](auto const& s) { return s.is_primary(); }));
  }

  bool Path::only_modulo() const noexcept {
    return std::none_of(steps_.begin(), steps_.end(), [](auto const& s) { return s.is_primary(); });
  }

  Path& Path::push(Polygraph const& p, RewriteStep s) {
    target_ = apply_step(p, target_, s);
    steps_.push_back(std::move(s));
    return *this;
  }

  Path& Path::append(Polygraph const& p, Path const& q) {
    if (q.source() != target_) {
      throw StepMismatch("paths are not composable: " + p.format(target_) + " vs "
                         + p.format(q.source()));
    }
    steps_.insert(steps_.end(), q.steps_.begin(), q.steps_.end());
    target_ = q.target_;
    return *this;
  }

  Path Path::inverse() const {
    Path out(target_);
    for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
      if (it->is_primary()) {
        throw std::logic_error("cannot invert a path containing a primary step");
      }
      out.steps_.push_back(it->inverse());
    }
    out.target_ = source_;
    return out;
  }

  Path Path::unchecked(Word source, std::vector<RewriteStep> steps, Word target) {
    Path p;
    p.source_ = std::move(source);
    p.steps_  = std::move(steps);
    p.target_ = std::move(target);
    return p;
  }

  Path compose(Polygraph const& p, Path const& a, Path const& b) {
    Path out = a;
    out.append(p, b);
    return out;
  }

  PathValidation validate_path(Polygraph const& p, Path const& path) {
    Word current = path.source();
    for (std::size_t i = 0; i < path.steps().size(); ++i) {
      auto const& s = path.steps()[i];
      try {
        current = apply_step(p, current, s);
      } catch (std::exception const& e) {
        return PathValidation{false, i, e.what()};
      }
    }
    if (current != path.target()) {
      return PathValidation{false, path.steps().size(), "recorded target is not reached"};
    }
    return {};
  }

  Path SStep::to_path(Polygraph const& p) const {
    Path out(source);
    for (auto const& s : e1) {
      out.push(p, s);
    }
    out.push(p, r);
    for (auto const& s : e2) {
      out.push(p, s);
    }
    return out;
  }

  bool valid_sstep(Polygraph const& p, SStep const& s, Mode mode) {
    if (!has_leading_e(mode) && !s.e1.empty()) {
      return false;
    }
    if (!has_trailing_e(mode) && (!s.e2.empty() || s.e2_free)) {
      return false;
    }
    if (!s.r.is_primary() || s.r.direction != Direction::forward) {
      return false;
    }
    auto modulo = [](RewriteStep const& x) { return !x.is_primary(); };
    if (!std::all_of(s.e1.begin(), s.e1.end(), modulo)
        || !std::all_of(s.e2.begin(), s.e2.end(), modulo)) {
      return false;
    }
    try {
      return s.to_path(p).target() == s.target;
    } catch (StepMismatch const&) {
      return false;
    }
  }

  std::string format_step(Polygraph const& p, RewriteStep const& s) {
    std::string out = p.rule_id(s.rule);
    if (s.direction == Direction::backward) {
      out += "^-";
    }
    out += '@';
    out += std::to_string(s.left.size());
    return out;
  }

  std::string format_path(Polygraph const& p, Path const& path) {
    if (path.empty()) {
      return "id";
    }
    std::string out;
    for (auto const& s : path.steps()) {
      if (!out.empty()) {
        out += ' ';
      }
      out += format_step(p, s);
    }
    return out;
  }

}  // namespace polymod
