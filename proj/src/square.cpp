#include "polymod/square.hpp"

namespace polymod {

  char const* to_string(SquareOrigin o) {
    switch (o) {
      case SquareOrigin::A_fg:
        return "A";
      case SquareOrigin::B_fe:
        return "B";
      case SquareOrigin::confE:
        return "confE";
      case SquareOrigin::Nsigma_rho:
        return "N";
      case SquareOrigin::other:
        return "other";
    }
    return "?";
  }

  bool corners_chain(SquareCell const& a) {
    return a.top.source() == a.left.source() && a.top.target() == a.right.source()
           && a.left.target() == a.bottom.source() && a.bottom.target() == a.right.target();
  }

  namespace {
    bool forward_steps_only_primary_forward(Path const& path) {
      for (auto const& s : path.steps()) {
        if (s.is_primary() && s.direction != Direction::forward) {
          return false;
        }
      }
      return true;
    }
  }  // namespace

  bool validate_square(Polygraph const& p, SquareCell const& a) {
    if (!corners_chain(a)) {
      return false;
    }
    for (Path const* path : {&a.top, &a.left, &a.bottom, &a.right}) {
      if (!validate_path(p, *path).ok) {
        return false;
      }
    }
    if (!a.left.only_modulo() || !a.right.only_modulo()) {
      return false;
    }
    if (a.origin == SquareOrigin::confE) {
      return a.top.only_modulo() && a.bottom.only_modulo();
    }
    return forward_steps_only_primary_forward(a.top)
           && forward_steps_only_primary_forward(a.bottom);
  }

  SquareCell compose_side(Polygraph const& p, SquareCell const& a, SquareCell const& b) {
    if (!(a.right == b.left)) {
      throw std::invalid_argument("squares are not horizontally composable");
    }
    return SquareCell{compose(p, a.top, b.top),
                      a.left,
                      compose(p, a.bottom, b.bottom),
                      b.right,
                      a.label + "|" + b.label,
                      SquareOrigin::other};
  }

  SquareCell compose_stack(Polygraph const& p, SquareCell const& a, SquareCell const& b) {
    if (!(a.bottom == b.top)) {
      throw std::invalid_argument("squares are not vertically composable");
    }
    return SquareCell{a.top,
                      compose(p, a.left, b.left),
                      b.bottom,
                      compose(p, a.right, b.right),
                      a.label + "/" + b.label,
                      SquareOrigin::other};
  }

  SquareCell biaction(Polygraph const&  p,
                      Mode              mode,
                      Path const&       e1,
                      Path const&       e2,
                      SquareCell const& a) {
    if (!corners_chain(a)) {
      throw BiactionError("square boundary does not chain");
    }
    if (!e1.only_modulo() || !e2.only_modulo()) {
      throw BiactionError("acting paths must only use modulo rules");
    }
    if (e1.target() != a.top.source()) {
      throw BiactionError("condition i): e1 does not end at the top-left corner");
    }
    if (e2.source() != a.left.target()) {
      throw BiactionError("condition ii): e2 does not start at the bottom-left corner");
    }
    if (!e1.empty() && (!has_leading_e(mode) || a.top.empty())) {
      throw BiactionError("condition iii): e1 composed with the top leg is not an S-path");
    }
    if (!e2.empty() && (!has_leading_e(mode) || a.bottom.empty())) {
      throw BiactionError("condition iv): e2^- composed with the bottom leg is not an S-path");
    }
    SquareCell out = a;
    out.top        = compose(p, e1, a.top);
    out.left       = compose(p, compose(p, e1, a.left), e2);
    out.bottom     = compose(p, e2.inverse(), a.bottom);
    return out;
  }

  std::string PeifferSchema::describe() const {
    if (empty()) {
      return "empty";
    }
    return "Peiffer squares (e·v, u·f) and (v·e, f·u) for " + std::to_string(modulo_rules)
           + " modulo rules against " + std::to_string(primary_rules)
           + " primary rules, closed under contexts";
  }

}  // namespace polymod
