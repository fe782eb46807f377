#include <catch_amalgamated.hpp>

#include <random>

#include "polymod/path.hpp"
#include "support.hpp"

using namespace polymod;
using polymod::testing::w;

namespace {
  RuleRef ref(Polygraph const& p, char const* id) {
    return *p.find_rule(id);
  }
}  // namespace

TEST_CASE("apply_step examples") {
  auto p = polymod::testing::commutative();
  auto g = make_step(p, w(p, "x1 x2 x3"), ref(p, "gamma"), 0);
  CHECK(g.left.empty());
  CHECK(g.right == w(p, "x3"));
  CHECK(apply_step(p, w(p, "x1 x2 x3"), g) == w(p, "x1 x3"));

  auto b = make_step(p, w(p, "x1 x3 x2"), ref(p, "beta"), 0);
  CHECK(apply_step(p, w(p, "x1 x3 x2"), b) == w(p, "x2 x4 x2"));

  CHECK_THROWS_AS(make_step(p, w(p, "x1 x3"), ref(p, "gamma"), 0), StepMismatch);
  CHECK_THROWS_AS(apply_step(p, w(p, "x1 x3"), g), StepMismatch);
  CHECK_THROWS_AS(make_step(p, w(p, "x2 x4"), ref(p, "beta"), 0, Direction::backward), StepMismatch);
}

TEST_CASE("a modulo step followed by its inverse cancels") {
  auto            p = polymod::testing::commutative();
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    std::vector<Letter> xs(2 + rng() % 6);
    for (auto& x : xs) {
      x = static_cast<Letter>(rng() % 4);
    }
    Word u(xs);
    for (std::size_t r = 0; r < p.e_rules().size(); ++r) {
      RuleRef er{RuleKind::modulo, r};
      for (auto pos : u.occurrences(p.rule(er).lhs)) {
        auto s = make_step(p, u, er, pos);
        Word v = apply_step(p, u, s);
        CHECK(apply_step(p, v, s.inverse()) == u);
      }
    }
  }
}

TEST_CASE("validate_path accepts chained paths and reports the first violation") {
  auto p = polymod::testing::commutative();

  Path id(w(p, "x1 x2"));
  CHECK(validate_path(p, id).ok);
  CHECK(id.source() == id.target());
  CHECK(format_path(p, id) == "id");

  Path path(w(p, "x1 x2 x3"));
  path.push(p, make_step(p, w(p, "x1 x2 x3"), ref(p, "gamma"), 0));
  path.push(p, make_step(p, w(p, "x1 x3"), ref(p, "beta"), 0));
  CHECK(validate_path(p, path).ok);
  CHECK(path.target() == w(p, "x2 x4"));
  CHECK(path.size() == 2);
  CHECK(format_path(p, path) == "gamma@0 beta@0");

  auto bad = Path::unchecked(w(p, "x1 x2 x3"),
                             {make_step(p, w(p, "x1 x2 x3"), ref(p, "gamma"), 0),
                              make_step(p, w(p, "x1 x2"), ref(p, "gamma"), 0)},
                             w(p, "x1"));
  auto v = validate_path(p, bad);
  CHECK_FALSE(v.ok);
  REQUIRE(v.first_violation);
  CHECK(*v.first_violation == 1);

  CHECK_THROWS_AS(Path(w(p, "x1")).push(p, make_step(p, w(p, "x1 x2"), ref(p, "gamma"), 0)),
                  StepMismatch);
}

TEST_CASE("inverse of an E-path reverses it") {
  auto p = polymod::testing::commutative();
  Path e(w(p, "x1 x2 x3"));
  e.push(p, make_step(p, e.target(), ref(p, "alpha_x2_x3"), 1));
  e.push(p, make_step(p, e.target(), ref(p, "alpha_x1_x3"), 0));
  auto inv = e.inverse();
  CHECK(inv.source() == e.target());
  CHECK(inv.target() == e.source());
  CHECK(validate_path(p, inv).ok);
  CHECK(inv.inverse() == e);
  CHECK(compose(p, e, inv).target() == e.source());
  CHECK(format_step(p, inv.steps().front()) == "alpha_x1_x3^-@0");

  Path r(w(p, "x1 x2"));
  r.push(p, make_step(p, r.target(), ref(p, "gamma"), 0));
  CHECK_THROWS(r.inverse());
}

TEST_CASE("composition is associative with identities as units") {
  auto p = polymod::testing::commutative();
  Path a(w(p, "x2 x1 x3"));
  a.push(p, make_step(p, a.target(), ref(p, "alpha_x1_x2"), 0, Direction::backward));
  Path b(a.target());
  b.push(p, make_step(p, b.target(), ref(p, "alpha_x2_x3"), 1));
  Path c(b.target());
  c.push(p, make_step(p, c.target(), ref(p, "beta"), 0));
  CHECK(compose(p, compose(p, a, b), c) == compose(p, a, compose(p, b, c)));
  CHECK(compose(p, Path(a.source()), a) == a);
  CHECK(compose(p, a, Path(a.target())) == a);
  CHECK_THROWS_AS(compose(p, a, c), StepMismatch);
}

TEST_CASE("S-steps respect the mode shape") {
  auto        p = polymod::testing::commutative();
  RewriteStep e = make_step(p, w(p, "x1 x2 x3"), ref(p, "alpha_x2_x3"), 1);
  RewriteStep r = make_step(p, w(p, "x1 x3 x2"), ref(p, "beta"), 0);
  SStep       s{{e}, r, {}, w(p, "x1 x2 x3"), w(p, "x2 x4 x2"), false};
  CHECK(valid_sstep(p, s, Mode::ER));
  CHECK(valid_sstep(p, s, Mode::ERE));
  CHECK_FALSE(valid_sstep(p, s, Mode::R));
  CHECK_FALSE(valid_sstep(p, s, Mode::RE));
  CHECK(s.to_path(p).target() == w(p, "x2 x4 x2"));
  CHECK(s.r_target(p) == w(p, "x2 x4 x2"));
}
