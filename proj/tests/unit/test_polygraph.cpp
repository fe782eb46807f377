#include <catch_amalgamated.hpp>

#include "polymod/polygraph.hpp"
#include "support.hpp"

using namespace polymod;
using polymod::testing::w;

TEST_CASE("the commutative presentation parses with six commutations") {
  auto p = polymod::testing::commutative();
  CHECK(p.num_generators() == 4);
  CHECK(p.r_rules().size() == 2);
  CHECK(p.e_rules().size() == 6);
  CHECK(p.mode() == Mode::ERE);
  CHECK(p.modulo_commutation());
  CHECK(p.e_is_commutation());
  CHECK(p.e_degree_preserving());

  auto beta = p.find_rule("beta");
  REQUIRE(beta);
  CHECK(p.rule(*beta).lhs == w(p, "x1 x3"));
  CHECK(p.rule(*beta).rhs == w(p, "x2 x4"));

  auto a23 = p.find_rule("alpha_x2_x3");
  REQUIRE(a23);
  CHECK(a23->kind == RuleKind::modulo);
  CHECK(p.rule(*a23).lhs == w(p, "x2 x3"));
  CHECK(p.rule(*a23).rhs == w(p, "x3 x2"));
}

TEST_CASE("commutation yields k(k-1)/2 rules for every k") {
  for (std::size_t k = 1; k <= 7; ++k) {
    auto p = polymod::testing::free_commutative(k);
    CHECK(p.e_rules().size() == k * (k - 1) / 2);
    for (auto const& r : p.e_rules()) {
      CHECK(r.lhs.size() == 2);
      CHECK(r.lhs[0] == r.rhs[1]);
      CHECK(r.lhs[1] == r.rhs[0]);
      CHECK(r.lhs[0] != r.lhs[1]);
    }
  }
}

TEST_CASE("serialize and parse round-trip") {
  for (auto const* name : {"commutative.pm", "commutative_completed.pm", "squier_toy.pm",
                           "not_e_normalizing.pm"}) {
    auto p    = polymod::testing::load(name);
    auto text = serialize(p);
    auto q    = parse_presentation(text);
    CHECK(q == p);
    CHECK(serialize(q) == text);
  }
}

TEST_CASE("the empty word is written 1") {
  auto p = parse_presentation("generators: a b\nrule drop: a b => 1\n");
  CHECK(p.r_rules()[0].rhs.empty());
  CHECK(p.format(Word{}) == "1");
  CHECK(p.parse_word("1").empty());
  CHECK(p.mode() == Mode::R);
  CHECK(parse_presentation(serialize(p)) == p);
}

TEST_CASE("parse errors carry line and column") {
  auto line_col = [](std::string const& text) {
    try {
      parse_presentation(text);
    } catch (ParseError const& e) {
      return std::pair{e.line(), e.column()};
    }
    return std::pair<std::size_t, std::size_t>{0, 0};
  };
  CHECK(line_col("generators: a b\nrule r: a c => b\n") == std::pair<std::size_t, std::size_t>{2, 11});
  CHECK(line_col("generators: a b\nrule r a => b\n").first == 2);
  CHECK(line_col("generators: a a\n") == std::pair<std::size_t, std::size_t>{1, 15});
  CHECK(line_col("generators: a\nfoo: a\n") == std::pair<std::size_t, std::size_t>{2, 1});
  CHECK(line_col("generators: a b\nrule r: 1 => a\n").first == 2);
  CHECK(line_col("generators: a b\nrule r: a => b\nrule r: b => a\n").first == 3);
  CHECK(line_col("generators: a b\norder: deglex a\n").first == 2);
  CHECK(line_col("generators: a b\nmode: XR\n") == std::pair<std::size_t, std::size_t>{2, 7});
}

TEST_CASE("comments and blank lines are ignored") {
  auto p = parse_presentation("# a toy\n\ngenerators: a b   # two letters\nrule r: a a => a\n");
  CHECK(p.r_rules().size() == 1);
}

TEST_CASE("constructor validates invariants") {
  std::vector<Generator> gens{{"a", 0}, {"b", 1}};
  OrderSpec              order(OrderKind::deglex, {0, 1});
  CHECK_THROWS_AS(Polygraph(gens, {Rule{"r", RuleKind::primary, Word{}, Word{0}}}, {}, Mode::R, order),
                  PresentationError);
  CHECK_THROWS_AS(Polygraph(gens, {Rule{"r", RuleKind::primary, Word{2}, Word{0}}}, {}, Mode::R, order),
                  PresentationError);
  CHECK_THROWS_AS(Polygraph(gens,
                            {Rule{"r", RuleKind::primary, Word{0}, Word{1}}},
                            {Rule{"r", RuleKind::modulo, Word{0, 1}, Word{1, 0}}},
                            Mode::ER, order),
                  PresentationError);
  CHECK_THROWS_AS(Polygraph(gens, {}, {}, Mode::R, OrderSpec(OrderKind::deglex, {0})),
                  PresentationError);
  CHECK_NOTHROW(Polygraph(gens, {Rule{"r", RuleKind::primary, Word{0, 0}, Word{0}}}, {}, Mode::R, order));
}

TEST_CASE("fresh ids avoid existing ones") {
  auto p = polymod::testing::commutative_completed();
  CHECK(p.fresh_id("d") == "d1");
  CHECK(p.fresh_id("e") == "e0");
}

TEST_CASE("default order is cdeglex under commutation") {
  CHECK(default_order(polymod::testing::commutative()).kind() == OrderKind::cdeglex);
  CHECK(default_order(polymod::testing::load("squier_toy.pm")).kind() == OrderKind::deglex);
  CHECK(default_order(polymod::testing::load("not_e_normalizing.pm")).kind() == OrderKind::deglex);
}

TEST_CASE("without_e drops modulo rules and the commutation flag") {
  auto p = polymod::testing::commutative().without_e();
  CHECK(p.e_rules().empty());
  CHECK_FALSE(p.modulo_commutation());
  CHECK(p.r_rules().size() == 2);
}
