#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "polymod/eclass.hpp"
#include "polymod/order.hpp"
#include "support.hpp"

using namespace polymod;
using polymod::testing::w;

namespace {
  Word random_word(std::mt19937_64& rng, std::size_t gens, std::size_t max_len) {
    std::vector<Letter> xs(rng() % (max_len + 1));
    for (auto& x : xs) {
      x = static_cast<Letter>(rng() % gens);
    }
    return Word(xs);
  }

  /// Reference deglex: compare degrees, then ranks letter by letter.
  Cmp deglex_oracle(OrderSpec const& o, Word const& u, Word const& v) {
    if (u.size() != v.size()) {
      return u.size() < v.size() ? Cmp::LT : Cmp::GT;
    }
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (u[i] != v[i]) {
        // rank 0 is the greatest letter
        return o.rank(u[i]) > o.rank(v[i]) ? Cmp::LT : Cmp::GT;
      }
    }
    return Cmp::EQ;
  }
}  // namespace

TEST_CASE("deglex examples") {
  auto      p = polymod::testing::commutative();
  OrderSpec o = p.declared_order();
  CHECK(o.compare(w(p, "x1 x3"), w(p, "x2 x4")) == Cmp::GT);
  CHECK(o.compare(w(p, "x1 x2"), w(p, "x1")) == Cmp::GT);
  CHECK(o.compare(w(p, "x3 x1"), w(p, "x2 x4")) == Cmp::LT);
  CHECK(o.compare(w(p, "x2 x4"), w(p, "x2 x4")) == Cmp::EQ);
}

TEST_CASE("cdeglex compares commutative canonical forms") {
  auto      p = polymod::testing::commutative();
  OrderSpec o = p.declared_order().with_kind(OrderKind::cdeglex);
  CHECK(o.canonical(w(p, "x3 x1")) == w(p, "x1 x3"));
  CHECK(o.compare(w(p, "x3 x1"), w(p, "x2 x4")) == Cmp::GT);
  CHECK(o.compare(w(p, "x3 x1"), w(p, "x1 x3")) == Cmp::EQ);
}

TEST_CASE("deglex agrees with an independent oracle and is a total order") {
  std::mt19937_64 rng(11);
  OrderSpec       o(OrderKind::deglex, {2, 0, 3, 1});
  for (int i = 0; i < 2000; ++i) {
    Word u = random_word(rng, 4, 5);
    Word v = random_word(rng, 4, 5);
    Cmp  c = o.compare(u, v);
    CHECK(c == deglex_oracle(o, u, v));
    CHECK((c == Cmp::EQ) == (u == v));
  }
}

TEST_CASE("orders are monotone under whiskering") {
  std::mt19937_64 rng(12);
  for (auto kind : {OrderKind::deglex, OrderKind::cdeglex}) {
    OrderSpec o(kind, {0, 1, 2, 3});
    for (int i = 0; i < 1000; ++i) {
      Word u = random_word(rng, 4, 4);
      Word v = random_word(rng, 4, 4);
      Word a = random_word(rng, 4, 3);
      Word b = random_word(rng, 4, 3);
      if (o.compare(u, v) == Cmp::GT) {
        CHECK(o.compare(Word::concat(a, u, b), Word::concat(a, v, b)) == Cmp::GT);
      }
    }
  }
}

TEST_CASE("cdeglex is invariant under commutation") {
  std::mt19937_64 rng(13);
  OrderSpec       o(OrderKind::cdeglex, {0, 1, 2, 3});
  for (int i = 0; i < 500; ++i) {
    Word u = random_word(rng, 4, 6);
    Word v = random_word(rng, 4, 6);
    auto xs = u.letters();
    std::shuffle(xs.begin(), xs.end(), rng);
    CHECK(o.compare(u, v) == o.compare(Word(xs), v));
  }
}

TEST_CASE("compatibility on the commutative presentation") {
  auto    p = polymod::testing::commutative();
  EEngine e(p);

  auto cd = check_compatibility(p.declared_order().with_kind(OrderKind::cdeglex), p, e);
  CHECK(cd.verdict == Compatibility::compatible);
  CHECK(cd.comparisons == 2);

  auto dl = check_compatibility(p.declared_order(), p, e);
  CHECK(dl.verdict == Compatibility::incompatible);
  REQUIRE(dl.rule_id);
  CHECK(*dl.rule_id == "beta");
  REQUIRE(dl.witness);
  CHECK(dl.witness->first == w(p, "x3 x1"));
  CHECK(dl.witness->second == w(p, "x2 x4"));
  CHECK(e.e_equivalent(dl.witness->first, w(p, "x1 x3")).verdict == Tri::yes);
  CHECK(p.declared_order().compare(dl.witness->first, dl.witness->second) != Cmp::GT);
}

TEST_CASE("compatibility without modulo rules is plain descent") {
  auto    p = polymod::testing::load("squier_toy.pm");
  EEngine e(p);
  CHECK(check_compatibility(p.declared_order(), p, e).verdict == Compatibility::compatible);
  auto bad = parse_presentation("generators: a b\norder: deglex a > b\nrule r: b => a\n");
  EEngine e2(bad);
  CHECK(check_compatibility(bad.declared_order(), bad, e2).verdict == Compatibility::incompatible);
}

TEST_CASE("cdeglex rejects non-commutation modulo rules") {
  auto p = parse_presentation(
      "generators: a b c\norder: deglex a > b > c\nmode: ER\nrule r: a a => b\nmodulo e: a b == c\n");
  EEngine e(p);
  CHECK_THROWS_AS(check_compatibility(p.declared_order().with_kind(OrderKind::cdeglex), p, e),
                  std::invalid_argument);
}
