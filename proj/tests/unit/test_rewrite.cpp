#include <catch_amalgamated.hpp>

#include <deque>
#include <random>
#include <set>

#include "polymod/rewrite.hpp"
#include "support.hpp"

using namespace polymod;
using polymod::testing::w;

namespace {
  /// Every word reachable by forward primary steps applied to any class
  /// member, and the dead ends among them, computed with raw replacements.
  std::set<Word> dead_end_classes(Polygraph const& p, EEngine const& e, Word const& u) {
    std::set<Word>   seen{e.canonical(u)};
    std::deque<Word> todo{e.canonical(u)};
    std::set<Word>   out;
    while (!todo.empty()) {
      Word c = todo.front();
      todo.pop_front();
      bool reducible = false;
      for (auto const& m : e.e_class(c)->members) {
        for (auto const& r : p.r_rules()) {
          for (auto pos : m.occurrences(r.lhs)) {
            reducible = true;
            Word next = e.canonical(m.replaced(pos, r.lhs.size(), r.rhs));
            if (seen.insert(next).second) {
              todo.push_back(next);
            }
          }
        }
      }
      if (!reducible) {
        out.insert(c);
      }
    }
    return out;
  }
}  // namespace

TEST_CASE("enumerate_steps examples") {
  auto    p = polymod::testing::commutative();
  EEngine e(p);
  auto    steps_r = enumerate_steps(p.with_mode(Mode::R), e, w(p, "x1 x2 x3"));
  REQUIRE(steps_r.size() == 1);
  CHECK(p.rule_id(steps_r[0].r.rule) == "gamma");
  CHECK(steps_r[0].r.position() == 0);

  auto steps = enumerate_steps(p, e, w(p, "x1 x2 x3"));
  bool found = false;
  for (auto const& s : steps) {
    CHECK(valid_sstep(p, s, Mode::ERE));
    if (p.rule_id(s.r.rule) == "beta" && s.r.source(p) == w(p, "x1 x3 x2") && s.e1.size() == 1
        && p.rule_id(s.e1[0].rule) == "alpha_x2_x3") {
      found = true;
    }
  }
  CHECK(found);

  auto done = polymod::testing::commutative_completed();
  EEngine ed(done);
  CHECK(enumerate_steps(done, ed, w(done, "x2 x4")).empty());
  CHECK(enumerate_steps(done, ed, w(done, "x4 x2")).empty());
}

TEST_CASE("first_step is the head of enumerate_steps") {
  auto    p = polymod::testing::commutative_completed();
  EEngine e(p);
  for (auto const& u : all_words(4, 4)) {
    auto all   = enumerate_steps(p, e, u);
    auto first = first_step(p, e, u);
    REQUIRE(first.has_value() == !all.empty());
    if (first) {
      CHECK(first->r == all.front().r);
      CHECK(first->source == all.front().source);
    }
  }
}

TEST_CASE("normalize examples on the completed system") {
  auto    p = polymod::testing::commutative_completed();
  EEngine e(p);

  auto a = normalize(p, e, w(p, "x1 x2 x3"));
  CHECK(a.status == NormalizeStatus::complete);
  CHECK(e.e_equivalent(a.normal_form, w(p, "x2 x4")).verdict == Tri::yes);

  auto b = normalize(p, e, w(p, "x2 x4 x2"));
  CHECK(b.steps == 1);
  CHECK(e.e_equivalent(b.normal_form, w(p, "x2 x4")).verdict == Tri::yes);
  bool uses_d0 = false;
  for (auto const& s : b.path.steps()) {
    uses_d0 = uses_d0 || (s.is_primary() && p.rule_id(s.rule) == "d0");
  }
  CHECK(uses_d0);

  auto c = normalize(p, e, w(p, "x2 x4"));
  CHECK(c.normal_form == w(p, "x2 x4"));
  CHECK(c.path.empty());
  CHECK(c.steps == 0);
}

TEST_CASE("normalize is deterministic, validated and strictly descending") {
  auto      p = polymod::testing::commutative_completed();
  EEngine   e(p);
  OrderSpec o = default_order(p);
  for (auto const& u : all_words(4, 5)) {
    auto r1 = normalize(p, e, u);
    auto r2 = normalize(p, e, u);
    REQUIRE(r1.path == r2.path);
    REQUIRE(r1.status == NormalizeStatus::complete);
    CHECK(validate_path(p, r1.path).ok);
    CHECK(r1.path.source() == u);
    CHECK(r1.path.size() == r1.steps);
    Word prev = u;
    for (auto const& s : r1.path.steps()) {
      if (s.is_primary()) {
        Word next = s.target(p);
        CHECK(o.compare(s.source(p), next) == Cmp::GT);
        CHECK(o.compare(prev, next) == Cmp::GT);
        prev = next;
      }
    }
    CHECK(is_irreducible(p, e, r1.normal_form).verdict == Tri::yes);
  }
}

TEST_CASE("normalize stops at the depth bound") {
  auto    p = parse_presentation("generators: a b\norder: deglex a > b\nrule r: a => b b\n");
  EEngine e(p);
  auto    r = normalize(p, e, w(p, "a a a a"), 2);
  CHECK(r.status == NormalizeStatus::depth_exceeded);
  CHECK(r.steps == 2);
}

TEST_CASE("is_irreducible examples") {
  auto    pre = polymod::testing::commutative();
  EEngine e(pre);
  CHECK(is_irreducible(pre, e, w(pre, "x2 x4 x2")).verdict == Tri::yes);
  CHECK(is_irreducible(pre, e, Word{}).verdict == Tri::yes);

  auto    post = polymod::testing::commutative_completed();
  EEngine ep(post);
  auto    r = is_irreducible(post, ep, w(post, "x2 x4 x2"));
  CHECK(r.verdict == Tri::no);
  REQUIRE(r.step);
  CHECK(post.rule_id(r.step->r.rule) == "d0");
}

TEST_CASE("reachable normal forms match a brute-force dead-end oracle") {
  for (auto const* name : {"commutative.pm", "commutative_completed.pm"}) {
    auto    p = polymod::testing::load(name);
    EEngine e(p);
    for (auto const& u : all_words(4, 4)) {
      auto found = reachable_normal_forms(p, e, u, Bounds{});
      REQUIRE(found.complete);
      std::set<Word> classes;
      for (auto const& f : found.forms) {
        CHECK(validate_path(p, f.path).ok);
        CHECK(f.path.source() == u);
        classes.insert(e.canonical(f.word));
      }
      REQUIRE(classes == dead_end_classes(p, e, u));
    }
  }
}

TEST_CASE("the completed system is E-normalizing up to degree 5") {
  auto    p = polymod::testing::commutative_completed();
  EEngine e(p);
  auto    words = e_irreducible_words(p, e, 5);
  auto    rep   = check_e_normalizing(p, e, words, Bounds{});
  CHECK(rep.verdict == Tri::yes);
  CHECK(rep.entries.size() == words.size());
  for (auto const& entry : rep.entries) {
    REQUIRE(entry.normal_form);
    CHECK(e.is_e_irreducible(*entry.normal_form));
  }
}

TEST_CASE("without modulo rules every word is E-normalizing") {
  auto    p = polymod::testing::load("squier_toy.pm");
  EEngine e(p);
  CHECK(check_e_normalizing(p, e, all_words(2, 5), Bounds{}).verdict == Tri::yes);
}

TEST_CASE("a crafted system whose only normal form is E-reducible") {
  auto    p = polymod::testing::load("not_e_normalizing.pm");
  EEngine e(p);
  auto    rep = check_e_normalizing(p, e, {w(p, "a b")}, Bounds{});
  CHECK(rep.verdict == Tri::no);
  REQUIRE(rep.failing_word);
  CHECK(*rep.failing_word == w(p, "a b"));

  // oracle: the single reachable dead end is b c, which E orients to c b
  auto forms = reachable_normal_forms(p, e, w(p, "a b"), Bounds{});
  REQUIRE(forms.complete);
  REQUIRE(forms.forms.size() == 1);
  CHECK(forms.forms[0].word == w(p, "b c"));
  CHECK_FALSE(e.is_e_irreducible(w(p, "b c")));
}

TEST_CASE("normalize_sigma lands in Irr(E)") {
  auto    p = polymod::testing::commutative_completed();
  EEngine e(p);
  for (auto const& u : all_words(4, 4)) {
    auto r = normalize_sigma(p, e, u);
    CHECK(validate_path(p, r.path).ok);
    if (r.steps > 0) {
      CHECK(e.is_e_irreducible(r.normal_form));
    }
  }
}

TEST_CASE("all_words enumerates by degree") {
  auto ws = all_words(2, 3);
  CHECK(ws.size() == 1 + 2 + 4 + 8);
  CHECK(ws.front().empty());
  CHECK(ws[1] == Word{0});
  CHECK(ws.back() == (Word{1, 1, 1}));
}
