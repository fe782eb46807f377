#include <catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "polymod/coherence.hpp"
#include "square_gen.hpp"
#include "support.hpp"

using namespace polymod;
using polymod::testing::w;

namespace {
  std::vector<std::string> rule_ids(std::vector<QuotientStep> const& path) {
    std::vector<std::string> out;
    for (auto const& s : path) {
      out.push_back(s.rule_id);
    }
    return out;
  }

  using Ids = std::vector<std::string>;
}  // namespace

TEST_CASE("coherent completion of the completed system") {
  auto    p = polymod::testing::commutative_completed();
  EEngine e(p);
  auto    gamma = coherent_completion(p, e, Bounds{});
  REQUIRE(gamma.a_cells.size() == 3);
  CHECK(gamma.a_branchings.size() == 3);
  CHECK(gamma.b_cells.size() == gamma.b_branchings.size());
  CHECK(gamma.b_cells.size()
        == critical_branchings(p, e, PairKind::s_vs_e, Bounds{}).items.size());
  std::set<Word> corners;
  for (std::size_t i = 0; i < gamma.a_cells.size(); ++i) {
    auto const& a = gamma.a_cells[i];
    CHECK(a.origin == SquareOrigin::A_fg);
    CHECK(validate_square(p, a));
    CHECK(a.left.empty());
    CHECK(a.top.source() == gamma.a_branchings[i].branching.f.source());
    CHECK(a.label.rfind("A(", 0) == 0);
    corners.insert(e.canonical(a.top.source()));
  }
  CHECK(corners
        == std::set<Word>{e.canonical(w(p, "x1 x2 x3")), e.canonical(w(p, "x2 x2 x4 x1")),
                          e.canonical(w(p, "x2 x4 x2 x4 x2"))});
  for (auto const& b : gamma.b_cells) {
    CHECK(b.origin == SquareOrigin::B_fe);
    CHECK(validate_square(p, b));
    CHECK(b.left.length() == 1);
  }
}

TEST_CASE("coherent completion refuses a non-confluent system") {
  auto    p = polymod::testing::commutative();
  EEngine e(p);
  try {
    coherent_completion(p, e, Bounds{});
    FAIL("expected NonConfluentSystem");
  } catch (NonConfluentSystem const& ex) {
    REQUIRE(ex.unresolved().size() == 1);
    CHECK(e.canonical(ex.unresolved()[0].branching.f.source()) == e.canonical(w(p, "x1 x2 x3")));
  }
}

TEST_CASE("Squier degeneration: E empty gives the classical confluences") {
  auto    p = polymod::testing::load("squier_toy.pm");
  EEngine e(p);
  auto    gamma = coherent_completion(p, e, Bounds{});
  CHECK(gamma.b_cells.empty());
  REQUIRE(gamma.a_cells.size() == 2);
  std::set<Word> sources;
  for (auto const& a : gamma.a_cells) {
    sources.insert(a.top.source());
    CHECK(a.left.empty());
    CHECK(a.right.empty());
    CHECK(a.top.target() == a.bottom.target());
  }
  CHECK(sources == std::set<Word>{w(p, "a a a"), w(p, "a a b")});
  CHECK(conf_e(e).empty());
  auto gp = quotient_globular(p, e, gamma.a_cells);
  CHECK(gp.cells3.size() == 2);
  CHECK(gp.rules.size() == 2);
}

TEST_CASE("conf(E) has one hexagon per decreasing triple") {
  auto    p = polymod::testing::commutative_completed();
  EEngine e(p);
  auto    conf = conf_e(e);
  REQUIRE(conf.size() == 4);
  for (auto const& c : conf) {
    CHECK(c.origin == SquareOrigin::confE);
    CHECK(validate_square(p, c));
  }
}

TEST_CASE("acyclic extension of the completed system") {
  auto    p = polymod::testing::commutative_completed();
  EEngine e(p);
  auto    gamma = coherent_completion(p, e, Bounds{});
  auto    ext = assemble_acyclic_extension(p, e, default_order(p), gamma, conf_e(e),
                                           ExtensionOptions{4, true}, Bounds{});
  CHECK(ext.gamma.size() == gamma.a_cells.size() + gamma.b_cells.size());
  CHECK(ext.conf_e.size() == 4);
  CHECK_FALSE(ext.peiffer.empty());
  CHECK(ext.checklist.terminating == Tri::yes);
  CHECK(ext.checklist.gamma_confluent == Tri::yes);
  CHECK(ext.checklist.e_convergent == Tri::yes);
  CHECK(ext.checklist.irr_e_normalizing == Tri::yes);
  CHECK(ext.checklist.weak_commutation == Tri::yes);
  CHECK_FALSE(ext.checklist.failing_word);
  for (auto const& n : ext.n_cells) {
    CHECK(n.origin == SquareOrigin::Nsigma_rho);
    CHECK(validate_square(p, n));
  }
}

TEST_CASE("acyclic extension without modulo rules is Γ alone") {
  auto    p = polymod::testing::load("squier_toy.pm");
  EEngine e(p);
  auto    gamma = coherent_completion(p, e, Bounds{});
  auto    ext   = assemble_acyclic_extension(p, e, p.declared_order(), gamma, {},
                                             ExtensionOptions{}, Bounds{});
  CHECK(ext.gamma.size() == 2);
  CHECK(ext.conf_e.empty());
  CHECK(ext.peiffer.empty());
  CHECK(ext.checklist.irr_e_normalizing == Tri::yes);
}

TEST_CASE("a non E-normalizing system is flagged conditional") {
  auto    p = polymod::testing::load("not_e_normalizing.pm");
  EEngine e(p);
  auto    gamma = coherent_completion(p, e, Bounds{});
  auto    ext   = assemble_acyclic_extension(p, e, p.declared_order(), gamma, conf_e(e),
                                             ExtensionOptions{3, false}, Bounds{});
  CHECK(ext.conditional);
  CHECK(ext.checklist.irr_e_normalizing == Tri::no);
  REQUIRE(ext.checklist.failing_word);
  CHECK(*ext.checklist.failing_word == w(p, "a b"));
}

TEST_CASE("weak commutation verdicts") {
  auto    done = polymod::testing::commutative_completed();
  EEngine ed(done);
  auto    rep = check_weak_commutation(done, ed, all_words(4, 5), Bounds{});
  CHECK(rep.verdict == WeakCommutation::commuting);
  CHECK(rep.words_checked == all_words(4, 5).size());
  for (auto const& n : rep.n_cells) {
    CHECK(validate_square(done, n));
  }

  auto    toy = polymod::testing::load("squier_toy.pm");
  EEngine et(toy);
  CHECK(check_weak_commutation(toy, et, all_words(2, 4), Bounds{}).verdict
        == WeakCommutation::commuting);

  auto    bad = polymod::testing::load("not_e_normalizing.pm");
  EEngine eb(bad);
  auto    cx = check_weak_commutation(bad, eb, {w(bad, "a b")}, Bounds{});
  CHECK(cx.verdict == WeakCommutation::counterexample);
  REQUIRE(cx.counterexample);
  CHECK(*cx.counterexample == w(bad, "a b"));
}

TEST_CASE("fuzzing the completed and the original systems") {
  auto        done = polymod::testing::commutative_completed();
  EEngine     ed(done);
  FuzzOptions opts{200, 7, 9};
  auto        ok = newman_fuzz(done, ed, opts, Bounds{});
  CHECK(ok.samples == 200);
  CHECK(ok.local_failures == 0);
  CHECK(ok.nf_failures == 0);
  CHECK(ok.depth_exceeded == 0);
  CHECK(ok.local_branchings > 0);

  auto    pre = polymod::testing::commutative();
  EEngine ep(pre);
  auto    bad = newman_fuzz(pre, ep, opts, Bounds{});
  CHECK(bad.local_failures + bad.nf_failures > 0);
  REQUIRE(bad.first_failure);
  // both rules consume x1, so every failing word contains it
  auto letters = letter_multiset(*bad.first_failure);
  CHECK(std::count(letters.begin(), letters.end(), Letter{0}) > 0);

  auto    free = polymod::testing::free_commutative(3);
  EEngine ef(free);
  auto    vac = newman_fuzz(free, ef, opts, Bounds{});
  CHECK(vac.local_failures == 0);
  CHECK(vac.nf_failures == 0);
}

TEST_CASE("fuzzing is reproducible for a fixed seed") {
  auto    p = polymod::testing::commutative();
  EEngine e(p);
  auto    a = newman_fuzz(p, e, FuzzOptions{100, 6, 3}, Bounds{});
  auto    b = newman_fuzz(p, e, FuzzOptions{100, 6, 3}, Bounds{});
  CHECK(a.local_branchings == b.local_branchings);
  CHECK(a.local_failures == b.local_failures);
  CHECK(a.first_failure == b.first_failure);
}

TEST_CASE("quotient of the completed system") {
  auto    p = polymod::testing::commutative_completed();
  EEngine e(p);
  auto    gamma = coherent_completion(p, e, Bounds{});
  auto    gp    = quotient_globular(p, e, gamma.a_cells);
  REQUIRE(gp.cells3.size() == 3);
  CHECK(gp.rules.size() == 3);
  CHECK(gp.e_rules.size() == 6);
  std::set<std::pair<Ids, Ids>> shapes;
  for (auto const& c : gp.cells3) {
    shapes.insert({rule_ids(c.source_path), rule_ids(c.target_path)});
    REQUIRE_FALSE(c.source_path.empty());
    CHECK(c.source_path.front().source == c.source);
    CHECK(c.source_path.back().target == c.target);
    CHECK(c.target_path.back().target == c.target);
    for (auto const* path : {&c.source_path, &c.target_path}) {
      for (std::size_t i = 1; i < path->size(); ++i) {
        CHECK((*path)[i - 1].target == (*path)[i].source);
      }
    }
  }
  CHECK(shapes.count({Ids{"beta", "d0"}, Ids{"gamma", "beta"}}) == 1);
  CHECK(shapes.count({Ids{"d0", "d0"}, Ids{"d0", "d0"}}) == 1);
}

TEST_CASE("quotient paths drop modulo steps and respect composition") {
  auto                         p = polymod::testing::commutative_completed();
  EEngine                      e(p);
  polymod::testing::SquareGen gen(p, e, 21);
  for (int i = 0; i < 100; ++i) {
    Word u  = gen.random_word(2, 7);
    auto nf = normalize(p, e, u);
    auto q  = quotient_path(p, e, nf.path);
    CHECK(q.size() == nf.path.size());
    if (!q.empty()) {
      CHECK(q.front().source == e.e_normal_form(u).normal_form);
      CHECK(q.back().target == e.e_normal_form(nf.normal_form).normal_form);
    }
    Path pre = gen.random_e_path(u, 3).inverse();
    auto whole = quotient_path(p, e, compose(p, pre, nf.path));
    CHECK(whole == q);
  }
}

TEST_CASE("squares in one biaction orbit give one 3-cell") {
  auto    p = polymod::testing::commutative_completed();
  EEngine e(p);
  auto    gamma = coherent_completion(p, e, Bounds{});
  polymod::testing::SquareGen gen(p, e, 8);
  std::vector<SquareCell> cells;
  for (auto const& a : gamma.a_cells) {
    cells.push_back(a);
    Path e1 = gen.random_e_path(a.top.source(), 3).inverse();
    cells.push_back(biaction(p, p.mode(), e1, Path(a.left.target()), a));
  }
  CHECK(quotient_globular(p, e, cells).cells3.size() == 3);
  CHECK(quotient_globular(p, e, gamma.b_cells).cells3.empty());
  CHECK(quotient_globular(p, e, {}).cells3.empty());
}

TEST_CASE("quotient needs a convergent E") {
  auto p = parse_presentation(
      "generators: a b c\norder: deglex a > b > c\nmode: ER\nrule r: c c => c\n"
      "modulo m1: a b == c\nmodulo m2: b a == c\n");
  EEngine e(p);
  CHECK_FALSE(e.e_convergent());
  CHECK_THROWS_AS(quotient_globular(p, e, {}), NotConvergent);
}
