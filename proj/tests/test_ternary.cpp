#include <catch2/catch_amalgamated.hpp>

#include "rbl/parser.hpp"
#include "rbl/ternary.hpp"
#include "test_util.hpp"

using namespace rbl;

namespace {

TernaryModel triple_model() {
  // states {0,1,2}, one triple (0,1,2), p true at 1, q true at 2
  TernaryModel j;
  j.states = 3;
  j.rel3 = {{0, 1, 2}};
  j.val["p"] = 0b010;
  j.val["q"] = 0b100;
  return j;
}

BplModel chain(int n) {
  BplModel m;
  m.worlds = n;
  m.rel.assign(n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) m.rel[a] |= 1u << b;
  return m;
}

}  // namespace

TEST_CASE("eval_ternary clauses") {
  TernaryModel empty;
  empty.states = 1;
  CHECK(eval_ternary(empty, 0, parse_formula("p -> q")));  // vacuous universal

  TernaryModel j = triple_model();
  CHECK(eval_ternary(j, 0, parse_formula("p * q")));
  CHECK_FALSE(eval_ternary(j, 1, parse_formula("p * q")));
  CHECK(eval_ternary(j, 2, parse_formula("p -> q")));  // no triple ends at 2
  // p <- q at 1: the triple (0,1,2) has q at 2 but p fails at 0.
  CHECK_FALSE(eval_ternary(j, 1, parse_formula("p <- q")));
  CHECK_THROWS_AS(eval_ternary(j, 9, parse_formula("p")), InvalidState);
}

TEST_CASE("sequent_true") {
  TernaryModel j = triple_model();
  CHECK(sequent_true(j, parse_simple_sequent("bot => p")));
  CHECK(sequent_true(j, parse_simple_sequent("p => top")));
  // p*q holds at 0 where q fails, so the sequent is false there.
  CHECK_FALSE(sequent_true(j, parse_simple_sequent("p * q => q")));
  CHECK(sequent_failure_state(j, parse_simple_sequent("p * q => q")) == 0);
}

TEST_CASE("lift_bpl shape") {
  BplModel one;
  one.worlds = 1;
  one.rel = {0};
  TernaryModel j1 = lift_bpl(one);
  CHECK(j1.states == 2);
  CHECK(j1.rel3.empty());

  BplModel two = chain(2);
  two.val["p"] = 0b10;
  TernaryModel j2 = lift_bpl(two);
  CHECK(j2.states == 4);
  REQUIRE(j2.rel3.size() == 4);
  // copies: 0_1=0, 0_2=1, 1_1=2, 1_2=3
  std::vector<std::array<int, 3>> expect = {{2, 3, 0}, {3, 2, 0}, {2, 3, 1}, {3, 2, 1}};
  for (const auto& t : expect)
    CHECK(std::find(j2.rel3.begin(), j2.rel3.end(), t) != j2.rel3.end());
  CHECK(j2.val["p"] == (0b1100u));
  CHECK(lifted_state_name(3) == "1_2");
}

TEST_CASE("lift size laws", "[property]") {
  std::vector<std::string> names{"p", "q"};
  for (int sz = 1; sz <= 3; ++sz) {
    int budget = 300;
    detail::for_each_bpl_model(sz, names, [&](const BplModel& m) {
      TernaryModel j = lift_bpl(m);
      CHECK(j.states == 2 * m.worlds);
      int edges = 0;
      for (int w = 0; w < m.worlds; ++w) edges += std::popcount(m.rel[w]);
      CHECK(static_cast<int>(j.rel3.size()) == 4 * edges);
      return --budget > 0;
    });
  }
}

TEST_CASE("truth lemma on sampled models and formulas", "[property]") {
  std::mt19937 rng(61);
  std::vector<std::string> names{"p", "q"};
  for (int sz = 1; sz <= 4; ++sz) {
    int budget = sz == 4 ? 60 : 250;
    detail::for_each_bpl_model(sz, names, [&](const BplModel& m) {
      std::vector<FormulaPtr> fs;
      for (int i = 0; i < 6; ++i) fs.push_back(testutil::random_formula(rng, 4, 2, true));
      CHECK(check_truth_lemma(m, fs));
      return --budget > 0;
    });
  }
  // Base case of the induction.
  BplModel m = chain(2);
  m.val["p"] = 0b10;
  CHECK(check_truth_lemma(m, {parse_formula("p")}));
  CHECK(check_truth_lemma(m, {parse_formula("p -> q")}));
  CHECK_THROWS_AS(check_truth_lemma(m, {parse_formula("p * p")}), LanguageError);
}

TEST_CASE("corrupting the lift breaks the truth lemma") {
  // On a 3-chain, dropping a single triple makes the two copies of some
  // world disagree on a nested implication, which the lemma oracle notices.
  BplModel m = chain(3);
  m.val["p"] = 0b110;
  m.val["q"] = 0b000;
  std::vector<FormulaPtr> fs = {parse_formula("p -> q"), parse_formula("(p -> q) -> q"),
                                parse_formula("(p -> q) -> p")};
  REQUIRE(check_truth_lemma(m, fs));

  TernaryModel good = lift_bpl(m);
  bool some_drop_caught = false;
  for (std::size_t k = 0; k < good.rel3.size(); ++k) {
    TernaryModel bad = good;
    bad.rel3.erase(bad.rel3.begin() + static_cast<long>(k));
    bool agree = true;
    for (const auto& f : fs) {
      WorldMask base = eval_bpl_mask(m, f);
      StateMask lifted = eval_ternary_mask(bad, f);
      for (int a = 0; a < m.worlds && agree; ++a) {
        bool b = (base >> a) & 1u;
        if (b != ((lifted >> copy_state(a, 1)) & 1u) ||
            b != ((lifted >> copy_state(a, 2)) & 1u))
          agree = false;
      }
    }
    if (!agree) some_drop_caught = true;
  }
  CHECK(some_drop_caught);
}

TEST_CASE("check_srbl_soundness") {
  std::vector<std::string> names{"p", "q", "r"};
  std::vector<SimpleSequent> derivable = {
      parse_simple_sequent("top => p -> p"),
      parse_simple_sequent("(p -> q) & (q -> r) => p -> r"),
      parse_simple_sequent("p => top -> p"),
  };
  int budget = 150;
  detail::for_each_bpl_model(3, names, [&](const BplModel& m) {
    CHECK(check_srbl_soundness(m, derivable));
    return --budget > 0;
  });

  BplModel m = chain(2);
  m.val["p"] = 0b11;
  m.val["q"] = 0b00;
  CHECK_FALSE(check_srbl_soundness(m, {parse_simple_sequent("p => q")}));
}

TEST_CASE("ternary model json round trip") {
  TernaryModel j = triple_model();
  TernaryModel k = ternary_model_from_json(to_json(j));
  CHECK(k.states == j.states);
  CHECK(k.rel3 == j.rel3);
  CHECK(k.val == j.val);
}
