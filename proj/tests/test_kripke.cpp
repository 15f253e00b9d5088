#include <catch2/catch_amalgamated.hpp>

#include "rbl/kripke.hpp"
#include "rbl/parser.hpp"
#include "test_util.hpp"

using namespace rbl;

namespace {

BplModel chain2(WorldMask p_mask, WorldMask q_mask) {
  BplModel m;
  m.worlds = 2;
  m.rel = {0b10, 0b00};  // 0 R 1
  m.val["p"] = p_mask;
  m.val["q"] = q_mask;
  return m;
}

}  // namespace

TEST_CASE("check_bpl_model diagnostics") {
  BplModel ok = chain2(0b11, 0b10);
  CHECK(check_bpl_model(ok).empty());

  BplModel intrans;
  intrans.worlds = 3;
  intrans.rel = {0b010, 0b100, 0b000};  // 0R1, 1R2, missing 0R2
  auto d1 = check_bpl_model(intrans);
  REQUIRE(d1.size() == 1);
  CHECK(d1[0].witness == std::vector<int>{0, 1, 2});

  BplModel broken = chain2(0b01, 0b00);  // p at 0 only, 0R1
  auto d2 = check_bpl_model(broken);
  REQUIRE(d2.size() == 1);
  CHECK(d2[0].atom == "p");
  CHECK(d2[0].witness == std::vector<int>{0, 1});
}

TEST_CASE("eval_bpl basics") {
  BplModel one;
  one.worlds = 1;
  one.rel = {0};
  one.val["p"] = 1;

  CHECK(eval_bpl(one, 0, parse_formula("p -> q")));  // no successors
  // The same point satisfies p & (p -> q) but not q...
  CHECK(eval_bpl(one, 0, parse_formula("p & (p -> q)")));
  CHECK_FALSE(eval_bpl(one, 0, parse_formula("q")));
  // ...while the implication-shaped formula is vacuously true at 0.
  CHECK(eval_bpl(one, 0, parse_formula("p & (p -> q) -> q")));

  BplModel m = chain2(0b11, 0b10);
  CHECK(eval_bpl(m, 0, parse_formula("p -> q")));

  CHECK_THROWS_AS(eval_bpl(m, 0, parse_formula("p * q")), LanguageError);
  CHECK_THROWS_AS(eval_bpl(m, 0, parse_formula("p <- q")), LanguageError);
  CHECK_THROWS_AS(eval_bpl(m, 5, parse_formula("p")), InvalidWorld);
  CHECK_FALSE(eval_bpl(m, 0, parse_formula("unknown_atom")));
}

TEST_CASE("bpl_valid_upto") {
  BplVerdict ax2 = bpl_valid_upto(parse_formula("p -> (q -> p)"), 3);
  CHECK(ax2.valid);
  CHECK(ax2.bound == 3);

  BplVerdict dagger = bpl_valid_upto(parse_formula("p & (p -> q) -> (top -> q)"), 4);
  CHECK(dagger.valid);

  BplVerdict ddagger = bpl_valid_upto(parse_formula("p & (p -> q) -> q"), 4);
  REQUIRE_FALSE(ddagger.valid);
  REQUIRE(ddagger.model.has_value());
  CHECK(ddagger.model->worlds == 2);
  CHECK(check_bpl_model(*ddagger.model).empty());
  CHECK_FALSE(eval_bpl(*ddagger.model, ddagger.world, parse_formula("p & (p -> q) -> q")));
}

TEST_CASE("countermodel verdicts are monotone in the bound", "[property]") {
  std::mt19937 rng(511);
  for (int i = 0; i < 60; ++i) {
    FormulaPtr f = testutil::random_formula(rng, 3, 2, /*bpl_only=*/true);
    BplVerdict at2 = bpl_valid_upto(f, 2);
    if (!at2.valid) {
      BplVerdict at3 = bpl_valid_upto(f, 3);
      CHECK_FALSE(at3.valid);
    }
  }
}

TEST_CASE("truth is persistent", "[property]") {
  std::mt19937 rng(99);
  std::vector<std::string> names{"p", "q"};
  for (int sz = 1; sz <= 3; ++sz) {
    int budget = 400;
    detail::for_each_bpl_model(sz, names, [&](const BplModel& m) {
      FormulaPtr f = testutil::random_formula(rng, 4, 2, /*bpl_only=*/true);
      WorldMask truth = eval_bpl_mask(m, f);
      for (int w = 0; w < m.worlds; ++w)
        if ((truth >> w) & 1u) CHECK((m.rel[w] & ~truth) == 0);
      return --budget > 0;
    });
  }
}

TEST_CASE("point_extension") {
  BplModel one;
  one.worlds = 1;
  one.rel = {0};
  one.val["p"] = 1;
  auto [ext1, x1] = point_extension(one, 0);
  CHECK(ext1.worlds == 2);
  CHECK(x1 == 1);
  CHECK(ext1.rel[1] == 0b01);  // the new point sees 0 only
  CHECK(ext1.val["p"] == 0b11);
  CHECK(check_bpl_model(ext1).empty());

  BplModel m = chain2(0b11, 0b10);
  auto [ext2, x2] = point_extension(m, 0);
  CHECK(ext2.worlds == 3);
  CHECK(ext2.rel[x2] == 0b011);  // sees 0 and, by closure, 1
  CHECK(ext2.rel[0] == 0b010);
  CHECK(check_bpl_model(ext2).empty());

  CHECK_THROWS_AS(point_extension(m, 7), InvalidWorld);
}

TEST_CASE("point extension preserves truth at the base point", "[property]") {
  std::mt19937 rng(2025);
  std::vector<std::string> names{"p", "q"};
  for (int sz = 1; sz <= 3; ++sz) {
    int budget = 200;
    detail::for_each_bpl_model(sz, names, [&](const BplModel& m) {
      int x = std::uniform_int_distribution<int>(0, m.worlds - 1)(rng);
      auto [ext, fresh] = point_extension(m, x);
      REQUIRE(check_bpl_model(ext).empty());
      for (int i = 0; i < 5; ++i) {
        FormulaPtr f = testutil::random_formula(rng, 4, 2, /*bpl_only=*/true);
        CHECK(eval_bpl(m, x, f) == eval_bpl(ext, x, f));
      }
      (void)fresh;
      return --budget > 0;
    });
  }
}

TEST_CASE("bpl model json round trip") {
  BplModel m = chain2(0b11, 0b10);
  BplModel n = bpl_model_from_json(to_json(m));
  CHECK(n.worlds == m.worlds);
  CHECK(n.rel == m.rel);
  CHECK(n.val == m.val);
  nlohmann::json j = to_json(m);
  CHECK(j["worlds"] == 2);
  CHECK(j["rel"].size() == 1);
}
