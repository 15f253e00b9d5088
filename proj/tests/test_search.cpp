#include <catch2/catch_amalgamated.hpp>

#include "rbl/algebra.hpp"
#include "rbl/hilbert.hpp"
#include "rbl/search.hpp"
#include "test_util.hpp"

using namespace rbl;

namespace {

Verdict prove_text(const std::string& s, SearchConfig cfg = {}) {
  return prove(parse_sequent(s), cfg);
}

void expect_proved(const std::string& s, SearchConfig cfg = {}) {
  Verdict v = prove_text(s, cfg);
  INFO(s);
  REQUIRE(v.kind == Verdict::Kind::Proved);
  ProofCheckResult r = check_proof(*v.proof, cfg.profile);
  INFO(r.reason << " at " << r.node);
  REQUIRE(r.ok);
  CHECK(equal(v.proof->conclusion, parse_sequent(s)));
}

}  // namespace

TEST_CASE("prove: identity and simple theorems") {
  expect_proved("top |- p -> p");
  expect_proved("p |- p");
  expect_proved("bot |- q");
  expect_proved("p , q |- p * q");
  expect_proved("p & q |- q & p");
  expect_proved("p |- top");
}

TEST_CASE("prove: the separating formulas") {
  // Both provable...
  expect_proved("top |- p & (p -> q) -> (top -> q)");
  expect_proved("top , p & q |- (top * p) * q");
  // ...and the Heyting-only one refuted with a small lifted model.
  Verdict v = prove_text("top |- p & (p -> q) -> q");
  REQUIRE(v.kind == Verdict::Kind::Refuted);
  REQUIRE(v.model.has_value());
  CHECK(v.model->states <= 4);
  CHECK_FALSE(eval_ternary(*v.model, v.state, parse_formula("p & (p -> q) -> q")));
}

TEST_CASE("prove: profile separation") {
  SearchConfig core;
  SearchConfig lj;
  lj.profile = Profile::LJ;
  SearchConfig timp;
  timp.profile = Profile::TopImp;

  // Not provable in the core calculus, and refutable.
  Verdict v = prove_text("p & (p -> q) |- q", core);
  CHECK(v.kind == Verdict::Kind::Refuted);

  // Provable with full contraction or with the extra axiom.
  expect_proved("p & (p -> q) |- q", lj);
  {
    Verdict t = prove_text("p & (p -> q) |- q", timp);
    REQUIRE(t.kind == Verdict::Kind::Proved);
    CHECK(check_proof(*t.proof, Profile::TopImp).ok);
  }

  // Exchange separates the core profile from LJ.
  Verdict ex = prove_text("p , q |- q * p", core);
  CHECK(ex.kind == Verdict::Kind::Refuted);
  expect_proved("p , q |- q * p", lj);
}

TEST_CASE("core proofs are cut- and mix-free") {
  for (const std::string& s :
       {"top |- p -> p", "top |- p & (p -> q) -> (top -> q)", "top , p & q |- (top * p) * q",
        "top |- (p -> q) & (q -> r) -> (p -> r)"}) {
    Verdict v = prove_text(s);
    REQUIRE(v.kind == Verdict::Kind::Proved);
    CHECK_FALSE(contains_rule(*v.proof, RuleId::Cut));
    CHECK_FALSE(contains_rule(*v.proof, RuleId::Mix));
  }
}

TEST_CASE("prove: all twelve axiom schemas at distinct atoms") {
  Subst subst{{"A", mk_prop("p")}, {"B", mk_prop("q")}, {"C", mk_prop("r")}};
  for (int id = 1; id <= axiom_count(); ++id) {
    FormulaPtr inst = axiom_instance(id, subst);
    Verdict v = prove({mk_leaf(mk_top()), inst});
    INFO("axiom " << id << ": " << to_string(inst));
    REQUIRE(v.kind == Verdict::Kind::Proved);
    CHECK(check_proof(*v.proof).ok);
  }
}

TEST_CASE("proved sequents hold in every small algebra and lifted model") {
  std::vector<std::string> seqs = {
      "top |- p -> p",
      "top |- p -> (q -> p)",
      "top |- (p -> q) & (q -> r) -> (p -> r)",
      "p & q |- q & p",
      "top , p & q |- (top * p) * q",
      "p , q |- p * q",
      "p * q |- p * q",
      "p & (q | r) |- (p & q) | (p & r)",
  };
  auto algebras = enumerate_rbas(3);
  std::vector<std::string> names{"p", "q", "r"};
  for (const std::string& s : seqs) {
    Verdict v = prove_text(s);
    REQUIRE(v.kind == Verdict::Kind::Proved);
    SimpleSequent simple = to_simple(v.proof->conclusion);
    for (const auto& alg : algebras) {
      INFO(s);
      CHECK(algebra_sequent_valid(alg, simple.lhs, simple.rhs));
    }
    int budget = 60;
    detail::for_each_bpl_model(3, names, [&](const BplModel& m) {
      CHECK(sequent_true(lift_bpl(m), simple));
      return --budget > 0;
    });
  }
}

TEST_CASE("refutations are verified countermodels", "[property]") {
  std::mt19937 rng(1349);
  int refuted = 0;
  for (int i = 0; i < 40; ++i) {
    FormulaPtr f = testutil::random_formula(rng, 3, 2);
    Verdict v = prove({mk_leaf(mk_top()), f});
    if (v.kind != Verdict::Kind::Refuted) continue;
    ++refuted;
    CHECK(sequent_failure_state(*v.model, {mk_top(), f}) == v.state);
  }
  CHECK(refuted > 5);
}

TEST_CASE("unprovable-but-unrefutable inputs report their bounds") {
  SearchConfig tiny;
  tiny.depth_bound = 1;
  tiny.contraction_budget = 0;
  tiny.countermodel_size = 0;
  Verdict v = prove_text("top |- p & (p -> q) -> (top -> q)", tiny);
  CHECK(v.kind == Verdict::Kind::Unknown);
  CHECK(v.report.depth_bound == 1);
}

TEST_CASE("disjunction probe") {
  DisjunctionReport r1 = disjunction_property_probe(parse_formula("p -> p"), mk_prop("q"));
  CHECK(r1.left.kind == Verdict::Kind::Proved);
  CHECK(r1.some_side_proved());

  DisjunctionReport r2 = disjunction_property_probe(mk_bot(), mk_top());
  CHECK(r2.right.kind == Verdict::Kind::Proved);
  CHECK(r2.left.kind != Verdict::Kind::Proved);
}

TEST_CASE("derivable half of the formula-to-sequent bridge") {
  // If the single-leaf sequent B |- A is provable, so is top |- B -> A.
  for (const auto& [b, a] : std::vector<std::pair<std::string, std::string>>{
           {"p", "p"}, {"p & q", "q & p"}, {"p & (q | r)", "(p & q) | (p & r)"}}) {
    REQUIRE(prove_text(b + " |- " + a).kind == Verdict::Kind::Proved);
    expect_proved("top |- (" + b + ") -> (" + a + ")");
  }
}
