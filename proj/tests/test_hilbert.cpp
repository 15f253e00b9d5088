#include <catch2/catch_amalgamated.hpp>

#include "rbl/hilbert.hpp"
#include "rbl/kripke.hpp"

using namespace rbl;

TEST_CASE("axiom_instance") {
  FormulaPtr p = mk_prop("p"), q = mk_prop("q"), r = mk_prop("r");
  CHECK(equal(axiom_instance(1, {{"A", p}}), parse_formula("p -> p")));
  CHECK(equal(axiom_instance(12, {{"A", q}}), parse_formula("bot -> q")));
  CHECK(equal(axiom_instance(11, {{"A", p}, {"B", q}, {"C", r}}),
              parse_formula("p & (q | r) -> (p & q) | (p & r)")));
  CHECK_THROWS_AS(axiom_instance(3, {{"A", p}}), MissingMetaVar);
  CHECK_THROWS_AS(axiom_instance(0, {}), std::out_of_range);
}

TEST_CASE("every axiom schema is valid on small frames") {
  Subst subst{{"A", mk_prop("p")}, {"B", mk_prop("q")}, {"C", mk_prop("r")}};
  for (int id = 1; id <= axiom_count(); ++id) {
    FormulaPtr inst = axiom_instance(id, subst);
    INFO("axiom " << id << ": " << to_string(inst));
    CHECK(bpl_valid_upto(inst, 3).valid);
  }
}

TEST_CASE("check_hilbert_proof") {
  FormulaPtr p = mk_prop("p"), q = mk_prop("q");

  HilbertProof one;
  one.steps.push_back({parse_formula("p -> p"), true, 1, Subst{{"A", p}}, 0, 0});
  CHECK(check_hilbert_proof(one, parse_formula("p -> p")).ok);

  HilbertProof bad;
  bad.steps.push_back({parse_formula("p -> (q -> p)"), true, 2, std::nullopt, 0, 0});
  bad.steps.push_back({p, true, 1, std::nullopt, 0, 0});  // p is no axiom instance
  auto r = check_hilbert_proof(bad, p);
  CHECK_FALSE(r.ok);
  CHECK(r.bad_step == 2);

  // s1 = (p->p) -> ((p->p) | q) by axiom 7, s2 = p->p by axiom 1,
  // s3 = (p->p) | q by mp(2,1).
  HilbertProof mp;
  mp.steps.push_back({parse_formula("(p -> p) -> ((p -> p) | q)"), true, 7, std::nullopt, 0, 0});
  mp.steps.push_back({parse_formula("p -> p"), true, 1, std::nullopt, 0, 0});
  HilbertStep s3;
  s3.formula = parse_formula("(p -> p) | q");
  s3.is_axiom = false;
  s3.mp_i = 2;
  s3.mp_j = 1;
  mp.steps.push_back(s3);
  CHECK(check_hilbert_proof(mp, parse_formula("(p -> p) | q")).ok);

  // Swapping the references must fail.
  std::swap(mp.steps[2].mp_i, mp.steps[2].mp_j);
  CHECK_FALSE(check_hilbert_proof(mp, parse_formula("(p -> p) | q")).ok);
}

TEST_CASE("hilbert proof file format") {
  std::string text =
      "# disjunction intro\n"
      "1. (p -> p) -> ((p -> p) | q) ; ax 7\n"
      "2. p -> p ; ax 1\n"
      "3. (p -> p) | q ; mp 2 1\n";
  HilbertProof p = parse_hilbert_proof(text);
  REQUIRE(p.steps.size() == 3);
  CHECK(check_hilbert_proof(p, parse_formula("(p -> p) | q")).ok);
  HilbertProof again = parse_hilbert_proof(print_hilbert_proof(p));
  CHECK(check_hilbert_proof(again, parse_formula("(p -> p) | q")).ok);
  CHECK_THROWS_AS(parse_hilbert_proof("2. p ; ax 1\n"), ParseError);
  CHECK_THROWS_AS(parse_hilbert_proof("1. p ; zz 1\n"), ParseError);
}

TEST_CASE("kikuchi schemas") {
  FormulaPtr p = mk_prop("p"), q = mk_prop("q"), r = mk_prop("r"), d = mk_prop("d");
  Subst s{{"A", p}, {"B", q}, {"C", r}};

  CHECK(equal(kikuchi_schema(KikuchiSchema::I, {}, s), parse_formula("p -> p")));
  CHECK(equal(kikuchi_schema(KikuchiSchema::K, {}, s), parse_formula("p -> (q -> p)")));
  CHECK(equal(kikuchi_schema(KikuchiSchema::Bstar, {}, s),
              parse_formula("(q -> r) -> ((p -> q) -> (p -> r))")));
  CHECK(equal(kikuchi_schema(KikuchiSchema::Bstar, {d}, s),
              parse_formula("(d -> (q -> r)) -> ((d -> (p -> q)) -> (d -> (p -> r)))")));
  CHECK_THROWS_AS(kikuchi_schema(KikuchiSchema::Bstar, {}, Subst{{"A", p}}), MissingMetaVar);
}

TEST_CASE("kikuchi B* instances are valid on small frames") {
  FormulaPtr p = mk_prop("p"), q = mk_prop("q"), r = mk_prop("r");
  Subst s{{"A", p}, {"B", q}, {"C", r}};
  std::vector<std::vector<FormulaPtr>> gammas = {
      {}, {mk_prop("d")}, {mk_prop("d"), mk_prop("e")}, {mk_rimp(p, q)}};
  for (const auto& g : gammas) {
    FormulaPtr inst = kikuchi_schema(KikuchiSchema::Bstar, g, s);
    INFO(to_string(inst));
    CHECK(bpl_valid_upto(inst, 3).valid);
  }
}
