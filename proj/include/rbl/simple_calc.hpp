#pragma once

#include <string>
#include <vector>

#include "rbl/sexpr.hpp"
#include "rbl/structure.hpp"

/// Derivation checker for the two algebraic simple-sequent systems.  The base
/// system carries the weakening axioms Wl/Wr and restricted contraction RC;
/// the starred system replaces them with Top1, Top2 and Tr:
///
///   (Wl) A*top => A   (Wr) top*A => A   (RC) A*B => (A*B)*B
///   (Top1) top => A->A   (Top2) A => top->A
///   (Tr) (A->B)&(B->C) => A->C
///
/// Everything else (Id, Bot, Top, Cut, D, residuation R1-R4, lattice rules)
/// is shared.  Derivations are explicit trees; there is no search here.

namespace rbl {

enum class SimpleRule : std::uint8_t {
  Id, Bot, Top, Cut, D, Wl, Wr, RC,
  R1, R2, R3, R4,
  AndL1, AndL2, AndR, OrL, OrR1, OrR2,
  Top1, Top2, Tr,
};

enum class SystemId : std::uint8_t { SRBL, SStarRBL };

inline bool rule_in_system(SimpleRule r, SystemId sys) {
  switch (r) {
    case SimpleRule::Wl:
    case SimpleRule::Wr:
    case SimpleRule::RC:
      return sys == SystemId::SRBL;
    case SimpleRule::Top1:
    case SimpleRule::Top2:
    case SimpleRule::Tr:
      return sys == SystemId::SStarRBL;
    default:
      return true;
  }
}

inline const char* simple_rule_name(SimpleRule r) {
  switch (r) {
    case SimpleRule::Id: return "id";
    case SimpleRule::Bot: return "bot";
    case SimpleRule::Top: return "top";
    case SimpleRule::Cut: return "cut";
    case SimpleRule::D: return "d";
    case SimpleRule::Wl: return "wl";
    case SimpleRule::Wr: return "wr";
    case SimpleRule::RC: return "rc";
    case SimpleRule::R1: return "r1";
    case SimpleRule::R2: return "r2";
    case SimpleRule::R3: return "r3";
    case SimpleRule::R4: return "r4";
    case SimpleRule::AndL1: return "andl1";
    case SimpleRule::AndL2: return "andl2";
    case SimpleRule::AndR: return "andr";
    case SimpleRule::OrL: return "orl";
    case SimpleRule::OrR1: return "orr1";
    case SimpleRule::OrR2: return "orr2";
    case SimpleRule::Top1: return "top1";
    case SimpleRule::Top2: return "top2";
    case SimpleRule::Tr: return "tr";
  }
  return "?";
}

struct SimpleDerivation {
  SimpleSequent conclusion;
  SimpleRule rule = SimpleRule::Id;
  std::vector<SimpleDerivation> premises;
};

struct SimpleCheckResult {
  bool ok = true;
  std::string reason;         // includes the expected schema on failure
  std::string failing_node;   // rendering of the first bad conclusion

  explicit operator bool() const { return ok; }
};

namespace detail {

inline SimpleCheckResult simple_fail(const SimpleDerivation& d, const std::string& why) {
  return {false, why, to_string(d.conclusion)};
}

inline bool arity_is(const SimpleDerivation& d, std::size_t n) { return d.premises.size() == n; }

}  // namespace detail

inline SimpleCheckResult check_simple(const SimpleDerivation& d, SystemId sys) {
  using detail::simple_fail;
  for (const auto& pr : d.premises) {
    SimpleCheckResult r = check_simple(pr, sys);
    if (!r.ok) return r;
  }
  if (!rule_in_system(d.rule, sys))
    return simple_fail(d, std::string("rule ") + simple_rule_name(d.rule) + " is not part of this system");

  const FormulaPtr L = d.conclusion.lhs, R = d.conclusion.rhs;
  auto need_arity = [&](std::size_t n) -> bool { return d.premises.size() == n; };
  auto bad_arity = [&]() { return simple_fail(d, "wrong number of premises"); };

  switch (d.rule) {
    case SimpleRule::Id:
      if (!need_arity(0)) return bad_arity();
      if (!equal(L, R)) return simple_fail(d, "expected A => A");
      return {};
    case SimpleRule::Bot:
      if (!need_arity(0)) return bad_arity();
      if (L->kind != Conn::Bot) return simple_fail(d, "expected bot => A");
      return {};
    case SimpleRule::Top:
      if (!need_arity(0)) return bad_arity();
      if (R->kind != Conn::Top) return simple_fail(d, "expected A => top");
      return {};
    case SimpleRule::D:
      if (!need_arity(0)) return bad_arity();
      if (L->kind == Conn::And && L->right->kind == Conn::Or && R->kind == Conn::Or &&
          R->left->kind == Conn::And && R->right->kind == Conn::And &&
          equal(R->left->left, L->left) && equal(R->right->left, L->left) &&
          equal(R->left->right, L->right->left) && equal(R->right->right, L->right->right))
        return {};
      return simple_fail(d, "expected A&(B|C) => (A&B)|(A&C)");
    case SimpleRule::Wl:
      if (!need_arity(0)) return bad_arity();
      if (L->kind == Conn::Prod && L->right->kind == Conn::Top && equal(L->left, R)) return {};
      return simple_fail(d, "expected A*top => A");
    case SimpleRule::Wr:
      if (!need_arity(0)) return bad_arity();
      if (L->kind == Conn::Prod && L->left->kind == Conn::Top && equal(L->right, R)) return {};
      return simple_fail(d, "expected top*A => A");
    case SimpleRule::RC:
      if (!need_arity(0)) return bad_arity();
      if (L->kind == Conn::Prod && R->kind == Conn::Prod && equal(R->left, L) &&
          equal(R->right, L->right))
        return {};
      return simple_fail(d, "expected A*B => (A*B)*B");
    case SimpleRule::Top1:
      if (!need_arity(0)) return bad_arity();
      if (L->kind == Conn::Top && R->kind == Conn::RImp && equal(R->left, R->right)) return {};
      return simple_fail(d, "expected top => A->A");
    case SimpleRule::Top2:
      if (!need_arity(0)) return bad_arity();
      if (R->kind == Conn::RImp && R->left->kind == Conn::Top && equal(R->right, L)) return {};
      return simple_fail(d, "expected A => top->A");
    case SimpleRule::Tr:
      if (!need_arity(0)) return bad_arity();
      if (L->kind == Conn::And && L->left->kind == Conn::RImp && L->right->kind == Conn::RImp &&
          R->kind == Conn::RImp && equal(L->left->right, L->right->left) &&
          equal(L->left->left, R->left) && equal(L->right->right, R->right))
        return {};
      return simple_fail(d, "expected (A->B)&(B->C) => A->C");
    case SimpleRule::Cut: {
      if (!need_arity(2)) return bad_arity();
      const SimpleSequent& p1 = d.premises[0].conclusion;
      const SimpleSequent& p2 = d.premises[1].conclusion;
      if (equal(p1.rhs, p2.lhs) && equal(L, p1.lhs) && equal(R, p2.rhs)) return {};
      return simple_fail(d, "expected cut: A=>B and B=>C give A=>C");
    }
    case SimpleRule::R1: {
      if (!need_arity(1)) return bad_arity();
      const SimpleSequent& p = d.premises[0].conclusion;
      if (p.lhs->kind == Conn::Prod && R->kind == Conn::RImp && equal(L, p.lhs->right) &&
          equal(R->left, p.lhs->left) && equal(R->right, p.rhs))
        return {};
      return simple_fail(d, "expected R1: A*B => C gives B => A->C");
    }
    case SimpleRule::R2: {
      if (!need_arity(1)) return bad_arity();
      const SimpleSequent& p = d.premises[0].conclusion;
      if (p.rhs->kind == Conn::RImp && L->kind == Conn::Prod && equal(L->left, p.rhs->left) &&
          equal(L->right, p.lhs) && equal(R, p.rhs->right))
        return {};
      return simple_fail(d, "expected R2: B => A->C gives A*B => C");
    }
    case SimpleRule::R3: {
      if (!need_arity(1)) return bad_arity();
      const SimpleSequent& p = d.premises[0].conclusion;
      if (p.lhs->kind == Conn::Prod && R->kind == Conn::LImp && equal(L, p.lhs->left) &&
          equal(R->left, p.rhs) && equal(R->right, p.lhs->right))
        return {};
      return simple_fail(d, "expected R3: A*B => C gives A => C<-B");
    }
    case SimpleRule::R4: {
      if (!need_arity(1)) return bad_arity();
      const SimpleSequent& p = d.premises[0].conclusion;
      if (p.rhs->kind == Conn::LImp && L->kind == Conn::Prod && equal(L->left, p.lhs) &&
          equal(L->right, p.rhs->right) && equal(R, p.rhs->left))
        return {};
      return simple_fail(d, "expected R4: A => C<-B gives A*B => C");
    }
    case SimpleRule::AndL1:
    case SimpleRule::AndL2: {
      if (!need_arity(1)) return bad_arity();
      const SimpleSequent& p = d.premises[0].conclusion;
      if (L->kind != Conn::And || !equal(R, p.rhs))
        return simple_fail(d, "expected AndL: Ai => B gives A1&A2 => B");
      const FormulaPtr& ai = d.rule == SimpleRule::AndL1 ? L->left : L->right;
      if (equal(ai, p.lhs)) return {};
      return simple_fail(d, "expected AndL: Ai => B gives A1&A2 => B");
    }
    case SimpleRule::AndR: {
      if (!need_arity(2)) return bad_arity();
      const SimpleSequent& p1 = d.premises[0].conclusion;
      const SimpleSequent& p2 = d.premises[1].conclusion;
      if (R->kind == Conn::And && equal(p1.lhs, L) && equal(p2.lhs, L) &&
          equal(R->left, p1.rhs) && equal(R->right, p2.rhs))
        return {};
      return simple_fail(d, "expected AndR: C=>A and C=>B give C => A&B");
    }
    case SimpleRule::OrL: {
      if (!need_arity(2)) return bad_arity();
      const SimpleSequent& p1 = d.premises[0].conclusion;
      const SimpleSequent& p2 = d.premises[1].conclusion;
      if (L->kind == Conn::Or && equal(p1.rhs, R) && equal(p2.rhs, R) &&
          equal(L->left, p1.lhs) && equal(L->right, p2.lhs))
        return {};
      return simple_fail(d, "expected OrL: A=>C and B=>C give A|B => C");
    }
    case SimpleRule::OrR1:
    case SimpleRule::OrR2: {
      if (!need_arity(1)) return bad_arity();
      const SimpleSequent& p = d.premises[0].conclusion;
      if (R->kind != Conn::Or || !equal(L, p.lhs))
        return simple_fail(d, "expected OrR: C => Ai gives C => A1|A2");
      const FormulaPtr& ai = d.rule == SimpleRule::OrR1 ? R->left : R->right;
      if (equal(ai, p.rhs)) return {};
      return simple_fail(d, "expected OrR: C => Ai gives C => A1|A2");
    }
  }
  return simple_fail(d, "unknown rule");
}

// ---------------------------------------------------------------------------
// The six constructions witnessing that the two systems derive each other's
// axioms, instantiated at fresh atoms.

struct EquivalenceWitness {
  SimpleDerivation derivation;
  SystemId system;
  std::string name;
};

namespace detail {

inline SimpleDerivation leaf(SimpleRule r, const std::string& seq) {
  return {parse_simple_sequent(seq), r, {}};
}
inline SimpleDerivation node(SimpleRule r, const std::string& seq,
                             std::vector<SimpleDerivation> prem) {
  return {parse_simple_sequent(seq), r, std::move(prem)};
}

/// U => V yields U*W => V*W via Id, R3 and Cut.
inline SimpleDerivation mono_prod_left(SimpleDerivation u_to_v, const std::string& u,
                                       const std::string& v, const std::string& w) {
  auto vw = "(" + v + ") * (" + w + ")";
  SimpleDerivation idvw = leaf(SimpleRule::Id, vw + " => " + vw);
  SimpleDerivation r3 = node(SimpleRule::R3, v + " => (" + vw + ") <- (" + w + ")", {idvw});
  SimpleDerivation cut =
      node(SimpleRule::Cut, u + " => (" + vw + ") <- (" + w + ")", {std::move(u_to_v), r3});
  return node(SimpleRule::R4, "(" + u + ") * (" + w + ") => " + vw, {cut});
}

}  // namespace detail

inline std::vector<EquivalenceWitness> equivalence_witnesses() {
  using namespace detail;
  std::vector<EquivalenceWitness> out;

  // In the base system: top => a->a from Wl by R1.
  out.push_back({node(SimpleRule::R1, "top => a -> a", {leaf(SimpleRule::Wl, "a * top => a")}),
                 SystemId::SRBL, "top1-from-wl"});
  // a => top->a from Wr by R1.
  out.push_back({node(SimpleRule::R1, "a => top -> a", {leaf(SimpleRule::Wr, "top * a => a")}),
                 SystemId::SRBL, "top2-from-wr"});

  // Transitivity from RC.  Writing X = (a->b)&(b->c):
  //   X => a->b and X => b->c      (Id + AndL)
  //   a*X => b and b*X => c        (R2)
  //   (a*X)*X => b*X               (product monotonicity in the left slot)
  //   (a*X)*X => c                 (Cut)
  //   a*X => (a*X)*X               (RC)
  //   a*X => c, then X => a->c     (Cut, R1)
  {
    const std::string X = "(a -> b) & (b -> c)";
    SimpleDerivation xab = node(SimpleRule::AndL1, X + " => a -> b",
                                {leaf(SimpleRule::Id, "a -> b => a -> b")});
    SimpleDerivation xbc = node(SimpleRule::AndL2, X + " => b -> c",
                                {leaf(SimpleRule::Id, "b -> c => b -> c")});
    SimpleDerivation ax_b = node(SimpleRule::R2, "a * (" + X + ") => b", {xab});
    SimpleDerivation bx_c = node(SimpleRule::R2, "b * (" + X + ") => c", {xbc});
    SimpleDerivation mono =
        mono_prod_left(std::move(ax_b), "a * (" + X + ")", "b", X);
    SimpleDerivation axx_c =
        node(SimpleRule::Cut, "(a * (" + X + ")) * (" + X + ") => c", {std::move(mono), std::move(bx_c)});
    SimpleDerivation rc = leaf(SimpleRule::RC, "a * (" + X + ") => (a * (" + X + ")) * (" + X + ")");
    SimpleDerivation ax_c = node(SimpleRule::Cut, "a * (" + X + ") => c", {std::move(rc), std::move(axx_c)});
    out.push_back({node(SimpleRule::R1, X + " => a -> c", {std::move(ax_c)}),
                   SystemId::SRBL, "tr-from-rc"});
  }

  // In the starred system: a*top => a from Top1 by R2.
  out.push_back({node(SimpleRule::R2, "a * top => a", {leaf(SimpleRule::Top1, "top => a -> a")}),
                 SystemId::SStarRBL, "wl-from-top1"});
  // top*a => a from Top2 by R2.
  out.push_back({node(SimpleRule::R2, "top * a => a", {leaf(SimpleRule::Top2, "a => top -> a")}),
                 SystemId::SStarRBL, "wr-from-top2"});

  // Restricted contraction from Tr:
  //   b => a->(a*b) and b => (a*b)->((a*b)*b)     (Id + R1)
  //   b => (a->(a*b)) & ((a*b)->((a*b)*b))        (AndR)
  //   ... => a->((a*b)*b)                         (Tr)
  //   b => a->((a*b)*b), then a*b => (a*b)*b      (Cut, R2)
  {
    SimpleDerivation r1a = node(SimpleRule::R1, "b => a -> (a * b)",
                                {leaf(SimpleRule::Id, "a * b => a * b")});
    SimpleDerivation r1b = node(SimpleRule::R1, "b => (a * b) -> ((a * b) * b)",
                                {leaf(SimpleRule::Id, "(a * b) * b => (a * b) * b")});
    SimpleDerivation both = node(
        SimpleRule::AndR, "b => (a -> (a * b)) & ((a * b) -> ((a * b) * b))",
        {std::move(r1a), std::move(r1b)});
    SimpleDerivation tr = leaf(
        SimpleRule::Tr,
        "(a -> (a * b)) & ((a * b) -> ((a * b) * b)) => a -> ((a * b) * b)");
    SimpleDerivation cut =
        node(SimpleRule::Cut, "b => a -> ((a * b) * b)", {std::move(both), std::move(tr)});
    out.push_back({node(SimpleRule::R2, "a * b => (a * b) * b", {std::move(cut)}),
                   SystemId::SStarRBL, "rc-from-tr"});
  }
  return out;
}

// ---------------------------------------------------------------------------
// S-expression file format:  (rule "LHS => RHS" premise...)

inline SimpleRule simple_rule_from_name(const std::string& name) {
  for (int r = 0; r <= static_cast<int>(SimpleRule::Tr); ++r)
    if (name == simple_rule_name(static_cast<SimpleRule>(r))) return static_cast<SimpleRule>(r);
  throw ParseError(0, {"a simple-calculus rule name"}, "'" + name + "'");
}

inline SimpleDerivation simple_derivation_from_sexpr(const SExpr& e) {
  if (e.is_atom || e.items.size() < 2 || !e.items[0].is_atom || !e.items[1].is_atom)
    throw ParseError(0, {"(rule \"LHS => RHS\" premise...)"}, "malformed derivation");
  SimpleDerivation d;
  d.rule = simple_rule_from_name(e.items[0].atom);
  d.conclusion = parse_simple_sequent(e.items[1].atom);
  for (std::size_t i = 2; i < e.items.size(); ++i)
    d.premises.push_back(simple_derivation_from_sexpr(e.items[i]));
  return d;
}

inline SimpleDerivation parse_simple_derivation(std::string_view text) {
  return simple_derivation_from_sexpr(parse_sexpr(text));
}

inline void print_simple_derivation_rec(const SimpleDerivation& d, std::string& out) {
  out += '(';
  out += simple_rule_name(d.rule);
  out += ' ';
  out += quote_atom(to_string(d.conclusion));
  for (const auto& p : d.premises) {
    out += ' ';
    print_simple_derivation_rec(p, out);
  }
  out += ')';
}

inline std::string print_simple_derivation(const SimpleDerivation& d) {
  std::string out;
  print_simple_derivation_rec(d, out);
  return out;
}

}  // namespace rbl
