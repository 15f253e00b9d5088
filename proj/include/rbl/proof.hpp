#pragma once

#include <string>
#include <vector>

#include "rbl/errors.hpp"
#include "rbl/sexpr.hpp"
#include "rbl/structure.hpp"

/// Proof trees for the structured sequent calculus, and the rule-by-rule
/// checker.  Every node records the hole address its rule acted at, so a
/// stored proof re-checks byte-exactly.
///
/// Rules, with premises above and conclusion below ('*' is either ',' or ';'):
///
///   (Id)  A |- A        (Top)  A |- top        (Bot)  bot |- A
///
///   (->L)  D |- A   G[B] |- C        (->R)  A , G |- B
///          ------------------               -----------      (G nonempty)
///          G[D , (A->B)] |- C               G |- A -> B
///
///   (<-L)  G[A] |- C   D |- B        (<-R)  G , B |- A
///          ------------------               -----------      (G nonempty)
///          G[(A<-B) , D] |- C               G |- A <- B
///
///   (*L)  G[A , B] |- C              (*R)  G |- A   D |- B
///         ---------------                  ----------------
///         G[A * B] |- C                    G , D |- A * B
///
///   (&L)  G[A ; B] |- C              (&R)  G |- A   G |- B
///         ---------------                  ----------------
///         G[A & B] |- C                    G |- A & B
///
///   (|L)  G[A] |- C   G[B] |- C      (|Ri)  G |- Ai
///         ---------------------             ------------
///         G[A | B] |- C                     G |- A1 | A2
///
///   (;C)  G[D ; D] |- A              (,C)  G[(L , D) , D] |- A
///         -------------                    --------------------
///         G[D] |- A                        G[L , D] |- A
///
///   (;E)  G[D ; L] |- A              (W1)  G[D] |- A      (W2)  G[D] |- A
///         -------------                    -------------        -------------
///         G[L ; D] |- A                    G[D' * D] |- A       G[D * D'] |- A
///
///   (;A1)  G[(D1 ; D2) ; D3] |- A    (;A2)  G[D1 ; (D2 ; D3)] |- A
///          ----------------------           ----------------------
///          G[D1 ; (D2 ; D3)] |- A           G[(D1 ; D2) ; D3] |- A
///
///   (Cut)  D |- A   G[A] |- B        (Mix)  D |- A   G[A]...[A] |- B
///          ----------------                 -----------------------
///          G[D] |- B                        G[D]...[D] |- B
///
/// Profile extras (not in the core rule set):
///
///   (,C*)  G[D , D] |- A   (,A2)  G[D1 , (D2 , D3)] |- A   (,E)  G[D , L] |- A
///          -------------          ----------------------         -------------
///          G[D] |- A              G[(D1 , D2) , D3] |- A          G[L , D] |- A
///
///   (timp)  top -> A |- A
///
/// The nonempty side conditions on ->R, <-R and on the ,C prefix L hold by
/// construction: structures always carry at least one leaf.

namespace rbl {

enum class RuleId : std::uint8_t {
  Id, Top, Bot,
  RImpL, RImpR, LImpL, LImpR,
  ProdL, ProdR, AndL, AndR, OrL, OrR1, OrR2,
  OMeetC, OProdC, OMeetE, OMeetA1, OMeetA2,
  W1, W2,
  Cut, Mix,
  OProdCStar, OProdA2, OProdE, TopImpAxiom,
};

enum class Profile : std::uint8_t { Core, LJ, TopImp };

inline bool rule_in_profile(RuleId r, Profile p) {
  switch (r) {
    case RuleId::OProdCStar:
    case RuleId::OProdA2:
    case RuleId::OProdE:
      return p == Profile::LJ;
    case RuleId::TopImpAxiom:
      return p == Profile::TopImp;
    default:
      return true;
  }
}

struct ProofTree {
  Sequent conclusion;
  RuleId rule = RuleId::Id;
  Path path;                    // hole address of the active substructure
  StructKind star = StructKind::OProd;  // W1/W2 only
  std::vector<Path> mix_paths;  // Mix only
  std::vector<ProofTree> premises;
};

inline int proof_size(const ProofTree& t) {
  int n = 1;
  for (const auto& p : t.premises) n += proof_size(p);
  return n;
}

inline int proof_height(const ProofTree& t) {
  int h = 0;
  for (const auto& p : t.premises) h = std::max(h, proof_height(p));
  return h + 1;
}

inline bool contains_rule(const ProofTree& t, RuleId r) {
  if (t.rule == r) return true;
  for (const auto& p : t.premises)
    if (contains_rule(p, r)) return true;
  return false;
}

struct ProofCheckResult {
  bool ok = true;
  std::string reason;
  std::string node;  // conclusion of the first failing node

  explicit operator bool() const { return ok; }
};

namespace detail {

inline ProofCheckResult proof_fail(const ProofTree& t, const std::string& why) {
  return {false, why, to_string(t.conclusion)};
}

}  // namespace detail

inline ProofCheckResult check_proof(const ProofTree& t, Profile profile = Profile::Core) {
  using detail::proof_fail;
  for (const auto& p : t.premises) {
    ProofCheckResult r = check_proof(p, profile);
    if (!r.ok) return r;
  }
  if (!rule_in_profile(t.rule, profile))
    return proof_fail(t, "rule not available in this profile");

  const Sequent& c = t.conclusion;
  auto arity = [&](std::size_t n) { return t.premises.size() == n; };
  auto sub = [&]() { return subtree_at(c.ante, t.path); };
  auto same_succ = [&](const ProofTree& p) { return equal(p.conclusion.succ, c.succ); };

  switch (t.rule) {
    case RuleId::Id:
      if (!arity(0)) return proof_fail(t, "Id takes no premises");
      if (!c.ante->is_leaf() || !equal(c.ante->formula, c.succ))
        return proof_fail(t, "expected A |- A with a single leaf");
      return {};
    case RuleId::Top:
      if (!arity(0)) return proof_fail(t, "Top takes no premises");
      if (!c.ante->is_leaf() || c.succ->kind != Conn::Top)
        return proof_fail(t, "expected A |- top with a single leaf");
      return {};
    case RuleId::Bot:
      if (!arity(0)) return proof_fail(t, "Bot takes no premises");
      if (!c.ante->is_leaf() || c.ante->formula->kind != Conn::Bot)
        return proof_fail(t, "expected bot |- A with a single leaf");
      return {};
    case RuleId::TopImpAxiom:
      if (!arity(0)) return proof_fail(t, "timp takes no premises");
      if (!c.ante->is_leaf() || c.ante->formula->kind != Conn::RImp ||
          c.ante->formula->left->kind != Conn::Top || !equal(c.ante->formula->right, c.succ))
        return proof_fail(t, "expected top -> A |- A with a single leaf");
      return {};

    case RuleId::RImpR: {
      if (!arity(1)) return proof_fail(t, "->R takes one premise");
      const Sequent& p = t.premises[0].conclusion;
      if (c.succ->kind != Conn::RImp) return proof_fail(t, "succedent must be A -> B");
      if (p.ante->kind != StructKind::OProd || !p.ante->left->is_leaf() ||
          !equal(p.ante->left->formula, c.succ->left) || !equal(p.ante->right, c.ante) ||
          !equal(p.succ, c.succ->right))
        return proof_fail(t, "expected premise A , G |- B for conclusion G |- A -> B");
      return {};
    }
    case RuleId::LImpR: {
      if (!arity(1)) return proof_fail(t, "<-R takes one premise");
      const Sequent& p = t.premises[0].conclusion;
      if (c.succ->kind != Conn::LImp) return proof_fail(t, "succedent must be A <- B");
      if (p.ante->kind != StructKind::OProd || !p.ante->right->is_leaf() ||
          !equal(p.ante->right->formula, c.succ->right) || !equal(p.ante->left, c.ante) ||
          !equal(p.succ, c.succ->left))
        return proof_fail(t, "expected premise G , B |- A for conclusion G |- A <- B");
      return {};
    }
    case RuleId::RImpL: {
      if (!arity(2)) return proof_fail(t, "->L takes two premises");
      StructurePtr s = sub();
      if (s->kind != StructKind::OProd || !s->right->is_leaf() ||
          s->right->formula->kind != Conn::RImp)
        return proof_fail(t, "active substructure must be D , (A -> B)");
      const FormulaPtr& imp = s->right->formula;
      const Sequent& p1 = t.premises[0].conclusion;
      const Sequent& p2 = t.premises[1].conclusion;
      if (!equal(p1.ante, s->left) || !equal(p1.succ, imp->left))
        return proof_fail(t, "first premise must be D |- A");
      if (!equal(p2.ante, replace_at(c.ante, t.path, mk_leaf(imp->right))) || !same_succ(t.premises[1]))
        return proof_fail(t, "second premise must be G[B] |- C");
      return {};
    }
    case RuleId::LImpL: {
      if (!arity(2)) return proof_fail(t, "<-L takes two premises");
      StructurePtr s = sub();
      if (s->kind != StructKind::OProd || !s->left->is_leaf() ||
          s->left->formula->kind != Conn::LImp)
        return proof_fail(t, "active substructure must be (A <- B) , D");
      const FormulaPtr& imp = s->left->formula;
      const Sequent& p1 = t.premises[0].conclusion;
      const Sequent& p2 = t.premises[1].conclusion;
      if (!equal(p1.ante, replace_at(c.ante, t.path, mk_leaf(imp->left))) || !same_succ(t.premises[0]))
        return proof_fail(t, "first premise must be G[A] |- C");
      if (!equal(p2.ante, s->right) || !equal(p2.succ, imp->right))
        return proof_fail(t, "second premise must be D |- B");
      return {};
    }
    case RuleId::ProdL: {
      if (!arity(1)) return proof_fail(t, "*L takes one premise");
      StructurePtr s = sub();
      if (!s->is_leaf() || s->formula->kind != Conn::Prod)
        return proof_fail(t, "active leaf must be A * B");
      StructurePtr expanded =
          mk_oprod(mk_leaf(s->formula->left), mk_leaf(s->formula->right));
      if (!equal(t.premises[0].conclusion.ante, replace_at(c.ante, t.path, expanded)) ||
          !same_succ(t.premises[0]))
        return proof_fail(t, "premise must be G[A , B] |- C");
      return {};
    }
    case RuleId::ProdR: {
      if (!arity(2)) return proof_fail(t, "*R takes two premises");
      if (c.succ->kind != Conn::Prod) return proof_fail(t, "succedent must be A * B");
      if (c.ante->kind != StructKind::OProd)
        return proof_fail(t, "antecedent must split as G , D");
      const Sequent& p1 = t.premises[0].conclusion;
      const Sequent& p2 = t.premises[1].conclusion;
      if (!equal(p1.ante, c.ante->left) || !equal(p1.succ, c.succ->left) ||
          !equal(p2.ante, c.ante->right) || !equal(p2.succ, c.succ->right))
        return proof_fail(t, "premises must be G |- A and D |- B");
      return {};
    }
    case RuleId::AndL: {
      if (!arity(1)) return proof_fail(t, "&L takes one premise");
      StructurePtr s = sub();
      if (!s->is_leaf() || s->formula->kind != Conn::And)
        return proof_fail(t, "active leaf must be A & B");
      StructurePtr expanded =
          mk_omeet(mk_leaf(s->formula->left), mk_leaf(s->formula->right));
      if (!equal(t.premises[0].conclusion.ante, replace_at(c.ante, t.path, expanded)) ||
          !same_succ(t.premises[0]))
        return proof_fail(t, "premise must be G[A ; B] |- C");
      return {};
    }
    case RuleId::AndR: {
      if (!arity(2)) return proof_fail(t, "&R takes two premises");
      if (c.succ->kind != Conn::And) return proof_fail(t, "succedent must be A & B");
      const Sequent& p1 = t.premises[0].conclusion;
      const Sequent& p2 = t.premises[1].conclusion;
      if (!equal(p1.ante, c.ante) || !equal(p2.ante, c.ante) || !equal(p1.succ, c.succ->left) ||
          !equal(p2.succ, c.succ->right))
        return proof_fail(t, "premises must be G |- A and G |- B");
      return {};
    }
    case RuleId::OrL: {
      if (!arity(2)) return proof_fail(t, "|L takes two premises");
      StructurePtr s = sub();
      if (!s->is_leaf() || s->formula->kind != Conn::Or)
        return proof_fail(t, "active leaf must be A | B");
      const Sequent& p1 = t.premises[0].conclusion;
      const Sequent& p2 = t.premises[1].conclusion;
      if (!equal(p1.ante, replace_at(c.ante, t.path, mk_leaf(s->formula->left))) ||
          !equal(p2.ante, replace_at(c.ante, t.path, mk_leaf(s->formula->right))) ||
          !same_succ(t.premises[0]) || !same_succ(t.premises[1]))
        return proof_fail(t, "premises must be G[A] |- C and G[B] |- C");
      return {};
    }
    case RuleId::OrR1:
    case RuleId::OrR2: {
      if (!arity(1)) return proof_fail(t, "|R takes one premise");
      if (c.succ->kind != Conn::Or) return proof_fail(t, "succedent must be A1 | A2");
      const Sequent& p = t.premises[0].conclusion;
      const FormulaPtr& ai = t.rule == RuleId::OrR1 ? c.succ->left : c.succ->right;
      if (!equal(p.ante, c.ante) || !equal(p.succ, ai))
        return proof_fail(t, "premise must be G |- Ai");
      return {};
    }

    case RuleId::OMeetC:
    case RuleId::OProdCStar: {
      if (!arity(1)) return proof_fail(t, "contraction takes one premise");
      StructKind k = t.rule == RuleId::OMeetC ? StructKind::OMeet : StructKind::OProd;
      StructurePtr d = sub();
      if (!equal(t.premises[0].conclusion.ante, replace_at(c.ante, t.path, mk_node(k, d, d))) ||
          !same_succ(t.premises[0]))
        return proof_fail(t, "premise must duplicate the active substructure");
      return {};
    }
    case RuleId::OProdC: {
      if (!arity(1)) return proof_fail(t, ",C takes one premise");
      StructurePtr s = sub();
      if (s->kind != StructKind::OProd)
        return proof_fail(t, "active substructure must be L , D");
      StructurePtr dup = mk_oprod(s, s->right);
      if (!equal(t.premises[0].conclusion.ante, replace_at(c.ante, t.path, dup)) ||
          !same_succ(t.premises[0]))
        return proof_fail(t, "premise must be G[(L , D) , D] |- A");
      return {};
    }
    case RuleId::OMeetE:
    case RuleId::OProdE: {
      if (!arity(1)) return proof_fail(t, "exchange takes one premise");
      StructKind k = t.rule == RuleId::OMeetE ? StructKind::OMeet : StructKind::OProd;
      StructurePtr s = sub();
      if (s->kind != k) return proof_fail(t, "active substructure has the wrong connective");
      if (!equal(t.premises[0].conclusion.ante,
                 replace_at(c.ante, t.path, mk_node(k, s->right, s->left))) ||
          !same_succ(t.premises[0]))
        return proof_fail(t, "premise must swap the two components");
      return {};
    }
    case RuleId::OMeetA1: {
      if (!arity(1)) return proof_fail(t, ";A1 takes one premise");
      StructurePtr s = sub();
      if (s->kind != StructKind::OMeet || s->right->kind != StructKind::OMeet)
        return proof_fail(t, "conclusion substructure must be D1 ; (D2 ; D3)");
      StructurePtr pre = mk_omeet(mk_omeet(s->left, s->right->left), s->right->right);
      if (!equal(t.premises[0].conclusion.ante, replace_at(c.ante, t.path, pre)) ||
          !same_succ(t.premises[0]))
        return proof_fail(t, "premise must be G[(D1 ; D2) ; D3] |- A");
      return {};
    }
    case RuleId::OMeetA2:
    case RuleId::OProdA2: {
      if (!arity(1)) return proof_fail(t, "reassociation takes one premise");
      StructKind k = t.rule == RuleId::OMeetA2 ? StructKind::OMeet : StructKind::OProd;
      StructurePtr s = sub();
      if (s->kind != k || s->left->kind != k)
        return proof_fail(t, "conclusion substructure must be (D1 _ D2) _ D3");
      StructurePtr pre = mk_node(k, s->left->left, mk_node(k, s->left->right, s->right));
      if (!equal(t.premises[0].conclusion.ante, replace_at(c.ante, t.path, pre)) ||
          !same_succ(t.premises[0]))
        return proof_fail(t, "premise must be G[D1 _ (D2 _ D3)] |- A");
      return {};
    }
    case RuleId::W1:
    case RuleId::W2: {
      if (!arity(1)) return proof_fail(t, "weakening takes one premise");
      StructurePtr s = sub();
      if (s->is_leaf() || s->kind != t.star)
        return proof_fail(t, "active substructure must be a node of the tagged kind");
      const StructurePtr& kept = t.rule == RuleId::W1 ? s->right : s->left;
      if (!equal(t.premises[0].conclusion.ante, replace_at(c.ante, t.path, kept)) ||
          !same_succ(t.premises[0]))
        return proof_fail(t, "premise must omit the weakened-in component");
      return {};
    }
    case RuleId::Cut: {
      if (!arity(2)) return proof_fail(t, "cut takes two premises");
      const Sequent& p1 = t.premises[0].conclusion;
      const Sequent& p2 = t.premises[1].conclusion;
      StructurePtr hole = subtree_at(p2.ante, t.path);
      if (!hole->is_leaf() || !equal(hole->formula, p1.succ))
        return proof_fail(t, "second premise must carry the cut formula at the hole");
      if (!equal(c.ante, replace_at(p2.ante, t.path, p1.ante)) || !equal(c.succ, p2.succ))
        return proof_fail(t, "conclusion must be G[D] |- B");
      return {};
    }
    case RuleId::Mix: {
      if (!arity(2)) return proof_fail(t, "mix takes two premises");
      if (t.mix_paths.empty()) return proof_fail(t, "mix must replace at least one occurrence");
      const Sequent& p1 = t.premises[0].conclusion;
      const Sequent& p2 = t.premises[1].conclusion;
      StructurePtr rebuilt = p2.ante;
      for (const auto& mp : t.mix_paths) {
        StructurePtr hole = subtree_at(p2.ante, mp);
        if (!hole->is_leaf() || !equal(hole->formula, p1.succ))
          return proof_fail(t, "every mix path must point at the mix formula");
        rebuilt = replace_at(rebuilt, mp, p1.ante);
      }
      if (!equal(c.ante, rebuilt) || !equal(c.succ, p2.succ))
        return proof_fail(t, "conclusion must replace the marked occurrences");
      return {};
    }
  }
  return proof_fail(t, "unknown rule");
}

// ---------------------------------------------------------------------------
// Serialization:  (RULE PATH "CONCLUSION" PREMISE...)
// PATH is "." for the root or a string of l/r turns; a Mix node carries its
// paths joined with '+'.  The W1/W2 star tag rides on the rule token.

inline std::string rule_token(RuleId r, StructKind star = StructKind::OProd) {
  switch (r) {
    case RuleId::Id: return "id";
    case RuleId::Top: return "top";
    case RuleId::Bot: return "bot";
    case RuleId::RImpL: return "->l";
    case RuleId::RImpR: return "->r";
    case RuleId::LImpL: return "<-l";
    case RuleId::LImpR: return "<-r";
    case RuleId::ProdL: return "*l";
    case RuleId::ProdR: return "*r";
    case RuleId::AndL: return "&l";
    case RuleId::AndR: return "&r";
    case RuleId::OrL: return "|l";
    case RuleId::OrR1: return "|r1";
    case RuleId::OrR2: return "|r2";
    case RuleId::OMeetC: return ";c";
    case RuleId::OProdC: return ",c";
    case RuleId::OMeetE: return ";e";
    case RuleId::OMeetA1: return ";a1";
    case RuleId::OMeetA2: return ";a2";
    case RuleId::W1: return star == StructKind::OProd ? "w1," : "w1;";
    case RuleId::W2: return star == StructKind::OProd ? "w2," : "w2;";
    case RuleId::Cut: return "cut";
    case RuleId::Mix: return "mix";
    case RuleId::OProdCStar: return ",c*";
    case RuleId::OProdA2: return ",a2";
    case RuleId::OProdE: return ",e";
    case RuleId::TopImpAxiom: return "timp";
  }
  return "?";
}

namespace detail {

inline Path path_from_string(const std::string& s) {
  Path p;
  if (s == ".") return p;
  for (char c : s) {
    if (c == 'l') p.push_back(kLeft);
    else if (c == 'r') p.push_back(kRight);
    else throw ParseError(0, {"a path of 'l'/'r' turns or '.'"}, "'" + std::string(1, c) + "'");
  }
  return p;
}

}  // namespace detail

inline void print_proof_rec(const ProofTree& t, std::string& out, int indent) {
  out.append(indent, ' ');
  out += '(';
  out += rule_token(t.rule, t.star);
  out += ' ';
  if (t.rule == RuleId::Mix) {
    std::string ps;
    for (std::size_t i = 0; i < t.mix_paths.size(); ++i) {
      if (i) ps += '+';
      ps += to_string(t.mix_paths[i]);
    }
    out += ps.empty() ? "." : ps;
  } else {
    out += to_string(t.path);
  }
  out += ' ';
  out += quote_atom(to_string(t.conclusion));
  for (const auto& p : t.premises) {
    out += '\n';
    print_proof_rec(p, out, indent + 2);
  }
  out += ')';
}

inline std::string print_proof(const ProofTree& t) {
  std::string out;
  print_proof_rec(t, out, 0);
  out += '\n';
  return out;
}

inline ProofTree proof_from_sexpr(const SExpr& e) {
  if (e.is_atom || e.items.size() < 3 || !e.items[0].is_atom || !e.items[1].is_atom ||
      !e.items[2].is_atom)
    throw ParseError(0, {"(rule path \"conclusion\" premise...)"}, "malformed proof node");
  ProofTree t;
  const std::string& tok = e.items[0].atom;
  bool found = false;
  for (int r = 0; r <= static_cast<int>(RuleId::TopImpAxiom) && !found; ++r) {
    RuleId id = static_cast<RuleId>(r);
    for (StructKind star : {StructKind::OProd, StructKind::OMeet}) {
      if (rule_token(id, star) == tok) {
        t.rule = id;
        t.star = star;
        found = true;
        break;
      }
    }
  }
  if (!found) throw ParseError(0, {"a rule token"}, "'" + tok + "'");
  if (t.rule == RuleId::Mix) {
    std::string ps = e.items[1].atom;
    std::size_t start = 0;
    while (start <= ps.size()) {
      std::size_t plus = ps.find('+', start);
      std::string one = ps.substr(start, plus == std::string::npos ? std::string::npos : plus - start);
      t.mix_paths.push_back(detail::path_from_string(one));
      if (plus == std::string::npos) break;
      start = plus + 1;
    }
  } else {
    t.path = detail::path_from_string(e.items[1].atom);
  }
  t.conclusion = parse_sequent(e.items[2].atom);
  for (std::size_t i = 3; i < e.items.size(); ++i)
    t.premises.push_back(proof_from_sexpr(e.items[i]));
  return t;
}

inline ProofTree parse_proof(std::string_view text) { return proof_from_sexpr(parse_sexpr(text)); }

}  // namespace rbl
