#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "rbl/convert.hpp"
#include "rbl/proof.hpp"

/// Mix elimination: rewrites a proof so that no Mix (or Cut) node remains
/// whose mix formula is anything other than top or bot.
///
/// The reducer works on a family of replacements: each marked occurrence of
/// the mix formula carries its own premise proof.  The outer induction is on
/// the mix formula; within it, commuting past the right premise's last rule
/// descends that proof, and commuting past a left premise's last rule
/// replaces one family member by its own premise.  Keeping per-occurrence
/// premises is what lets two-premise rules (|L in particular) re-apply at a
/// single occurrence while the other occurrences keep their already-reduced
/// replacements.
///
/// Only the core rule set is supported; proofs using profile-extra rules are
/// rejected (top -> A |- A genuinely blocks elimination).

namespace rbl {

namespace mixdetail {

struct Entry {
  Path pos;         // leaf position of the mix formula in the right premise
  ProofTree proof;  // proves  Delta_pos |- A
};

using Family = std::vector<Entry>;

inline bool is_residual_mix_formula(const FormulaPtr& f) {
  return f->kind == Conn::Top || f->kind == Conn::Bot;
}

inline StructurePtr replaced_antecedent(const StructurePtr& ante, const Family& fam) {
  StructurePtr out = ante;
  for (const Entry& e : fam) out = replace_at(out, e.pos, e.proof.conclusion.ante);
  return out;
}

/// Position of the principal formula leaf for left rules, when any.
inline bool principal_leaf(const ProofTree& t, Path& out) {
  switch (t.rule) {
    case RuleId::ProdL:
    case RuleId::AndL:
    case RuleId::OrL:
      out = t.path;
      return true;
    case RuleId::RImpL:
      out = t.path + kRight;
      return true;
    case RuleId::LImpL:
      out = t.path + kLeft;
      return true;
    default:
      return false;
  }
}

/// Conclusion-position -> premise-position transfer for one rule application.
/// Returns the list of (premise index, position) images; an empty list means
/// the position sits inside weakened-in material and is simply baked into
/// the rebuilt conclusion.
inline std::vector<std::pair<int, Path>> transfer_position(const ProofTree& t, const Path& p) {
  const Path& pi = t.path;
  auto strip = [&](const Path& prefix) {
    return Path(p.begin() + static_cast<long>(prefix.size()), p.end());
  };
  switch (t.rule) {
    case RuleId::RImpR: return {{0, concat({kRight}, p)}};
    case RuleId::LImpR: return {{0, concat({kLeft}, p)}};
    case RuleId::ProdR:
      if (!p.empty() && p[0] == kLeft) return {{0, Path(p.begin() + 1, p.end())}};
      return {{1, Path(p.begin() + 1, p.end())}};
    case RuleId::AndR: return {{0, p}, {1, p}};
    case RuleId::OrR1:
    case RuleId::OrR2: return {{0, p}};
    case RuleId::RImpL:
      if (is_prefix(pi + kLeft, p)) return {{0, strip(pi + kLeft)}};
      return {{1, p}};
    case RuleId::LImpL:
      if (is_prefix(pi + kRight, p)) return {{1, strip(pi + kRight)}};
      return {{0, p}};
    case RuleId::ProdL:
    case RuleId::AndL: return {{0, p}};
    case RuleId::OrL: return {{0, p}, {1, p}};
    case RuleId::OMeetC:
      if (is_prefix(pi, p)) {
        Path rest = strip(pi);
        return {{0, concat(pi + kLeft, rest)}, {0, concat(pi + kRight, rest)}};
      }
      return {{0, p}};
    case RuleId::OProdC:
      if (is_prefix(pi + kLeft, p)) return {{0, concat(pi + kLeft + kLeft, strip(pi + kLeft))}};
      if (is_prefix(pi + kRight, p)) {
        Path rest = strip(pi + kRight);
        return {{0, concat(pi + kLeft + kRight, rest)}, {0, concat(pi + kRight, rest)}};
      }
      return {{0, p}};
    case RuleId::OMeetE:
      if (is_prefix(pi + kLeft, p)) return {{0, concat(pi + kRight, strip(pi + kLeft))}};
      if (is_prefix(pi + kRight, p)) return {{0, concat(pi + kLeft, strip(pi + kRight))}};
      return {{0, p}};
    case RuleId::OMeetA1:
      // premise (d1;d2);d3   conclusion d1;(d2;d3)
      if (is_prefix(pi + kLeft, p)) return {{0, concat(pi + kLeft + kLeft, strip(pi + kLeft))}};
      if (is_prefix(pi + kRight + kLeft, p))
        return {{0, concat(pi + kLeft + kRight, strip(pi + kRight + kLeft))}};
      if (is_prefix(pi + kRight + kRight, p))
        return {{0, concat(pi + kRight, strip(pi + kRight + kRight))}};
      return {{0, p}};
    case RuleId::OMeetA2:
      // premise d1;(d2;d3)   conclusion (d1;d2);d3
      if (is_prefix(pi + kLeft + kLeft, p))
        return {{0, concat(pi + kLeft, strip(pi + kLeft + kLeft))}};
      if (is_prefix(pi + kLeft + kRight, p))
        return {{0, concat(pi + kRight + kLeft, strip(pi + kLeft + kRight))}};
      if (is_prefix(pi + kRight, p))
        return {{0, concat(pi + kRight + kRight, strip(pi + kRight))}};
      return {{0, p}};
    case RuleId::W1:
      if (is_prefix(pi + kLeft, p)) return {};  // inside the weakened-in part
      if (is_prefix(pi + kRight, p)) return {{0, concat(pi, strip(pi + kRight))}};
      return {{0, p}};
    case RuleId::W2:
      if (is_prefix(pi + kRight, p)) return {};
      if (is_prefix(pi + kLeft, p)) return {{0, concat(pi, strip(pi + kLeft))}};
      return {{0, p}};
    default:
      throw MalformedProof("cannot transfer a mix position past rule " + rule_token(t.rule));
  }
}

ProofTree reduce(Family fam, const ProofTree& p2);

/// Commute the family past the last rule of the right premise: reduce each
/// premise with its transferred sub-family, then re-apply the rule.
inline ProofTree commute_right(const Family& fam, const ProofTree& p2) {
  std::vector<Family> per_premise(p2.premises.size());
  for (const Entry& e : fam)
    for (const auto& [idx, pos] : transfer_position(p2, e.pos))
      per_premise[static_cast<std::size_t>(idx)].push_back({pos, e.proof});
  ProofTree out;
  out.rule = p2.rule;
  out.path = p2.path;
  out.star = p2.star;
  out.mix_paths = p2.mix_paths;
  for (std::size_t i = 0; i < p2.premises.size(); ++i)
    out.premises.push_back(per_premise[i].empty() ? p2.premises[i]
                                                  : reduce(std::move(per_premise[i]), p2.premises[i]));
  out.conclusion = {replaced_antecedent(p2.conclusion.ante, fam), p2.conclusion.succ};
  return out;
}

/// Commute the entry at `which` past the last rule of its own proof: swap in
/// the carrier premise, reduce, and re-apply the rule at the occurrence.
inline ProofTree commute_left(Family fam, std::size_t which, const ProofTree& p2) {
  const Path at = fam[which].pos;
  const ProofTree p1 = fam[which].proof;

  auto reapply = [&](ProofTree reduced, int carrier_index) {
    ProofTree out;
    out.rule = p1.rule;
    out.path = concat(at, p1.path);
    out.star = p1.star;
    if (p1.rule == RuleId::Mix)
      for (const Path& mp : p1.mix_paths) out.mix_paths.push_back(concat(at, mp));
    for (std::size_t i = 0; i < p1.premises.size(); ++i)
      out.premises.push_back(static_cast<int>(i) == carrier_index ? ProofTree()  // placeholder
                                                                  : p1.premises[i]);
    out.premises[static_cast<std::size_t>(carrier_index)] = std::move(reduced);
    out.conclusion = {
        replace_at(out.premises[static_cast<std::size_t>(carrier_index)].conclusion.ante, at,
                   p1.conclusion.ante),
        p2.conclusion.succ};
    return out;
  };

  switch (p1.rule) {
    case RuleId::OrL: {
      Family fam_l = fam, fam_r = std::move(fam);
      fam_l[which].proof = p1.premises[0];
      fam_r[which].proof = p1.premises[1];
      ProofTree u = reduce(std::move(fam_l), p2);
      ProofTree v = reduce(std::move(fam_r), p2);
      ProofTree out;
      out.rule = RuleId::OrL;
      out.path = concat(at, p1.path);
      out.conclusion = {replace_at(u.conclusion.ante, out.path,
                                   subtree_at(p1.conclusion.ante, p1.path)),
                       p2.conclusion.succ};
      out.premises.push_back(std::move(u));
      out.premises.push_back(std::move(v));
      return out;
    }
    case RuleId::RImpL:
    case RuleId::LImpL: {
      int carrier = p1.rule == RuleId::RImpL ? 1 : 0;
      fam[which].proof = p1.premises[static_cast<std::size_t>(carrier)];
      return reapply(reduce(std::move(fam), p2), carrier);
    }
    case RuleId::Mix: {  // residual top/bot mix ending the left premise
      fam[which].proof = p1.premises[1];
      return reapply(reduce(std::move(fam), p2), 1);
    }
    default: {  // single-premise antecedent rules
      fam[which].proof = p1.premises[0];
      return reapply(reduce(std::move(fam), p2), 0);
    }
  }
}

/// Reduce a residual top/bot Mix in the right premise: split the family into
/// the copies of the residual premise and the surrounding context, and
/// re-emit the residual mix one copy at a time.
inline ProofTree commute_residual_mix(const Family& fam, const ProofTree& p2) {
  const ProofTree& q1 = p2.premises[0];  // Delta_m |- M
  const ProofTree& q2 = p2.premises[1];  // Gamma_m[M at T] |- B
  std::map<std::size_t, Family> per_copy;
  Family outside;
  for (const Entry& e : fam) {
    bool placed = false;
    for (std::size_t t = 0; t < p2.mix_paths.size() && !placed; ++t) {
      const Path& tp = p2.mix_paths[t];
      if (is_prefix(tp, e.pos)) {
        per_copy[t].push_back({Path(e.pos.begin() + static_cast<long>(tp.size()), e.pos.end()), e.proof});
        placed = true;
      }
    }
    if (!placed) outside.push_back(e);
  }
  ProofTree current = outside.empty() ? q2 : reduce(std::move(outside), q2);
  for (std::size_t t = 0; t < p2.mix_paths.size(); ++t) {
    auto it = per_copy.find(t);
    ProofTree left = it == per_copy.end() ? q1 : reduce(std::move(it->second), q1);
    ProofTree node;
    node.rule = RuleId::Mix;
    node.mix_paths = {p2.mix_paths[t]};
    node.conclusion = {replace_at(current.conclusion.ante, p2.mix_paths[t],
                                  left.conclusion.ante),
                      current.conclusion.succ};
    node.premises.push_back(std::move(left));
    node.premises.push_back(std::move(current));
    current = std::move(node);
  }
  return current;
}

/// Both sides principal: the mix formula drops to its immediate subformulas.
inline ProofTree principal_case(Family fam, std::size_t which, const ProofTree& p2) {
  const Path pi0 = fam[which].pos;
  const ProofTree p1 = fam[which].proof;
  const FormulaPtr A = p1.conclusion.succ;
  Family rest;
  for (std::size_t i = 0; i < fam.size(); ++i)
    if (i != which) rest.push_back(fam[i]);

  auto expect = [&](bool cond, const char* what) {
    if (!cond) throw MalformedProof(std::string("mix reduction: ") + what);
  };

  switch (A->kind) {
    case Conn::Prod: {
      expect(p1.rule == RuleId::ProdR && p2.rule == RuleId::ProdL, "principal * shape");
      const ProofTree& base = p2.premises[0];  // ... [A1 , A2 at pi0] ...
      ProofTree q = rest.empty() ? base : reduce(std::move(rest), base);
      q = reduce({{pi0 + kLeft, p1.premises[0]}}, q);
      q = reduce({{pi0 + kRight, p1.premises[1]}}, q);
      return q;
    }
    case Conn::And: {
      expect(p1.rule == RuleId::AndR && p2.rule == RuleId::AndL, "principal & shape");
      const ProofTree& base = p2.premises[0];  // ... [A1 ; A2 at pi0] ...
      ProofTree q = rest.empty() ? base : reduce(std::move(rest), base);
      q = reduce({{pi0 + kLeft, p1.premises[0]}}, q);
      q = reduce({{pi0 + kRight, p1.premises[1]}}, q);
      ProofTree node;
      node.rule = RuleId::OMeetC;
      node.path = pi0;
      node.conclusion = {replace_at(q.conclusion.ante, pi0, p1.conclusion.ante),
                        q.conclusion.succ};
      node.premises.push_back(std::move(q));
      return node;
    }
    case Conn::Or: {
      expect((p1.rule == RuleId::OrR1 || p1.rule == RuleId::OrR2) && p2.rule == RuleId::OrL,
             "principal | shape");
      const ProofTree& base = p1.rule == RuleId::OrR1 ? p2.premises[0] : p2.premises[1];
      ProofTree q = rest.empty() ? base : reduce(std::move(rest), base);
      return reduce({{pi0, p1.premises[0]}}, q);
    }
    case Conn::RImp: {
      expect(p1.rule == RuleId::RImpR && p2.rule == RuleId::RImpL, "principal -> shape");
      const Path pi = p2.path;  // the ',' node: (D2 , A) with A at pi0 = pi + r
      Family fam_arg, fam_ctx;
      for (const Entry& e : rest) {
        if (is_prefix(pi + kLeft, e.pos))
          fam_arg.push_back({Path(e.pos.begin() + static_cast<long>(pi.size()) + 1, e.pos.end()), e.proof});
        else
          fam_ctx.push_back(e);
      }
      ProofTree q21 = fam_arg.empty() ? p2.premises[0] : reduce(std::move(fam_arg), p2.premises[0]);
      ProofTree q22 = fam_ctx.empty() ? p2.premises[1] : reduce(std::move(fam_ctx), p2.premises[1]);
      // Plug (A1 , Delta) in for A2, then D2' for the A1 leaf.
      ProofTree x = reduce({{pi, p1.premises[0]}}, q22);
      return reduce({{pi + kLeft, std::move(q21)}}, x);
    }
    case Conn::LImp: {
      expect(p1.rule == RuleId::LImpR && p2.rule == RuleId::LImpL, "principal <- shape");
      const Path pi = p2.path;  // the ',' node: (A , D2) with A at pi0 = pi + l
      Family fam_arg, fam_ctx;
      for (const Entry& e : rest) {
        if (is_prefix(pi + kRight, e.pos))
          fam_arg.push_back({Path(e.pos.begin() + static_cast<long>(pi.size()) + 1, e.pos.end()), e.proof});
        else
          fam_ctx.push_back(e);
      }
      ProofTree q21 = fam_ctx.empty() ? p2.premises[0] : reduce(std::move(fam_ctx), p2.premises[0]);
      ProofTree q22 = fam_arg.empty() ? p2.premises[1] : reduce(std::move(fam_arg), p2.premises[1]);
      ProofTree z = reduce({{Path{kRight}, std::move(q22)}}, p1.premises[0]);
      return reduce({{pi, std::move(z)}}, q21);
    }
    default:
      throw MalformedProof("principal mix on an atomic formula");
  }
}

inline ProofTree reduce(Family fam, const ProofTree& p2) {
  const FormulaPtr A = fam.front().proof.conclusion.succ;

  // Right premise axioms.
  if (p2.rule == RuleId::Id) return fam.front().proof;
  if (p2.rule == RuleId::Top) {
    const StructurePtr& delta = fam.front().proof.conclusion.ante;
    ProofTree ax;
    ax.rule = RuleId::Top;
    Path lp = first_leaf_path(delta);
    ax.conclusion = {subtree_at(delta, lp), p2.conclusion.succ};
    return weaken_to(std::move(ax), delta, lp);
  }
  if (p2.rule == RuleId::TopImpAxiom || p2.rule == RuleId::OProdCStar ||
      p2.rule == RuleId::OProdA2 || p2.rule == RuleId::OProdE)
    throw MalformedProof("mix elimination supports only the core rule set");
  if (p2.rule == RuleId::Mix) {
    if (!is_residual_mix_formula(p2.premises[0].conclusion.succ))
      throw MalformedProof("inner mixes must be reduced first");
    return commute_residual_mix(fam, p2);
  }
  if (p2.rule == RuleId::Cut) throw MalformedProof("cuts must be rewritten to mixes first");

  // Principal on the right?
  Path principal;
  std::size_t which = fam.size();
  if (principal_leaf(p2, principal)) {
    for (std::size_t i = 0; i < fam.size(); ++i)
      if (fam[i].pos == principal) { which = i; break; }
  }
  if (which == fam.size()) return commute_right(fam, p2);

  // Left premise at the principal occurrence.
  const ProofTree& p1 = fam[which].proof;
  switch (p1.rule) {
    case RuleId::Id: {
      Family rest;
      for (std::size_t i = 0; i < fam.size(); ++i)
        if (i != which) rest.push_back(fam[i]);
      if (rest.empty()) return p2;
      return reduce(std::move(rest), p2);
    }
    case RuleId::Bot: {
      StructurePtr target = replaced_antecedent(p2.conclusion.ante, fam);
      ProofTree ax;
      ax.rule = RuleId::Bot;
      ax.conclusion = {fam[which].proof.conclusion.ante, p2.conclusion.succ};
      return weaken_to(std::move(ax), target, fam[which].pos);
    }
    case RuleId::ProdR:
    case RuleId::AndR:
    case RuleId::OrR1:
    case RuleId::OrR2:
    case RuleId::RImpR:
    case RuleId::LImpR:
      return principal_case(std::move(fam), which, p2);
    case RuleId::Top:
      throw MalformedProof("mix on top should have been left residual");
    case RuleId::TopImpAxiom:
    case RuleId::OProdCStar:
    case RuleId::OProdA2:
    case RuleId::OProdE:
      throw MalformedProof("mix elimination supports only the core rule set");
    case RuleId::Cut:
      throw MalformedProof("cuts must be rewritten to mixes first");
    case RuleId::Mix:
      if (!is_residual_mix_formula(p1.premises[0].conclusion.succ))
        throw MalformedProof("inner mixes must be reduced first");
      return commute_left(std::move(fam), which, p2);
    default:
      return commute_left(std::move(fam), which, p2);
  }
}

}  // namespace mixdetail

/// Cut nodes become single-occurrence Mix nodes.
inline ProofTree cuts_to_mixes(ProofTree t) {
  for (auto& p : t.premises) p = cuts_to_mixes(std::move(p));
  if (t.rule == RuleId::Cut) {
    t.rule = RuleId::Mix;
    t.mix_paths = {t.path};
    t.path.clear();
  }
  return t;
}

/// Removes every Mix whose mix formula is not top or bot.  The result proves
/// the same sequent and passes check_proof.
inline ProofTree eliminate_mix(const ProofTree& proof) {
  ProofCheckResult chk = check_proof(proof, Profile::Core);
  if (!chk.ok) throw MalformedProof("input proof does not check: " + chk.reason + " at " + chk.node);

  auto rec = [](auto&& self, ProofTree t) -> ProofTree {
    for (auto& p : t.premises) p = self(self, std::move(p));
    if (t.rule == RuleId::Mix &&
        !mixdetail::is_residual_mix_formula(t.premises[0].conclusion.succ)) {
      mixdetail::Family fam;
      for (const Path& p : t.mix_paths) fam.push_back({p, t.premises[0]});
      return mixdetail::reduce(std::move(fam), t.premises[1]);
    }
    return t;
  };
  return rec(rec, cuts_to_mixes(proof));
}

/// True when every remaining Mix node has a top or bot mix formula.
inline bool only_residual_mixes(const ProofTree& t) {
  if ((t.rule == RuleId::Mix || t.rule == RuleId::Cut) &&
      !mixdetail::is_residual_mix_formula(t.premises[0].conclusion.succ))
    return false;
  for (const auto& p : t.premises)
    if (!only_residual_mixes(p)) return false;
  return true;
}

// ---------------------------------------------------------------------------

/// From a proof of G[(D1 , D2) , D3] |- A at `pos`, builds a core proof of
/// G[D1 , (D2 , D3)] |- A: weaken D3 into the left factor, weaken D2 into
/// the right factor, and contract.
inline ProofTree semi_assoc_admissible(const ProofTree& premise_proof, const Path& pos) {
  const StructurePtr s0 = premise_proof.conclusion.ante;
  const FormulaPtr succ = premise_proof.conclusion.succ;
  StructurePtr sub = subtree_at(s0, pos);
  if (sub->kind != StructKind::OProd || sub->left->kind != StructKind::OProd)
    throw std::invalid_argument("substructure is not of shape (D1 , D2) , D3");
  StructurePtr d1 = sub->left->left, d2 = sub->left->right, d3 = sub->right;

  ProofTree w2;
  w2.rule = RuleId::W2;
  w2.star = StructKind::OProd;
  w2.path = pos + kLeft + kRight;
  w2.conclusion = {replace_at(s0, w2.path, mk_oprod(d2, d3)), succ};
  w2.premises.push_back(premise_proof);

  ProofTree w1;
  w1.rule = RuleId::W1;
  w1.star = StructKind::OProd;
  w1.path = pos + kRight;
  w1.conclusion = {replace_at(w2.conclusion.ante, w1.path, mk_oprod(d2, d3)), succ};
  w1.premises.push_back(std::move(w2));

  ProofTree c;
  c.rule = RuleId::OProdC;
  c.path = pos;
  c.conclusion = {replace_at(s0, pos, mk_oprod(d1, mk_oprod(d2, d3))), succ};
  c.premises.push_back(std::move(w1));
  return c;
}

}  // namespace rbl
