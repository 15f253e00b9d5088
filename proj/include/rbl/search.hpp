#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rbl/convert.hpp"
#include "rbl/proof.hpp"
#include "rbl/ternary.hpp"

/// Bounded backward proof search plus countermodel search.
///
/// The search works on literal sequents; ';'-clusters are only canonicalized
/// inside cache keys and loop checks, and cached proofs are adapted to a new
/// literal goal with an explicit ;E/;A1/;A2 chain.  Weakening is used in two
/// ways: axioms close against any leaf (the surrounding structure is weakened
/// in around the axiom), and explicit single-deletion moves expose ','-shapes
/// for the product and implication rules.  Contraction moves are metered by a
/// per-branch budget.  Cut and Mix are never applied backward.
///
/// Move order at each goal, fixed for reproducibility: axiom closures; *L,
/// &L at each leaf; ->R/<-R; &R; |L; *R; |R1/|R2; ->L/<-L at each matching
/// node; weakening deletions; ,C and ;C contractions; LJ-profile moves
/// (,C*, ,E, ,A2).
///
/// Verdicts: Proved carries a checkable cut-free proof.  Refuted carries a
/// ternary countermodel, found by lifting small binary models; under the LJ
/// and top->A profiles refutation is disabled (those calculi prove more than
/// the core semantics validates) and failed searches report Unknown.

namespace rbl {

struct SearchConfig {
  Profile profile = Profile::Core;
  int depth_bound = 14;
  int contraction_budget = 2;
  int countermodel_size = 8;       // max ternary states; lifts use half as many worlds
  long max_nodes = 2000000;        // work cap; exceeding it yields Unknown
};

struct BoundReport {
  int depth_bound = 0;
  int contraction_budget = 0;
  int countermodel_size = 0;
  long nodes_used = 0;
  bool node_capped = false;
};

struct Verdict {
  enum class Kind { Proved, Refuted, Unknown };
  Kind kind = Kind::Unknown;
  std::optional<ProofTree> proof;       // Proved
  std::optional<TernaryModel> model;    // Refuted
  int state = -1;                       // Refuted: state falsifying the sequent
  BoundReport report;
};

inline const char* to_string(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::Proved: return "proved";
    case Verdict::Kind::Refuted: return "refuted";
    case Verdict::Kind::Unknown: return "unknown";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Countermodel search: lifted binary models, sizes ascending.

inline std::optional<std::pair<TernaryModel, int>> find_lifted_countermodel(
    const SimpleSequent& s, int max_states) {
  std::set<std::string> names_set = atoms(s.lhs);
  collect_atoms(s.rhs, names_set);
  std::vector<std::string> names(names_set.begin(), names_set.end());
  int max_worlds = std::min(max_states / 2, 5);
  for (int n = 1; n <= max_worlds; ++n) {
    std::optional<std::pair<TernaryModel, int>> out;
    detail::for_each_bpl_model(n, names, [&](const BplModel& m) {
      TernaryModel j = lift_bpl(m);
      int st = sequent_failure_state(j, s);
      if (st >= 0) {
        out = {std::move(j), st};
        return false;
      }
      return true;
    });
    if (out) return out;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

namespace detail {

inline void collect_all_paths(const StructurePtr& s, Path& here, std::vector<Path>& out) {
  out.push_back(here);
  if (s->is_leaf()) return;
  here.push_back(kLeft);
  collect_all_paths(s->left, here, out);
  here.back() = kRight;
  collect_all_paths(s->right, here, out);
  here.pop_back();
}

inline std::vector<Path> all_paths(const StructurePtr& s) {
  std::vector<Path> out;
  Path here;
  collect_all_paths(s, here, out);
  return out;
}

inline bool has_oprod(const StructurePtr& s) {
  if (s->kind == StructKind::OProd) return true;
  if (s->is_leaf()) return false;
  return has_oprod(s->left) || has_oprod(s->right);
}

class Searcher {
public:
  explicit Searcher(const SearchConfig& cfg) : cfg_(cfg) {}

  std::optional<ProofTree> run(const Sequent& goal) {
    return search(goal, cfg_.depth_bound, cfg_.contraction_budget);
  }

  long nodes_used() const { return nodes_; }
  bool node_capped() const { return capped_; }

private:
  const SearchConfig& cfg_;
  long nodes_ = 0;
  bool capped_ = false;
  std::map<std::string, ProofTree> success_;
  struct FailInfo { int depth; int budget; };
  std::map<std::string, FailInfo> failure_;
  std::set<std::string> on_path_;

  void record_failure(const std::string& key, int depth, int budget) {
    auto it = failure_.find(key);
    if (it == failure_.end()) {
      failure_.emplace(key, FailInfo{depth, budget});
      return;
    }
    // Keep the strongest bound; drop incomparable older entries in favor of
    // the deeper one.
    if (depth >= it->second.depth && budget >= it->second.budget) it->second = {depth, budget};
    else if (depth > it->second.depth) it->second = {depth, budget};
  }

  ProofTree remember(const std::string& key, ProofTree pf) {
    success_.emplace(key, pf);
    return pf;
  }

  std::optional<ProofTree> search(const Sequent& goal, int depth, int budget) {
    if (++nodes_ > cfg_.max_nodes) {
      capped_ = true;
      return std::nullopt;
    }
    const std::string key = canon_key(goal);
    if (auto it = success_.find(key); it != success_.end()) {
      ProofTree pf = it->second;
      if (!equal(pf.conclusion.ante, goal.ante)) pf = convert_structure(std::move(pf), goal.ante);
      return pf;
    }
    if (auto it = failure_.find(key);
        it != failure_.end() && it->second.depth >= depth && it->second.budget >= budget)
      return std::nullopt;
    if (on_path_.count(key)) return std::nullopt;

    // Axiom closures closeable at any depth.
    if (goal.succ->kind == Conn::Top) {
      Path lp = first_leaf_path(goal.ante);
      ProofTree ax;
      ax.rule = RuleId::Top;
      ax.conclusion = {subtree_at(goal.ante, lp), goal.succ};
      return remember(key, weaken_to(std::move(ax), goal.ante, lp));
    }
    for (const Path& lp : leaf_paths(goal.ante)) {
      const FormulaPtr& f = subtree_at(goal.ante, lp)->formula;
      RuleId rule;
      if (equal(f, goal.succ)) rule = RuleId::Id;
      else if (f->kind == Conn::Bot) rule = RuleId::Bot;
      else if (cfg_.profile == Profile::TopImp && f->kind == Conn::RImp &&
               f->left->kind == Conn::Top && equal(f->right, goal.succ))
        rule = RuleId::TopImpAxiom;
      else continue;
      ProofTree ax;
      ax.rule = rule;
      ax.conclusion = {subtree_at(goal.ante, lp), goal.succ};
      return remember(key, weaken_to(std::move(ax), goal.ante, lp));
    }

    if (depth <= 0) {
      record_failure(key, depth, budget);
      return std::nullopt;
    }

    on_path_.insert(key);
    std::optional<ProofTree> found;

    auto attempt = [&](RuleId rule, Path path, StructKind star, std::vector<Sequent> prems,
                       int bcost) -> bool {
      std::vector<ProofTree> sub;
      sub.reserve(prems.size());
      for (const Sequent& pg : prems) {
        auto r = search(pg, depth - 1, budget - bcost);
        if (!r) return false;
        sub.push_back(std::move(*r));
      }
      ProofTree node;
      node.conclusion = goal;
      node.rule = rule;
      node.path = std::move(path);
      node.star = star;
      node.premises = std::move(sub);
      found = std::move(node);
      return true;
    };

    const StructurePtr& G = goal.ante;
    const FormulaPtr& C = goal.succ;
    std::vector<Path> leaves = leaf_paths(G);
    std::vector<Path> nodes = all_paths(G);

    do {
      // Leaf decompositions.
      bool stop = false;
      for (const Path& lp : leaves) {
        const FormulaPtr& f = subtree_at(G, lp)->formula;
        if (f->kind == Conn::Prod) {
          StructurePtr expanded = mk_oprod(mk_leaf(f->left), mk_leaf(f->right));
          if (attempt(RuleId::ProdL, lp, StructKind::OProd,
                      {{replace_at(G, lp, expanded), C}}, 0)) { stop = true; break; }
        } else if (f->kind == Conn::And) {
          StructurePtr expanded = mk_omeet(mk_leaf(f->left), mk_leaf(f->right));
          if (attempt(RuleId::AndL, lp, StructKind::OProd,
                      {{replace_at(G, lp, expanded), C}}, 0)) { stop = true; break; }
        }
      }
      if (stop) break;

      // Right rules.
      if (C->kind == Conn::RImp &&
          attempt(RuleId::RImpR, {}, StructKind::OProd,
                  {{mk_oprod(mk_leaf(C->left), G), C->right}}, 0))
        break;
      if (C->kind == Conn::LImp &&
          attempt(RuleId::LImpR, {}, StructKind::OProd,
                  {{mk_oprod(G, mk_leaf(C->right)), C->left}}, 0))
        break;
      if (C->kind == Conn::And &&
          attempt(RuleId::AndR, {}, StructKind::OProd, {{G, C->left}, {G, C->right}}, 0))
        break;

      // Disjunction on the left.
      for (const Path& lp : leaves) {
        const FormulaPtr& f = subtree_at(G, lp)->formula;
        if (f->kind == Conn::Or &&
            attempt(RuleId::OrL, lp, StructKind::OProd,
                    {{replace_at(G, lp, mk_leaf(f->left)), C},
                     {replace_at(G, lp, mk_leaf(f->right)), C}},
                    0)) { stop = true; break; }
      }
      if (stop) break;

      if (C->kind == Conn::Prod && G->kind == StructKind::OProd &&
          attempt(RuleId::ProdR, {}, StructKind::OProd,
                  {{G->left, C->left}, {G->right, C->right}}, 0))
        break;
      if (C->kind == Conn::Or) {
        if (attempt(RuleId::OrR1, {}, StructKind::OProd, {{G, C->left}}, 0)) break;
        if (attempt(RuleId::OrR2, {}, StructKind::OProd, {{G, C->right}}, 0)) break;
      }

      // Implications on the left.
      for (const Path& np : nodes) {
        StructurePtr s = subtree_at(G, np);
        if (s->kind != StructKind::OProd) continue;
        if (s->right->is_leaf() && s->right->formula->kind == Conn::RImp) {
          const FormulaPtr& imp = s->right->formula;
          if (attempt(RuleId::RImpL, np, StructKind::OProd,
                      {{s->left, imp->left}, {replace_at(G, np, mk_leaf(imp->right)), C}}, 0)) {
            stop = true;
            break;
          }
        }
        if (s->left->is_leaf() && s->left->formula->kind == Conn::LImp) {
          const FormulaPtr& imp = s->left->formula;
          if (attempt(RuleId::LImpL, np, StructKind::OProd,
                      {{replace_at(G, np, mk_leaf(imp->left)), C}, {s->right, imp->right}}, 0)) {
            stop = true;
            break;
          }
        }
      }
      if (stop) break;

      // Weakening deletions.
      {
        std::set<std::string> tried;
        for (const Path& np : nodes) {
          StructurePtr s = subtree_at(G, np);
          if (s->is_leaf()) continue;
          // W1 deletes the left component, W2 the right.
          for (int side = 0; side < 2 && !stop; ++side) {
            const StructurePtr& kept = side == 0 ? s->right : s->left;
            Sequent prem{replace_at(G, np, kept), C};
            if (!tried.insert(canon_key(prem)).second) continue;
            if (attempt(side == 0 ? RuleId::W1 : RuleId::W2, np, s->kind, {prem}, 0)) stop = true;
          }
          if (stop) break;
        }
      }
      if (stop) break;

      // Contractions.
      if (budget > 0) {
        for (const Path& np : nodes) {
          StructurePtr s = subtree_at(G, np);
          if (s->kind == StructKind::OProd &&
              attempt(RuleId::OProdC, np, StructKind::OProd,
                      {{replace_at(G, np, mk_oprod(s, s->right)), C}}, 1)) {
            stop = true;
            break;
          }
          if (attempt(RuleId::OMeetC, np, StructKind::OMeet,
                      {{replace_at(G, np, mk_omeet(s, s)), C}}, 1)) {
            stop = true;
            break;
          }
          if (cfg_.profile == Profile::LJ &&
              attempt(RuleId::OProdCStar, np, StructKind::OProd,
                      {{replace_at(G, np, mk_oprod(s, s)), C}}, 1)) {
            stop = true;
            break;
          }
        }
        if (stop) break;
      }

      // LJ structural moves.
      if (cfg_.profile == Profile::LJ) {
        for (const Path& np : nodes) {
          StructurePtr s = subtree_at(G, np);
          if (s->kind != StructKind::OProd) continue;
          if (attempt(RuleId::OProdE, np, StructKind::OProd,
                      {{replace_at(G, np, mk_oprod(s->right, s->left)), C}}, 0)) {
            stop = true;
            break;
          }
          if (s->left->kind == StructKind::OProd &&
              attempt(RuleId::OProdA2, np, StructKind::OProd,
                      {{replace_at(G, np,
                                   mk_oprod(s->left->left, mk_oprod(s->left->right, s->right))),
                        C}},
                      0)) {
            stop = true;
            break;
          }
        }
        if (stop) break;
      }

      // With the top->A |- A axiom, cut stops being eliminable, and some of
      // the new theorems (p & (p->q) |- q among them) have no cut-free proof
      // at all: no rule ever grows a ','-node out of a ';'-only antecedent.
      // So this profile gets one derived move, the cut against the axiom:
      // prove top , G |- C, then ->R and Cut.  Only fired on ','-free
      // antecedents, where nothing else can ever expose a product shape.
      if (cfg_.profile == Profile::TopImp && !detail::has_oprod(G)) {
        if (auto r = search({mk_oprod(mk_leaf(mk_top()), G), C}, depth - 1, budget)) {
          FormulaPtr lifted = mk_rimp(mk_top(), C);
          ProofTree impr;
          impr.rule = RuleId::RImpR;
          impr.conclusion = {G, lifted};
          impr.premises.push_back(std::move(*r));
          ProofTree ax;
          ax.rule = RuleId::TopImpAxiom;
          ax.conclusion = {mk_leaf(lifted), C};
          ProofTree cut;
          cut.rule = RuleId::Cut;
          cut.conclusion = goal;
          cut.premises.push_back(std::move(impr));
          cut.premises.push_back(std::move(ax));
          found = std::move(cut);
          break;
        }
      }
    } while (false);

    on_path_.erase(key);
    if (found) return remember(key, std::move(*found));
    record_failure(key, depth, budget);
    return std::nullopt;
  }
};

}  // namespace detail

inline Verdict prove(const Sequent& goal, const SearchConfig& cfg = {}) {
  Verdict v;
  v.report = {cfg.depth_bound, cfg.contraction_budget, cfg.countermodel_size, 0, false};
  SimpleSequent simple = to_simple(goal);
  // Small countermodels first: they are cheap and bound the wasted search on
  // clearly refutable goals.
  if (cfg.profile == Profile::Core && cfg.countermodel_size >= 2) {
    if (auto cm = find_lifted_countermodel(simple, std::min(cfg.countermodel_size, 4))) {
      v.kind = Verdict::Kind::Refuted;
      v.model = std::move(cm->first);
      v.state = cm->second;
      return v;
    }
  }
  detail::Searcher searcher(cfg);
  if (auto pf = searcher.run(goal)) {
    v.kind = Verdict::Kind::Proved;
    v.proof = std::move(*pf);
    v.report.nodes_used = searcher.nodes_used();
    return v;
  }
  v.report.nodes_used = searcher.nodes_used();
  v.report.node_capped = searcher.node_capped();
  if (cfg.profile == Profile::Core && cfg.countermodel_size > 4) {
    if (auto cm = find_lifted_countermodel(simple, cfg.countermodel_size)) {
      v.kind = Verdict::Kind::Refuted;
      v.model = std::move(cm->first);
      v.state = cm->second;
      return v;
    }
  }
  v.kind = Verdict::Kind::Unknown;
  return v;
}

// ---------------------------------------------------------------------------

struct DisjunctionReport {
  Verdict left, right;

  bool some_side_proved() const {
    return left.kind == Verdict::Kind::Proved || right.kind == Verdict::Kind::Proved;
  }
};

/// For a provable top |- A|B, at least one of top |- A, top |- B should be
/// provable at a sufficient bound; Unknown on both sides only reflects the
/// bound, and is reported as such.
inline DisjunctionReport disjunction_property_probe(const FormulaPtr& a, const FormulaPtr& b,
                                                    const SearchConfig& cfg = {}) {
  DisjunctionReport rep;
  rep.left = prove({mk_leaf(mk_top()), a}, cfg);
  rep.right = prove({mk_leaf(mk_top()), b}, cfg);
  return rep;
}

}  // namespace rbl
