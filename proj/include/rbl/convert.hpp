#pragma once

#include <algorithm>
#include <cassert>
#include <string>
#include <vector>

#include "rbl/proof.hpp"

/// Helpers shared by the prover and the mix eliminator:
///
///  - canonical keys that treat ';'-clusters as sorted multisets (';' is
///    fully associative-commutative thanks to ;E/;A1/;A2, ',' is not);
///  - explicit ;E/;A1/;A2 rewrite chains between any two structures with the
///    same canonical key, emitted as checkable proof nodes;
///  - weakening chains that grow a proof of (T |- X) into (S |- X) for any
///    S containing T.

namespace rbl {

// ---------------------------------------------------------------------------
// Canonical keys.

namespace detail {

inline void collect_meet_elements(const StructurePtr& s, std::vector<StructurePtr>& out) {
  if (s->kind == StructKind::OMeet) {
    collect_meet_elements(s->left, out);
    collect_meet_elements(s->right, out);
  } else {
    out.push_back(s);
  }
}

}  // namespace detail

inline std::string canon_key(const StructurePtr& s) {
  switch (s->kind) {
    case StructKind::Leaf:
      return "[" + to_string(s->formula) + "]";
    case StructKind::OProd:
      return "(" + canon_key(s->left) + "." + canon_key(s->right) + ")";
    case StructKind::OMeet: {
      std::vector<StructurePtr> elems;
      detail::collect_meet_elements(s, elems);
      std::vector<std::string> keys;
      keys.reserve(elems.size());
      for (const auto& e : elems) keys.push_back(canon_key(e));
      std::sort(keys.begin(), keys.end());
      std::string out = "{";
      for (const auto& k : keys) out += k + ";";
      out += "}";
      return out;
    }
  }
  return "";
}

inline std::string canon_key(const Sequent& s) {
  return canon_key(s.ante) + "|-" + to_string(s.succ);
}

// ---------------------------------------------------------------------------
// Rearrangement steps.

struct MeetStep {
  RuleId rule;  // OMeetE, OMeetA1 or OMeetA2
  Path path;
};

/// Applies a step forward: the input is the premise shape, the output the
/// conclusion shape.
inline StructurePtr apply_meet_step(const StructurePtr& s, const MeetStep& st) {
  StructurePtr sub = subtree_at(s, st.path);
  StructurePtr repl;
  switch (st.rule) {
    case RuleId::OMeetE:
      assert(sub->kind == StructKind::OMeet);
      repl = mk_omeet(sub->right, sub->left);
      break;
    case RuleId::OMeetA1:
      // (d1 ; d2) ; d3  ->  d1 ; (d2 ; d3)
      assert(sub->kind == StructKind::OMeet && sub->left->kind == StructKind::OMeet);
      repl = mk_omeet(sub->left->left, mk_omeet(sub->left->right, sub->right));
      break;
    case RuleId::OMeetA2:
      // d1 ; (d2 ; d3)  ->  (d1 ; d2) ; d3
      assert(sub->kind == StructKind::OMeet && sub->right->kind == StructKind::OMeet);
      repl = mk_omeet(mk_omeet(sub->left, sub->right->left), sub->right->right);
      break;
    default:
      assert(false);
  }
  return replace_at(s, st.path, repl);
}

inline MeetStep invert_meet_step(const MeetStep& st) {
  switch (st.rule) {
    case RuleId::OMeetE: return {RuleId::OMeetE, st.path};
    case RuleId::OMeetA1: return {RuleId::OMeetA2, st.path};
    default: return {RuleId::OMeetA1, st.path};
  }
}

namespace detail {

/// Rotates the ';'-cluster at `at` into a right comb and bubble-sorts its
/// elements by canonical key; steps are appended and `cur` updated.
inline void comb_sort_meets(StructurePtr& cur, const Path& at, std::vector<MeetStep>& out) {
  // Right-comb: rotate while some cluster node has a ';' left child.
  for (;;) {
    Path found;
    bool have = false;
    auto scan = [&](auto&& self, const StructurePtr& s, Path here) -> void {
      if (have || s->kind != StructKind::OMeet) return;
      if (s->left->kind == StructKind::OMeet) {
        found = here;
        have = true;
        return;
      }
      self(self, s->right, here + kRight);
    };
    scan(scan, subtree_at(cur, at), at);
    if (!have) break;
    MeetStep st{RuleId::OMeetA1, found};
    cur = apply_meet_step(cur, st);
    out.push_back(st);
  }
  // Collect comb elements.
  std::vector<StructurePtr> elems;
  collect_meet_elements(subtree_at(cur, at), elems);
  std::size_t k = elems.size();
  if (k < 2) return;
  // Bubble sort by canonical key.
  for (;;) {
    bool swapped = false;
    elems.clear();
    collect_meet_elements(subtree_at(cur, at), elems);
    for (std::size_t j = 0; j + 1 < k; ++j) {
      if (canon_key(elems[j]) <= canon_key(elems[j + 1])) continue;
      Path node = at;
      for (std::size_t i = 0; i < j; ++i) node = node + kRight;
      if (j + 2 == k) {
        MeetStep st{RuleId::OMeetE, node};
        cur = apply_meet_step(cur, st);
        out.push_back(st);
      } else {
        // e ; (f ; R)  ->  (e ; f) ; R  ->  (f ; e) ; R  ->  f ; (e ; R)
        for (const MeetStep st : {MeetStep{RuleId::OMeetA2, node},
                                  MeetStep{RuleId::OMeetE, node + kLeft},
                                  MeetStep{RuleId::OMeetA1, node}}) {
          cur = apply_meet_step(cur, st);
          out.push_back(st);
        }
      }
      swapped = true;
      break;  // re-scan: elems changed
    }
    if (!swapped) break;
  }
}

inline void convert_align(StructurePtr& cur, const Path& at, const StructurePtr& target,
                          std::vector<MeetStep>& out) {
  StructurePtr s = subtree_at(cur, at);
  if (equal(s, target)) return;
  assert(s->kind == target->kind || (s->kind == StructKind::OMeet && target->kind == StructKind::OMeet));
  switch (target->kind) {
    case StructKind::Leaf:
      assert(equal(s->formula, target->formula));
      return;
    case StructKind::OProd:
      convert_align(cur, at + kLeft, target->left, out);
      convert_align(cur, at + kRight, target->right, out);
      return;
    case StructKind::OMeet: {
      comb_sort_meets(cur, at, out);
      // Normalize a scratch copy of the target the same way, recording its
      // steps so they can be undone on `cur` afterwards.
      StructurePtr scratch = target;
      std::vector<MeetStep> tsteps;
      comb_sort_meets(scratch, Path{}, tsteps);
      // Align elements pairwise along the comb spine.
      std::vector<StructurePtr> want;
      collect_meet_elements(scratch, want);
      Path spine = at;
      for (std::size_t i = 0; i + 1 < want.size(); ++i) {
        convert_align(cur, spine + kLeft, want[i], out);
        spine = spine + kRight;
      }
      convert_align(cur, spine, want.back(), out);
      // Undo the target's normalization on cur.
      for (auto it = tsteps.rbegin(); it != tsteps.rend(); ++it) {
        MeetStep st = invert_meet_step(*it);
        st.path = concat(at, st.path);
        cur = apply_meet_step(cur, st);
        out.push_back(st);
      }
      return;
    }
  }
}

}  // namespace detail

/// Rewrite chain turning `from` into `to`; both must have equal canonical
/// keys.  Applying the steps in order to `from` yields `to`.
inline std::vector<MeetStep> convert_chain(const StructurePtr& from, const StructurePtr& to) {
  assert(canon_key(from) == canon_key(to));
  StructurePtr cur = from;
  std::vector<MeetStep> out;
  detail::convert_align(cur, Path{}, to, out);
  assert(equal(cur, to));
  return out;
}

/// Wraps a proof of (from |- X) into a proof of (to |- X) by stacking the
/// rearrangement steps as proof nodes.
inline ProofTree convert_structure(ProofTree proof, const StructurePtr& to) {
  std::vector<MeetStep> steps = convert_chain(proof.conclusion.ante, to);
  for (const MeetStep& st : steps) {
    ProofTree node;
    node.rule = st.rule;
    node.path = st.path;
    node.conclusion = {apply_meet_step(proof.conclusion.ante, st), proof.conclusion.succ};
    node.premises.push_back(std::move(proof));
    proof = std::move(node);
  }
  return proof;
}

// ---------------------------------------------------------------------------
// Weakening chains.

namespace detail {

inline ProofTree weaken_to_rec(ProofTree core, const StructurePtr& cur, const Path& pos,
                               std::size_t from) {
  if (from == pos.size()) {
    assert(equal(core.conclusion.ante, cur));
    return core;
  }
  const StructurePtr& kept = pos[from] == kLeft ? cur->left : cur->right;
  ProofTree inner = weaken_to_rec(std::move(core), kept, pos, from + 1);
  ProofTree node;
  node.rule = pos[from] == kLeft ? RuleId::W2 : RuleId::W1;
  node.star = cur->kind;
  node.conclusion = {cur, inner.conclusion.succ};
  node.premises.push_back(std::move(inner));
  return node;
}

}  // namespace detail

/// Given a proof of (subtree_at(target,pos) |- X), produces a proof of
/// (target |- X) by weakening in the siblings along the path, outermost last.
inline ProofTree weaken_to(ProofTree core, const StructurePtr& target, const Path& pos) {
  return detail::weaken_to_rec(std::move(core), target, pos, 0);
}

inline Path first_leaf_path(const StructurePtr& s) {
  Path p;
  const Structure* cur = s.get();
  while (!cur->is_leaf()) {
    p.push_back(kLeft);
    cur = cur->left.get();
  }
  return p;
}

}  // namespace rbl
