#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "rbl/errors.hpp"
#include "rbl/formula.hpp"
#include "rbl/kripke.hpp"
#include "rbl/structure.hpp"

/// Ternary-relation models for the full language, with no frame conditions.
/// The satisfaction clauses for the product and the two residuals quantify
/// over the triple relation:
///
///   a |= A*B    iff  some (a,a2,a3) in R3 has a2 |= A and a3 |= B
///   a |= A <- B iff  all (a1,a,a3) in R3 with a3 |= B have a1 |= A
///   a |= A -> B iff  all (a1,a2,a) in R3 with a2 |= A have a1 |= B
///
/// Also the lifting of a binary model to a ternary one: two copies per world
/// and four triples per edge, which makes the binary and lifted models agree
/// on the {&,|,->} fragment.

namespace rbl {

using StateMask = std::uint32_t;

struct TernaryModel {
  int states = 0;
  std::vector<std::array<int, 3>> rel3;
  std::map<std::string, StateMask> val;

  StateMask full_mask() const { return states == 32 ? ~0u : (1u << states) - 1; }
};

/// Truth set of f as a state mask.  Each connective is one scan of rel3.
inline StateMask eval_ternary_mask(const TernaryModel& j, const FormulaPtr& f) {
  switch (f->kind) {
    case Conn::Prop: {
      auto it = j.val.find(f->name);
      return it == j.val.end() ? 0 : it->second;
    }
    case Conn::Bot: return 0;
    case Conn::Top: return j.full_mask();
    case Conn::And: return eval_ternary_mask(j, f->left) & eval_ternary_mask(j, f->right);
    case Conn::Or: return eval_ternary_mask(j, f->left) | eval_ternary_mask(j, f->right);
    case Conn::Prod: {
      StateMask a = eval_ternary_mask(j, f->left), b = eval_ternary_mask(j, f->right);
      StateMask out = 0;
      for (const auto& t : j.rel3)
        if (((a >> t[1]) & 1u) && ((b >> t[2]) & 1u)) out |= 1u << t[0];
      return out;
    }
    case Conn::RImp: {
      StateMask a = eval_ternary_mask(j, f->left), b = eval_ternary_mask(j, f->right);
      StateMask out = j.full_mask();
      for (const auto& t : j.rel3)
        if (((a >> t[1]) & 1u) && !((b >> t[0]) & 1u)) out &= ~(1u << t[2]);
      return out;
    }
    case Conn::LImp: {
      StateMask a = eval_ternary_mask(j, f->left), b = eval_ternary_mask(j, f->right);
      StateMask out = j.full_mask();
      for (const auto& t : j.rel3)
        if (((b >> t[2]) & 1u) && !((a >> t[0]) & 1u)) out &= ~(1u << t[1]);
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

inline bool eval_ternary(const TernaryModel& j, int a, const FormulaPtr& f) {
  if (a < 0 || a >= j.states) throw InvalidState("state " + std::to_string(a) + " out of range");
  return (eval_ternary_mask(j, f) >> a) & 1u;
}

/// A simple sequent holds when, at every state, the left side forces the right.
inline bool sequent_true(const TernaryModel& j, const SimpleSequent& s) {
  StateMask l = eval_ternary_mask(j, s.lhs);
  StateMask r = eval_ternary_mask(j, s.rhs);
  return (l & ~r) == 0;
}

/// First state where lhs holds and rhs fails, or -1 when the sequent is true.
inline int sequent_failure_state(const TernaryModel& j, const SimpleSequent& s) {
  StateMask bad = eval_ternary_mask(j, s.lhs) & ~eval_ternary_mask(j, s.rhs);
  if (!bad) return -1;
  int a = 0;
  while (!((bad >> a) & 1u)) ++a;
  return a;
}

// ---------------------------------------------------------------------------
// Lifting a binary model.  World a gets copies a1 = 2a and a2 = 2a+1; each
// edge aRb contributes the four triples (b1,b2,a1) (b2,b1,a1) (b1,b2,a2)
// (b2,b1,a2); the valuation is copied to both copies.

inline int copy_state(int world, int copy /* 1 or 2 */) { return 2 * world + (copy - 1); }

inline TernaryModel lift_bpl(const BplModel& m) {
  TernaryModel j;
  j.states = 2 * m.worlds;
  for (int a = 0; a < m.worlds; ++a)
    for (int b = 0; b < m.worlds; ++b)
      if (m.has_edge(a, b)) {
        int b1 = copy_state(b, 1), b2 = copy_state(b, 2);
        for (int i = 1; i <= 2; ++i) {
          j.rel3.push_back({b1, b2, copy_state(a, i)});
          j.rel3.push_back({b2, b1, copy_state(a, i)});
        }
      }
  for (const auto& [p, mask] : m.val) {
    StateMask lifted = 0;
    for (int a = 0; a < m.worlds; ++a)
      if ((mask >> a) & 1u) lifted |= (1u << copy_state(a, 1)) | (1u << copy_state(a, 2));
    j.val[p] = lifted;
  }
  return j;
}

/// Pretty name for a lifted state, e.g. "3_2" for the second copy of world 3.
inline std::string lifted_state_name(int state) {
  return std::to_string(state / 2) + "_" + std::to_string(state % 2 + 1);
}

/// Oracle: the binary model and its lift agree on every formula of fs at
/// every world and both copies.
inline bool check_truth_lemma(const BplModel& m, const std::vector<FormulaPtr>& fs) {
  TernaryModel j = lift_bpl(m);
  for (const auto& f : fs) {
    detail::require_bpl_language(f);
    WorldMask base = eval_bpl_mask(m, f);
    StateMask lifted = eval_ternary_mask(j, f);
    for (int a = 0; a < m.worlds; ++a) {
      bool b = (base >> a) & 1u;
      if (b != ((lifted >> copy_state(a, 1)) & 1u)) return false;
      if (b != ((lifted >> copy_state(a, 2)) & 1u)) return false;
    }
  }
  return true;
}

/// Oracle: each (independently certified) sequent is true in the lifted model.
inline bool check_srbl_soundness(const BplModel& m, const std::vector<SimpleSequent>& derivable) {
  TernaryModel j = lift_bpl(m);
  for (const auto& s : derivable)
    if (!sequent_true(j, s)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// JSON: {"states": n, "rel3": [[a,b,c],...], "val": {"p": [i,...]}}

inline nlohmann::json to_json(const TernaryModel& m) {
  nlohmann::json j;
  j["states"] = m.states;
  auto rel = nlohmann::json::array();
  for (const auto& t : m.rel3) rel.push_back({t[0], t[1], t[2]});
  j["rel3"] = rel;
  auto val = nlohmann::json::object();
  for (const auto& [p, mask] : m.val) {
    auto arr = nlohmann::json::array();
    for (int a = 0; a < m.states; ++a)
      if ((mask >> a) & 1u) arr.push_back(a);
    val[p] = arr;
  }
  j["val"] = val;
  return j;
}

inline TernaryModel ternary_model_from_json(const nlohmann::json& j) {
  TernaryModel m;
  m.states = j.at("states").get<int>();
  if (m.states < 0 || m.states > 31) throw SizeLimit("model too large for mask representation");
  for (const auto& e : j.at("rel3")) {
    std::array<int, 3> t{e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>()};
    for (int x : t)
      if (x < 0 || x >= m.states) throw InvalidState("rel3 entry out of range");
    m.rel3.push_back(t);
  }
  if (j.contains("val")) {
    for (auto it = j.at("val").begin(); it != j.at("val").end(); ++it) {
      StateMask mask = 0;
      for (const auto& w : it.value()) {
        int a = w.get<int>();
        if (a < 0 || a >= m.states) throw InvalidState("val entry out of range");
        mask |= 1u << a;
      }
      m.val[it.key()] = mask;
    }
  }
  return m;
}

}  // namespace rbl
