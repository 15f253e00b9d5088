#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rbl/errors.hpp"
#include "rbl/parser.hpp"

/// Hilbert-style proof checking for the {&,|,->} axiom system (twelve axiom
/// schemas plus modus ponens), and instance builders for the implicational
/// schemas I, K, B*.  Proofs are explicit certificates, never searched.

namespace rbl {

using Subst = std::map<std::string, FormulaPtr>;

namespace detail {

/// Schemas are formulas whose propositional letters are metavariables.
inline const std::vector<FormulaPtr>& axiom_schemas() {
  static const std::vector<FormulaPtr> schemas = [] {
    std::vector<FormulaPtr> v;
    v.push_back(parse_formula("A -> A"));                               // 1
    v.push_back(parse_formula("A -> (B -> A)"));                        // 2
    v.push_back(parse_formula("(A -> B) & (B -> C) -> (A -> C)"));      // 3
    v.push_back(parse_formula("(A -> C) & (B -> C) -> (A | B -> C)"));  // 4
    v.push_back(parse_formula("A & B -> A"));                           // 5
    v.push_back(parse_formula("A & B -> B"));                           // 6
    v.push_back(parse_formula("A -> A | B"));                           // 7
    v.push_back(parse_formula("B -> A | B"));                           // 8
    v.push_back(parse_formula("A -> (B -> A & B)"));                    // 9
    v.push_back(parse_formula("(A -> B) & (A -> C) -> (A -> B & C)"));  // 10
    v.push_back(parse_formula("A & (B | C) -> (A & B) | (A & C)"));     // 11
    v.push_back(parse_formula("bot -> A"));                             // 12
    return v;
  }();
  return schemas;
}

inline FormulaPtr substitute(const FormulaPtr& schema, const Subst& subst) {
  switch (schema->kind) {
    case Conn::Prop: {
      auto it = subst.find(schema->name);
      if (it == subst.end()) throw MissingMetaVar("no substitution for metavariable " + schema->name);
      return it->second;
    }
    case Conn::Bot:
    case Conn::Top:
      return schema;
    default:
      return mk_bin(schema->kind, substitute(schema->left, subst), substitute(schema->right, subst));
  }
}

/// One-way matching: extends subst so that schema[subst] == f, or fails.
inline bool match(const FormulaPtr& schema, const FormulaPtr& f, Subst& subst) {
  switch (schema->kind) {
    case Conn::Prop: {
      auto [it, fresh] = subst.emplace(schema->name, f);
      return fresh || equal(it->second, f);
    }
    case Conn::Bot:
    case Conn::Top:
      return schema->kind == f->kind;
    default:
      return schema->kind == f->kind && match(schema->left, f->left, subst) &&
             match(schema->right, f->right, subst);
  }
}

}  // namespace detail

inline int axiom_count() { return static_cast<int>(detail::axiom_schemas().size()); }

inline FormulaPtr axiom_schema(int id) {
  if (id < 1 || id > axiom_count()) throw std::out_of_range("axiom id must be 1..12");
  return detail::axiom_schemas()[id - 1];
}

inline FormulaPtr axiom_instance(int id, const Subst& subst) {
  return detail::substitute(axiom_schema(id), subst);
}

inline bool matches_axiom(int id, const FormulaPtr& f, Subst* out = nullptr) {
  Subst s;
  if (!detail::match(axiom_schema(id), f, s)) return false;
  if (out) *out = std::move(s);
  return true;
}

// ---------------------------------------------------------------------------
// Proofs.  Steps are 1-based; MP(i,j) uses step i as the antecedent and step
// j as the implication, so step j must read (step i) -> (current step).

struct HilbertStep {
  FormulaPtr formula;
  bool is_axiom = true;
  int axiom_id = 0;              // axioms
  std::optional<Subst> subst;    // axioms, optional: matched when absent
  int mp_i = 0, mp_j = 0;        // modus ponens
};

struct HilbertProof {
  std::vector<HilbertStep> steps;
};

struct HilbertCheckResult {
  bool ok = true;
  int bad_step = 0;  // 1-based; 0 when ok
  std::string reason;

  explicit operator bool() const { return ok; }
};

inline HilbertCheckResult check_hilbert_proof(const HilbertProof& p, const FormulaPtr& goal) {
  for (std::size_t k = 0; k < p.steps.size(); ++k) {
    const HilbertStep& st = p.steps[k];
    int num = static_cast<int>(k) + 1;
    if (st.is_axiom) {
      if (st.axiom_id < 1 || st.axiom_id > axiom_count())
        return {false, num, "axiom id out of range"};
      if (st.subst) {
        FormulaPtr inst = axiom_instance(st.axiom_id, *st.subst);
        if (!equal(inst, st.formula))
          return {false, num, "formula is not the stated instance of axiom " + std::to_string(st.axiom_id)};
      } else if (!matches_axiom(st.axiom_id, st.formula)) {
        return {false, num, "formula does not match axiom schema " + std::to_string(st.axiom_id)};
      }
    } else {
      if (st.mp_i < 1 || st.mp_j < 1 || st.mp_i >= num || st.mp_j >= num)
        return {false, num, "mp premises must reference earlier steps"};
      const FormulaPtr& ante = p.steps[st.mp_i - 1].formula;
      const FormulaPtr& imp = p.steps[st.mp_j - 1].formula;
      if (imp->kind != Conn::RImp || !equal(imp->left, ante) || !equal(imp->right, st.formula))
        return {false, num,
                "mp mismatch: step " + std::to_string(st.mp_j) + " is not (step " +
                    std::to_string(st.mp_i) + ") -> (step " + std::to_string(num) + ")"};
    }
  }
  if (p.steps.empty()) return {false, 0, "empty proof"};
  if (!equal(p.steps.back().formula, goal)) return {false, static_cast<int>(p.steps.size()), "last step is not the goal"};
  return {};
}

// ---------------------------------------------------------------------------
// Implicational-fragment schemas.  gamma -> X nests to the right:
// [] -> X = X and (B:gamma) -> X = B -> (gamma -> X).

enum class KikuchiSchema { I, K, Bstar };

inline FormulaPtr nest_rimp(const std::vector<FormulaPtr>& gamma, FormulaPtr x) {
  for (auto it = gamma.rbegin(); it != gamma.rend(); ++it) x = mk_rimp(*it, x);
  return x;
}

inline FormulaPtr kikuchi_schema(KikuchiSchema id, const std::vector<FormulaPtr>& gamma,
                                 const Subst& subst) {
  auto get = [&](const char* v) {
    auto it = subst.find(v);
    if (it == subst.end()) throw MissingMetaVar(std::string("no substitution for metavariable ") + v);
    return it->second;
  };
  switch (id) {
    case KikuchiSchema::I:
      return mk_rimp(get("A"), get("A"));
    case KikuchiSchema::K:
      return mk_rimp(get("A"), mk_rimp(get("B"), get("A")));
    case KikuchiSchema::Bstar: {
      FormulaPtr a = get("A"), b = get("B"), c = get("C");
      return mk_rimp(nest_rimp(gamma, mk_rimp(b, c)),
                     mk_rimp(nest_rimp(gamma, mk_rimp(a, b)), nest_rimp(gamma, mk_rimp(a, c))));
    }
  }
  throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------------------
// Proof file format, one step per line:
//
//   n. <formula> ; ax <id>
//   n. <formula> ; mp <i> <j>
//
// Blank lines and lines starting with '#' are skipped.

inline HilbertProof parse_hilbert_proof(const std::string& text) {
  HilbertProof p;
  std::istringstream in(text);
  std::string line;
  int expected = 1;
  std::size_t consumed = 0;
  while (std::getline(in, line)) {
    std::size_t line_start = consumed;
    consumed += line.size() + 1;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::size_t dot = line.find('.');
    std::size_t semi = line.find(';');
    if (dot == std::string::npos || semi == std::string::npos || semi < dot)
      throw ParseError(line_start, {"'n. <formula> ; <justification>'"}, "malformed line");
    int num = std::stoi(line.substr(first, dot - first));
    if (num != expected)
      throw ParseError(line_start, {"step number " + std::to_string(expected)},
                       std::to_string(num));
    ++expected;
    HilbertStep st;
    st.formula = parse_formula(line.substr(dot + 1, semi - dot - 1));
    std::istringstream just(line.substr(semi + 1));
    std::string kind;
    just >> kind;
    if (kind == "ax") {
      st.is_axiom = true;
      if (!(just >> st.axiom_id)) throw ParseError(line_start, {"axiom id"}, "end of line");
    } else if (kind == "mp") {
      st.is_axiom = false;
      if (!(just >> st.mp_i >> st.mp_j)) throw ParseError(line_start, {"two step numbers"}, "end of line");
    } else {
      throw ParseError(line_start, {"'ax'", "'mp'"}, "'" + kind + "'");
    }
    p.steps.push_back(std::move(st));
  }
  return p;
}

inline std::string print_hilbert_proof(const HilbertProof& p) {
  std::string out;
  for (std::size_t k = 0; k < p.steps.size(); ++k) {
    const HilbertStep& st = p.steps[k];
    out += std::to_string(k + 1) + ". " + to_string(st.formula) + " ; ";
    if (st.is_axiom) out += "ax " + std::to_string(st.axiom_id);
    else out += "mp " + std::to_string(st.mp_i) + " " + std::to_string(st.mp_j);
    out += '\n';
  }
  return out;
}

}  // namespace rbl
