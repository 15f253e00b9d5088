#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

/// Formula ASTs over { p, bot, top, &, |, *, ->, <- }.
///
/// Formulas are immutable shared trees.  Structural equality is the only
/// equality in play (no binders), and a total order on formulas is provided
/// so they can live in ordered containers and canonical forms.

namespace rbl {

enum class Conn : std::uint8_t {
  Prop,  // propositional letter
  Bot,
  Top,
  And,
  Or,
  Prod,  // non-associative product
  RImp,  // right residual  a -> b
  LImp,  // left residual   a <- b
};

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

class Formula {
public:
  Conn kind;
  std::string name;        // for Prop only
  FormulaPtr left, right;  // for binary connectives

  Formula(Conn k, std::string n, FormulaPtr l, FormulaPtr r)
      : kind(k), name(std::move(n)), left(std::move(l)), right(std::move(r)) {
    hash_ = compute_hash();
  }

  std::size_t hash() const { return hash_; }

  bool is_atom() const { return kind == Conn::Prop || kind == Conn::Bot || kind == Conn::Top; }
  bool is_binary() const { return !is_atom(); }

private:
  std::size_t hash_;

  std::size_t compute_hash() const {
    std::size_t h = static_cast<std::size_t>(kind) * 0x9e3779b97f4a7c15ull + 0x517cc1b727220a95ull;
    if (kind == Conn::Prop) {
      h ^= std::hash<std::string>{}(name) + 0x9e3779b9 + (h << 6) + (h >> 2);
    }
    if (left) h ^= left->hash_ + 0x9e3779b9 + (h << 6) + (h >> 2);
    if (right) h ^= right->hash_ + 0x9e3779b9 + (h << 6) + (h >> 2);
    return h;
  }
};

inline FormulaPtr mk_prop(std::string name) {
  return std::make_shared<Formula>(Conn::Prop, std::move(name), nullptr, nullptr);
}
inline FormulaPtr mk_bot() {
  static const FormulaPtr b = std::make_shared<Formula>(Conn::Bot, "", nullptr, nullptr);
  return b;
}
inline FormulaPtr mk_top() {
  static const FormulaPtr t = std::make_shared<Formula>(Conn::Top, "", nullptr, nullptr);
  return t;
}
inline FormulaPtr mk_bin(Conn k, FormulaPtr a, FormulaPtr b) {
  return std::make_shared<Formula>(k, "", std::move(a), std::move(b));
}
inline FormulaPtr mk_and(FormulaPtr a, FormulaPtr b) { return mk_bin(Conn::And, std::move(a), std::move(b)); }
inline FormulaPtr mk_or(FormulaPtr a, FormulaPtr b) { return mk_bin(Conn::Or, std::move(a), std::move(b)); }
inline FormulaPtr mk_prod(FormulaPtr a, FormulaPtr b) { return mk_bin(Conn::Prod, std::move(a), std::move(b)); }
inline FormulaPtr mk_rimp(FormulaPtr a, FormulaPtr b) { return mk_bin(Conn::RImp, std::move(a), std::move(b)); }
inline FormulaPtr mk_limp(FormulaPtr a, FormulaPtr b) { return mk_bin(Conn::LImp, std::move(a), std::move(b)); }
/// ~a is sugar for a -> bot.
inline FormulaPtr mk_neg(FormulaPtr a) { return mk_rimp(std::move(a), mk_bot()); }

inline int compare(const FormulaPtr& a, const FormulaPtr& b) {
  if (a.get() == b.get()) return 0;
  if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
  if (a->kind == Conn::Prop) return a->name.compare(b->name);
  if (!a->left) return 0;  // nullary
  if (int c = compare(a->left, b->left)) return c;
  return compare(a->right, b->right);
}

inline bool equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->hash() != b->hash()) return false;
  return compare(a, b) == 0;
}

struct FormulaLess {
  bool operator()(const FormulaPtr& a, const FormulaPtr& b) const { return compare(a, b) < 0; }
};

using FormulaSet = std::set<FormulaPtr, FormulaLess>;

/// Reflexive-transitive subterm closure.
inline void collect_subformulas(const FormulaPtr& f, FormulaSet& out) {
  if (!out.insert(f).second) return;
  if (f->left) collect_subformulas(f->left, out);
  if (f->right) collect_subformulas(f->right, out);
}

inline FormulaSet subformulas(const FormulaPtr& f) {
  FormulaSet out;
  collect_subformulas(f, out);
  return out;
}

inline void collect_atoms(const FormulaPtr& f, std::set<std::string>& out) {
  if (f->kind == Conn::Prop) out.insert(f->name);
  if (f->left) collect_atoms(f->left, out);
  if (f->right) collect_atoms(f->right, out);
}

inline std::set<std::string> atoms(const FormulaPtr& f) {
  std::set<std::string> out;
  collect_atoms(f, out);
  return out;
}

/// True when f stays inside the {&, |, ->, top, bot, p} fragment.
inline bool is_bpl(const FormulaPtr& f) {
  if (f->kind == Conn::Prod || f->kind == Conn::LImp) return false;
  if (f->left && !is_bpl(f->left)) return false;
  if (f->right && !is_bpl(f->right)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Printing.  Precedence, tightest first: *  &  |  -> / <-.
// * & | associate left, -> associates right, <- associates left.
// Minimal parentheses; mixed -> / <- chains are always parenthesized since
// the parser rejects them unparenthesized.

namespace detail {

inline int prec(Conn k) {
  switch (k) {
    case Conn::Prod: return 4;
    case Conn::And: return 3;
    case Conn::Or: return 2;
    case Conn::RImp:
    case Conn::LImp: return 1;
    default: return 5;
  }
}

inline const char* conn_token(Conn k) {
  switch (k) {
    case Conn::And: return " & ";
    case Conn::Or: return " | ";
    case Conn::Prod: return " * ";
    case Conn::RImp: return " -> ";
    case Conn::LImp: return " <- ";
    default: return "";
  }
}

inline void print_formula_rec(const FormulaPtr& f, int min_prec, std::string& out) {
  switch (f->kind) {
    case Conn::Prop: out += f->name; return;
    case Conn::Bot: out += "bot"; return;
    case Conn::Top: out += "top"; return;
    default: break;
  }
  int p = prec(f->kind);
  bool parens = p < min_prec;
  if (parens) out += '(';
  bool right_assoc = f->kind == Conn::RImp;
  // Children of the other implication kind at the same level get parens,
  // which the +1 on the associated side would otherwise miss.
  auto child_min = [&](const FormulaPtr& child, bool assoc_side) {
    int m = assoc_side ? p : p + 1;
    if (p == 1 && child->kind != f->kind && detail::prec(child->kind) == 1) m = p + 1;
    return m;
  };
  if (right_assoc) {
    print_formula_rec(f->left, child_min(f->left, false), out);
    out += conn_token(f->kind);
    print_formula_rec(f->right, child_min(f->right, true), out);
  } else {
    print_formula_rec(f->left, child_min(f->left, true), out);
    out += conn_token(f->kind);
    print_formula_rec(f->right, child_min(f->right, false), out);
  }
  if (parens) out += ')';
}

}  // namespace detail

inline std::string to_string(const FormulaPtr& f) {
  std::string out;
  detail::print_formula_rec(f, 0, out);
  return out;
}

}  // namespace rbl
