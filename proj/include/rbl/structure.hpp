#pragma once

#include <cassert>
#include <stdexcept>

#include "rbl/formula.hpp"

/// Formula structures: binary trees over the structural connectives
/// ',' (comma, interpreted by the product) and ';' (semicolon, interpreted
/// by the meet), with formulas at the leaves.  A sequent is a structure
/// together with a succedent formula; a simple sequent is a pair of formulas.

namespace rbl {

enum class StructKind : std::uint8_t {
  Leaf,
  OProd,  // renders ','
  OMeet,  // renders ';'
};

class Structure;
using StructurePtr = std::shared_ptr<const Structure>;

class Structure {
public:
  StructKind kind;
  FormulaPtr formula;      // Leaf
  StructurePtr left, right;  // OProd / OMeet

  explicit Structure(FormulaPtr f)
      : kind(StructKind::Leaf), formula(std::move(f)) {}
  Structure(StructKind k, StructurePtr l, StructurePtr r)
      : kind(k), left(std::move(l)), right(std::move(r)) {
    assert(k != StructKind::Leaf);
  }

  bool is_leaf() const { return kind == StructKind::Leaf; }
};

inline StructurePtr mk_leaf(FormulaPtr f) { return std::make_shared<Structure>(std::move(f)); }
inline StructurePtr mk_oprod(StructurePtr a, StructurePtr b) {
  return std::make_shared<Structure>(StructKind::OProd, std::move(a), std::move(b));
}
inline StructurePtr mk_omeet(StructurePtr a, StructurePtr b) {
  return std::make_shared<Structure>(StructKind::OMeet, std::move(a), std::move(b));
}
inline StructurePtr mk_node(StructKind k, StructurePtr a, StructurePtr b) {
  return std::make_shared<Structure>(k, std::move(a), std::move(b));
}

inline int compare(const StructurePtr& a, const StructurePtr& b) {
  if (a.get() == b.get()) return 0;
  if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
  if (a->kind == StructKind::Leaf) return compare(a->formula, b->formula);
  if (int c = compare(a->left, b->left)) return c;
  return compare(a->right, b->right);
}

inline bool equal(const StructurePtr& a, const StructurePtr& b) { return compare(a, b) == 0; }

/// Structure-to-formula translation: leaves stay, ',' becomes *, ';' becomes &.
inline FormulaPtr mu(const StructurePtr& s) {
  switch (s->kind) {
    case StructKind::Leaf: return s->formula;
    case StructKind::OProd: return mk_prod(mu(s->left), mu(s->right));
    case StructKind::OMeet: return mk_and(mu(s->left), mu(s->right));
  }
  throw std::logic_error("unreachable");
}

inline int leaf_count(const StructurePtr& s) {
  if (s->is_leaf()) return 1;
  return leaf_count(s->left) + leaf_count(s->right);
}

inline int node_count(const StructurePtr& s) {
  if (s->is_leaf()) return 1;
  return 1 + node_count(s->left) + node_count(s->right);
}

// ---------------------------------------------------------------------------
// Paths address subtrees: a sequence of left/right turns from the root.

using Path = std::vector<std::uint8_t>;
constexpr std::uint8_t kLeft = 0;
constexpr std::uint8_t kRight = 1;

inline Path operator+(Path p, std::uint8_t turn) {
  p.push_back(turn);
  return p;
}

inline Path concat(Path a, const Path& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

inline bool is_prefix(const Path& pre, const Path& p) {
  if (pre.size() > p.size()) return false;
  return std::equal(pre.begin(), pre.end(), p.begin());
}

inline StructurePtr subtree_at(const StructurePtr& s, const Path& p, std::size_t from = 0) {
  if (from == p.size()) return s;
  if (s->is_leaf()) throw std::invalid_argument("path descends below a leaf");
  const StructurePtr& child = p[from] == kLeft ? s->left : s->right;
  return subtree_at(child, p, from + 1);
}

inline StructurePtr replace_at(const StructurePtr& s, const Path& p, const StructurePtr& repl,
                               std::size_t from = 0) {
  if (from == p.size()) return repl;
  if (s->is_leaf()) throw std::invalid_argument("path descends below a leaf");
  if (p[from] == kLeft) return mk_node(s->kind, replace_at(s->left, p, repl, from + 1), s->right);
  return mk_node(s->kind, s->left, replace_at(s->right, p, repl, from + 1));
}

/// Replaces at several pairwise-incomparable positions at once.
inline StructurePtr replace_many(const StructurePtr& s,
                                 const std::vector<std::pair<Path, StructurePtr>>& repls) {
  StructurePtr out = s;
  for (const auto& [p, r] : repls) out = replace_at(out, p, r);
  return out;
}

inline void collect_leaf_paths(const StructurePtr& s, Path& here, std::vector<Path>& out) {
  if (s->is_leaf()) {
    out.push_back(here);
    return;
  }
  here.push_back(kLeft);
  collect_leaf_paths(s->left, here, out);
  here.back() = kRight;
  collect_leaf_paths(s->right, here, out);
  here.pop_back();
}

inline std::vector<Path> leaf_paths(const StructurePtr& s) {
  std::vector<Path> out;
  Path here;
  collect_leaf_paths(s, here, out);
  return out;
}

// ---------------------------------------------------------------------------

struct Sequent {
  StructurePtr ante;  // never null: a structure has at least one leaf
  FormulaPtr succ;
};

inline bool equal(const Sequent& a, const Sequent& b) {
  return equal(a.ante, b.ante) && equal(a.succ, b.succ);
}

struct SimpleSequent {
  FormulaPtr lhs, rhs;
};

inline bool equal(const SimpleSequent& a, const SimpleSequent& b) {
  return equal(a.lhs, b.lhs) && equal(a.rhs, b.rhs);
}

inline SimpleSequent to_simple(const Sequent& s) { return {mu(s.ante), s.succ}; }

// Printing.  ',' and ';' are not mixed without parentheses, matching the
// parser; same-kind chains print left-associated without parentheses.
namespace detail {

inline void print_structure_rec(const StructurePtr& s, bool parens_if_node, std::string& out) {
  if (s->is_leaf()) {
    out += to_string(s->formula);
    return;
  }
  if (parens_if_node) out += '(';
  bool left_needs = !s->left->is_leaf() && s->left->kind != s->kind;
  print_structure_rec(s->left, left_needs, out);
  out += s->kind == StructKind::OProd ? " , " : " ; ";
  print_structure_rec(s->right, !s->right->is_leaf(), out);
  if (parens_if_node) out += ')';
}

}  // namespace detail

inline std::string to_string(const StructurePtr& s) {
  std::string out;
  detail::print_structure_rec(s, false, out);
  return out;
}

inline std::string to_string(const Sequent& s) {
  return to_string(s.ante) + " |- " + to_string(s.succ);
}

inline std::string to_string(const SimpleSequent& s) {
  return to_string(s.lhs) + " => " + to_string(s.rhs);
}

inline std::string to_string(const Path& p) {
  if (p.empty()) return ".";
  std::string out;
  for (auto t : p) out += t == kLeft ? 'l' : 'r';
  return out;
}

}  // namespace rbl
