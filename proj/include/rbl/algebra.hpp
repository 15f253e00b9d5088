#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rbl/errors.hpp"
#include "rbl/formula.hpp"
#include "rbl/kripke.hpp"  // transitive-relation enumeration is shared

/// Finite residuated basic algebras: a bounded distributive lattice with a
/// product that preserves finite joins in each argument and satisfies
///
///   (w1)  a * top <= a      (w2)  top * a <= a      (cr)  a*b <= (a*b)*b
///
/// together with its two residuals
///
///   rimp(a,c) = max { x : a*x <= c }     limp(c,b) = max { x : x*b <= c }.

namespace rbl {

struct Lattice {
  int size = 0;
  std::vector<std::uint8_t> leq;  // size*size
  std::vector<int> meet, join;    // size*size element tables
  int bot = -1, top = -1;

  bool le(int a, int b) const { return leq[a * size + b]; }
  int mt(int a, int b) const { return meet[a * size + b]; }
  int jn(int a, int b) const { return join[a * size + b]; }
};

struct FiniteRba : Lattice {
  std::vector<int> prod, rimp, limp;  // size*size element tables

  int pr(int a, int b) const { return prod[a * size + b]; }
  int ri(int a, int b) const { return rimp[a * size + b]; }
  int li(int a, int b) const { return limp[a * size + b]; }
};

struct AlgebraDiagnostic {
  std::string what;
  std::vector<int> witness;
};

// ---------------------------------------------------------------------------
// Lattice construction from a <= table.

/// Builds meet/join/bot/top from a partial order; nullopt when some pair has
/// no greatest lower or least upper bound, or when bounds are missing.
inline std::optional<Lattice> make_lattice(int n, const std::vector<std::uint8_t>& leq) {
  Lattice l;
  l.size = n;
  l.leq = leq;
  l.meet.assign(n * n, -1);
  l.join.assign(n * n, -1);
  auto le = [&](int a, int b) { return leq[a * n + b] != 0; };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int m = -1, j = -1;
      for (int c = 0; c < n; ++c) {
        if (le(c, a) && le(c, b) && (m < 0 || le(m, c))) m = c;
        if (le(a, c) && le(b, c) && (j < 0 || le(c, j))) j = c;
      }
      // m must actually dominate every common lower bound (and dually).
      if (m < 0 || j < 0) return std::nullopt;
      for (int c = 0; c < n; ++c) {
        if (le(c, a) && le(c, b) && !le(c, m)) return std::nullopt;
        if (le(a, c) && le(b, c) && !le(j, c)) return std::nullopt;
      }
      l.meet[a * n + b] = m;
      l.join[a * n + b] = j;
    }
  for (int c = 0; c < n; ++c) {
    bool is_bot = true, is_top = true;
    for (int d = 0; d < n; ++d) {
      is_bot = is_bot && le(c, d);
      is_top = is_top && le(d, c);
    }
    if (is_bot) l.bot = c;
    if (is_top) l.top = c;
  }
  if (l.bot < 0 || l.top < 0) return std::nullopt;
  return l;
}

inline bool is_distributive(const Lattice& l) {
  for (int a = 0; a < l.size; ++a)
    for (int b = 0; b < l.size; ++b)
      for (int c = 0; c < l.size; ++c)
        if (l.mt(a, l.jn(b, c)) != l.jn(l.mt(a, b), l.mt(a, c))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Residuals.

/// Join of { x : a*x <= c }; NotResiduated when that join escapes the set.
inline int residual_right(const FiniteRba& alg, int a, int c) {
  int acc = alg.bot;
  bool any = false;
  for (int x = 0; x < alg.size; ++x)
    if (alg.le(alg.pr(a, x), c)) {
      acc = any ? alg.jn(acc, x) : x;
      any = true;
    }
  if (!any || !alg.le(alg.pr(a, acc), c))
    throw NotResiduated("product does not residuate to the right at (" + std::to_string(a) + "," +
                        std::to_string(c) + ")");
  return acc;
}

/// Join of { x : x*b <= c }.
inline int residual_left(const FiniteRba& alg, int c, int b) {
  int acc = alg.bot;
  bool any = false;
  for (int x = 0; x < alg.size; ++x)
    if (alg.le(alg.pr(x, b), c)) {
      acc = any ? alg.jn(acc, x) : x;
      any = true;
    }
  if (!any || !alg.le(alg.pr(acc, b), c))
    throw NotResiduated("product does not residuate to the left at (" + std::to_string(c) + "," +
                        std::to_string(b) + ")");
  return acc;
}

inline void compute_residuals(FiniteRba& alg) {
  int n = alg.size;
  alg.rimp.assign(n * n, -1);
  alg.limp.assign(n * n, -1);
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c) alg.rimp[a * n + c] = residual_right(alg, a, c);
  for (int c = 0; c < n; ++c)
    for (int b = 0; b < n; ++b) alg.limp[c * n + b] = residual_left(alg, c, b);
}

// ---------------------------------------------------------------------------
// Axiom checking.

inline std::vector<AlgebraDiagnostic> check_rba_axioms(const FiniteRba& alg) {
  std::vector<AlgebraDiagnostic> out;
  int n = alg.size;
  auto le = [&](int a, int b) { return alg.le(a, b); };
  // Partial order.
  for (int a = 0; a < n; ++a) {
    if (!le(a, a)) out.push_back({"<= not reflexive", {a}});
    for (int b = 0; b < n; ++b) {
      if (a != b && le(a, b) && le(b, a)) out.push_back({"<= not antisymmetric", {a, b}});
      for (int c = 0; c < n; ++c)
        if (le(a, b) && le(b, c) && !le(a, c)) out.push_back({"<= not transitive", {a, b, c}});
    }
  }
  // Lattice structure and bounds.
  for (int a = 0; a < n; ++a) {
    if (!le(alg.bot, a)) out.push_back({"bot not below element", {a}});
    if (!le(a, alg.top)) out.push_back({"top not above element", {a}});
    for (int b = 0; b < n; ++b) {
      int m = alg.mt(a, b), j = alg.jn(a, b);
      if (!le(m, a) || !le(m, b)) out.push_back({"meet not a lower bound", {a, b, m}});
      if (!le(a, j) || !le(b, j)) out.push_back({"join not an upper bound", {a, b, j}});
      for (int c = 0; c < n; ++c) {
        if (le(c, a) && le(c, b) && !le(c, m)) out.push_back({"meet not greatest", {a, b, c}});
        if (le(a, c) && le(b, c) && !le(j, c)) out.push_back({"join not least", {a, b, c}});
      }
    }
  }
  // Distributivity.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (alg.mt(a, alg.jn(b, c)) != alg.jn(alg.mt(a, b), alg.mt(a, c)))
          out.push_back({"distributivity fails", {a, b, c}});
  // Residuation:  a*b <= c  iff  b <= a->c  iff  a <= c<-b.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        bool lhs = le(alg.pr(a, b), c);
        if (lhs != le(b, alg.ri(a, c)))
          out.push_back({"residuation (right) fails", {a, b, c}});
        if (lhs != le(a, alg.li(c, b)))
          out.push_back({"residuation (left) fails", {a, b, c}});
      }
  // w1, w2, cr.
  for (int a = 0; a < n; ++a) {
    if (!le(alg.pr(a, alg.top), a)) out.push_back({"w1 fails: a*top <= a", {a}});
    if (!le(alg.pr(alg.top, a), a)) out.push_back({"w2 fails: top*a <= a", {a}});
    for (int b = 0; b < n; ++b) {
      int ab = alg.pr(a, b);
      if (!le(ab, alg.pr(ab, b))) out.push_back({"cr fails: a*b <= (a*b)*b", {a, b}});
    }
  }
  return out;
}

/// Conditions making the ->-reduct a basic algebra, plus the monotonicity
/// facts that follow from them.  Expected to be empty for every RBA.
inline std::vector<AlgebraDiagnostic> check_basic_reduct(const FiniteRba& alg) {
  std::vector<AlgebraDiagnostic> out;
  int n = alg.size;
  auto le = [&](int a, int b) { return alg.le(a, b); };
  for (int a = 0; a < n; ++a) {
    if (alg.ri(a, a) != alg.top) out.push_back({"(3) a->a = top fails", {a}});
    if (!le(a, alg.ri(alg.top, a))) out.push_back({"(4) a <= top->a fails", {a}});
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        if (alg.ri(a, alg.mt(b, c)) != alg.mt(alg.ri(a, b), alg.ri(a, c)))
          out.push_back({"(1) a->(b&c) = (a->b)&(a->c) fails", {a, b, c}});
        if (alg.ri(alg.jn(b, c), a) != alg.mt(alg.ri(b, a), alg.ri(c, a)))
          out.push_back({"(2) (b|c)->a = (b->a)&(c->a) fails", {a, b, c}});
        if (!le(alg.mt(alg.ri(a, b), alg.ri(b, c)), alg.ri(a, c)))
          out.push_back({"(5) (a->b)&(b->c) <= a->c fails", {a, b, c}});
        if (le(a, b)) {
          if (!le(alg.ri(c, a), alg.ri(c, b))) out.push_back({"mono: c->a <= c->b fails", {a, b, c}});
          if (!le(alg.ri(b, c), alg.ri(a, c))) out.push_back({"mono: b->c <= a->c fails", {a, b, c}});
        }
      }
      if (le(a, b) && alg.ri(a, b) != alg.top) out.push_back({"a<=b but a->b != top", {a, b}});
      for (int c = 0; c < n; ++c)
        if (le(alg.mt(a, b), c) && !le(a, alg.ri(b, c)))
          out.push_back({"a&b<=c but a <= b->c fails", {a, b, c}});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration.
//
// Lattices: all partial orders on <= n labeled points, filtered to bounded
// distributive lattices, deduplicated by the lexicographically least <=
// matrix over all relabelings.  Products: backtracking over values at
// join-irreducible pairs (everything else follows by join-linearity), with
// p(x,y) <= x&y and monotonicity pruning; cr is checked on the completed
// table.  p(x,y) <= x&y plus join-linearity already force w1/w2 and
// residual existence.

namespace detail {

inline std::vector<std::uint8_t> canonical_leq(int n, const std::vector<std::uint8_t>& leq) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::uint8_t> best;
  do {
    std::vector<std::uint8_t> enc(n * n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) enc[a * n + b] = leq[perm[a] * n + perm[b]];
    if (best.empty() || enc < best) best = enc;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline std::vector<Lattice> bounded_distributive_lattices(int n) {
  std::vector<Lattice> out;
  std::vector<std::vector<std::uint8_t>> seen;
  for (const auto& rows : transitive_relations(n)) {
    // Reflexive and antisymmetric?
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) {
      if (!((rows[a] >> a) & 1u)) ok = false;
      for (int b = a + 1; b < n && ok; ++b)
        if (((rows[a] >> b) & 1u) && ((rows[b] >> a) & 1u)) ok = false;
    }
    if (!ok) continue;
    std::vector<std::uint8_t> leq(n * n, 0);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) leq[a * n + b] = (rows[a] >> b) & 1u;
    auto canon = canonical_leq(n, leq);
    if (std::find(seen.begin(), seen.end(), canon) != seen.end()) continue;
    auto lat = make_lattice(n, canon);
    seen.push_back(canon);
    if (!lat || !is_distributive(*lat)) continue;
    out.push_back(*lat);
  }
  return out;
}

inline std::vector<int> join_irreducibles(const Lattice& l) {
  std::vector<int> irr;
  for (int a = 0; a < l.size; ++a) {
    if (a == l.bot) continue;
    int covers = 0;
    // a is join-irreducible iff it is not the join of two strictly smaller elements.
    bool reducible = false;
    for (int x = 0; x < l.size && !reducible; ++x)
      for (int y = 0; y < l.size; ++y)
        if (x != a && y != a && l.jn(x, y) == a) { reducible = true; break; }
    (void)covers;
    if (!reducible) irr.push_back(a);
  }
  return irr;
}

template <typename Emit>
void products_on_lattice(const Lattice& lat, Emit&& emit) {
  int n = lat.size;
  std::vector<int> irr = join_irreducibles(lat);
  int k = static_cast<int>(irr.size());
  std::vector<int> table(k * k, -1);  // products at irreducible pairs

  auto extend_and_check = [&]() {
    FiniteRba alg;
    static_cast<Lattice&>(alg) = lat;
    alg.prod.assign(n * n, lat.bot);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        int acc = lat.bot;
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j)
            if (lat.le(irr[i], a) && lat.le(irr[j], b)) acc = lat.jn(acc, table[i * k + j]);
        alg.prod[a * n + b] = acc;
      }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        int ab = alg.pr(a, b);
        if (!lat.le(ab, alg.pr(ab, b))) return;  // cr
      }
    compute_residuals(alg);
    emit(alg);
  };

  // Depth-first assignment in row-major irreducible order.
  auto rec = [&](auto&& self, int idx) -> void {
    if (idx == k * k) {
      extend_and_check();
      return;
    }
    int i = idx / k, j = idx % k;
    int cap = lat.mt(irr[i], irr[j]);
    for (int v = 0; v < n; ++v) {
      if (!lat.le(v, cap)) continue;
      // Monotonicity against already fixed entries.
      bool ok = true;
      for (int p = 0; p < idx && ok; ++p) {
        int pi = p / k, pj = p % k;
        if (lat.le(irr[pi], irr[i]) && lat.le(irr[pj], irr[j]) && !lat.le(table[p], v)) ok = false;
        if (lat.le(irr[i], irr[pi]) && lat.le(irr[j], irr[pj]) && !lat.le(v, table[p])) ok = false;
      }
      if (!ok) continue;
      table[idx] = v;
      self(self, idx + 1);
    }
    table[idx] = -1;
  };
  rec(rec, 0);
}

}  // namespace detail

/// Every RBA on every bounded distributive lattice with at most max_size
/// elements, up to the canonical lattice labeling.
inline std::vector<FiniteRba> enumerate_rbas(int max_size) {
  if (max_size > 5) throw SizeLimit("enumerate_rbas supports sizes up to 5");
  std::vector<FiniteRba> out;
  for (int n = 1; n <= max_size; ++n)
    for (const auto& lat : detail::bounded_distributive_lattices(n))
      detail::products_on_lattice(lat, [&](const FiniteRba& alg) { out.push_back(alg); });
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation.

inline int eval_in_algebra(const FiniteRba& alg, const std::map<std::string, int>& assign,
                           const FormulaPtr& f) {
  switch (f->kind) {
    case Conn::Prop: {
      auto it = assign.find(f->name);
      if (it == assign.end()) throw MissingAtom("no assignment for atom " + f->name);
      return it->second;
    }
    case Conn::Bot: return alg.bot;
    case Conn::Top: return alg.top;
    case Conn::And: return alg.mt(eval_in_algebra(alg, assign, f->left), eval_in_algebra(alg, assign, f->right));
    case Conn::Or: return alg.jn(eval_in_algebra(alg, assign, f->left), eval_in_algebra(alg, assign, f->right));
    case Conn::Prod: return alg.pr(eval_in_algebra(alg, assign, f->left), eval_in_algebra(alg, assign, f->right));
    case Conn::RImp: return alg.ri(eval_in_algebra(alg, assign, f->left), eval_in_algebra(alg, assign, f->right));
    case Conn::LImp: return alg.li(eval_in_algebra(alg, assign, f->left), eval_in_algebra(alg, assign, f->right));
  }
  throw std::logic_error("unreachable");
}

template <typename Visit>
bool for_each_assignment(const FiniteRba& alg, const std::vector<std::string>& names, Visit&& visit) {
  std::vector<int> pick(names.size(), 0);
  for (;;) {
    std::map<std::string, int> assign;
    for (std::size_t i = 0; i < names.size(); ++i) assign[names[i]] = pick[i];
    if (!visit(assign)) return false;
    std::size_t i = names.size();
    while (i > 0) {
      --i;
      if (++pick[i] < alg.size) break;
      pick[i] = 0;
      if (i == 0) return true;
    }
    if (names.empty()) return true;
  }
}

/// f denotes top under every assignment.
inline bool algebra_valid(const FiniteRba& alg, const FormulaPtr& f) {
  std::vector<std::string> names(atoms(f).begin(), atoms(f).end());
  return for_each_assignment(alg, names, [&](const std::map<std::string, int>& assign) {
    return eval_in_algebra(alg, assign, f) == alg.top;
  });
}

/// lhs <= rhs under every assignment.
inline bool algebra_sequent_valid(const FiniteRba& alg, const FormulaPtr& lhs, const FormulaPtr& rhs) {
  std::set<std::string> names_set = atoms(lhs);
  collect_atoms(rhs, names_set);
  std::vector<std::string> names(names_set.begin(), names_set.end());
  return for_each_assignment(alg, names, [&](const std::map<std::string, int>& assign) {
    return alg.le(eval_in_algebra(alg, assign, lhs), eval_in_algebra(alg, assign, rhs));
  });
}

// ---------------------------------------------------------------------------
// JSON dump.

inline nlohmann::json to_json(const FiniteRba& alg) {
  nlohmann::json j;
  int n = alg.size;
  j["size"] = n;
  j["bot"] = alg.bot;
  j["top"] = alg.top;
  auto table = [&](const std::vector<int>& t) {
    auto rows = nlohmann::json::array();
    for (int a = 0; a < n; ++a) {
      auto row = nlohmann::json::array();
      for (int b = 0; b < n; ++b) row.push_back(t[a * n + b]);
      rows.push_back(row);
    }
    return rows;
  };
  auto lrows = nlohmann::json::array();
  for (int a = 0; a < n; ++a) {
    auto row = nlohmann::json::array();
    for (int b = 0; b < n; ++b) row.push_back(alg.leq[a * n + b] != 0);
    lrows.push_back(row);
  }
  j["leq"] = lrows;
  j["meet"] = table(alg.meet);
  j["join"] = table(alg.join);
  j["prod"] = table(alg.prod);
  j["rimp"] = table(alg.rimp);
  j["limp"] = table(alg.limp);
  return j;
}

/// Reads size/leq/prod; lattice structure and residuals are recomputed, and
/// meet/join/rimp/limp entries present in the file are trusted as given so
/// that deliberately corrupted tables can be fed to the checkers.
inline FiniteRba finite_rba_from_json(const nlohmann::json& j) {
  int n = j.at("size").get<int>();
  if (n < 1 || n > 64) throw SizeLimit("algebra size out of range");
  std::vector<std::uint8_t> leq(n * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) leq[a * n + b] = j.at("leq").at(a).at(b).get<bool>() ? 1 : 0;
  auto lat = make_lattice(n, leq);
  if (!lat) throw std::invalid_argument("leq table is not a bounded lattice");
  FiniteRba alg;
  static_cast<Lattice&>(alg) = *lat;
  auto read_table = [&](const char* key, std::vector<int>& out, bool required) {
    if (!j.contains(key)) {
      if (required) throw std::invalid_argument(std::string("missing table ") + key);
      return false;
    }
    out.assign(n * n, 0);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        int v = j.at(key).at(a).at(b).get<int>();
        if (v < 0 || v >= n) throw std::invalid_argument(std::string("entry out of range in ") + key);
        out[a * n + b] = v;
      }
    return true;
  };
  read_table("prod", alg.prod, true);
  std::vector<int> tmp;
  if (read_table("meet", tmp, false)) alg.meet = tmp;
  if (read_table("join", tmp, false)) alg.join = tmp;
  bool have_rimp = read_table("rimp", alg.rimp, false);
  bool have_limp = read_table("limp", alg.limp, false);
  if (!have_rimp || !have_limp) compute_residuals(alg);
  return alg;
}

}  // namespace rbl
