#pragma once

#include <random>
#include <string>
#include <vector>

#include "rbl/structure.hpp"

namespace rbl::testutil {

inline FormulaPtr random_formula(std::mt19937& rng, int depth, int natoms, bool bpl_only = false) {
  std::uniform_int_distribution<int> atom_pick(0, natoms + 1);
  if (depth <= 0 || std::uniform_int_distribution<int>(0, 3)(rng) == 0) {
    int a = atom_pick(rng);
    if (a == natoms) return mk_bot();
    if (a == natoms + 1) return mk_top();
    return mk_prop(std::string(1, static_cast<char>('p' + a)));
  }
  int conn = std::uniform_int_distribution<int>(0, bpl_only ? 2 : 4)(rng);
  FormulaPtr l = random_formula(rng, depth - 1, natoms, bpl_only);
  FormulaPtr r = random_formula(rng, depth - 1, natoms, bpl_only);
  switch (conn) {
    case 0: return mk_and(l, r);
    case 1: return mk_or(l, r);
    case 2: return mk_rimp(l, r);
    case 3: return mk_prod(l, r);
    default: return mk_limp(l, r);
  }
}

inline StructurePtr random_structure(std::mt19937& rng, int depth, int natoms) {
  if (depth <= 0 || std::uniform_int_distribution<int>(0, 2)(rng) == 0)
    return mk_leaf(random_formula(rng, 2, natoms));
  StructurePtr l = random_structure(rng, depth - 1, natoms);
  StructurePtr r = random_structure(rng, depth - 1, natoms);
  return std::uniform_int_distribution<int>(0, 1)(rng) ? mk_oprod(l, r) : mk_omeet(l, r);
}

/// All distinct formulas over the given atoms with nesting depth at most
/// `depth` (atoms have depth 1), deduplicated up to commutativity of & and |
/// by keeping arguments in canonical order.
inline std::vector<FormulaPtr> bpl_formulas_upto_depth(int depth,
                                                       const std::vector<std::string>& atom_names) {
  std::vector<FormulaPtr> cur;
  for (const auto& a : atom_names) cur.push_back(mk_prop(a));
  cur.push_back(mk_bot());
  cur.push_back(mk_top());
  FormulaSet seen(cur.begin(), cur.end());
  std::vector<FormulaPtr> frontier = cur;
  for (int d = 2; d <= depth; ++d) {
    std::vector<FormulaPtr> prev = cur;
    for (const auto& l : prev)
      for (const auto& r : prev) {
        if (compare(l, r) <= 0) {
          for (auto f : {mk_and(l, r), mk_or(l, r)})
            if (seen.insert(f).second) cur.push_back(f);
        }
        FormulaPtr f = mk_rimp(l, r);
        if (seen.insert(f).second) cur.push_back(f);
      }
  }
  return cur;
}

}  // namespace rbl::testutil
