#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rbl/errors.hpp"
#include "rbl/formula.hpp"

/// Finite binary-relation models: a transitive accessibility relation and a
/// persistent valuation.  Worlds are 0..worlds-1 and world sets are bitmasks,
/// so models are capped at 31 worlds (far beyond the exhaustive-search sizes
/// used anywhere here).

namespace rbl {

using WorldMask = std::uint32_t;

struct BplModel {
  int worlds = 0;
  std::vector<WorldMask> rel;              // rel[w] = mask of R-successors of w
  std::map<std::string, WorldMask> val;    // atom -> mask of worlds

  WorldMask full_mask() const { return worlds == 32 ? ~0u : (1u << worlds) - 1; }
  bool has_edge(int w, int u) const { return (rel[w] >> u) & 1u; }
};

struct ModelDiagnostic {
  std::string what;
  std::vector<int> witness;  // worlds involved
  std::string atom;          // persistency violations only
};

/// Empty result iff the relation is transitive and every atom is persistent.
inline std::vector<ModelDiagnostic> check_bpl_model(const BplModel& m) {
  std::vector<ModelDiagnostic> out;
  for (int x = 0; x < m.worlds; ++x) {
    for (int y = 0; y < m.worlds; ++y) {
      if (!m.has_edge(x, y)) continue;
      WorldMask missing = m.rel[y] & ~m.rel[x];
      for (int z = 0; z < m.worlds; ++z) {
        if ((missing >> z) & 1u)
          out.push_back({"transitivity: (" + std::to_string(x) + "," + std::to_string(y) +
                             "),(" + std::to_string(y) + "," + std::to_string(z) +
                             ") in R but (" + std::to_string(x) + "," + std::to_string(z) + ") is not",
                         {x, y, z},
                         ""});
      }
    }
  }
  for (const auto& [p, mask] : m.val) {
    for (int w = 0; w < m.worlds; ++w) {
      if (!((mask >> w) & 1u)) continue;
      WorldMask lost = m.rel[w] & ~mask;
      for (int u = 0; u < m.worlds; ++u) {
        if ((lost >> u) & 1u)
          out.push_back({"persistency: " + p + " holds at " + std::to_string(w) + " but not at its successor " +
                             std::to_string(u),
                         {w, u},
                         p});
      }
    }
  }
  return out;
}

namespace detail {

inline void require_bpl_language(const FormulaPtr& f) {
  if (!is_bpl(f))
    throw LanguageError("formula uses * or <-, outside the {&,|,->} fragment: " + to_string(f));
}

}  // namespace detail

/// Truth set of f as a world mask.  Unknown atoms are false everywhere.
inline WorldMask eval_bpl_mask(const BplModel& m, const FormulaPtr& f) {
  switch (f->kind) {
    case Conn::Prop: {
      auto it = m.val.find(f->name);
      return it == m.val.end() ? 0 : it->second;
    }
    case Conn::Bot: return 0;
    case Conn::Top: return m.full_mask();
    case Conn::And: return eval_bpl_mask(m, f->left) & eval_bpl_mask(m, f->right);
    case Conn::Or: return eval_bpl_mask(m, f->left) | eval_bpl_mask(m, f->right);
    case Conn::RImp: {
      // w |= a -> b  iff no R-successor of w satisfies a but not b.
      WorldMask bad = eval_bpl_mask(m, f->left) & ~eval_bpl_mask(m, f->right);
      WorldMask out = 0;
      for (int w = 0; w < m.worlds; ++w)
        if ((m.rel[w] & bad) == 0) out |= 1u << w;
      return out;
    }
    default:
      detail::require_bpl_language(f);
      return 0;  // unreachable
  }
}

inline bool eval_bpl(const BplModel& m, int w, const FormulaPtr& f) {
  if (w < 0 || w >= m.worlds) throw InvalidWorld("world " + std::to_string(w) + " out of range");
  detail::require_bpl_language(f);
  return (eval_bpl_mask(m, f) >> w) & 1u;
}

// ---------------------------------------------------------------------------
// Exhaustive search over small models.

namespace detail {

/// All transitive relations on n worlds, as successor-row vectors, in
/// ascending order of the (i*n+j)-bit encoding.  Cached per size.
inline const std::vector<std::vector<WorldMask>>& transitive_relations(int n) {
  static std::map<int, std::vector<std::vector<WorldMask>>> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  if (n < 0 || n > 5) throw SizeLimit("model size bound must be between 0 and 5");
  std::vector<std::vector<WorldMask>> rels;
  std::uint64_t limit = 1ull << (n * n);
  std::vector<WorldMask> rows(n);
  for (std::uint64_t enc = 0; enc < limit; ++enc) {
    for (int i = 0; i < n; ++i) rows[i] = (enc >> (i * n)) & ((1u << n) - 1);
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      WorldMask succ = rows[i];
      for (int j = 0; j < n; ++j)
        if (((succ >> j) & 1u) && (rows[j] & ~succ)) { ok = false; break; }
    }
    if (ok) rels.push_back(rows);
  }
  return cache.emplace(n, std::move(rels)).first->second;
}

/// Subsets closed under R-successorship, in ascending mask order.
inline std::vector<WorldMask> up_closed_sets(const std::vector<WorldMask>& rel, int n) {
  std::vector<WorldMask> out;
  WorldMask full = n == 32 ? ~0u : (1u << n) - 1;
  for (WorldMask s = 0; s <= full; ++s) {
    bool ok = true;
    for (int w = 0; w < n && ok; ++w)
      if (((s >> w) & 1u) && (rel[w] & ~s)) ok = false;
    if (ok) out.push_back(s);
    if (s == full) break;
  }
  return out;
}

/// Visits every well-formed model of exactly n worlds whose valuation covers
/// `names`; stops early when the visitor returns false.
template <typename Visit>
bool for_each_bpl_model(int n, const std::vector<std::string>& names, Visit&& visit) {
  for (const auto& rel : transitive_relations(n)) {
    std::vector<WorldMask> ups = up_closed_sets(rel, n);
    std::vector<std::size_t> pick(names.size(), 0);
    for (;;) {
      BplModel m;
      m.worlds = n;
      m.rel = rel;
      for (std::size_t k = 0; k < names.size(); ++k) m.val[names[k]] = ups[pick[k]];
      if (!visit(m)) return false;
      std::size_t k = names.size();
      while (k > 0) {
        --k;
        if (++pick[k] < ups.size()) break;
        pick[k] = 0;
        if (k == 0) goto next_rel;
      }
      if (names.empty()) break;
    }
  next_rel:;
  }
  return true;
}

}  // namespace detail

struct BplVerdict {
  bool valid = true;
  int bound = 0;                    // sizes searched when valid
  std::optional<BplModel> model;    // countermodel otherwise
  int world = -1;

  explicit operator bool() const { return valid; }
};

/// Searches every transitive, persistent model with at most n worlds over the
/// atoms of f; sizes ascending, relations by ascending bit encoding,
/// valuations by ascending mask, so the reported countermodel is stable.
inline BplVerdict bpl_valid_upto(const FormulaPtr& f, int n) {
  detail::require_bpl_language(f);
  std::vector<std::string> names(atoms(f).begin(), atoms(f).end());
  for (int sz = 1; sz <= n; ++sz) {
    BplVerdict found;
    detail::for_each_bpl_model(sz, names, [&](const BplModel& m) {
      WorldMask truth = eval_bpl_mask(m, f);
      if (truth != m.full_mask()) {
        int w = 0;
        while ((truth >> w) & 1u) ++w;
        found = {false, sz, m, w};
        return false;
      }
      return true;
    });
    if (!found.valid) return found;
  }
  return {true, n, std::nullopt, -1};
}

/// Adds a fresh world x' seeing x and everything x sees; the valuation at x'
/// copies x.  Returns the extended model and the index of x'.
inline std::pair<BplModel, int> point_extension(const BplModel& m, int x) {
  if (x < 0 || x >= m.worlds) throw InvalidWorld("world " + std::to_string(x) + " out of range");
  BplModel out = m;
  int fresh = out.worlds++;
  out.rel.push_back(m.rel[x] | (1u << x));
  for (auto& [p, mask] : out.val)
    if ((mask >> x) & 1u) mask |= 1u << fresh;
  return {out, fresh};
}

// ---------------------------------------------------------------------------
// JSON: {"worlds": n, "rel": [[i,j],...], "val": {"p": [i,...]}}

inline nlohmann::json to_json(const BplModel& m) {
  nlohmann::json j;
  j["worlds"] = m.worlds;
  auto rel = nlohmann::json::array();
  for (int w = 0; w < m.worlds; ++w)
    for (int u = 0; u < m.worlds; ++u)
      if (m.has_edge(w, u)) rel.push_back({w, u});
  j["rel"] = rel;
  auto val = nlohmann::json::object();
  for (const auto& [p, mask] : m.val) {
    auto arr = nlohmann::json::array();
    for (int w = 0; w < m.worlds; ++w)
      if ((mask >> w) & 1u) arr.push_back(w);
    val[p] = arr;
  }
  j["val"] = val;
  return j;
}

inline BplModel bpl_model_from_json(const nlohmann::json& j) {
  BplModel m;
  m.worlds = j.at("worlds").get<int>();
  if (m.worlds < 0 || m.worlds > 31) throw SizeLimit("model too large for mask representation");
  m.rel.assign(m.worlds, 0);
  for (const auto& e : j.at("rel")) {
    int a = e.at(0).get<int>(), b = e.at(1).get<int>();
    if (a < 0 || a >= m.worlds || b < 0 || b >= m.worlds) throw InvalidWorld("rel entry out of range");
    m.rel[a] |= 1u << b;
  }
  if (j.contains("val")) {
    for (auto it = j.at("val").begin(); it != j.at("val").end(); ++it) {
      WorldMask mask = 0;
      for (const auto& w : it.value()) {
        int ww = w.get<int>();
        if (ww < 0 || ww >= m.worlds) throw InvalidWorld("val entry out of range");
        mask |= 1u << ww;
      }
      m.val[it.key()] = mask;
    }
  }
  return m;
}

}  // namespace rbl
