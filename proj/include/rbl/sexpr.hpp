#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rbl/parser.hpp"  // ParseError

/// Tiny S-expression reader/writer used by the derivation and proof file
/// formats: atoms, double-quoted strings, and parenthesized lists.

namespace rbl {

struct SExpr {
  bool is_atom = true;
  std::string atom;          // atom text or string contents
  std::vector<SExpr> items;  // list elements

  static SExpr make_atom(std::string a) {
    SExpr e;
    e.atom = std::move(a);
    return e;
  }
  static SExpr make_list(std::vector<SExpr> xs) {
    SExpr e;
    e.is_atom = false;
    e.items = std::move(xs);
    return e;
  }
};

namespace detail {

inline void skip_ws(std::string_view s, std::size_t& i) {
  while (i < s.size() &&
         (std::isspace(static_cast<unsigned char>(s[i])) ||
          (s[i] == ';' && i + 1 < s.size() && s[i + 1] == ';'))) {
    if (s[i] == ';') {  // ';;' line comment
      while (i < s.size() && s[i] != '\n') ++i;
    } else {
      ++i;
    }
  }
}

inline SExpr parse_sexpr_rec(std::string_view s, std::size_t& i) {
  skip_ws(s, i);
  if (i >= s.size()) throw ParseError(i, {"an s-expression"}, "end of input");
  if (s[i] == '(') {
    ++i;
    std::vector<SExpr> items;
    for (;;) {
      skip_ws(s, i);
      if (i >= s.size()) throw ParseError(i, {"')'"}, "end of input");
      if (s[i] == ')') {
        ++i;
        return SExpr::make_list(std::move(items));
      }
      items.push_back(parse_sexpr_rec(s, i));
    }
  }
  if (s[i] == ')') throw ParseError(i, {"an atom or '('"}, "')'");
  if (s[i] == '"') {
    ++i;
    std::string out;
    while (i < s.size() && s[i] != '"') {
      if (s[i] == '\\' && i + 1 < s.size()) ++i;
      out += s[i++];
    }
    if (i >= s.size()) throw ParseError(i, {"closing '\"'"}, "end of input");
    ++i;
    return SExpr::make_atom(std::move(out));
  }
  std::size_t start = i;
  while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != '(' &&
         s[i] != ')' && s[i] != '"')
    ++i;
  return SExpr::make_atom(std::string(s.substr(start, i - start)));
}

}  // namespace detail

inline SExpr parse_sexpr(std::string_view s) {
  std::size_t i = 0;
  SExpr e = detail::parse_sexpr_rec(s, i);
  detail::skip_ws(s, i);
  if (i != s.size()) throw ParseError(i, {"end of input"}, "'" + std::string(1, s[i]) + "'");
  return e;
}

inline std::string quote_atom(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace rbl
