#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rbl/structure.hpp"

/// Text grammar shared by the CLI and all file formats.
///
/// formula   :=  impl
/// impl      :=  disj ('->' impl)?  |  disj ('<-' disj)*        (no mixing)
/// disj      :=  conj ('|' conj)*
/// conj      :=  prodt ('&' prodt)*
/// prodt     :=  unary ('*' unary)*
/// unary     :=  '~' unary | atom
/// atom      :=  'bot' | 'top' | ident | '(' formula ')'
/// structure :=  sterm ((',' sterm)* | (';' sterm)*)            (no mixing)
/// sterm     :=  formula, where a '(' may open either a formula
///               or a parenthesized structure
/// sequent   :=  structure '|-' formula
/// simple    :=  formula '=>' formula
///
/// '~a' is sugar for 'a -> bot'.  Mixed unparenthesized chains of '->'/'<-'
/// or of ','/';' are rejected as ambiguous.

namespace rbl {

class ParseError : public std::runtime_error {
public:
  std::size_t offset;
  std::vector<std::string> expected;

  ParseError(std::size_t off, std::vector<std::string> exp, const std::string& found)
      : std::runtime_error(render(off, exp, found)), offset(off), expected(std::move(exp)) {}

private:
  static std::string render(std::size_t off, const std::vector<std::string>& exp,
                            const std::string& found) {
    std::string msg = "parse error at byte " + std::to_string(off) + ": expected ";
    for (std::size_t i = 0; i < exp.size(); ++i) {
      if (i) msg += exp.size() > 2 ? ", " : " ";
      if (i + 1 == exp.size() && i) msg += "or ";
      msg += exp[i];
    }
    msg += ", found " + found;
    return msg;
  }
};

namespace detail {

enum class Tok : std::uint8_t {
  Ident, Bot, Top, Amp, Pipe, Star, Arrow, LArrow, Tilde,
  LParen, RParen, Comma, Semi, Turnstile, DArrow, End,
};

inline const char* tok_name(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Bot: return "'bot'";
    case Tok::Top: return "'top'";
    case Tok::Amp: return "'&'";
    case Tok::Pipe: return "'|'";
    case Tok::Star: return "'*'";
    case Tok::Arrow: return "'->'";
    case Tok::LArrow: return "'<-'";
    case Tok::Tilde: return "'~'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Semi: return "';'";
    case Tok::Turnstile: return "'|-'";
    case Tok::DArrow: return "'=>'";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return cur_; }

  Token take() {
    Token t = cur_;
    advance();
    return t;
  }

private:
  std::string_view src_;
  std::size_t pos_ = 0;
  Token cur_;

  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    std::size_t start = pos_;
    if (pos_ >= src_.size()) {
      cur_ = {Tok::End, "", start};
      return;
    }
    char c = src_[pos_];
    auto two = [&](char a, char b) {
      return c == a && pos_ + 1 < src_.size() && src_[pos_ + 1] == b;
    };
    if (two('-', '>')) { pos_ += 2; cur_ = {Tok::Arrow, "->", start}; return; }
    if (two('<', '-')) { pos_ += 2; cur_ = {Tok::LArrow, "<-", start}; return; }
    if (two('|', '-')) { pos_ += 2; cur_ = {Tok::Turnstile, "|-", start}; return; }
    if (two('=', '>')) { pos_ += 2; cur_ = {Tok::DArrow, "=>", start}; return; }
    switch (c) {
      case '&': ++pos_; cur_ = {Tok::Amp, "&", start}; return;
      case '|': ++pos_; cur_ = {Tok::Pipe, "|", start}; return;
      case '*': ++pos_; cur_ = {Tok::Star, "*", start}; return;
      case '~': ++pos_; cur_ = {Tok::Tilde, "~", start}; return;
      case '(': ++pos_; cur_ = {Tok::LParen, "(", start}; return;
      case ')': ++pos_; cur_ = {Tok::RParen, ")", start}; return;
      case ',': ++pos_; cur_ = {Tok::Comma, ",", start}; return;
      case ';': ++pos_; cur_ = {Tok::Semi, ";", start}; return;
      default: break;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_' ||
              src_[end] == '\''))
        ++end;
      std::string word(src_.substr(pos_, end - pos_));
      pos_ = end;
      if (word == "bot") cur_ = {Tok::Bot, word, start};
      else if (word == "top") cur_ = {Tok::Top, word, start};
      else cur_ = {Tok::Ident, word, start};
      return;
    }
    throw ParseError(start, {"a token"}, "'" + std::string(1, c) + "'");
  }
};

class Parser {
public:
  explicit Parser(std::string_view src) : lex_(src) {}

  FormulaPtr formula_all() {
    FormulaPtr f = formula();
    expect(Tok::End);
    return f;
  }

  StructurePtr structure_all() {
    StructurePtr s = structure();
    expect(Tok::End);
    return s;
  }

  Sequent sequent_all() {
    StructurePtr s = structure();
    expect(Tok::Turnstile);
    FormulaPtr f = formula();
    expect(Tok::End);
    return {s, f};
  }

  SimpleSequent simple_sequent_all() {
    FormulaPtr l = formula();
    expect(Tok::DArrow);
    FormulaPtr r = formula();
    expect(Tok::End);
    return {l, r};
  }

private:
  Lexer lex_;

  [[noreturn]] void fail(std::vector<std::string> expected) {
    const Token& t = lex_.peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.offset, std::move(expected), found);
  }

  Token expect(Tok k) {
    if (lex_.peek().kind != k) fail({tok_name(k)});
    return lex_.take();
  }

  bool accept(Tok k) {
    if (lex_.peek().kind != k) return false;
    lex_.take();
    return true;
  }

  FormulaPtr formula() {
    FormulaPtr lhs = disj();
    if (lex_.peek().kind == Tok::Arrow) {
      lex_.take();
      FormulaPtr rhs = formula_no_mix(Tok::Arrow);
      return mk_rimp(lhs, rhs);
    }
    while (lex_.peek().kind == Tok::LArrow) {
      lex_.take();
      lhs = mk_limp(lhs, disj());
    }
    if (lex_.peek().kind == Tok::Arrow) fail({"')'", "end of implication chain (mixed '->'/'<-' needs parentheses)"});
    return lhs;
  }

  // Right-assoc '->' chain; a '<-' inside it is the ambiguous mix.
  FormulaPtr formula_no_mix(Tok) {
    FormulaPtr lhs = disj();
    if (lex_.peek().kind == Tok::LArrow) fail({"')'", "end of implication chain (mixed '->'/'<-' needs parentheses)"});
    if (accept(Tok::Arrow)) return mk_rimp(lhs, formula_no_mix(Tok::Arrow));
    return lhs;
  }

  FormulaPtr disj() {
    FormulaPtr f = conj();
    while (accept(Tok::Pipe)) f = mk_or(f, conj());
    return f;
  }

  FormulaPtr conj() {
    FormulaPtr f = prodt();
    while (accept(Tok::Amp)) f = mk_and(f, prodt());
    return f;
  }

  FormulaPtr prodt() {
    FormulaPtr f = unary();
    while (accept(Tok::Star)) f = mk_prod(f, unary());
    return f;
  }

  FormulaPtr unary() {
    if (accept(Tok::Tilde)) return mk_neg(unary());
    return atom();
  }

  FormulaPtr atom() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Tok::Bot: lex_.take(); return mk_bot();
      case Tok::Top: lex_.take(); return mk_top();
      case Tok::Ident: return mk_prop(lex_.take().text);
      case Tok::LParen: {
        lex_.take();
        FormulaPtr f = formula();
        expect(Tok::RParen);
        return f;
      }
      default:
        fail({"'bot'", "'top'", "identifier", "'('", "'~'"});
    }
  }

  // A parenthesized group inside a structure may be a structure or a
  // formula; the group is a formula leaf exactly when it contains no
  // structural ','/';' at its top level and continues as a formula term
  // (e.g. "(p -> q) & r").  We parse by re-scanning the group.
  StructurePtr structure() {
    StructurePtr s = sterm();
    if (lex_.peek().kind == Tok::Comma) {
      while (accept(Tok::Comma)) s = mk_oprod(s, sterm());
      if (lex_.peek().kind == Tok::Semi) fail({"','", "'|-'", "end of input (mixed ','/';' needs parentheses)"});
    } else if (lex_.peek().kind == Tok::Semi) {
      while (accept(Tok::Semi)) s = mk_omeet(s, sterm());
      if (lex_.peek().kind == Tok::Comma) fail({"';'", "'|-'", "end of input (mixed ','/';' needs parentheses)"});
    }
    return s;
  }

  StructurePtr sterm() {
    if (lex_.peek().kind == Tok::LParen) {
      // Look ahead: parse the group as a structure; if it turns out to be a
      // single formula leaf, fold it back into formula context so that
      // "(p -> q) & r" still works.
      lex_.take();
      StructurePtr inner = structure();
      expect(Tok::RParen);
      if (inner->is_leaf() && continues_formula()) {
        FormulaPtr f = formula_tail(inner->formula);
        return mk_leaf(f);
      }
      return inner;
    }
    return mk_leaf(formula());
  }

  bool continues_formula() {
    switch (lex_.peek().kind) {
      case Tok::Amp: case Tok::Pipe: case Tok::Star: case Tok::Arrow: case Tok::LArrow:
        return true;
      default:
        return false;
    }
  }

  // Continue parsing a formula whose first operand is already known.
  FormulaPtr formula_tail(FormulaPtr first) {
    FormulaPtr f = first;
    for (;;) {
      switch (lex_.peek().kind) {
        case Tok::Star: lex_.take(); f = mk_prod(f, unary()); continue;
        case Tok::Amp: lex_.take(); f = mk_and(f, prodt()); continue;
        case Tok::Pipe: lex_.take(); f = mk_or(f, conj()); continue;
        case Tok::Arrow: lex_.take(); return mk_rimp(f, formula_no_mix(Tok::Arrow));
        case Tok::LArrow: {
          lex_.take();
          f = mk_limp(f, disj());
          while (accept(Tok::LArrow)) f = mk_limp(f, disj());
          if (lex_.peek().kind == Tok::Arrow)
            fail({"')'", "end of implication chain (mixed '->'/'<-' needs parentheses)"});
          return f;
        }
        default: return f;
      }
    }
  }
};

}  // namespace detail

inline FormulaPtr parse_formula(std::string_view text) {
  return detail::Parser(text).formula_all();
}

inline StructurePtr parse_structure(std::string_view text) {
  return detail::Parser(text).structure_all();
}

inline Sequent parse_sequent(std::string_view text) {
  return detail::Parser(text).sequent_all();
}

inline SimpleSequent parse_simple_sequent(std::string_view text) {
  return detail::Parser(text).simple_sequent_all();
}

}  // namespace rbl
